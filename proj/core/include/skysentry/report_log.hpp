#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "skysentry/detect.hpp"
#include "skysentry/model.hpp"

namespace skysentry {

// Line format, optional fields present per report kind:
//   REPORT t=<s> kind=<PSR|SSR|ADSB> id=<report_id> src=<reporter>
//          lat=<deg> lon=<deg> [alt=<ft>] [cs=<callsign>] [eq=<equipment>]
//          [gs=<kt>]
std::string format_report_line(const PositionReport& report);

class ReportLogError : public std::runtime_error {
 public:
  ReportLogError(std::size_t line, const std::string& what)
      : std::runtime_error("report log line " + std::to_string(line) + ": " +
                           what) {}
};

PositionReport parse_report_line(const std::string& line,
                                 std::size_t line_no = 1);
std::vector<PositionReport> read_report_log(std::istream& in);

// ALERT t=<detected_at_s> rule=<...> report=<iri> callsign=<cs|->
//       lat=<deg> lon=<deg> rt=<report_time_s> reason=<code>
std::string format_alert_line(const Alert& alert);

}  // namespace skysentry
