#include "skysentry/report_log.hpp"

#include <charconv>
#include <istream>
#include <map>
#include <sstream>

namespace skysentry {

namespace {

std::string format_double(double v) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, end);
}

double parse_double_field(const std::string& value, std::size_t line_no,
                          const char* field) {
  double v = 0;
  auto [p, ec] = std::from_chars(value.data(), value.data() + value.size(), v);
  if (ec != std::errc{} || p != value.data() + value.size()) {
    throw ReportLogError(line_no, std::string("bad number in field '") + field +
                                      "'");
  }
  return v;
}

}  // namespace

std::string format_report_line(const PositionReport& report) {
  std::ostringstream out;
  const GeoPoint& pos = report.position();
  out << "REPORT t=" << report.timestamp_s
      << " kind=" << to_string(report.kind()) << " id=" << report.report_id
      << " src=" << report.reporter_id() << " lat=" << format_double(pos.lat_deg)
      << " lon=" << format_double(pos.lon_deg);
  if (const auto* ssr = std::get_if<SsrReport>(&report.body)) {
    out << " alt=" << format_double(ssr->altitude_ft) << " eq=" << ssr->identity;
  } else if (const auto* adsb = std::get_if<AdsbReport>(&report.body)) {
    out << " alt=" << format_double(adsb->altitude_ft)
        << " cs=" << adsb->callsign << " eq=" << adsb->equipment_id
        << " gs=" << format_double(adsb->ground_speed_kt);
  }
  return out.str();
}

PositionReport parse_report_line(const std::string& line,
                                 std::size_t line_no) {
  std::istringstream in(line);
  std::string tag;
  in >> tag;
  if (tag != "REPORT") {
    throw ReportLogError(line_no, "expected REPORT prefix");
  }
  std::map<std::string, std::string> fields;
  std::string item;
  while (in >> item) {
    const auto eq = item.find('=');
    if (eq == std::string::npos) {
      throw ReportLogError(line_no, "expected key=value, got '" + item + "'");
    }
    fields[item.substr(0, eq)] = item.substr(eq + 1);
  }
  auto need = [&](const char* key) -> std::string {
    auto it = fields.find(key);
    if (it == fields.end()) {
      throw ReportLogError(line_no, std::string("missing field '") + key + "'");
    }
    return it->second;
  };

  PositionReport report;
  report.timestamp_s = static_cast<std::int64_t>(
      parse_double_field(need("t"), line_no, "t"));
  report.report_id = static_cast<std::uint64_t>(
      parse_double_field(need("id"), line_no, "id"));
  const GeoPoint pos{parse_double_field(need("lat"), line_no, "lat"),
                     parse_double_field(need("lon"), line_no, "lon")};
  if (!valid_geo_point(pos)) {
    throw ReportLogError(line_no, "lat/lon out of range");
  }
  const std::string kind = need("kind");
  const std::string src = need("src");
  if (kind == "PSR") {
    report.body = PsrReport{src, pos};
  } else if (kind == "SSR") {
    report.body = SsrReport{src, pos,
                            parse_double_field(need("alt"), line_no, "alt"),
                            need("eq")};
  } else if (kind == "ADSB") {
    report.body = AdsbReport{src,
                             pos,
                             parse_double_field(need("alt"), line_no, "alt"),
                             need("cs"),
                             need("eq"),
                             parse_double_field(need("gs"), line_no, "gs")};
  } else {
    throw ReportLogError(line_no, "unknown report kind '" + kind + "'");
  }
  return report;
}

std::vector<PositionReport> read_report_log(std::istream& in) {
  std::vector<PositionReport> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    out.push_back(parse_report_line(line, line_no));
  }
  return out;
}

std::string format_alert_line(const Alert& alert) {
  std::ostringstream out;
  out << "ALERT t=" << format_double(alert.detected_at_s)
      << " rule=" << to_string(alert.constraint)
      << " report=" << alert.report.value
      << " callsign=" << (alert.callsign.empty() ? "-" : alert.callsign)
      << " lat=" << format_double(alert.position.lat_deg)
      << " lon=" << format_double(alert.position.lon_deg)
      << " rt=" << alert.report_time_s << " reason=" << alert.reason;
  return out.str();
}

}  // namespace skysentry
