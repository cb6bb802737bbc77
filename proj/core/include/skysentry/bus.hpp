#pragma once

#include <cstdint>
#include <deque>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <vector>

#include "skysentry/model.hpp"

namespace skysentry {

struct BusConfig {
  std::size_t init_threshold = 400;  // reports held back before batch 0
  std::size_t batch_size = 50;       // steady-state batch size
};

struct ReportBatch {
  std::uint64_t seq = 0;
  std::vector<PositionReport> reports;
  std::int64_t emitted_at_s = 0;  // simulated time the batch became complete
};

class BusClosedError : public std::runtime_error {
 public:
  BusClosedError() : std::runtime_error("bus is closed") {}
};

// In-process single-producer single-consumer channel. Reports accumulate
// until the initialization threshold fills batch 0; afterwards every
// batch_size reports release a batch. close() flushes the remainder.
// Every published report is delivered exactly once, in publish order.
class ReportBus {
 public:
  explicit ReportBus(BusConfig cfg = {});

  void publish(PositionReport report);
  std::optional<ReportBatch> poll_batch();
  void close();
  bool closed() const;

 private:
  void release_locked();

  BusConfig cfg_;
  mutable std::mutex mutex_;
  std::vector<PositionReport> buffer_;
  std::deque<ReportBatch> ready_;
  std::uint64_t next_seq_ = 0;
  bool closed_ = false;
};

}  // namespace skysentry
