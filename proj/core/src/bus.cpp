#include "skysentry/bus.hpp"

#include <stdexcept>

namespace skysentry {

ReportBus::ReportBus(BusConfig cfg) : cfg_(cfg) {
  if (cfg_.init_threshold < 1 || cfg_.batch_size < 1) {
    throw std::invalid_argument("bus thresholds must be >= 1");
  }
}

void ReportBus::publish(PositionReport report) {
  std::lock_guard lock(mutex_);
  if (closed_) throw BusClosedError();
  buffer_.push_back(std::move(report));
  const std::size_t threshold =
      next_seq_ == 0 ? cfg_.init_threshold : cfg_.batch_size;
  if (buffer_.size() >= threshold) release_locked();
}

void ReportBus::release_locked() {
  ReportBatch batch;
  batch.seq = next_seq_++;
  batch.emitted_at_s = buffer_.back().timestamp_s;
  batch.reports = std::move(buffer_);
  buffer_.clear();
  ready_.push_back(std::move(batch));
}

std::optional<ReportBatch> ReportBus::poll_batch() {
  std::lock_guard lock(mutex_);
  if (ready_.empty()) return std::nullopt;
  ReportBatch batch = std::move(ready_.front());
  ready_.pop_front();
  return batch;
}

void ReportBus::close() {
  std::lock_guard lock(mutex_);
  if (closed_) return;
  closed_ = true;
  if (!buffer_.empty()) release_locked();
}

bool ReportBus::closed() const {
  std::lock_guard lock(mutex_);
  return closed_;
}

}  // namespace skysentry
