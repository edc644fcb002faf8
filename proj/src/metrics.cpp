#include "dtnsim/metrics.hpp"

#include <algorithm>
#include <cassert>
#include <limits>

namespace dtnsim {

namespace {
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

double mean(const std::vector<double>& v) {
  if (v.empty()) return kNaN;
  double sum = 0;
  for (double x : v) sum += x;
  return sum / static_cast<double>(v.size());
}
}  // namespace

double median(std::vector<double> samples) {
  if (samples.empty()) return kNaN;
  std::sort(samples.begin(), samples.end());
  const std::size_t n = samples.size();
  if (n % 2 == 1) return samples[n / 2];
  return (samples[n / 2 - 1] + samples[n / 2]) / 2.0;
}

void MetricsAccumulator::on_created(const MessagePtr& msg, double now) {
  creation_times_.push_back(now);
  per_message_.emplace(msg->id, MessageState{});
}

bool MetricsAccumulator::on_delivered(const std::string& id, double now, double latency,
                                      int hopcount) {
  auto& state = per_message_[id];
  if (state.delivered) return false;  // duplicate arrival
  state.delivered = true;
  delivery_times_.push_back(now);
  latency_samples_.push_back(latency);
  hop_samples_.push_back(hopcount);
  return true;
}

void MetricsAccumulator::on_dropped(const DropRecord& rec) {
  if (rec.reason == DropReason::evicted) ++dropped_buffer_;
  else ++dropped_expired_;
  buffer_time_samples_.push_back(rec.residence_time);
}

void MetricsAccumulator::on_copy_added(const std::string& id) { ++per_message_[id].copies_alive; }

void MetricsAccumulator::on_copy_removed(const std::string& id) {
  auto it = per_message_.find(id);
  assert(it != per_message_.end() && it->second.copies_alive > 0);
  --it->second.copies_alive;
}

Summary MetricsAccumulator::summary() const {
  Summary s;
  s.created = created_count();
  s.started = started_;
  s.relayed = relayed_;
  s.delivered = delivered_count();
  s.dropped_buffer = dropped_buffer_;
  s.dropped_expired = dropped_expired_;
  s.dropped = dropped_buffer_ + dropped_expired_;
  s.delivery_probability =
      s.created > 0 ? static_cast<double>(s.delivered) / static_cast<double>(s.created) : 0.0;
  s.overhead_ratio = s.delivered > 0 ? static_cast<double>(s.relayed - s.delivered) /
                                           static_cast<double>(s.delivered)
                                     : kNaN;
  s.latency_avg = mean(latency_samples_);
  s.latency_median = median(latency_samples_);
  std::vector<double> hops(hop_samples_.begin(), hop_samples_.end());
  s.hopcount_avg = mean(hops);
  s.buffertime_avg = mean(buffer_time_samples_);
  return s;
}

std::vector<MetricsAccumulator::TimelineRow> MetricsAccumulator::timeseries(double interval,
                                                                            double end_time) const {
  assert(interval > 0);
  std::vector<TimelineRow> rows;
  std::size_t ci = 0, di = 0;
  double t = 0;
  bool last = false;
  while (!last) {
    if (t >= end_time) {
      t = end_time;
      last = true;
    }
    while (ci < creation_times_.size() && creation_times_[ci] <= t) ++ci;
    while (di < delivery_times_.size() && delivery_times_[di] <= t) ++di;
    TimelineRow row;
    row.time = t;
    row.created = static_cast<std::int64_t>(ci);
    row.delivered = static_cast<std::int64_t>(di);
    row.rate = ci > 0 ? static_cast<double>(di) / static_cast<double>(ci) : 0.0;
    rows.push_back(row);
    t += interval;
  }
  return rows;
}

std::map<int, std::int64_t> MetricsAccumulator::hop_histogram() const {
  std::map<int, std::int64_t> hist;
  for (int h : hop_samples_) ++hist[h];
  return hist;
}

std::int64_t MetricsAccumulator::alive_message_count() const {
  std::int64_t n = 0;
  for (const auto& [id, state] : per_message_)
    if (!state.delivered && state.copies_alive > 0) ++n;
  return n;
}

std::int64_t MetricsAccumulator::fully_dropped_message_count() const {
  std::int64_t n = 0;
  for (const auto& [id, state] : per_message_)
    if (!state.delivered && state.copies_alive == 0) ++n;
  return n;
}

}  // namespace dtnsim
