#pragma once

// Event counters and samples from which every reported statistic derives.

#include <cmath>
#include <cstdint>
#include <map>
#include <string>
#include <unordered_map>
#include <vector>

#include "dtnsim/buffer.hpp"
#include "dtnsim/message.hpp"

namespace dtnsim {

struct Summary {
  std::int64_t created = 0;
  std::int64_t started = 0;    // transfer attempts begun (aborts included)
  std::int64_t relayed = 0;    // transfers completed (deliveries and duplicates included)
  std::int64_t delivered = 0;  // unique messages that reached their destination
  std::int64_t dropped = 0;    // buffer evictions + TTL expiries
  std::int64_t dropped_buffer = 0;
  std::int64_t dropped_expired = 0;
  double delivery_probability = 0;  // delivered / created (0 when none created)
  double overhead_ratio = 0;        // (relayed - delivered) / delivered; NaN when delivered = 0
  double latency_avg = 0;           // first deliveries only; NaN when none
  double latency_median = 0;
  double hopcount_avg = 0;
  double buffertime_avg = 0;  // drop/expiry residence times only; NaN when none
};

// Even count -> mean of the two middle order statistics; empty -> NaN.
double median(std::vector<double> samples);

class MetricsAccumulator {
 public:
  void on_created(const MessagePtr& msg, double now);
  void on_transfer_started() { ++started_; }
  void on_relayed() { ++relayed_; }
  // Returns true on the first arrival of this id (the delivery that counts).
  bool on_delivered(const std::string& id, double now, double latency, int hopcount);
  void on_dropped(const DropRecord& rec);
  // Copy lifecycle bookkeeping behind the conservation identity.
  void on_copy_added(const std::string& id);
  void on_copy_removed(const std::string& id);

  Summary summary() const;

  struct TimelineRow {
    double time = 0;
    std::int64_t created = 0;    // cumulative
    std::int64_t delivered = 0;  // cumulative first deliveries
    double rate = 0;             // delivered / created, 0 when none created
  };
  // One row per interval boundary from 0 through end_time.
  std::vector<TimelineRow> timeseries(double interval, double end_time) const;

  std::map<int, std::int64_t> hop_histogram() const;

  // Per-message final-state partition: created = delivered + alive + fully_dropped.
  std::int64_t alive_message_count() const;          // undelivered, >=1 copy held
  std::int64_t fully_dropped_message_count() const;  // undelivered, no copies left

  bool was_delivered(const std::string& id) const {
    auto it = per_message_.find(id);
    return it != per_message_.end() && it->second.delivered;
  }
  std::int64_t created_count() const { return static_cast<std::int64_t>(creation_times_.size()); }
  std::int64_t delivered_count() const { return static_cast<std::int64_t>(delivery_times_.size()); }
  const std::vector<double>& latency_samples() const { return latency_samples_; }
  const std::vector<int>& hop_samples() const { return hop_samples_; }
  const std::vector<double>& buffer_time_samples() const { return buffer_time_samples_; }

 private:
  struct MessageState {
    bool delivered = false;
    int copies_alive = 0;
  };

  std::int64_t started_ = 0;
  std::int64_t relayed_ = 0;
  std::int64_t dropped_buffer_ = 0;
  std::int64_t dropped_expired_ = 0;
  std::vector<double> creation_times_;  // chronological
  std::vector<double> delivery_times_;  // chronological
  std::vector<double> latency_samples_;
  std::vector<int> hop_samples_;
  std::vector<double> buffer_time_samples_;
  std::unordered_map<std::string, MessageState> per_message_;
};

}  // namespace dtnsim
