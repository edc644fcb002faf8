#pragma once

// Per-node bounded message store. Copies are kept in receive order; admission
// evicts oldest-received copies first, never one that is mid-transmission.

#include <cstdint>
#include <list>
#include <string>
#include <unordered_map>
#include <vector>

#include "dtnsim/message.hpp"

namespace dtnsim {

enum class InsertOutcome {
  accepted,
  rejected_oversize,   // larger than total capacity
  rejected_duplicate,  // node already holds this id
  rejected_no_space,   // in-flight copies block enough eviction
};

enum class DropReason { evicted, expired };

struct DropRecord {
  MessagePtr msg;
  double residence_time = 0;  // seconds the copy sat in this buffer
  DropReason reason = DropReason::evicted;
};

struct InsertResult {
  InsertOutcome outcome = InsertOutcome::accepted;
  std::vector<DropRecord> dropped;  // evictions performed to admit the copy
};

class Buffer {
 public:
  explicit Buffer(std::int64_t capacity) : capacity_(capacity) {}

  // Evictions are planned first and only executed when admission succeeds, so
  // a rejected insert never drops anything.
  InsertResult insert(Copy copy, double now);

  // Strict age test: a copy is expired when now - created_at > ttl. In-flight
  // copies are skipped and caught on a later step.
  std::vector<DropRecord> expire(double now);

  // Sender-side cleanup after delivering to the destination; never produces a
  // drop record. No-op (returns false) when the id is absent.
  bool remove_on_delivery(const std::string& id);

  Copy* find(const std::string& id);
  const Copy* find(const std::string& id) const;
  bool contains(const std::string& id) const { return index_.count(id) != 0; }
  void set_in_flight(const std::string& id, bool v);

  std::int64_t capacity() const { return capacity_; }
  std::int64_t occupancy() const { return occupancy_; }
  std::size_t copy_count() const { return copies_.size(); }
  const std::list<Copy>& copies() const { return copies_; }  // receive order

  // Bumped on every content change; lets send scans over unchanged
  // buffer pairs be skipped.
  std::uint64_t version() const { return version_; }
  // Number of held copies destined to `dest`.
  int dest_count(NodeId dest) const;
  // Oldest-received copy destined to `dest`; nullptr when none.
  const Copy* oldest_for(NodeId dest) const;

 private:
  void index_add(std::list<Copy>::iterator it);
  void index_remove(std::list<Copy>::iterator it);

  std::int64_t capacity_ = 0;
  std::int64_t occupancy_ = 0;
  std::uint64_t version_ = 0;
  std::list<Copy> copies_;
  std::unordered_map<std::string, std::list<Copy>::iterator> index_;
  std::unordered_map<NodeId, int> dest_counts_;
};

}  // namespace dtnsim
