#include "dtnsim/buffer.hpp"

#include <cassert>

namespace dtnsim {

void Buffer::index_add(std::list<Copy>::iterator it) {
  index_[it->msg->id] = it;
  ++dest_counts_[it->msg->destination];
}

void Buffer::index_remove(std::list<Copy>::iterator it) {
  index_.erase(it->msg->id);
  auto dc = dest_counts_.find(it->msg->destination);
  if (--dc->second == 0) dest_counts_.erase(dc);
}

InsertResult Buffer::insert(Copy copy, double now) {
  assert(copy.msg);
  const std::int64_t size = copy.msg->size;
  if (index_.count(copy.msg->id)) return {InsertOutcome::rejected_duplicate, {}};
  if (size > capacity_) return {InsertOutcome::rejected_oversize, {}};

  std::vector<std::list<Copy>::iterator> plan;
  std::int64_t freed = 0;
  if (occupancy_ + size > capacity_) {
    for (auto it = copies_.begin(); it != copies_.end(); ++it) {
      if (it->in_flight) continue;
      plan.push_back(it);
      freed += it->msg->size;
      if (occupancy_ - freed + size <= capacity_) break;
    }
    if (occupancy_ - freed + size > capacity_) return {InsertOutcome::rejected_no_space, {}};
  }

  InsertResult result;
  for (auto it : plan) {
    result.dropped.push_back(DropRecord{it->msg, now - it->received_at, DropReason::evicted});
    occupancy_ -= it->msg->size;
    index_remove(it);
    copies_.erase(it);
  }
  copies_.push_back(std::move(copy));
  index_add(std::prev(copies_.end()));
  occupancy_ += size;
  ++version_;
  result.outcome = InsertOutcome::accepted;
  return result;
}

std::vector<DropRecord> Buffer::expire(double now) {
  std::vector<DropRecord> out;
  for (auto it = copies_.begin(); it != copies_.end();) {
    if (!it->in_flight && now - it->msg->created_at > it->msg->ttl_seconds) {
      out.push_back(DropRecord{it->msg, now - it->received_at, DropReason::expired});
      occupancy_ -= it->msg->size;
      index_remove(it);
      it = copies_.erase(it);
      ++version_;
    } else {
      ++it;
    }
  }
  return out;
}

bool Buffer::remove_on_delivery(const std::string& id) {
  auto it = index_.find(id);
  if (it == index_.end()) return false;
  auto node = it->second;
  occupancy_ -= node->msg->size;
  index_remove(node);
  copies_.erase(node);
  ++version_;
  return true;
}

Copy* Buffer::find(const std::string& id) {
  auto it = index_.find(id);
  return it == index_.end() ? nullptr : &*it->second;
}

const Copy* Buffer::find(const std::string& id) const {
  auto it = index_.find(id);
  return it == index_.end() ? nullptr : &*it->second;
}

void Buffer::set_in_flight(const std::string& id, bool v) {
  Copy* c = find(id);
  assert(c);
  c->in_flight = v;
}

int Buffer::dest_count(NodeId dest) const {
  auto it = dest_counts_.find(dest);
  return it == dest_counts_.end() ? 0 : it->second;
}

const Copy* Buffer::oldest_for(NodeId dest) const {
  if (dest_count(dest) == 0) return nullptr;
  for (const Copy& c : copies_)
    if (c.msg->destination == dest) return &c;
  return nullptr;
}

}  // namespace dtnsim
