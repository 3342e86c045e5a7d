#include "dtnsim/buffer.h"

namespace dtnsim {

std::uint64_t Buffer::evictable_bytes() const {
  std::uint64_t total = 0;
  for (const Message& m : store_) {
    if (m.source != owner_) total += m.size;
  }
  return total;
}

bool Buffer::can_admit(const Message& m) const {
  if (contains(m.id) || m.size > capacity_) return false;
  const std::uint64_t free = capacity_ - occupancy_;
  if (m.size <= free) return true;
  return evictable_bytes() >= m.size - free;
}

void Buffer::erase_at(std::size_t pos) {
  occupancy_ -= store_[pos].size;
  slot_.erase(store_[pos].id);
  store_.erase(store_.begin() + static_cast<std::ptrdiff_t>(pos));
  for (std::size_t i = pos; i < store_.size(); ++i) slot_[store_[i].id] = i;
}

Buffer::Admission Buffer::enqueue(const Message& m) {
  Admission result;
  if (!can_admit(m)) return result;
  while (capacity_ - occupancy_ < m.size) {
    std::size_t victim = store_.size();
    for (std::size_t i = 0; i < store_.size(); ++i) {
      if (store_[i].source == owner_) continue;
      if (victim == store_.size() || store_[i].created_at < store_[victim].created_at) victim = i;
    }
    result.evicted.push_back(store_[victim]);
    erase_at(victim);
  }
  slot_[m.id] = store_.size();
  store_.push_back(m);
  occupancy_ += m.size;
  result.admitted = true;
  return result;
}

std::vector<Message> Buffer::expire(double now) {
  std::vector<Message> gone;
  for (const Message& m : store_) {
    if (m.expired(now)) gone.push_back(m);
  }
  for (const Message& m : gone) remove(m.id);
  return gone;
}

std::optional<Message> Buffer::remove(MessageId id) {
  auto it = slot_.find(id);
  if (it == slot_.end()) return std::nullopt;
  Message m = store_[it->second];
  erase_at(it->second);
  return m;
}

const Message* Buffer::find(MessageId id) const {
  auto it = slot_.find(id);
  return it == slot_.end() ? nullptr : &store_[it->second];
}

Message* Buffer::find(MessageId id) {
  auto it = slot_.find(id);
  return it == slot_.end() ? nullptr : &store_[it->second];
}

}  // namespace dtnsim
