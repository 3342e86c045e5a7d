#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <unordered_map>
#include <vector>

#include "dtnsim/message.h"

namespace dtnsim {

/// Insertion-ordered message store with a byte capacity.
///
/// Drop policy: when a message does not fit, relayed copies (source != owner)
/// are evicted oldest-created first. Copies the owner sourced itself are never
/// evicted.
class Buffer {
 public:
  Buffer(std::uint64_t capacity, HostIndex owner) : capacity_(capacity), owner_(owner) {}

  struct Admission {
    bool admitted = false;
    std::vector<Message> evicted;
  };

  /// True when `m` would be admitted (possibly after evictions).
  bool can_admit(const Message& m) const;

  /// Admits `m`, evicting as needed. A duplicate id or a message that cannot
  /// fit even after evicting every relayed copy is refused and nothing is
  /// evicted.
  Admission enqueue(const Message& m);

  /// Removes copies with `now - created_at > ttl`.
  std::vector<Message> expire(double now);

  std::optional<Message> remove(MessageId id);

  bool contains(MessageId id) const { return slot_.count(id) != 0; }
  const Message* find(MessageId id) const;
  Message* find(MessageId id);

  std::span<const Message> messages() const { return store_; }
  std::size_t size() const { return store_.size(); }
  std::uint64_t capacity() const { return capacity_; }
  std::uint64_t occupancy() const { return occupancy_; }
  HostIndex owner() const { return owner_; }

 private:
  std::uint64_t evictable_bytes() const;
  void erase_at(std::size_t pos);

  std::uint64_t capacity_;
  HostIndex owner_;
  std::uint64_t occupancy_ = 0;
  std::vector<Message> store_;
  std::unordered_map<MessageId, std::size_t> slot_;
};

}  // namespace dtnsim
