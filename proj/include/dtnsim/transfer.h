#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <unordered_set>
#include <vector>

#include "dtnsim/contacts.h"
#include "dtnsim/message.h"

namespace dtnsim {

class Buffer;

enum class TransferKind {
  replicate,  // receiver gets a copy, sender keeps its own (epidemic)
  spray,      // tokens are split between sender and receiver at completion
  forward,    // the copy moves; sender drops it
  deliver,    // receiver is a destination of the message
};

struct Transfer {
  MessageId message = 0;
  HostIndex sender = 0;
  HostIndex receiver = 0;
  TransferKind kind = TransferKind::replicate;
  std::uint64_t size = 0;
  double bytes_remaining = 0.0;
  double started_at = 0.0;
};

enum class StartStatus { started, deferred, refused };

/// Outgoing transfer slot per host (one at a time) plus the set of message
/// ids in flight toward each receiver.
class TransferTable {
 public:
  explicit TransferTable(std::size_t hosts) : outgoing_(hosts), incoming_(hosts) {}

  bool busy(HostIndex sender) const { return outgoing_[sender].has_value(); }
  const std::optional<Transfer>& outgoing(HostIndex sender) const { return outgoing_[sender]; }
  bool in_flight(HostIndex receiver, MessageId id) const {
    return incoming_[receiver].count(id) != 0;
  }
  std::size_t active_count() const;
  std::size_t host_count() const { return outgoing_.size(); }

  void put(const Transfer& t);
  void advance(HostIndex sender, double bytes) { outgoing_[sender]->bytes_remaining -= bytes; }
  std::optional<Transfer> take(HostIndex sender);

 private:
  std::vector<std::optional<Transfer>> outgoing_;
  std::vector<std::unordered_multiset<MessageId>> incoming_;
};

/// Begins a transfer of `m`. Deferred when the sender is already sending,
/// refused when the contact is down or the receiver buffer cannot admit the
/// message even after evictions. `receiver_buffer` is null for deliveries,
/// which bypass admission.
StartStatus start_transfer(TransferTable& table, const ContactTracker& contacts,
                           const Buffer* receiver_buffer, HostIndex sender, HostIndex receiver,
                           const Message& m, TransferKind kind, double now);

struct TransferProgress {
  std::vector<Transfer> completed;
  std::vector<Transfer> aborted;
};

/// Advances every live transfer by `bytes_per_tick`. Transfers whose contact
/// is down, or for which `still_valid` returns false, are aborted and leave
/// nothing at the receiver. Results are in sender order.
TransferProgress progress_transfers(TransferTable& table, const ContactTracker& contacts,
                                    double bytes_per_tick,
                                    const std::function<bool(const Transfer&)>& still_valid = {});

}  // namespace dtnsim
