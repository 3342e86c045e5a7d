#include "dtnsim/transfer.h"

#include "dtnsim/buffer.h"

namespace dtnsim {

std::size_t TransferTable::active_count() const {
  std::size_t n = 0;
  for (const auto& t : outgoing_) n += t.has_value();
  return n;
}

void TransferTable::put(const Transfer& t) {
  outgoing_[t.sender] = t;
  incoming_[t.receiver].insert(t.message);
}

std::optional<Transfer> TransferTable::take(HostIndex sender) {
  std::optional<Transfer> t = std::move(outgoing_[sender]);
  outgoing_[sender].reset();
  if (t) {
    auto& in = incoming_[t->receiver];
    if (auto it = in.find(t->message); it != in.end()) in.erase(it);
  }
  return t;
}

StartStatus start_transfer(TransferTable& table, const ContactTracker& contacts,
                           const Buffer* receiver_buffer, HostIndex sender, HostIndex receiver,
                           const Message& m, TransferKind kind, double now) {
  if (!contacts.is_up(sender, receiver)) return StartStatus::refused;
  if (table.busy(sender)) return StartStatus::deferred;
  if (receiver_buffer && !receiver_buffer->can_admit(m)) return StartStatus::refused;
  table.put(Transfer{m.id, sender, receiver, kind, m.size, static_cast<double>(m.size), now});
  return StartStatus::started;
}

TransferProgress progress_transfers(TransferTable& table, const ContactTracker& contacts,
                                    double bytes_per_tick,
                                    const std::function<bool(const Transfer&)>& still_valid) {
  TransferProgress out;
  for (HostIndex s = 0; s < table.host_count(); ++s) {
    const auto& slot = table.outgoing(s);
    if (!slot) continue;
    const Transfer& t = *slot;
    if (!contacts.is_up(t.sender, t.receiver) || (still_valid && !still_valid(t))) {
      out.aborted.push_back(*table.take(s));
      continue;
    }
    if (t.bytes_remaining <= bytes_per_tick) {
      Transfer done = *table.take(s);
      done.bytes_remaining = 0.0;
      out.completed.push_back(done);
    } else {
      table.advance(s, bytes_per_tick);
    }
  }
  return out;
}

}  // namespace dtnsim
