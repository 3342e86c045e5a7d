#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <unordered_set>
#include <vector>

#include "dtnsim/types.h"

namespace dtnsim {

/// Statistics of one finished run.
struct RunReport {
  std::string scenario;
  std::string router;
  std::uint64_t seed = 0;
  std::uint32_t security_count = 0;
  std::string patrol_mode;

  std::uint64_t created = 0;
  std::uint64_t delivered = 0;
  std::uint64_t relayed = 0;
  std::uint64_t dropped = 0;
  std::uint64_t aborted = 0;
  std::uint64_t expired = 0;

  double delivery_ratio = 0.0;
  /// Set when no message was created; delivery_ratio is then 0.
  bool no_messages = false;
  // Absent when nothing was delivered.
  std::optional<double> latency_avg;
  std::optional<double> latency_median;
  std::optional<double> overhead_ratio;
  std::optional<double> hopcount_avg;

  std::string config_digest;

  friend bool operator==(const RunReport&, const RunReport&) = default;
};

/// Event sink for one run. Deliveries are idempotent per message id.
class MetricsRecorder {
 public:
  void created(MessageId id);
  /// Returns true for the first delivery of `id`.
  bool delivered(MessageId id, double latency, std::uint32_t hops);
  void relayed() { ++relayed_; }
  void dropped() { ++dropped_; }
  void aborted() { ++aborted_; }
  void expired() { ++expired_; }

  std::uint64_t created_count() const { return created_; }
  std::uint64_t delivered_count() const { return delivered_ids_.size(); }
  bool was_delivered(MessageId id) const { return delivered_ids_.count(id) != 0; }
  const std::vector<double>& latencies() const { return latencies_; }

  /// Computes ratios and latency statistics; identity fields are left for
  /// the caller.
  RunReport finalize() const;

 private:
  std::uint64_t created_ = 0;
  std::uint64_t relayed_ = 0;
  std::uint64_t dropped_ = 0;
  std::uint64_t aborted_ = 0;
  std::uint64_t expired_ = 0;
  std::unordered_set<MessageId> delivered_ids_;
  std::vector<double> latencies_;
  std::vector<std::uint32_t> hops_;
};

std::string csv_header();
std::string to_csv_row(const RunReport& r);
std::string to_text(const RunReport& r);
std::string to_json(const RunReport& r);
RunReport report_from_json(const std::string& text);

/// Six significant digits, the fixed format used in CSV and text output.
std::string format_number(double v);

}  // namespace dtnsim
