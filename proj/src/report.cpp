#include "dtnsim/report.h"

#include <algorithm>
#include <cstdio>
#include <numeric>

#include <json.hpp>

#include "dtnsim/error.h"

namespace dtnsim {

void MetricsRecorder::created(MessageId) { ++created_; }

bool MetricsRecorder::delivered(MessageId id, double latency, std::uint32_t hops) {
  if (!delivered_ids_.insert(id).second) return false;
  latencies_.push_back(latency);
  hops_.push_back(hops);
  return true;
}

RunReport MetricsRecorder::finalize() const {
  RunReport r;
  r.created = created_;
  r.delivered = delivered_ids_.size();
  r.relayed = relayed_;
  r.dropped = dropped_;
  r.aborted = aborted_;
  r.expired = expired_;
  r.no_messages = created_ == 0;
  r.delivery_ratio = created_ == 0 ? 0.0 : static_cast<double>(r.delivered) / static_cast<double>(created_);
  if (!latencies_.empty()) {
    // Latencies are summed in delivery order, which is deterministic.
    double sum = std::accumulate(latencies_.begin(), latencies_.end(), 0.0);
    r.latency_avg = sum / static_cast<double>(latencies_.size());
    std::vector<double> sorted = latencies_;
    std::sort(sorted.begin(), sorted.end());
    const std::size_t n = sorted.size();
    r.latency_median = n % 2 ? sorted[n / 2] : 0.5 * (sorted[n / 2 - 1] + sorted[n / 2]);
    r.overhead_ratio = (static_cast<double>(relayed_) - static_cast<double>(r.delivered)) /
                       static_cast<double>(r.delivered);
    double hop_sum = std::accumulate(hops_.begin(), hops_.end(), 0.0);
    r.hopcount_avg = hop_sum / static_cast<double>(hops_.size());
  }
  return r;
}

std::string format_number(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

namespace {

std::string opt(const std::optional<double>& v) { return v ? format_number(*v) : std::string(); }

}  // namespace

std::string csv_header() {
  return "scenario,router,seed,security_count,patrol_mode,created,delivered,delivery_ratio,"
         "latency_avg,latency_median,overhead_ratio,hopcount_avg,dropped,aborted";
}

std::string to_csv_row(const RunReport& r) {
  std::string s;
  s += r.scenario + ',' + r.router + ',' + std::to_string(r.seed) + ',' +
       std::to_string(r.security_count) + ',' + r.patrol_mode + ',' + std::to_string(r.created) +
       ',' + std::to_string(r.delivered) + ',' + format_number(r.delivery_ratio) + ',' +
       opt(r.latency_avg) + ',' + opt(r.latency_median) + ',' + opt(r.overhead_ratio) + ',' +
       opt(r.hopcount_avg) + ',' + std::to_string(r.dropped) + ',' + std::to_string(r.aborted);
  return s;
}

std::string to_text(const RunReport& r) {
  auto line = [](const char* k, const std::string& v) { return std::string(k) + ": " + v + "\n"; };
  auto optv = [](const std::optional<double>& v) { return v ? format_number(*v) : std::string("n/a"); };
  std::string s;
  s += line("scenario", r.scenario);
  s += line("router", r.router);
  s += line("seed", std::to_string(r.seed));
  s += line("security_count", std::to_string(r.security_count));
  s += line("patrol_mode", r.patrol_mode);
  s += line("created", std::to_string(r.created));
  s += line("delivered", std::to_string(r.delivered));
  s += line("delivery_ratio", format_number(r.delivery_ratio) + (r.no_messages ? " (no messages)" : ""));
  s += line("latency_avg", optv(r.latency_avg));
  s += line("latency_median", optv(r.latency_median));
  s += line("overhead_ratio", optv(r.overhead_ratio));
  s += line("hopcount_avg", optv(r.hopcount_avg));
  s += line("relayed", std::to_string(r.relayed));
  s += line("dropped", std::to_string(r.dropped));
  s += line("aborted", std::to_string(r.aborted));
  s += line("expired", std::to_string(r.expired));
  s += line("config_digest", r.config_digest);
  return s;
}

std::string to_json(const RunReport& r) {
  using nlohmann::ordered_json;
  auto optj = [](const std::optional<double>& v) { return v ? ordered_json(*v) : ordered_json(nullptr); };
  ordered_json j;
  j["scenario"] = r.scenario;
  j["router"] = r.router;
  j["seed"] = r.seed;
  j["security_count"] = r.security_count;
  j["patrol_mode"] = r.patrol_mode;
  j["created"] = r.created;
  j["delivered"] = r.delivered;
  j["delivery_ratio"] = r.delivery_ratio;
  j["latency_avg"] = optj(r.latency_avg);
  j["latency_median"] = optj(r.latency_median);
  j["overhead_ratio"] = optj(r.overhead_ratio);
  j["hopcount_avg"] = optj(r.hopcount_avg);
  j["dropped"] = r.dropped;
  j["aborted"] = r.aborted;
  j["relayed"] = r.relayed;
  j["expired"] = r.expired;
  j["no_messages"] = r.no_messages;
  j["config_digest"] = r.config_digest;
  return j.dump(2);
}

RunReport report_from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw RuntimeError(std::string("report json: ") + e.what());
  }
  auto optd = [&](const char* k) -> std::optional<double> {
    if (!j.contains(k) || j[k].is_null()) return std::nullopt;
    return j[k].get<double>();
  };
  RunReport r;
  try {
    r.scenario = j.at("scenario").get<std::string>();
    r.router = j.at("router").get<std::string>();
    r.seed = j.at("seed").get<std::uint64_t>();
    r.security_count = j.at("security_count").get<std::uint32_t>();
    r.patrol_mode = j.at("patrol_mode").get<std::string>();
    r.created = j.at("created").get<std::uint64_t>();
    r.delivered = j.at("delivered").get<std::uint64_t>();
    r.delivery_ratio = j.at("delivery_ratio").get<double>();
    r.latency_avg = optd("latency_avg");
    r.latency_median = optd("latency_median");
    r.overhead_ratio = optd("overhead_ratio");
    r.hopcount_avg = optd("hopcount_avg");
    r.dropped = j.at("dropped").get<std::uint64_t>();
    r.aborted = j.at("aborted").get<std::uint64_t>();
    r.relayed = j.at("relayed").get<std::uint64_t>();
    r.expired = j.at("expired").get<std::uint64_t>();
    r.no_messages = j.at("no_messages").get<bool>();
    r.config_digest = j.at("config_digest").get<std::string>();
  } catch (const nlohmann::json::exception& e) {
    throw RuntimeError(std::string("report json: ") + e.what());
  }
  return r;
}

}  // namespace dtnsim
