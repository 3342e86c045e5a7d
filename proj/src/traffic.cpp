#include "dtnsim/traffic.h"

#include <limits>

namespace dtnsim {

double next_event_time(Rng& rng, double now, Range interval) {
  return now + rng.uniform(interval.min, interval.max);
}

TrafficGenerator::TrafficGenerator(Range interval, std::uint64_t size,
                                   std::vector<HostIndex> sources,
                                   std::vector<HostIndex> destinations, DestMode mode,
                                   std::uint32_t tokens, double ttl, Rng rng)
    : interval_(interval),
      size_(size),
      sources_(std::move(sources)),
      destinations_(std::move(destinations)),
      mode_(mode),
      tokens_(tokens),
      ttl_(ttl),
      rng_(rng) {
  next_ = active() ? next_event_time(rng_, 0.0, interval_)
                   : std::numeric_limits<double>::infinity();
}

TrafficGenerator TrafficGenerator::none() {
  return TrafficGenerator({1.0, 1.0}, 1, {}, {}, DestMode::random_unicast, 0, 0.0, Rng(0));
}

Message TrafficGenerator::create_message() {
  Message m;
  m.id = next_id_++;
  m.source = sources_[turn_++ % sources_.size()];
  m.destination = mode_ == DestMode::anycast ? kAnycast
                                             : destinations_[rng_.index(destinations_.size())];
  m.size = size_;
  m.created_at = next_;
  m.ttl = ttl_;
  m.tokens = tokens_;
  m.hops = 0;
  next_ = next_event_time(rng_, next_, interval_);
  return m;
}

}  // namespace dtnsim
