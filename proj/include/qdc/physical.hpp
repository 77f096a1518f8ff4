#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>

#include "qdc/rng.hpp"
#include "qdc/topology.hpp"
#include "qdc/types.hpp"

namespace qdc {

struct ProtocolParams {
  Duration attempt_time = 0;
  double success_prob = 0.0;
};

inline void validate(const ProtocolParams& p) {
  if (p.attempt_time <= 0) throw ConfigError("attempt time must be positive");
  if (!(p.success_prob > 0.0) || p.success_prob > 1.0)
    throw ConfigError("success probability must lie in (0, 1]");
}

// Evaluation defaults: intra-rack 1 us attempts at p=0.5, cross-rack 10 ms
// attempts at p=0.2, 1 ms optical switch reconfiguration.
struct PhysicalConfig {
  ProtocolParams intra{1 * kMicrosecond, 0.5};
  ProtocolParams cross{10 * kMillisecond, 0.2};
  Duration reconfig_delay = 1 * kMillisecond;

  const ProtocolParams& params_for(PairClass cls) const {
    if (cls == PairClass::local)
      throw std::invalid_argument("local pairs do not generate entanglement");
    return cls == PairClass::intra ? intra : cross;
  }
};

inline void validate(const PhysicalConfig& p) {
  validate(p.intra);
  validate(p.cross);
  if (p.reconfig_delay < 0) throw ConfigError("reconfiguration delay must be >= 0");
}

// Guards pathological configurations (p -> 0) from hanging a run.
inline constexpr std::int64_t kDefaultAttemptCap = 10'000'000;

// Duration of one entanglement generation: reconfig plus k attempts, where k
// is the index of the first success in Bernoulli(success_prob) draws.
// Consumes exactly k draws from the stream.
template <class Stream>
Duration sample_generation_time(const ProtocolParams& params, Duration reconfig, Stream& stream,
                                std::int64_t attempt_cap = kDefaultAttemptCap) {
  validate(params);
  std::int64_t attempts = 1;
  while (stream.next_unit() >= params.success_prob) {
    if (++attempts > attempt_cap)
      throw SimulationError("entanglement generation exceeded the attempt cap");
  }
  return reconfig + attempts * params.attempt_time;
}

// Closed form used by the expected-latency scheduler: reconfig plus the mean
// of the geometric attempt count, rounded to the nearest nanosecond.
inline Duration expected_generation_time(const ProtocolParams& params, Duration reconfig) {
  validate(params);
  return reconfig +
         static_cast<Duration>(std::llround(static_cast<double>(params.attempt_time) /
                                            params.success_prob));
}

}  // namespace qdc
