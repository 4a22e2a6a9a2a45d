#pragma once

#include <cstdint>
#include <vector>

#include "zeris/analytic.hpp"
#include "zeris/channel.hpp"
#include "zeris/params.hpp"

namespace zeris {

struct FrameOutcome {
  bool energy_outage = false;
  bool data_outage = false;
  bool intercepted = false;
  double harvested_energy = 0;  // E_ris, joules
  double snr_a = 0;
  double snr_e = 0;
};

struct MetricEstimate {
  double value = 0;
  double std_error = 0;
  std::uint64_t n = 0;
  std::uint64_t seed = 0;
};

// Raw frame counts; merging is plain addition, so block order does not matter.
struct EventCounts {
  std::uint64_t n = 0;
  std::uint64_t energy_outage = 0;
  std::uint64_t data_outage = 0;
  std::uint64_t energy_and_data = 0;
  std::uint64_t intercepted = 0;
  std::uint64_t jop = 0;
  std::uint64_t jip = 0;
  std::uint64_t jop_and_jip = 0;

  void add(const FrameOutcome& f);
  EventCounts& operator+=(const EventCounts& o);
};

struct MonteCarloEstimate {
  MetricEstimate jop;
  MetricEstimate jip;
  MetricEstimate see;
  EventCounts counts;
};

struct MonteCarloOptions {
  bool los = false;               // |h_pu| = |h_pj| = 1
  std::uint64_t cell = 0;         // sweep cell index mixed into substreams
  std::uint64_t block_size = 8192;
  unsigned threads = 0;           // 0: hardware concurrency
};

FrameOutcome simulate_frame(Mode m, const SystemParams& p, const ChannelRealization& h, bool los = false);
FrameOutcome simulate_frame(Mode m, const SystemParams& p, const DerivedConstants& c, const ChannelRealization& h,
                            bool los = false);

MonteCarloEstimate summarize(const EventCounts& counts, const SystemParams& p, std::uint64_t seed);

MonteCarloEstimate estimate(Mode m, const SystemParams& p, std::uint64_t n_trials, std::uint64_t seed,
                            const MonteCarloOptions& opt = {});

// All modes evaluated on the same channel draws.
std::vector<MonteCarloEstimate> estimate(const std::vector<Mode>& modes, const SystemParams& p,
                                         std::uint64_t n_trials, std::uint64_t seed,
                                         const MonteCarloOptions& opt = {});

}  // namespace zeris
