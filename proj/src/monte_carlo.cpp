#include "zeris/monte_carlo.hpp"

#include <atomic>
#include <cmath>
#include <thread>

#include "zeris/error.hpp"

namespace zeris {

using cplx = std::complex<double>;

void EventCounts::add(const FrameOutcome& f) {
  ++n;
  energy_outage += f.energy_outage;
  data_outage += f.data_outage;
  energy_and_data += f.energy_outage && f.data_outage;
  intercepted += f.intercepted;
  bool o = f.energy_outage || f.data_outage;
  bool i = !f.energy_outage && f.intercepted;
  jop += o;
  jip += i;
  jop_and_jip += o && i;
}

EventCounts& EventCounts::operator+=(const EventCounts& o) {
  n += o.n;
  energy_outage += o.energy_outage;
  data_outage += o.data_outage;
  energy_and_data += o.energy_and_data;
  intercepted += o.intercepted;
  jop += o.jop;
  jip += o.jip;
  jop_and_jip += o.jop_and_jip;
  return *this;
}

namespace {

// Cascaded products shared by every phase design of one frame.
struct Cascades {
  Eigen::ArrayXcd ua, ue, je;  // h_ur h_ra, h_ur h_re, h_jr h_re
  Eigen::ArrayXcd to_user, to_jammer;

  void load(const ChannelRealization& h) {
    ua = h.h_ur.array() * h.h_ra.array();
    ue = h.h_ur.array() * h.h_re.array();
    je = h.h_jr.array() * h.h_re.array();
    to_user = ua.unaryExpr([](cplx g) { return std::conj(g) / std::sqrt(std::norm(g)); });
    to_jammer = je.unaryExpr([](cplx g) { return std::conj(g) / std::sqrt(std::norm(g)); });
  }
};

FrameOutcome evaluate(Mode m, const SystemParams& p, const DerivedConstants& c, const ChannelRealization& h,
                      const Cascades& k, bool los) {
  const Eigen::Index n = h.size();
  FrameOutcome f;
  f.harvested_energy = p.eta * p.tau * p.T * p.Ps * std::norm(h.h_pr.sum()) * c.beta_pr;
  f.energy_outage = f.harvested_energy < c.Q;

  cplx sa = 0, se = 0, sj = 0;
  auto accumulate = [&](Eigen::Index i, cplx theta) {
    sa += k.ua[i] * theta;
    se += k.ue[i] * theta;
    sj += k.je[i] * theta;
  };
  switch (m.tag) {
    case ModeTag::I:
    case ModeTag::BenchmarkI:
      for (Eigen::Index i = 0; i < n; ++i) accumulate(i, k.to_user[i]);
      break;
    case ModeTag::II:
      for (Eigen::Index i = 0; i < n; ++i) accumulate(i, k.to_jammer[i]);
      break;
    case ModeTag::III:
      for (Eigen::Index i = 0; i < n; ++i) accumulate(i, i < p.N1 ? k.to_user[i] : k.to_jammer[i]);
      break;
    case ModeTag::BenchmarkII:
      for (Eigen::Index i = 0; i < n; ++i) accumulate(i, std::polar(1.0, h.random_phase[i]));
      break;
  }
  const double gu = los ? 1.0 : std::norm(h.h_pu);
  const double gj = los ? 1.0 : std::norm(h.h_pj);
  f.snr_a = c.rho_t * c.beta_pu * c.beta_ura * gu * std::norm(sa);
  double jam = m.tag == ModeTag::BenchmarkI ? 0.0 : c.rho_t * c.beta_pj * c.beta_jre * gj * std::norm(sj);
  f.snr_e = c.rho_t * c.beta_pu * c.beta_ure * gu * std::norm(se) / (jam + 1.0);
  f.data_outage = (1.0 - p.tau) * std::log2(1.0 + f.snr_a) < p.R;
  f.intercepted = (1.0 - p.tau) * std::log2(1.0 + f.snr_e) >= p.R;
  return f;
}

MetricEstimate binomial(std::uint64_t hits, std::uint64_t n, std::uint64_t seed) {
  MetricEstimate e;
  e.n = n;
  e.seed = seed;
  e.value = n ? static_cast<double>(hits) / n : 0.0;
  e.std_error = n ? std::sqrt(e.value * (1.0 - e.value) / n) : 0.0;
  return e;
}

}  // namespace

FrameOutcome simulate_frame(Mode m, const SystemParams& p, const DerivedConstants& c, const ChannelRealization& h,
                            bool los) {
  if (h.size() != p.N) throw InvalidArgument("simulate_frame: realization size differs from N");
  Cascades k;
  k.load(h);
  return evaluate(m, p, c, h, k, los);
}

FrameOutcome simulate_frame(Mode m, const SystemParams& p, const ChannelRealization& h, bool los) {
  return simulate_frame(m, p, derive_constants(p), h, los);
}

MonteCarloEstimate summarize(const EventCounts& k, const SystemParams& p, std::uint64_t seed) {
  MonteCarloEstimate e;
  e.counts = k;
  e.jop = binomial(k.jop, k.n, seed);
  e.jip = binomial(k.jip, k.n, seed);
  // Per-frame secrecy indicator 1 - [outage] - [intercept] takes values in {-1, 0, 1}.
  double n = static_cast<double>(k.n);
  double mean = n > 0 ? (static_cast<double>(k.n) - static_cast<double>(k.jop) - static_cast<double>(k.jip)) / n : 0.0;
  double second = n > 0 ? (n - k.jop - k.jip + 2.0 * k.jop_and_jip) / n : 0.0;
  double var = std::max(second - mean * mean, 0.0);
  double scale = p.R / p.Ps;
  e.see.n = k.n;
  e.see.seed = seed;
  e.see.value = scale * std::max(mean, 0.0);
  e.see.std_error = n > 0 ? scale * std::sqrt(var / n) : 0.0;
  return e;
}

std::vector<MonteCarloEstimate> estimate(const std::vector<Mode>& modes, const SystemParams& p,
                                         std::uint64_t n_trials, std::uint64_t seed, const MonteCarloOptions& opt) {
  if (n_trials < 1000) throw InvalidArgument("estimate: at least 1000 trials required");
  if (modes.empty()) throw InvalidArgument("estimate: no modes given");
  if (opt.block_size == 0) throw InvalidArgument("estimate: block size must be positive");
  const auto c = derive_constants(p);
  const std::uint64_t blocks = (n_trials + opt.block_size - 1) / opt.block_size;
  std::vector<std::vector<EventCounts>> per_block(blocks, std::vector<EventCounts>(modes.size()));

  std::atomic<std::uint64_t> next{0};
  auto worker = [&] {
    ChannelRealization h;
    Cascades k;
    for (std::uint64_t b = next++; b < blocks; b = next++) {
      Rng rng(RngState{seed, derive_stream(opt.cell, b)});
      std::uint64_t count = std::min(opt.block_size, n_trials - b * opt.block_size);
      auto& out = per_block[b];
      for (std::uint64_t t = 0; t < count; ++t) {
        sample_realization(p.N, rng, h);
        k.load(h);
        for (std::size_t m = 0; m < modes.size(); ++m) out[m].add(evaluate(modes[m], p, c, h, k, opt.los));
      }
    }
  };
  unsigned threads = opt.threads ? opt.threads : std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::uint64_t>(threads, blocks));
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned i = 0; i < threads; ++i) pool.emplace_back(worker);
  }

  std::vector<MonteCarloEstimate> result;
  for (std::size_t m = 0; m < modes.size(); ++m) {
    EventCounts total;
    for (const auto& blk : per_block) total += blk[m];
    result.push_back(summarize(total, p, seed));
  }
  return result;
}

MonteCarloEstimate estimate(Mode m, const SystemParams& p, std::uint64_t n_trials, std::uint64_t seed,
                            const MonteCarloOptions& opt) {
  return estimate(std::vector<Mode>{m}, p, n_trials, seed, opt).front();
}

}  // namespace zeris
