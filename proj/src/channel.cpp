#include "zeris/channel.hpp"

#include <numbers>

namespace zeris {

std::uint64_t derive_stream(std::uint64_t cell, std::uint64_t block) {
  auto mix = [](std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  };
  return mix(mix(cell) ^ block);
}

Rng::Rng(const RngState& s) {
  std::seed_seq seq{static_cast<std::uint32_t>(s.seed), static_cast<std::uint32_t>(s.seed >> 32),
                    static_cast<std::uint32_t>(s.stream_id), static_cast<std::uint32_t>(s.stream_id >> 32)};
  eng_.seed(seq);
}

std::complex<double> Rng::cn() {
  double re = normal_(eng_);
  double im = normal_(eng_);
  return {re, im};
}

double Rng::phase() {
  // (-pi, pi]
  return std::numbers::pi * (1.0 - 2.0 * unit_(eng_));
}

void sample_realization(int N, Rng& rng, ChannelRealization& out) {
  out.h_pu = rng.cn();
  out.h_pj = rng.cn();
  for (auto* v : {&out.h_pr, &out.h_ur, &out.h_jr, &out.h_ra, &out.h_re}) {
    v->resize(N);
    rng.fill_cn(*v);
  }
  out.random_phase.resize(N);
  for (int i = 0; i < N; ++i) out.random_phase[i] = rng.phase();
}

ChannelRealization sample_realization(const SystemParams& p, const RngState& s) {
  p.validate();
  Rng rng(s);
  ChannelRealization r;
  sample_realization(p.N, rng, r);
  return r;
}

}  // namespace zeris
