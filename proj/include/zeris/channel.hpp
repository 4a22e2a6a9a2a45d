#pragma once

#include <complex>
#include <cstdint>
#include <random>

#include <Eigen/Dense>

#include "zeris/params.hpp"

namespace zeris {

struct RngState {
  std::uint64_t seed = 0;
  std::uint64_t stream_id = 0;
};

// Mixes a sweep cell index and trial block into a substream id.
std::uint64_t derive_stream(std::uint64_t cell, std::uint64_t block);

class Rng {
 public:
  explicit Rng(const RngState& s);

  // Circularly symmetric CN(0,1): real and imaginary parts N(0, 1/2).
  std::complex<double> cn();
  // Uniform on (-pi, pi].
  double phase();

  template <typename Derived>
  void fill_cn(Eigen::DenseBase<Derived>& v) {
    for (Eigen::Index i = 0; i < v.size(); ++i) v(i) = cn();
  }

  std::mt19937_64& engine() { return eng_; }

 private:
  std::mt19937_64 eng_;
  std::normal_distribution<double> normal_{0.0, 0.70710678118654752440};
  std::uniform_real_distribution<double> unit_{0.0, 1.0};
};

struct ChannelRealization {
  std::complex<double> h_pu;
  std::complex<double> h_pj;
  Eigen::VectorXcd h_pr, h_ur, h_jr, h_ra, h_re;
  // Phase draws used only by the random-phase benchmark.
  Eigen::VectorXd random_phase;

  Eigen::Index size() const { return h_pr.size(); }
};

void sample_realization(int N, Rng& rng, ChannelRealization& out);
ChannelRealization sample_realization(const SystemParams& p, const RngState& rng);

}  // namespace zeris
