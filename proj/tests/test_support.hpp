#pragma once

#include <cmath>
#include <cstdint>

#include "crowdflow/model.hpp"

namespace testsupport {

// Deterministic xorshift generator so property tests are reproducible.
class Rng {
 public:
  explicit Rng(std::uint64_t seed = 0x9e3779b97f4a7c15ull) : state_(seed) {}

  std::uint64_t next() {
    state_ ^= state_ << 13;
    state_ ^= state_ >> 7;
    state_ ^= state_ << 17;
    return state_;
  }

  double uniform(double lo, double hi) {
    return lo + (hi - lo) * (next() >> 11) * 0x1.0p-53;
  }

 private:
  std::uint64_t state_;
};

// Independent route for (rho/rho_bar)^a: std::pow instead of exp(a log).
inline double pow_ratio(double rho, const crowdflow::SystemParams& p) {
  return std::pow(rho / p.rho_bar, p.a_exp);
}

inline crowdflow::SystemParams params_with(double a_exp, double rho_bar,
                                           crowdflow::SourceTerm source = crowdflow::SourceTerm::zero()) {
  crowdflow::SystemParams p;
  p.a_exp = a_exp;
  p.rho_bar = rho_bar;
  p.source = std::move(source);
  return p;
}

}  // namespace testsupport
