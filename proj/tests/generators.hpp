#pragma once

// Hand-rolled random generators shared by the property tests.

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "vexp/vexp.hpp"

namespace vexp::gen {

class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}

  double uniform(double a = 0.0, double b = 1.0) { return std::uniform_real_distribution<double>(a, b)(rng_); }
  std::size_t size(std::size_t lo, std::size_t hi) { return std::uniform_int_distribution<std::size_t>(lo, hi)(rng_); }
  bool coin(double p = 0.5) { return uniform() < p; }

  /// Partition with random positive cell measures.
  DomainPtr domain(std::size_t n) {
    std::vector<double> lm(n);
    for (auto& v : lm) v = std::log(uniform(0.02, 1.0) / static_cast<double>(n));
    return Domain::from_log_measures(std::move(lm));
  }

  /// Values with deliberate ties and sign changes.
  SampledFunction function(const DomainPtr& d, double spread = 3.0) {
    std::vector<double> v(d->size());
    for (auto& x : v) x = coin(0.2) ? 1.5 : uniform(-spread, spread);
    return {d, std::move(v)};
  }

  ExponentFunction exponent(const DomainPtr& d, double hi = 6.0) {
    std::vector<double> p(d->size());
    for (auto& x : p) x = coin(0.1) ? 1.0 : uniform(1.0, hi);
    return {d, std::move(p), "random"};
  }

 private:
  std::mt19937_64 rng_;
};

}  // namespace vexp::gen
