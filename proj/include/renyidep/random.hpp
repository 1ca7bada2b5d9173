#pragma once

// Deterministic randomness utilities. std::mt19937_64 output is bit-exact
// across platforms; the distribution adapters here are hand-rolled because
// the standard <random> distributions are implementation-defined and the
// library promises identical results for identical seeds everywhere.

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

namespace renyidep::detail {

// Independent stream derived from (seed, tags): restarts, trials and sweep
// points get their own engines so results do not depend on scheduling order.
inline std::mt19937_64 seeded_engine(std::uint64_t seed, std::uint32_t tag,
                                     std::uint32_t index = 0) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed & 0xffffffffu),
                    static_cast<std::uint32_t>(seed >> 32), tag, index};
  return std::mt19937_64(seq);
}

// Uniform on (0, 1); never returns 0 so logs are safe.
inline double uniform_unit(std::mt19937_64& g) {
  return (static_cast<double>(g() >> 11) + 0.5) * 0x1.0p-53;
}

// Uniform integer in [0, n), rejection-sampled to stay unbiased.
inline std::uint64_t bounded_uint64(std::mt19937_64& g, std::uint64_t n) {
  if (n <= 1) return 0;
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
  for (;;) {
    const std::uint64_t v = g();
    if (v < limit) return v % n;
  }
}

// Uniform draw from the n-simplex (symmetric Dirichlet(1)) via normalized
// exponentials; entries are almost surely strictly positive.
inline std::vector<double> dirichlet_uniform(std::mt19937_64& g, std::size_t n) {
  std::vector<double> w(n);
  double sum = 0.0;
  for (double& v : w) {
    v = -std::log(uniform_unit(g));
    sum += v;
  }
  for (double& v : w) v /= sum;
  return w;
}

}  // namespace renyidep::detail
