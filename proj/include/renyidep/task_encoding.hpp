#pragma once

// Distributed task encoding: the rate region whose sum bound is
// H_{1/(1+rho)}(X,Y) + K_{1/(1+rho)}(X;Y), and a desk-scale simulator of
// random-binning encoders that estimates the rho-th moment of the decoder's
// list size. X^n and Y^n are encoded separately; the decoder lists every
// pair of sequences sharing both descriptions, including pairs with
// posterior probability zero.

#include <cmath>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <unordered_map>
#include <vector>

#include "renyidep/measures.hpp"
#include "renyidep/pmf.hpp"
#include "renyidep/random.hpp"
#include "renyidep/solver.hpp"

namespace renyidep {

struct RateRegion {
  double rho = 0.0;
  double rx_min = 0.0;   // bits per source symbol
  double ry_min = 0.0;
  double sum_min = 0.0;
  bool k_converged = true;

  bool contains(double rx, double ry) const {
    return rx >= rx_min && ry >= ry_min && rx + ry >= sum_min;
  }
};

// The three bounds of the rate region for a fixed rho > 0:
//   R_X >= H_{1/(1+rho)}(X),  R_Y >= H_{1/(1+rho)}(Y),
//   R_X + R_Y >= H_{1/(1+rho)}(X,Y) + K_{1/(1+rho)}(X;Y).
inline RateRegion rate_region(const JointPmf& j, double rho, const SolverConfig& cfg = {}) {
  if (!(rho > 0.0) || !std::isfinite(rho)) {
    throw std::invalid_argument("rate_region: rho must be a finite positive real");
  }
  const AlphaOrder alpha(1.0 / (1.0 + rho));
  const MeasureResult k = compute_k_alpha(j, alpha, cfg);
  RateRegion r;
  r.rho = rho;
  r.rx_min = renyi_entropy(j.marginal_x(), alpha).bits();
  r.ry_min = renyi_entropy(j.marginal_y(), alpha).bits();
  r.sum_min = renyi_entropy(j.flattened(), alpha).bits() + k.value.bits();
  r.k_converged = k.converged;
  return r;
}

// One i.i.d. uniform random binning draw: every length-n sequence gets an
// independent bin. pop[s] counts the sequences sharing s's bin (including
// s itself), which is exactly s's contribution to any decoder list.
struct BinAssignment {
  int n = 1;
  std::uint64_t bins_x = 1, bins_y = 1;
  std::vector<std::uint32_t> popx, popy;  // indexed by sequence number
};

namespace detail {

inline std::uint64_t checked_pow(std::size_t base, int n, std::uint64_t cap,
                                 const char* what) {
  std::uint64_t v = 1;
  for (int i = 0; i < n; ++i) {
    if (v > cap / base) throw std::invalid_argument(std::string(what) + ": too many sequences");
    v *= base;
  }
  return v;
}

inline std::uint64_t bin_count(int n, double rate) {
  const double b = std::exp2(n * rate);
  // 2^63 bins make collisions impossible at any enumerable scale.
  if (b >= 9.22e18) return std::uint64_t{1} << 63;
  return std::max<std::uint64_t>(1, static_cast<std::uint64_t>(b));
}

inline std::vector<std::uint32_t> popularity(std::uint64_t n_seq, std::uint64_t bins,
                                             std::mt19937_64& g) {
  std::vector<std::uint64_t> f(n_seq);
  std::unordered_map<std::uint64_t, std::uint32_t> count;
  count.reserve(n_seq * 2);
  for (auto& b : f) {
    b = bounded_uint64(g, bins);
    ++count[b];
  }
  std::vector<std::uint32_t> pop(n_seq);
  for (std::uint64_t s = 0; s < n_seq; ++s) pop[s] = count[f[s]];
  return pop;
}

}  // namespace detail

// Draws the random encoders f_n: X^n -> {1..floor(2^(n Rx))} and g_n
// analogously, deterministic given the seed. The same seed yields the same
// encoders in exact and Monte Carlo mode.
inline BinAssignment draw_bin_assignment(const JointPmf& j, int n, double rx, double ry,
                                         std::uint64_t seed) {
  if (n < 1) throw std::invalid_argument("draw_bin_assignment: n must be >= 1");
  if (rx < 0.0 || ry < 0.0) {
    throw std::invalid_argument("draw_bin_assignment: rates must be nonnegative");
  }
  constexpr std::uint64_t kSeqCap = std::uint64_t{1} << 27;
  const std::uint64_t n_x = detail::checked_pow(j.nx(), n, kSeqCap, "draw_bin_assignment");
  const std::uint64_t n_y = detail::checked_pow(j.ny(), n, kSeqCap, "draw_bin_assignment");
  BinAssignment b;
  b.n = n;
  b.bins_x = detail::bin_count(n, rx);
  b.bins_y = detail::bin_count(n, ry);
  auto g = detail::seeded_engine(seed, /*tag=*/2);
  b.popx = detail::popularity(n_x, b.bins_x, g);
  b.popy = detail::popularity(n_y, b.bins_y, g);
  return b;
}

struct SimOutcome {
  int n = 1;
  double rx = 0.0, ry = 0.0;
  double rho = 1.0;
  double moment_estimate = 1.0;  // rho-th moment of the list size, >= 1
  enum class Method { kExact, kMonteCarlo } method = Method::kExact;
  std::int64_t trials = 0;   // 0 in exact mode
  std::uint64_t seed = 0;
  double std_error = 0.0;    // 0 in exact mode
};

// E[|list|^rho] for one random-binning draw. Exact mode enumerates every
// source pair (x^n, y^n) weighted by the i.i.d. product law (capped at 10^7
// pairs); Monte Carlo samples the source `trials` times. The true pair is
// always in its own list, so the moment is at least 1.
inline SimOutcome simulate_list_moment(const JointPmf& j, int n, double rx, double ry,
                                       double rho, std::int64_t trials, std::uint64_t seed,
                                       bool exact) {
  if (!(rho > 0.0) || !std::isfinite(rho)) {
    throw std::invalid_argument("simulate_list_moment: rho must be a finite positive real");
  }
  const BinAssignment bins = draw_bin_assignment(j, n, rx, ry, seed);
  const std::uint64_t n_x = bins.popx.size();
  const std::uint64_t n_y = bins.popy.size();

  SimOutcome out;
  out.n = n;
  out.rx = rx;
  out.ry = ry;
  out.rho = rho;
  out.seed = seed;

  if (exact) {
    if (n_x > 10000000ull / n_y) {
      throw std::invalid_argument("simulate_list_moment: exact enumeration over 10^7 pairs");
    }
    out.method = SimOutcome::Method::kExact;
    // Depth-first over positions, building both sequence numbers and the
    // running product probability.
    double moment = 0.0;
    const std::size_t nx = j.nx(), ny = j.ny();
    std::function<void(int, std::uint64_t, std::uint64_t, double)> rec =
        [&](int depth, std::uint64_t ix, std::uint64_t iy, double prob) {
          if (prob == 0.0) return;
          if (depth == n) {
            moment += prob * std::pow(static_cast<double>(bins.popx[ix]) *
                                          static_cast<double>(bins.popy[iy]),
                                      rho);
            return;
          }
          for (std::size_t x = 0; x < nx; ++x)
            for (std::size_t y = 0; y < ny; ++y)
              rec(depth + 1, ix * nx + x, iy * ny + y, prob * j.at(x, y));
        };
    rec(0, 0, 0, 1.0);
    out.moment_estimate = moment;
    return out;
  }

  if (trials < 1) throw std::invalid_argument("simulate_list_moment: zero trials");
  out.method = SimOutcome::Method::kMonteCarlo;
  out.trials = trials;
  auto g = detail::seeded_engine(seed, /*tag=*/3);
  const std::size_t nx = j.nx(), ny = j.ny();
  double sum = 0.0, sum_sq = 0.0;
  for (std::int64_t t = 0; t < trials; ++t) {
    std::uint64_t ix = 0, iy = 0;
    for (int i = 0; i < n; ++i) {
      double u = detail::uniform_unit(g);
      std::size_t cell = nx * ny - 1;
      for (std::size_t c = 0; c < nx * ny; ++c) {
        u -= j.probs()[c];
        if (u <= 0.0) {
          cell = c;
          break;
        }
      }
      ix = ix * nx + cell / ny;
      iy = iy * ny + cell % ny;
    }
    const double v = std::pow(
        static_cast<double>(bins.popx[ix]) * static_cast<double>(bins.popy[iy]), rho);
    sum += v;
    sum_sq += v * v;
  }
  const double mean = sum / trials;
  out.moment_estimate = mean;
  if (trials > 1) {
    const double var = std::max(0.0, (sum_sq - trials * mean * mean) / (trials - 1));
    out.std_error = std::sqrt(var / trials);
  }
  return out;
}

}  // namespace renyidep
