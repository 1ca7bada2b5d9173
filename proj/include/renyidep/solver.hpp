#pragma once

// The two dependence measures
//   J_alpha(X;Y) = min over product PMFs Q_X Q_Y of  D_alpha(P_XY || Q_X Q_Y)
//   K_alpha(X;Y) = min over product PMFs Q_X Q_Y of  Delta_alpha(P_XY || Q_X Q_Y)
// computed by alternating the exact inner minimizers of the Q_Y-eliminated
// objective, plus closed forms for the self-dependence case, dual-form
// certificates, and an exhaustive simplex-grid oracle for cross-validation.
//
// K is computed through the tilting identity K_alpha(X;Y) = J_{1/alpha} of
// the alpha-tilted joint; witnesses are mapped back through the inverse tilt.
//
// The joint objective is convex in (Q_X, Q_Y) for alpha >= 1/2; below 1/2 it
// is not convex in general, so the solver runs extra random restarts there.

#include <algorithm>
#include <cassert>
#include <cmath>
#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "renyidep/measures.hpp"
#include "renyidep/pmf.hpp"
#include "renyidep/random.hpp"

namespace renyidep {

struct SolverConfig {
  // Convergence: |change of the objective in bits| <= tol * max(1, |value|).
  double tol = 1e-11;
  int max_iters = 10000;
  // Multi-start count. Unset picks the regime default: 1 for alpha >= 1/2
  // (convex, the deterministic start suffices), 8 for alpha < 1/2.
  std::optional<int> n_starts;
  // Simplex resolution of the brute-force oracle.
  int grid_steps = 400;
  std::uint64_t seed = 0;

  void validate() const {
    if (!(tol > 0.0)) throw std::invalid_argument("SolverConfig: tol must be > 0");
    if (max_iters < 1) throw std::invalid_argument("SolverConfig: max_iters must be >= 1");
    if (n_starts && *n_starts < 1)
      throw std::invalid_argument("SolverConfig: n_starts must be >= 1");
    if (grid_steps < 2) throw std::invalid_argument("SolverConfig: grid_steps must be >= 2");
  }
};

enum class SolverRegime { kConvex, kNonconvex };

struct MeasureResult {
  InfoValue value;  // bits
  Pmf qx_opt, qy_opt;
  int iters = 0;
  bool converged = true;
  int starts_used = 1;
  SolverRegime regime = SolverRegime::kConvex;
};

struct DualResult {
  InfoValue value;  // the dual bracket at the candidate maximizer, bits
  JointPmf r_opt;
  double certificate_gap = 0.0;  // bits; small gap certifies optimality
};

enum class DependenceMeasure { kJ, kK };

namespace detail {

struct Matrix {
  std::vector<double> p;
  std::size_t nx = 0, ny = 0;
  double at(std::size_t x, std::size_t y) const { return p[x * ny + y]; }
};

inline Matrix transposed(const Matrix& m) {
  Matrix t{std::vector<double>(m.p.size()), m.ny, m.nx};
  for (std::size_t x = 0; x < m.nx; ++x)
    for (std::size_t y = 0; y < m.ny; ++y) t.p[y * m.nx + x] = m.at(x, y);
  return t;
}

// ln R(y) = (1/alpha) ln sum_x P(x,y)^alpha q(x)^(1-alpha) for every column.
// A column with no mass gets -inf; a zero q(x) against column mass with
// alpha > 1 gets +inf (the objective is infinite there).
inline void column_log_scores(const Matrix& m, const std::vector<double>& q, double alpha,
                              std::vector<double>& ln_r) {
  ln_r.assign(m.ny, -kInf);
  std::vector<double> terms;
  for (std::size_t y = 0; y < m.ny; ++y) {
    terms.clear();
    bool infinite = false;
    for (std::size_t x = 0; x < m.nx; ++x) {
      const double pxy = m.at(x, y);
      if (pxy == 0.0) continue;
      if (q[x] == 0.0) {
        if (alpha > 1.0) {
          infinite = true;
          break;
        }
        continue;
      }
      terms.push_back(alpha * std::log(pxy) + (1.0 - alpha) * std::log(q[x]));
    }
    if (infinite) {
      ln_r[y] = kInf;
    } else if (!terms.empty()) {
      ln_r[y] = log_sum_exp(terms) / alpha;
    }
  }
}

// (alpha/(alpha-1)) log2 sum_y R(y): the value of min over Q_Y of
// D_alpha(P || q x Q_Y).
inline double reduced_objective_bits(const Matrix& m, const std::vector<double>& q,
                                     double alpha) {
  std::vector<double> ln_r;
  column_log_scores(m, q, alpha, ln_r);
  const double lse = log_sum_exp(ln_r);
  if (lse == kInf) return alpha > 1.0 ? kInf : -kInf;  // -inf cannot occur for valid input
  return (alpha / (alpha - 1.0)) * lse / kLn2;
}

// The exact inner minimizer gamma^-1 R over the opposite axis.
inline void optimal_opposite(const Matrix& m, const std::vector<double>& q, double alpha,
                             std::vector<double>& out) {
  std::vector<double> ln_r;
  column_log_scores(m, q, alpha, ln_r);
  double mx = -kInf;
  for (double v : ln_r) mx = std::max(mx, v);
  if (mx == -kInf || mx == kInf) {
    throw std::domain_error("optimal_qy_given_qx: scores are degenerate (zero or infinite)");
  }
  out.resize(m.ny);
  double sum = 0.0;
  for (std::size_t y = 0; y < m.ny; ++y) {
    out[y] = ln_r[y] == -kInf ? 0.0 : std::exp(ln_r[y] - mx);
    sum += out[y];
  }
  for (double& v : out) v /= sum;
}

struct ReducedJoint {
  Matrix m;
  std::vector<std::size_t> x_index, y_index;  // reduced -> full positions
  std::size_t full_nx = 0, full_ny = 0;
};

// Drops symbols with zero marginal mass; on the reduced problem iterates
// keep full support, so no infinity arises mid-iteration.
inline ReducedJoint reduce_support(const JointPmf& j) {
  ReducedJoint r;
  r.full_nx = j.nx();
  r.full_ny = j.ny();
  const Pmf px = j.marginal_x();
  const Pmf py = j.marginal_y();
  for (std::size_t x = 0; x < j.nx(); ++x)
    if (px[x] > 0.0) r.x_index.push_back(x);
  for (std::size_t y = 0; y < j.ny(); ++y)
    if (py[y] > 0.0) r.y_index.push_back(y);
  r.m.nx = r.x_index.size();
  r.m.ny = r.y_index.size();
  r.m.p.reserve(r.m.nx * r.m.ny);
  for (std::size_t x : r.x_index)
    for (std::size_t y : r.y_index) r.m.p.push_back(j.at(x, y));
  return r;
}

inline std::vector<double> reinsert(const std::vector<double>& reduced,
                                    const std::vector<std::size_t>& index, std::size_t full_n) {
  std::vector<double> full(full_n, 0.0);
  for (std::size_t i = 0; i < reduced.size(); ++i) full[index[i]] = reduced[i];
  return full;
}

}  // namespace detail

// Value of the Q_Y-eliminated objective
//   (alpha/(alpha-1)) log sum_y [ sum_x P_XY(x,y)^alpha Q_X(x)^(1-alpha) ]^(1/alpha),
// which equals min over Q_Y of D_alpha(P_XY || Q_X Q_Y). Rejects alpha = 1
// (use mutual_information).
inline InfoValue j_objective_reduced(const JointPmf& j, const Pmf& qx,
                                     const AlphaOrder& alpha) {
  if (alpha.is_one()) {
    throw std::invalid_argument("j_objective_reduced: alpha = 1 (use mutual_information)");
  }
  if (qx.labels() != j.x_labels()) {
    throw std::invalid_argument("j_objective_reduced: Q_X alphabet mismatch");
  }
  detail::Matrix m{j.probs(), j.nx(), j.ny()};
  return InfoValue(detail::reduced_objective_bits(m, qx.probs(), alpha.value()));
}

// The exact inner minimizer of D_alpha(P_XY || Q_X Q_Y) over Q_Y:
// Q_Y(y) proportional to [ sum_x P_XY(x,y)^alpha Q_X(x)^(1-alpha) ]^(1/alpha).
inline Pmf optimal_qy_given_qx(const JointPmf& j, const Pmf& qx, const AlphaOrder& alpha) {
  if (alpha.is_one()) {
    throw std::invalid_argument("optimal_qy_given_qx: alpha = 1 (use mutual_information)");
  }
  if (qx.labels() != j.x_labels()) {
    throw std::invalid_argument("optimal_qy_given_qx: Q_X alphabet mismatch");
  }
  detail::Matrix m{j.probs(), j.nx(), j.ny()};
  std::vector<double> qy;
  detail::optimal_opposite(m, qx.probs(), alpha.value(), qy);
  return Pmf(j.y_labels(), std::move(qy));
}

// J_alpha(X;Y). At alpha = 1 this is I(X;Y) exactly, with the marginals as
// witnesses. Otherwise alternates the closed-form inner minimizers in both
// directions from the (P_X, P_Y) start; for alpha < 1/2 additional Dirichlet
// restarts are run and the best objective wins (earliest start on ties).
inline MeasureResult compute_j_alpha(const JointPmf& j, const AlphaOrder& alpha,
                                     const SolverConfig& cfg = {}) {
  cfg.validate();
  if (alpha.is_one()) {
    return MeasureResult{mutual_information(j), j.marginal_x(), j.marginal_y(),
                         0,                     true,           1,
                         SolverRegime::kConvex};
  }
  const double a = alpha.value();
  const SolverRegime regime = a < 0.5 ? SolverRegime::kNonconvex : SolverRegime::kConvex;
  const int starts = cfg.n_starts.value_or(regime == SolverRegime::kNonconvex ? 8 : 1);

  const detail::ReducedJoint red = detail::reduce_support(j);
  const detail::Matrix mt = detail::transposed(red.m);

  // Reduced P_X: the deterministic start with guaranteed finite objective.
  std::vector<double> px0(red.m.nx, 0.0);
  for (std::size_t x = 0; x < red.m.nx; ++x)
    for (std::size_t y = 0; y < red.m.ny; ++y) px0[x] += red.m.at(x, y);

  double best_obj = detail::kInf;
  std::vector<double> best_qx, best_qy;
  int best_iters = 0;
  bool best_converged = false;

  std::vector<double> qx, qy;
  for (int s = 0; s < starts; ++s) {
    if (s == 0) {
      qx = px0;
    } else {
      auto g = detail::seeded_engine(cfg.seed, /*tag=*/1, static_cast<std::uint32_t>(s));
      qx = detail::dirichlet_uniform(g, red.m.nx);
    }
    double obj = detail::reduced_objective_bits(red.m, qx, a);
    bool converged = false;
    int iters = 0;
    for (; iters < cfg.max_iters; ++iters) {
      detail::optimal_opposite(red.m, qx, a, qy);
      detail::optimal_opposite(mt, qy, a, qx);
      const double next = detail::reduced_objective_bits(red.m, qx, a);
      const bool done = std::fabs(next - obj) <= cfg.tol * std::max(1.0, std::fabs(next));
      obj = next;
      if (done) {
        converged = true;
        ++iters;
        break;
      }
    }
    // Lowest objective wins; ties (within tol) go to the earliest start.
    if (obj < best_obj - cfg.tol * std::max(1.0, std::fabs(best_obj))) {
      best_obj = obj;
      best_qx = qx;
      detail::optimal_opposite(red.m, qx, a, qy);
      best_qy = qy;
      best_iters = iters;
      best_converged = converged;
    }
  }

  // The divergence is nonnegative; tolerate only rounding-level negatives.
  assert(best_obj > -1e-9);
  best_obj = std::max(best_obj, 0.0);

  return MeasureResult{
      InfoValue(best_obj),
      Pmf(j.x_labels(), detail::reinsert(best_qx, red.x_index, red.full_nx)),
      Pmf(j.y_labels(), detail::reinsert(best_qy, red.y_index, red.full_ny)),
      best_iters,
      best_converged,
      starts,
      regime};
}

// K_alpha(X;Y), computed as J_{1/alpha} of the alpha-tilted joint. The
// tilting is a bijection on PMFs, so the witnesses of the tilted problem map
// back through the inverse tilt (exponent 1/alpha); the mapped witnesses
// reproduce the value under Delta_alpha.
inline MeasureResult compute_k_alpha(const JointPmf& j, const AlphaOrder& alpha,
                                     const SolverConfig& cfg = {}) {
  if (alpha.is_one()) {
    return MeasureResult{mutual_information(j), j.marginal_x(), j.marginal_y(),
                         0,                     true,           1,
                         SolverRegime::kConvex};
  }
  const AlphaOrder inv = alpha.reciprocal();
  MeasureResult r = compute_j_alpha(tilt_joint(j, alpha), inv, cfg);
  r.qx_opt = tilt_pmf(r.qx_opt, inv);
  r.qy_opt = tilt_pmf(r.qy_opt, inv);
  return r;
}

// Closed form for the self-dependence of J:
//   J_alpha(X;X) = H_{alpha/(2 alpha - 1)}(X)        for alpha > 1/2,
//                  (alpha/(1-alpha)) H_inf(X)        for alpha in (0, 1/2].
inline InfoValue j_self_closed_form(const Pmf& p, const AlphaOrder& alpha) {
  if (alpha.is_one()) return shannon_entropy(p);
  const double a = alpha.value();
  if (a > 0.5) return renyi_entropy(p, AlphaOrder(a / (2.0 * a - 1.0)));
  return InfoValue(a / (1.0 - a) * min_entropy(p).bits());
}

// Closed form for the self-dependence of K:
//   K_alpha(X;X) = 2 H_{alpha/(2-alpha)}(X) - H_alpha(X)      for alpha in (0, 2),
//                  (alpha/(alpha-1)) H_inf(X) - H_alpha(X)    for alpha >= 2.
inline InfoValue k_self_closed_form(const Pmf& p, const AlphaOrder& alpha) {
  if (alpha.is_one()) return shannon_entropy(p);
  const double a = alpha.value();
  const double h_a = renyi_entropy(p, alpha).bits();
  if (a < 2.0) {
    return InfoValue(2.0 * renyi_entropy(p, AlphaOrder(a / (2.0 - a))).bits() - h_a);
  }
  return InfoValue(a / (a - 1.0) * min_entropy(p).bits() - h_a);
}

// The dual bracket I_R(X;Y) + (alpha/(1-alpha)) D(R || P_XY) in bits.
// For alpha in (0,1) its minimum over R equals J_alpha; for alpha > 1 its
// maximum does. With alpha > 1 and D(R||P) = inf the bracket is -inf, an
// unattainable sentinel excluded from maximization.
inline InfoValue j_dual_value(const JointPmf& j, const JointPmf& r, const AlphaOrder& alpha) {
  if (alpha.is_one()) throw std::invalid_argument("j_dual_value: alpha = 1");
  if (!j.same_alphabets(r)) throw std::invalid_argument("j_dual_value: alphabet mismatch");
  const double a = alpha.value();
  const InfoValue d = kl_divergence(r.flattened(), j.flattened());
  if (d.is_infinite()) {
    return a > 1.0 ? InfoValue::minus_infinity() : InfoValue::infinity();
  }
  return InfoValue(mutual_information(r).bits() + a / (1.0 - a) * d.bits());
}

// Certificate of optimality for alpha > 1 (where the bracket is maximized by
// R_XY iff it equals D_alpha(P_XY || R_X R_Y)). The candidate maximizer is
// built from the primal witnesses as R proportional to P^alpha (Q_X Q_Y)^(1-alpha),
// whose marginals coincide with the witnesses at the optimum.
inline DualResult j_dual_certificate(const JointPmf& j, const AlphaOrder& alpha,
                                     const MeasureResult& result) {
  if (alpha.is_one() || alpha.value() < 1.0) {
    throw std::invalid_argument("j_dual_certificate: requires alpha > 1");
  }
  const double a = alpha.value();
  const Pmf& qx = result.qx_opt;
  const Pmf& qy = result.qy_opt;
  std::vector<double> ln_r(j.nx() * j.ny(), -detail::kInf);
  double mx = -detail::kInf;
  for (std::size_t x = 0; x < j.nx(); ++x)
    for (std::size_t y = 0; y < j.ny(); ++y) {
      const double pxy = j.at(x, y);
      if (pxy == 0.0) continue;
      // Witness zeros only occur on stripped symbols, where P has no mass.
      const double v = a * std::log(pxy) + (1.0 - a) * (std::log(qx[x]) + std::log(qy[y]));
      ln_r[x * j.ny() + y] = v;
      mx = std::max(mx, v);
    }
  std::vector<double> rp(ln_r.size(), 0.0);
  double sum = 0.0;
  for (std::size_t i = 0; i < ln_r.size(); ++i) {
    if (ln_r[i] != -detail::kInf) {
      rp[i] = std::exp(ln_r[i] - mx);
      sum += rp[i];
    }
  }
  for (double& v : rp) v /= sum;
  JointPmf r(j.x_labels(), j.y_labels(), std::move(rp));

  const InfoValue bracket = j_dual_value(j, r, alpha);
  const InfoValue d =
      renyi_divergence(j.flattened(), product(r.marginal_x(), r.marginal_y()).flattened(),
                       alpha);
  const double gap = std::fabs(bracket.bits() - d.bits());
  return DualResult{bracket, std::move(r), gap};
}

namespace detail {

// Visits every point of the steps-resolution grid on the (m-1)-simplex:
// all compositions (k_1,...,k_m) of `steps`, emitted as k_i / steps.
template <typename F>
void for_each_simplex_grid_point(std::size_t m, int steps, F&& f) {
  std::vector<double> q(m, 0.0);
  std::vector<int> k(m, 0);
  std::function<void(std::size_t, int)> rec = [&](std::size_t i, int left) {
    if (i + 1 == m) {
      k[i] = left;
      for (std::size_t d = 0; d < m; ++d) q[d] = static_cast<double>(k[d]) / steps;
      f(static_cast<const std::vector<double>&>(q));
      return;
    }
    for (int v = 0; v <= left; ++v) {
      k[i] = v;
      rec(i + 1, left - v);
    }
  };
  rec(0, steps);
}

// Direct evaluation of D_alpha / Delta_alpha / KL at a product point,
// written against the defining sums so the oracle shares nothing with the
// alternating-minimization path.
struct OracleEvaluator {
  const Matrix& m;
  double alpha;
  DependenceMeasure measure;
  std::vector<double> row_mass, col_mass;
  double ln_p_sum = 0.0;  // ln sum P^alpha, the Delta constant

  OracleEvaluator(const Matrix& mm, double a, DependenceMeasure meas) : m(mm), alpha(a), measure(meas) {
    row_mass.assign(m.nx, 0.0);
    col_mass.assign(m.ny, 0.0);
    for (std::size_t x = 0; x < m.nx; ++x)
      for (std::size_t y = 0; y < m.ny; ++y) {
        row_mass[x] += m.at(x, y);
        col_mass[y] += m.at(x, y);
      }
    if (measure == DependenceMeasure::kK && std::fabs(alpha - 1.0) >= 1e-12) {
      double s = 0.0;
      for (double v : m.p) s += pow_prob(v, alpha);
      ln_p_sum = std::log(s);
    }
  }

  // true if q puts zero mass on a symbol that carries joint mass
  static bool zero_on_mass(const std::vector<double>& q, const std::vector<double>& mass) {
    for (std::size_t i = 0; i < q.size(); ++i)
      if (q[i] == 0.0 && mass[i] > 0.0) return true;
    return false;
  }

  // bits; +inf where the conventions say so
  double operator()(const std::vector<double>& qx, const std::vector<double>& qy) const {
    const bool one = std::fabs(alpha - 1.0) < 1e-12;
    const bool zx = zero_on_mass(qx, row_mass);
    const bool zy = zero_on_mass(qy, col_mass);
    if (one) {
      if (zx || zy) return kInf;
      double nats = 0.0;
      for (std::size_t x = 0; x < m.nx; ++x)
        for (std::size_t y = 0; y < m.ny; ++y) {
          const double p = m.at(x, y);
          if (p > 0.0) nats += p * std::log(p / (qx[x] * qy[y]));
        }
      return nats / kLn2;
    }
    if (measure == DependenceMeasure::kJ) {
      if (alpha > 1.0 && (zx || zy)) return kInf;
      double s = 0.0;
      for (std::size_t x = 0; x < m.nx; ++x) {
        const double ax = pow_prob(qx[x], 1.0 - alpha);
        if (ax == 0.0) continue;
        double inner = 0.0;
        for (std::size_t y = 0; y < m.ny; ++y) {
          const double p = m.at(x, y);
          if (p > 0.0) inner += pow_prob(p, alpha) * pow_prob(qy[y], 1.0 - alpha);
        }
        s += ax * inner;
      }
      if (s == 0.0) return kInf;  // disjoint support, alpha < 1
      return std::log(s) / (alpha - 1.0) / kLn2;
    }
    // Delta_alpha
    if (alpha < 1.0 && (zx || zy)) return kInf;
    double s = 0.0, sqx = 0.0, sqy = 0.0;
    for (double v : qx) sqx += pow_prob(v, alpha);
    for (double v : qy) sqy += pow_prob(v, alpha);
    for (std::size_t x = 0; x < m.nx; ++x) {
      const double ax = pow_prob(qx[x], alpha - 1.0);
      if (ax == 0.0) continue;
      double inner = 0.0;
      for (std::size_t y = 0; y < m.ny; ++y) {
        const double p = m.at(x, y);
        if (p > 0.0) inner += p * pow_prob(qy[y], alpha - 1.0);
      }
      s += ax * inner;
    }
    if (s == 0.0) return kInf;
    const double nats =
        alpha / (1.0 - alpha) * std::log(s) + std::log(sqx * sqy) - ln_p_sum / (1.0 - alpha);
    return nats / kLn2;
  }
};

}  // namespace detail

// Exhaustive minimization of D_alpha (measure J) or Delta_alpha (measure K)
// over product grids on the two simplices, followed by deterministic local
// grid refinement around the incumbent. Yields an upper bound on the true
// minimum that converges as the grid refines. Alphabets are capped at 3
// symbols per axis (cost grows as grid^(|X|+|Y|-2)).
inline InfoValue brute_force_oracle(const JointPmf& j, const AlphaOrder& alpha, int grid_steps,
                                    DependenceMeasure measure) {
  if (j.nx() > 3 || j.ny() > 3) {
    throw std::invalid_argument("brute_force_oracle: alphabets larger than 3x3");
  }
  if (grid_steps < 2) throw std::invalid_argument("brute_force_oracle: grid_steps < 2");

  const detail::Matrix m{j.probs(), j.nx(), j.ny()};
  const detail::OracleEvaluator eval(m, alpha.value(), measure);

  // Axis resolution: full grid_steps on binary axes, at least 80 (or a fifth
  // of grid_steps) on ternary axes where the point count is quadratic.
  const auto axis_steps = [&](std::size_t n) {
    return n <= 2 ? grid_steps : std::max(80, grid_steps / 5);
  };

  std::vector<std::vector<double>> xs, ys;
  detail::for_each_simplex_grid_point(j.nx(), axis_steps(j.nx()),
                                      [&](const std::vector<double>& q) { xs.push_back(q); });
  detail::for_each_simplex_grid_point(j.ny(), axis_steps(j.ny()),
                                      [&](const std::vector<double>& q) { ys.push_back(q); });

  double best = detail::kInf;
  std::vector<double> bx, by;
  for (const auto& qx : xs) {
    for (const auto& qy : ys) {
      const double v = eval(qx, qy);
      if (v < best) {
        best = v;
        bx = qx;
        by = qy;
      }
    }
  }

  // Local refinement: rescan a shrinking box around the incumbent on finer
  // grids. Still pure grid search, so the upper-bound property is kept.
  double hx = 1.0 / axis_steps(j.nx());
  double hy = 1.0 / axis_steps(j.ny());
  const auto local_points = [](const std::vector<double>& center, double span, double step) {
    // grid over the free coordinates, last coordinate takes the remainder
    std::vector<std::vector<double>> pts;
    const std::size_t n = center.size();
    std::vector<double> q(n);
    const int radius = static_cast<int>(std::ceil(span / step));
    std::function<void(std::size_t, double)> rec = [&](std::size_t i, double used) {
      if (i + 1 == n) {
        q[i] = 1.0 - used;
        if (q[i] >= -1e-12) {
          q[i] = std::max(q[i], 0.0);
          pts.push_back(q);
        }
        return;
      }
      for (int d = -radius; d <= radius; ++d) {
        const double v = center[i] + d * step;
        if (v < 0.0 || used + v > 1.0 + 1e-12) continue;
        q[i] = std::min(std::max(v, 0.0), 1.0);
        rec(i + 1, used + q[i]);
      }
    };
    rec(0, 0.0);
    return pts;
  };

  for (int level = 0; level < 3; ++level) {
    const double sx = hx / 8.0, sy = hy / 8.0;
    const auto lx = local_points(bx, 1.5 * hx, sx);
    const auto ly = local_points(by, 1.5 * hy, sy);
    for (const auto& qx : lx) {
      for (const auto& qy : ly) {
        const double v = eval(qx, qy);
        if (v < best) {
          best = v;
          bx = qx;
          by = qy;
        }
      }
    }
    hx = sx;
    hy = sy;
  }

  assert(best > -1e-9);
  return InfoValue(std::max(best, 0.0));
}

}  // namespace renyidep
