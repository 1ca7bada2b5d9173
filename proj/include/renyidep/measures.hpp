#pragma once

// The entropy and divergence family: Shannon and Renyi entropies, min-entropy,
// KL divergence, Renyi divergence, and relative alpha-entropy, with exact
// 0/inf conventions. All public values are in bits; computation runs in
// natural log and converts once at the boundary. Infinity is a first-class
// value, never an error; NaN is forbidden.

#include <cassert>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "renyidep/pmf.hpp"

namespace renyidep {

// An extended-real information quantity in bits. Divergences live in
// [0, inf]; the dual bracket of the J-family may take -inf as an
// unattainable sentinel excluded from maximization.
class InfoValue {
 public:
  InfoValue(double bits) : bits_(bits) { assert(!std::isnan(bits)); }

  static InfoValue infinity() { return InfoValue(std::numeric_limits<double>::infinity()); }
  static InfoValue minus_infinity() {
    return InfoValue(-std::numeric_limits<double>::infinity());
  }

  double bits() const { return bits_; }
  bool is_infinite() const { return std::isinf(bits_); }

 private:
  double bits_;
};

namespace detail {

constexpr double kInf = std::numeric_limits<double>::infinity();

// log(sum_i exp(t_i)) with the max factored out; -inf on an empty list,
// +inf if any term is +inf.
inline double log_sum_exp(const std::vector<double>& t) {
  double m = -kInf;
  for (double v : t) m = std::max(m, v);
  if (m == -kInf || m == kInf) return m;
  double s = 0.0;
  for (double v : t) s += std::exp(v - m);
  return m + std::log(s);
}

// ln sum_i p_i^alpha over the support of p, max-factored.
inline double ln_power_sum(const std::vector<double>& p, double alpha) {
  double pmax = 0.0;
  for (double v : p) pmax = std::max(pmax, v);
  const double ln_pmax = std::log(pmax);
  double s = 0.0;
  for (double v : p) {
    if (v > 0.0) s += std::exp(alpha * (std::log(v) - ln_pmax));
  }
  return alpha * ln_pmax + std::log(s);
}

inline void require_same_alphabet(const Pmf& p, const Pmf& q, const char* what) {
  if (!p.same_alphabet(q)) {
    throw std::invalid_argument(std::string(what) + ": PMFs live on different alphabets");
  }
}

}  // namespace detail

// H(X) = sum p log(1/p) in bits, with 0 log(1/0) = 0.
inline InfoValue shannon_entropy(const Pmf& p) {
  double nats = 0.0;
  for (double v : p.probs()) {
    if (v > 0.0) nats -= v * std::log(v);
  }
  return InfoValue(nats / kLn2);
}

// H_alpha(X) = (1/(1-alpha)) log sum p^alpha; the alpha = 1 branch returns
// the Shannon entropy exactly.
inline InfoValue renyi_entropy(const Pmf& p, const AlphaOrder& alpha) {
  if (alpha.is_one()) return shannon_entropy(p);
  return InfoValue(detail::ln_power_sum(p.probs(), alpha.value()) / (1.0 - alpha.value()) /
                   kLn2);
}

// H_inf(X) = -log2 max_x P(x).
inline InfoValue min_entropy(const Pmf& p) {
  return InfoValue(-std::log(p.max_prob()) / kLn2);
}

// D(P||Q) with 0 log(0/q) = 0 and p log(p/0) = inf.
inline InfoValue kl_divergence(const Pmf& p, const Pmf& q) {
  detail::require_same_alphabet(p, q, "kl_divergence");
  double nats = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] == 0.0) continue;
    if (q[i] == 0.0) return InfoValue::infinity();
    nats += p[i] * std::log(p[i] / q[i]);
  }
  return InfoValue(nats / kLn2);
}

// D_alpha(P||Q) = (1/(alpha-1)) log sum p^alpha q^(1-alpha). For alpha > 1
// the product is read as p^alpha / q^(alpha-1) with 0/0 = 0 and p/0 = inf.
// The alpha = 1 branch returns KL divergence exactly.
inline InfoValue renyi_divergence(const Pmf& p, const Pmf& q, const AlphaOrder& alpha) {
  detail::require_same_alphabet(p, q, "renyi_divergence");
  if (alpha.is_one()) return kl_divergence(p, q);
  const double a = alpha.value();
  std::vector<double> terms;
  terms.reserve(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] == 0.0) continue;
    if (q[i] == 0.0) {
      if (a > 1.0) return InfoValue::infinity();
      continue;  // p^alpha q^(1-alpha) = 0 for alpha < 1
    }
    terms.push_back(a * std::log(p[i]) + (1.0 - a) * std::log(q[i]));
  }
  // No surviving term means the supports are disjoint (alpha < 1 here).
  if (terms.empty()) return InfoValue::infinity();
  return InfoValue(detail::log_sum_exp(terms) / (a - 1.0) / kLn2);
}

// Relative alpha-entropy
//   Delta_alpha(P||Q) = (alpha/(1-alpha)) log sum p q^(alpha-1)
//                       + log sum q^alpha - (1/(1-alpha)) log sum p^alpha,
// where for alpha < 1 the first product is read as p / q^(1-alpha) with
// 0/0 = 0 and p/0 = inf. The alpha = 1 branch returns KL divergence.
inline InfoValue relative_alpha_entropy(const Pmf& p, const Pmf& q, const AlphaOrder& alpha) {
  detail::require_same_alphabet(p, q, "relative_alpha_entropy");
  if (alpha.is_one()) return kl_divergence(p, q);
  const double a = alpha.value();
  std::vector<double> terms;
  terms.reserve(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] == 0.0) continue;
    if (q[i] == 0.0) {
      if (a < 1.0) return InfoValue::infinity();
      continue;  // q^(alpha-1) = 0 for alpha > 1
    }
    terms.push_back(std::log(p[i]) + (a - 1.0) * std::log(q[i]));
  }
  // Disjoint supports with alpha > 1: the first sum vanishes and the
  // divergence is infinite.
  if (terms.empty()) return InfoValue::infinity();
  const double ln_a_sum = detail::log_sum_exp(terms);
  const double ln_q_sum = detail::ln_power_sum(q.probs(), a);
  const double ln_p_sum = detail::ln_power_sum(p.probs(), a);
  const double nats = (a / (1.0 - a)) * ln_a_sum + ln_q_sum - ln_p_sum / (1.0 - a);
  return InfoValue(nats / kLn2);
}

// I(X;Y) = D(P_XY || P_X P_Y) in bits.
inline InfoValue mutual_information(const JointPmf& j) {
  const Pmf px = j.marginal_x();
  const Pmf py = j.marginal_y();
  double nats = 0.0;
  for (std::size_t x = 0; x < j.nx(); ++x)
    for (std::size_t y = 0; y < j.ny(); ++y) {
      const double pxy = j.at(x, y);
      if (pxy > 0.0) nats += pxy * std::log(pxy / (px[x] * py[y]));
    }
  return InfoValue(nats / kLn2);
}

// The three right-hand terms of
//   D(P_XY||Q_X Q_Y) = D(P_XY||P_X P_Y) + D(P_X||Q_X) + D(P_Y||Q_Y);
// the caller asserts their sum against the direct left-hand evaluation.
struct KlDecomposition {
  InfoValue mutual_information;
  InfoValue marginal_x_divergence;
  InfoValue marginal_y_divergence;
};

inline KlDecomposition kl_decomposition_check(const JointPmf& j, const Pmf& qx, const Pmf& qy) {
  if (qx.labels() != j.x_labels() || qy.labels() != j.y_labels()) {
    throw std::invalid_argument("kl_decomposition_check: alphabet mismatch");
  }
  return KlDecomposition{mutual_information(j), kl_divergence(j.marginal_x(), qx),
                         kl_divergence(j.marginal_y(), qy)};
}

}  // namespace renyidep
