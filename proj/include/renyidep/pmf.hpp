#pragma once

// Finite probability mass functions, joint PMFs over product alphabets,
// conditional PMFs (channels), and the alpha-tilting transform that links
// the Renyi divergence family to the relative alpha-entropy family.
//
// All values are immutable after construction and every operation is a
// pure function, so concurrent use needs no synchronization.

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_set>
#include <utility>
#include <vector>

namespace renyidep {

inline constexpr double kLn2 = 0.6931471805599453;

// Construction tolerances for probability masses: a total within
// kSumTolStrict of 1 is taken verbatim, within kSumTolRenorm it is rescaled
// and flagged (file-sourced PMFs carry decimal rounding), anything worse is
// rejected.
inline constexpr double kSumTolStrict = 1e-12;
inline constexpr double kSumTolRenorm = 1e-9;

// p^e for p >= 0, routed through exp(e*log p) with an explicit zero
// short-circuit so pow(0, e) platform quirks never enter.
inline double pow_prob(double p, double e) {
  return p > 0.0 ? std::exp(e * std::log(p)) : 0.0;
}

// Validated order parameter of the Renyi family. alpha = 1 is dispatched
// exactly (|alpha - 1| < 1e-12 counts as one); the regime classification
// below is total and mutually exclusive.
class AlphaOrder {
 public:
  enum class Regime { kBelowHalf, kHalfToOne, kOne, kOneToTwo, kTwoAndUp };

  explicit AlphaOrder(double alpha) : alpha_(alpha) {
    if (!std::isfinite(alpha) || alpha <= 0.0) {
      throw std::invalid_argument("AlphaOrder: alpha must be a finite positive real");
    }
  }

  double value() const { return alpha_; }
  bool is_one() const { return std::fabs(alpha_ - 1.0) < 1e-12; }

  Regime regime() const {
    if (is_one()) return Regime::kOne;
    if (alpha_ < 0.5) return Regime::kBelowHalf;
    if (alpha_ < 1.0) return Regime::kHalfToOne;
    if (alpha_ < 2.0) return Regime::kOneToTwo;
    return Regime::kTwoAndUp;
  }

  // Multiplicative inverse; exact at alpha = 1.
  AlphaOrder reciprocal() const { return AlphaOrder(is_one() ? 1.0 : 1.0 / alpha_); }

 private:
  double alpha_;
};

namespace detail {

// Shared construction policy for anything that must carry unit mass.
// Returns true when rescaling was applied.
inline bool normalize_mass(std::vector<double>& p, const char* what) {
  if (p.empty()) {
    throw std::invalid_argument(std::string(what) + ": empty probability vector");
  }
  double sum = 0.0;
  for (double v : p) {
    if (!std::isfinite(v) || v < 0.0) {
      throw std::invalid_argument(std::string(what) + ": entries must be finite and >= 0");
    }
    sum += v;
  }
  const double err = std::fabs(sum - 1.0);
  if (err <= kSumTolStrict) return false;
  if (err <= kSumTolRenorm) {
    for (double& v : p) v /= sum;
    return true;
  }
  throw std::invalid_argument(std::string(what) + ": mass " + std::to_string(sum) +
                              " is not 1 within 1e-9");
}

inline void require_unique(const std::vector<std::string>& labels, const char* what) {
  std::unordered_set<std::string_view> seen;
  for (const auto& l : labels) {
    if (!seen.insert(l).second) {
      throw std::invalid_argument(std::string(what) + ": duplicate label '" + l + "'");
    }
  }
}

inline std::vector<std::string> indexed_labels(std::string_view prefix, std::size_t n) {
  std::vector<std::string> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) out.push_back(std::string(prefix) + std::to_string(i));
  return out;
}

}  // namespace detail

// A PMF over a labeled finite alphabet. Zero-probability symbols are kept
// (not stripped) so alphabets stay aligned across operations; solvers strip
// and reinsert internally.
class Pmf {
 public:
  Pmf(std::vector<std::string> labels, std::vector<double> probs)
      : labels_(std::move(labels)), p_(std::move(probs)) {
    if (labels_.size() != p_.size()) {
      throw std::invalid_argument("Pmf: label count must match probability count");
    }
    detail::require_unique(labels_, "Pmf");
    renormalized_ = detail::normalize_mass(p_, "Pmf");
  }

  static Pmf from_probs(std::vector<double> probs, std::string_view prefix = "x") {
    return Pmf(detail::indexed_labels(prefix, probs.size()), std::move(probs));
  }

  static Pmf uniform(std::size_t n, std::string_view prefix = "x") {
    return from_probs(std::vector<double>(n, 1.0 / static_cast<double>(n)), prefix);
  }

  std::size_t size() const { return p_.size(); }
  double operator[](std::size_t i) const { return p_[i]; }
  const std::vector<double>& probs() const { return p_; }
  const std::vector<std::string>& labels() const { return labels_; }
  const std::string& label(std::size_t i) const { return labels_[i]; }

  // True when construction had to rescale the input mass.
  bool renormalized() const { return renormalized_; }

  double max_prob() const {
    double m = 0.0;
    for (double v : p_) m = std::max(m, v);
    return m;
  }

  std::size_t support_size() const {
    std::size_t k = 0;
    for (double v : p_) k += v > 0.0;
    return k;
  }

  bool same_alphabet(const Pmf& other) const { return labels_ == other.labels_; }

 private:
  std::vector<std::string> labels_;
  std::vector<double> p_;
  bool renormalized_ = false;
};

// A joint PMF over a labeled product alphabet, stored row-major (x rows,
// y columns).
class JointPmf {
 public:
  JointPmf(std::vector<std::string> x_labels, std::vector<std::string> y_labels,
           std::vector<double> probs)
      : x_labels_(std::move(x_labels)), y_labels_(std::move(y_labels)), p_(std::move(probs)) {
    if (x_labels_.empty() || y_labels_.empty() ||
        p_.size() != x_labels_.size() * y_labels_.size()) {
      throw std::invalid_argument("JointPmf: matrix shape must match label counts");
    }
    detail::require_unique(x_labels_, "JointPmf(x)");
    detail::require_unique(y_labels_, "JointPmf(y)");
    renormalized_ = detail::normalize_mass(p_, "JointPmf");
  }

  static JointPmf from_rows(const std::vector<std::vector<double>>& rows,
                            std::string_view x_prefix = "x", std::string_view y_prefix = "y") {
    if (rows.empty() || rows.front().empty()) {
      throw std::invalid_argument("JointPmf: empty matrix");
    }
    const std::size_t ny = rows.front().size();
    std::vector<double> flat;
    flat.reserve(rows.size() * ny);
    for (const auto& r : rows) {
      if (r.size() != ny) throw std::invalid_argument("JointPmf: ragged matrix");
      flat.insert(flat.end(), r.begin(), r.end());
    }
    return JointPmf(detail::indexed_labels(x_prefix, rows.size()),
                    detail::indexed_labels(y_prefix, ny), std::move(flat));
  }

  // P_XY(x,y) = P_X(x) 1{x = y}: the self-dependence joint of a marginal.
  static JointPmf diagonal(const Pmf& p) {
    const std::size_t n = p.size();
    std::vector<double> flat(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i) flat[i * n + i] = p[i];
    return JointPmf(p.labels(), p.labels(), std::move(flat));
  }

  std::size_t nx() const { return x_labels_.size(); }
  std::size_t ny() const { return y_labels_.size(); }
  double at(std::size_t x, std::size_t y) const { return p_[x * ny() + y]; }
  const std::vector<double>& probs() const { return p_; }
  const std::vector<std::string>& x_labels() const { return x_labels_; }
  const std::vector<std::string>& y_labels() const { return y_labels_; }
  bool renormalized() const { return renormalized_; }

  Pmf marginal_x() const {
    std::vector<double> m(nx(), 0.0);
    for (std::size_t x = 0; x < nx(); ++x)
      for (std::size_t y = 0; y < ny(); ++y) m[x] += at(x, y);
    return Pmf(x_labels_, std::move(m));
  }

  Pmf marginal_y() const {
    std::vector<double> m(ny(), 0.0);
    for (std::size_t x = 0; x < nx(); ++x)
      for (std::size_t y = 0; y < ny(); ++y) m[y] += at(x, y);
    return Pmf(y_labels_, std::move(m));
  }

  JointPmf transposed() const {
    std::vector<double> t(p_.size());
    for (std::size_t x = 0; x < nx(); ++x)
      for (std::size_t y = 0; y < ny(); ++y) t[y * nx() + x] = at(x, y);
    return JointPmf(y_labels_, x_labels_, std::move(t));
  }

  // The joint seen as a single PMF over the product alphabet.
  Pmf flattened() const {
    std::vector<std::string> labels;
    labels.reserve(p_.size());
    for (const auto& xl : x_labels_)
      for (const auto& yl : y_labels_) labels.push_back(xl + "," + yl);
    return Pmf(std::move(labels), p_);
  }

  bool same_alphabets(const JointPmf& other) const {
    return x_labels_ == other.x_labels_ && y_labels_ == other.y_labels_;
  }

 private:
  std::vector<std::string> x_labels_, y_labels_;
  std::vector<double> p_;
  bool renormalized_ = false;
};

// One PMF row per conditioning symbol: P(out | given).
class ConditionalPmf {
 public:
  ConditionalPmf(std::vector<std::string> given_labels, std::vector<std::string> out_labels,
                 std::vector<std::vector<double>> rows)
      : given_labels_(std::move(given_labels)), out_labels_(std::move(out_labels)) {
    if (rows.size() != given_labels_.size()) {
      throw std::invalid_argument("ConditionalPmf: one row per conditioning symbol required");
    }
    detail::require_unique(given_labels_, "ConditionalPmf(given)");
    detail::require_unique(out_labels_, "ConditionalPmf(out)");
    rows_.reserve(rows.size());
    for (auto& r : rows) {
      if (r.size() != out_labels_.size()) {
        throw std::invalid_argument("ConditionalPmf: row width must match output alphabet");
      }
      detail::normalize_mass(r, "ConditionalPmf row");
      rows_.push_back(std::move(r));
    }
  }

  static ConditionalPmf identity(const std::vector<std::string>& labels) {
    std::vector<std::vector<double>> rows(labels.size(),
                                          std::vector<double>(labels.size(), 0.0));
    for (std::size_t i = 0; i < labels.size(); ++i) rows[i][i] = 1.0;
    return ConditionalPmf(labels, labels, std::move(rows));
  }

  std::size_t n_given() const { return given_labels_.size(); }
  std::size_t n_out() const { return out_labels_.size(); }
  // P(out = z | given = y)
  double at(std::size_t given, std::size_t out) const { return rows_[given][out]; }
  const std::vector<std::string>& given_labels() const { return given_labels_; }
  const std::vector<std::string>& out_labels() const { return out_labels_; }

 private:
  std::vector<std::string> given_labels_, out_labels_;
  std::vector<std::vector<double>> rows_;
};

// ---------------------------------------------------------------------------
// Operations
// ---------------------------------------------------------------------------

inline Pmf marginal_x(const JointPmf& j) { return j.marginal_x(); }
inline Pmf marginal_y(const JointPmf& j) { return j.marginal_y(); }

inline JointPmf product(const Pmf& px, const Pmf& py) {
  std::vector<double> flat;
  flat.reserve(px.size() * py.size());
  for (std::size_t x = 0; x < px.size(); ++x)
    for (std::size_t y = 0; y < py.size(); ++y) flat.push_back(px[x] * py[y]);
  return JointPmf(px.labels(), py.labels(), std::move(flat));
}

namespace detail {

// w_i = p_i^alpha / sum_k p_k^alpha, computed with the largest entry
// factored out so large alpha cannot underflow the whole sum.
inline std::vector<double> tilt_weights(const std::vector<double>& p, double alpha) {
  double pmax = 0.0;
  for (double v : p) pmax = std::max(pmax, v);
  const double ln_pmax = std::log(pmax);
  std::vector<double> w(p.size(), 0.0);
  double sum = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] > 0.0) {
      w[i] = std::exp(alpha * (std::log(p[i]) - ln_pmax));
      sum += w[i];
    }
  }
  for (double& v : w) v /= sum;
  return w;
}

}  // namespace detail

// The alpha-scaled PMF p^alpha / sum p^alpha. Fixes the uniform distribution,
// is the identity at alpha = 1, and preserves the support of the input.
inline Pmf tilt_pmf(const Pmf& p, const AlphaOrder& alpha) {
  if (alpha.is_one()) return p;
  return Pmf(p.labels(), detail::tilt_weights(p.probs(), alpha.value()));
}

// Entrywise alpha power of the joint, renormalized over the whole matrix.
inline JointPmf tilt_joint(const JointPmf& j, const AlphaOrder& alpha) {
  if (alpha.is_one()) return j;
  return JointPmf(j.x_labels(), j.y_labels(), detail::tilt_weights(j.probs(), alpha.value()));
}

// Post-processes Y into Z through the channel ch = P(z | y):
// P_XZ(x,z) = sum_y P(z|y) P_XY(x,y). The channel must condition on the
// joint's y-alphabet.
inline JointPmf apply_channel(const JointPmf& j, const ConditionalPmf& ch) {
  if (ch.given_labels() != j.y_labels()) {
    throw std::invalid_argument("apply_channel: channel conditions on a different alphabet");
  }
  std::vector<double> out(j.nx() * ch.n_out(), 0.0);
  for (std::size_t x = 0; x < j.nx(); ++x)
    for (std::size_t y = 0; y < j.ny(); ++y) {
      const double pxy = j.at(x, y);
      if (pxy == 0.0) continue;
      for (std::size_t z = 0; z < ch.n_out(); ++z) out[x * ch.n_out() + z] += ch.at(y, z) * pxy;
    }
  return JointPmf(j.x_labels(), ch.out_labels(), std::move(out));
}

}  // namespace renyidep
