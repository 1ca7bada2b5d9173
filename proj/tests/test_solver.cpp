#include "doctest.h"

#include <cmath>
#include <limits>

#include "renyidep/measures.hpp"
#include "renyidep/random.hpp"
#include "renyidep/selfcheck.hpp"
#include "renyidep/solver.hpp"

using namespace renyidep;

TEST_CASE("SolverConfig validation") {
  SolverConfig cfg;
  CHECK_NOTHROW(cfg.validate());
  cfg.tol = 0.0;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  cfg = SolverConfig{};
  cfg.max_iters = 0;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  cfg = SolverConfig{};
  cfg.n_starts = 0;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  cfg = SolverConfig{};
  cfg.grid_steps = 1;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
}

TEST_CASE("j_objective_reduced") {
  SUBCASE("rejects alpha = 1") {
    const JointPmf j = JointPmf::diagonal(Pmf::uniform(2));
    CHECK_THROWS_AS(j_objective_reduced(j, j.marginal_x(), AlphaOrder(1.0)),
                    std::invalid_argument);
  }
  SUBCASE("independent joint with qx = P_X gives 0") {
    auto g = detail::seeded_engine(11, 0);
    const JointPmf j = product(random_pmf(g, 3), random_pmf(g, 2));
    for (double a : {0.4, 2.0}) {
      CHECK(j_objective_reduced(j, j.marginal_x(), AlphaOrder(a)).bits() ==
            doctest::Approx(0.0).epsilon(1e-12));
    }
  }
  SUBCASE("diagonal uniform 2x2, uniform qx, alpha = 2 gives exactly 1 bit") {
    const JointPmf j = JointPmf::diagonal(Pmf::uniform(2));
    CHECK(j_objective_reduced(j, Pmf(j.x_labels(), {0.5, 0.5}), AlphaOrder(2.0)).bits() ==
          doctest::Approx(1.0).epsilon(1e-14));
  }
  SUBCASE("equals the fine-grid minimum over Q_Y") {
    auto g = detail::seeded_engine(12, 0);
    for (double a : {0.6, 1.7}) {
      const JointPmf j = random_joint(g, 3, 2, 0.05);
      const Pmf qx(j.x_labels(), random_pmf(g, 3, 0.05).probs());
      const double reduced = j_objective_reduced(j, qx, AlphaOrder(a)).bits();
      double best = std::numeric_limits<double>::infinity();
      detail::for_each_simplex_grid_point(2, 2000, [&](const std::vector<double>& qy) {
        const double d = renyi_divergence(j.flattened(),
                                          product(qx, Pmf(j.y_labels(), qy)).flattened(),
                                          AlphaOrder(a))
                             .bits();
        best = std::min(best, d);
      });
      CHECK(reduced <= best + 1e-12);
      CHECK(reduced == doctest::Approx(best).epsilon(1e-5));
    }
  }
}

TEST_CASE("optimal_qy_given_qx") {
  SUBCASE("independent joint recovers P_Y") {
    auto g = detail::seeded_engine(13, 0);
    const JointPmf j = product(random_pmf(g, 2), random_pmf(g, 3));
    const Pmf qy = optimal_qy_given_qx(j, j.marginal_x(), AlphaOrder(1.7));
    const Pmf py = j.marginal_y();
    for (std::size_t i = 0; i < py.size(); ++i) {
      CHECK(qy[i] == doctest::Approx(py[i]).epsilon(1e-12));
    }
  }
  SUBCASE("diagonal uniform stays uniform") {
    const JointPmf j = JointPmf::diagonal(Pmf::uniform(4));
    for (double a : {0.3, 0.8, 2.5}) {
      const Pmf qy = optimal_qy_given_qx(j, Pmf(j.x_labels(), Pmf::uniform(4).probs()),
                                         AlphaOrder(a));
      for (std::size_t i = 0; i < 4; ++i) CHECK(qy[i] == doctest::Approx(0.25).epsilon(1e-13));
    }
  }
  SUBCASE("beats every point of a 200-step grid") {
    auto g = detail::seeded_engine(14, 0);
    const JointPmf j = random_joint(g, 3, 2, 0.05);
    const Pmf qx(j.x_labels(), random_pmf(g, 3, 0.05).probs());
    const AlphaOrder alpha(2.0);
    const Pmf qy_opt = optimal_qy_given_qx(j, qx, alpha);
    const double at_opt =
        renyi_divergence(j.flattened(), product(qx, qy_opt).flattened(), alpha).bits();
    detail::for_each_simplex_grid_point(2, 200, [&](const std::vector<double>& qy) {
      const double d =
          renyi_divergence(j.flattened(), product(qx, Pmf(j.y_labels(), qy)).flattened(),
                           alpha)
              .bits();
      CHECK(at_opt <= d + 1e-12);
    });
  }
}

TEST_CASE("compute_j_alpha") {
  SolverConfig cfg;
  SUBCASE("any product PMF gives 0") {
    auto g = detail::seeded_engine(15, 0);
    for (double a : {0.3, 0.5, 1.0, 2.0, 5.0}) {
      const JointPmf j = product(random_pmf(g, 2), random_pmf(g, 3));
      const MeasureResult r = compute_j_alpha(j, AlphaOrder(a), cfg);
      CHECK(r.value.bits() == doctest::Approx(0.0).epsilon(1e-11));
      CHECK(r.converged);
    }
  }
  SUBCASE("diagonal uniform closed form in both regimes") {
    for (std::size_t m : {2u, 3u, 5u}) {
      const JointPmf j = JointPmf::diagonal(Pmf::uniform(m));
      const double lg = std::log2(static_cast<double>(m));
      for (double a : {0.7, 1.3, 3.0}) {
        CHECK(compute_j_alpha(j, AlphaOrder(a), cfg).value.bits() ==
              doctest::Approx(lg).epsilon(1e-9));
      }
      for (double a : {0.2, 0.4, 0.5}) {
        CHECK(compute_j_alpha(j, AlphaOrder(a), cfg).value.bits() ==
              doctest::Approx(a / (1.0 - a) * lg).epsilon(1e-9));
      }
    }
  }
  SUBCASE("alpha = 1 returns the mutual information exactly") {
    const JointPmf j = dpi_counterexample_joint();
    const MeasureResult r = compute_j_alpha(j, AlphaOrder(1.0), cfg);
    CHECK(r.value.bits() == mutual_information(j).bits());
    CHECK(r.iters == 0);
  }
  SUBCASE("matches the exhaustive grid oracle on random 2x2 joints") {
    auto g = detail::seeded_engine(16, 0);
    for (int it = 0; it < 3; ++it) {
      const JointPmf j = random_joint(g, 2, 2, 0.05);
      const double solver = compute_j_alpha(j, AlphaOrder(0.7), cfg).value.bits();
      const double oracle =
          brute_force_oracle(j, AlphaOrder(0.7), 400, DependenceMeasure::kJ).bits();
      CHECK(solver == doctest::Approx(oracle).epsilon(2e-4));
    }
  }
  SUBCASE("zero-probability rows are stripped and reinserted") {
    // y = 2 never occurs; witnesses must still live on the full alphabet
    const JointPmf j = JointPmf::from_rows({{0.4, 0.1, 0.0}, {0.1, 0.4, 0.0}});
    const MeasureResult r = compute_j_alpha(j, AlphaOrder(2.0), cfg);
    CHECK(r.qy_opt.size() == 3);
    CHECK(r.qy_opt[2] == 0.0);
    CHECK(r.value.bits() > 0.1);  // clearly dependent
  }
  SUBCASE("non-convergence is reported, never silently accepted") {
    SolverConfig tight;
    tight.tol = 1e-300;
    tight.max_iters = 1;
    const MeasureResult r =
        compute_j_alpha(dpi_counterexample_joint(), AlphaOrder(0.5), tight);
    CHECK_FALSE(r.converged);
    CHECK(r.value.bits() > 0.0);  // value still returned
  }
}

TEST_CASE("compute_k_alpha") {
  SolverConfig cfg;
  SUBCASE("any product PMF gives 0") {
    auto g = detail::seeded_engine(17, 0);
    for (double a : {0.2, 0.5, 1.0, 2.5}) {
      const JointPmf j = product(random_pmf(g, 3), random_pmf(g, 2));
      CHECK(compute_k_alpha(j, AlphaOrder(a), cfg).value.bits() ==
            doctest::Approx(0.0).epsilon(1e-11));
    }
  }
  SUBCASE("counterexample regression values") {
    const JointPmf j = dpi_counterexample_joint();
    CHECK(compute_k_alpha(j, AlphaOrder(0.5), cfg).value.bits() ==
          doctest::Approx(0.253).epsilon(0.004));
    CHECK(compute_k_alpha(j, AlphaOrder(0.2), cfg).value.bits() ==
          doctest::Approx(0.109).epsilon(0.01));
    CHECK(compute_k_alpha(j, AlphaOrder(1.0), cfg).value.bits() ==
          doctest::Approx(0.221).epsilon(0.005));
    CHECK(compute_k_alpha(j, AlphaOrder(1.5), cfg).value.bits() ==
          doctest::Approx(0.063).epsilon(0.02));
  }
  SUBCASE("witnesses reproduce the value under Delta_alpha") {
    auto g = detail::seeded_engine(18, 0);
    for (double a : {0.4, 1.6, 3.0}) {
      const JointPmf j = random_joint(g, 3, 2);
      const MeasureResult r = compute_k_alpha(j, AlphaOrder(a), cfg);
      const double re =
          relative_alpha_entropy(j.flattened(), product(r.qx_opt, r.qy_opt).flattened(),
                                 AlphaOrder(a))
              .bits();
      CHECK(re == doctest::Approx(r.value.bits()).epsilon(1e-9));
    }
  }
}

TEST_CASE("self-dependence closed forms") {
  SUBCASE("j_self_closed_form") {
    CHECK(j_self_closed_form(Pmf::uniform(5), AlphaOrder(2.0)).bits() ==
          doctest::Approx(std::log2(5.0)).epsilon(1e-13));
    const Pmf p = Pmf::from_probs({0.3, 0.3, 0.4});
    CHECK(j_self_closed_form(p, AlphaOrder(1.0)).bits() ==
          doctest::Approx(shannon_entropy(p).bits()));
    // (0.4/0.6) * H_inf(0.88, 0.06, 0.06)
    CHECK(j_self_closed_form(Pmf::from_probs({0.88, 0.06, 0.06}), AlphaOrder(0.4)).bits() ==
          doctest::Approx(0.12294971409161831).epsilon(1e-12));
  }
  SUBCASE("k_self_closed_form") {
    for (double a : {0.3, 0.9, 1.5}) {
      CHECK(k_self_closed_form(Pmf::uniform(6), AlphaOrder(a)).bits() ==
            doctest::Approx(std::log2(6.0)).epsilon(1e-12));
    }
    const Pmf p = Pmf::from_probs({0.3, 0.3, 0.4});
    CHECK(k_self_closed_form(p, AlphaOrder(1.0)).bits() ==
          doctest::Approx(shannon_entropy(p).bits()));
    // (3/2) H_inf - H_3 on (0.75, 0.25); frozen from direct evaluation of
    // both entropy terms and cross-checked via the tilt route
    CHECK(k_self_closed_form(Pmf::from_probs({0.75, 0.25}), AlphaOrder(3.0)).bits() ==
          doctest::Approx(0.02623370994706775).epsilon(1e-11));
  }
  SUBCASE("solver agrees with the closed forms across regimes") {
    auto g = detail::seeded_engine(19, 0);
    SolverConfig cfg;
    const Pmf p = random_pmf(g, 4, 0.05);
    const JointPmf diag = JointPmf::diagonal(p);
    for (double a : {0.3, 0.5, 0.8, 1.0, 1.3, 2.0, 3.0}) {
      CHECK(compute_j_alpha(diag, AlphaOrder(a), cfg).value.bits() ==
            doctest::Approx(j_self_closed_form(p, AlphaOrder(a)).bits()).epsilon(5e-6));
      CHECK(compute_k_alpha(diag, AlphaOrder(a), cfg).value.bits() ==
            doctest::Approx(k_self_closed_form(p, AlphaOrder(a)).bits()).epsilon(5e-6));
    }
  }
}

TEST_CASE("j_dual_value") {
  auto g = detail::seeded_engine(20, 0);
  const JointPmf j = random_joint(g, 2, 2, 0.05);
  SUBCASE("r = j collapses to the mutual information") {
    for (double a : {0.4, 3.0}) {
      CHECK(j_dual_value(j, j, AlphaOrder(a)).bits() ==
            doctest::Approx(mutual_information(j).bits()).epsilon(1e-12));
    }
  }
  SUBCASE("support outside P with alpha > 1 is the -inf sentinel") {
    const JointPmf masked = JointPmf::from_rows({{0.5, 0.5}, {0.0, 0.0}});
    const JointPmf r = JointPmf::from_rows({{0.25, 0.25}, {0.25, 0.25}});
    const InfoValue v = j_dual_value(masked, r, AlphaOrder(2.0));
    CHECK(v.is_infinite());
    CHECK(v.bits() < 0.0);
    // for alpha < 1 the same bracket is +inf (harmless for a minimization)
    CHECK(j_dual_value(masked, r, AlphaOrder(0.5)).bits() > 0.0);
  }
  SUBCASE("grid maximum of the bracket matches J for alpha = 2") {
    const AlphaOrder alpha(2.0);
    const double jv = compute_j_alpha(j, alpha).value.bits();
    double best = -std::numeric_limits<double>::infinity();
    detail::for_each_simplex_grid_point(4, 150, [&](const std::vector<double>& r) {
      best = std::max(best, j_dual_value(j, JointPmf(j.x_labels(), j.y_labels(), r), alpha)
                                .bits());
    });
    CHECK(best <= jv + 1e-9);
    CHECK(best == doctest::Approx(jv).epsilon(2e-4));
  }
}

TEST_CASE("j_dual_certificate") {
  SolverConfig cfg;
  SUBCASE("rejects alpha <= 1") {
    const JointPmf j = JointPmf::diagonal(Pmf::uniform(2));
    const MeasureResult r = compute_j_alpha(j, AlphaOrder(2.0), cfg);
    CHECK_THROWS_AS(j_dual_certificate(j, AlphaOrder(0.7), r), std::invalid_argument);
    CHECK_THROWS_AS(j_dual_certificate(j, AlphaOrder(1.0), r), std::invalid_argument);
  }
  SUBCASE("independent joint certifies with r = j and zero gap") {
    auto g = detail::seeded_engine(21, 0);
    const JointPmf j = product(random_pmf(g, 2), random_pmf(g, 2));
    const AlphaOrder alpha(2.0);
    const DualResult d = j_dual_certificate(j, alpha, compute_j_alpha(j, alpha, cfg));
    CHECK(d.certificate_gap <= 1e-9);
    for (std::size_t i = 0; i < j.probs().size(); ++i) {
      CHECK(d.r_opt.probs()[i] == doctest::Approx(j.probs()[i]).epsilon(1e-9));
    }
  }
  SUBCASE("counterexample joint at alpha = 1.5 certifies after convergence") {
    const JointPmf j = dpi_counterexample_joint();
    const AlphaOrder alpha(1.5);
    const DualResult d = j_dual_certificate(j, alpha, compute_j_alpha(j, alpha, cfg));
    CHECK(d.certificate_gap <= 1e-6);
  }
  SUBCASE("random full-support 3x3 at alpha = 2 certifies") {
    auto g = detail::seeded_engine(22, 0);
    for (int it = 0; it < 3; ++it) {
      const JointPmf j = random_joint(g, 3, 3, 0.05);
      const AlphaOrder alpha(2.0);
      const DualResult d = j_dual_certificate(j, alpha, compute_j_alpha(j, alpha, cfg));
      CHECK(d.certificate_gap <= 1e-6);
    }
  }
}

TEST_CASE("brute_force_oracle") {
  SUBCASE("rejects alphabets beyond 3x3") {
    const JointPmf j = JointPmf::diagonal(Pmf::uniform(4));
    CHECK_THROWS_AS(brute_force_oracle(j, AlphaOrder(2.0), 50, DependenceMeasure::kJ),
                    std::invalid_argument);
  }
  SUBCASE("independent 2x2 gives 0 at every resolution") {
    auto g = detail::seeded_engine(23, 0);
    const JointPmf j = product(random_pmf(g, 2), random_pmf(g, 2));
    for (int steps : {10, 50, 200}) {
      CHECK(brute_force_oracle(j, AlphaOrder(0.8), steps, DependenceMeasure::kJ).bits() ==
            doctest::Approx(0.0).epsilon(1e-9));
      CHECK(brute_force_oracle(j, AlphaOrder(1.4), steps, DependenceMeasure::kK).bits() ==
            doctest::Approx(0.0).epsilon(1e-9));
    }
  }
  SUBCASE("cross-validates the multi-start solver in the nonconvex regime") {
    auto g = detail::seeded_engine(24, 0);
    const JointPmf j = random_joint(g, 2, 2, 0.05);
    const AlphaOrder alpha(0.3);
    const double solver = compute_j_alpha(j, alpha).value.bits();
    const double oracle = brute_force_oracle(j, alpha, 400, DependenceMeasure::kJ).bits();
    CHECK(solver == doctest::Approx(oracle).epsilon(5e-4));
  }
  SUBCASE("diagonal uniform at alpha = 0.3 witnesses the non-convexity") {
    const JointPmf j = JointPmf::diagonal(Pmf::uniform(2));
    const AlphaOrder alpha(0.3);
    const double oracle = brute_force_oracle(j, alpha, 400, DependenceMeasure::kJ).bits();
    // (0.3/0.7) * 1 bit, the closed form
    CHECK(oracle == doctest::Approx(3.0 / 7.0).epsilon(1e-6));
    CHECK(oracle == doctest::Approx(j_self_closed_form(Pmf::uniform(2), alpha).bits())
                        .epsilon(1e-6));
    // the product-of-marginals point is strictly worse: the problem is not convex
    const double at_marginals =
        renyi_divergence(j.flattened(),
                         product(j.marginal_x(), j.marginal_y()).flattened(), alpha)
            .bits();
    CHECK(at_marginals == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(at_marginals > oracle + 0.5);
  }
}

TEST_CASE("MeasureResult invariants on random instances") {
  auto g = detail::seeded_engine(25, 0);
  SolverConfig cfg;
  for (int it = 0; it < 5; ++it) {
    const std::size_t nx = 2 + it % 3, ny = 2 + (it / 2) % 3;
    const JointPmf j = random_joint(g, nx, ny);
    const double cap = std::log2(static_cast<double>(std::min(nx, ny))) + 1e-9;
    for (double a : {0.3, 0.9, 1.0, 2.2}) {
      const MeasureResult r = compute_j_alpha(j, AlphaOrder(a), cfg);
      CHECK(r.value.bits() >= 0.0);
      CHECK(r.value.bits() <= cap);
      const double re =
          renyi_divergence(j.flattened(), product(r.qx_opt, r.qy_opt).flattened(),
                           AlphaOrder(a))
              .bits();
      CHECK(std::fabs(re - r.value.bits()) <= cfg.tol * std::max(1.0, re) + 1e-12);
      CHECK(r.regime == (a < 0.5 ? SolverRegime::kNonconvex : SolverRegime::kConvex));
    }
  }
}
