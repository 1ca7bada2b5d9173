#include "doctest.h"

#include <cmath>

#include "renyidep/random.hpp"
#include "renyidep/selfcheck.hpp"
#include "renyidep/task_encoding.hpp"

using namespace renyidep;

TEST_CASE("rate_region") {
  SolverConfig cfg;
  SUBCASE("rejects nonpositive rho") {
    const JointPmf j = JointPmf::diagonal(Pmf::uniform(2));
    CHECK_THROWS_AS(rate_region(j, 0.0, cfg), std::invalid_argument);
    CHECK_THROWS_AS(rate_region(j, -1.0, cfg), std::invalid_argument);
  }
  SUBCASE("independent sources split the sum bound") {
    auto g = detail::seeded_engine(31, 0);
    for (double rho : {0.25, 1.0, 3.0}) {
      const JointPmf j = product(random_pmf(g, 2), random_pmf(g, 3));
      const RateRegion r = rate_region(j, rho, cfg);
      CHECK(r.sum_min == doctest::Approx(r.rx_min + r.ry_min).epsilon(1e-9));
    }
  }
  SUBCASE("diagonal uniform 2 at rho = 1 is (1, 1, 2) bits") {
    const RateRegion r = rate_region(JointPmf::diagonal(Pmf::uniform(2)), 1.0, cfg);
    CHECK(r.rx_min == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(r.ry_min == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(r.sum_min == doctest::Approx(2.0).epsilon(1e-9));
  }
  SUBCASE("counterexample joint at rho = 1: sum bound is H_1/2(X,Y) + 0.253") {
    const JointPmf j = dpi_counterexample_joint();
    const RateRegion r = rate_region(j, 1.0, cfg);
    const double h_half = renyi_entropy(j.flattened(), AlphaOrder(0.5)).bits();
    CHECK(r.sum_min == doctest::Approx(h_half + 0.253).epsilon(1e-3));
  }
  SUBCASE("bound ordering") {
    auto g = detail::seeded_engine(32, 0);
    for (int it = 0; it < 5; ++it) {
      const RateRegion r = rate_region(random_joint(g, 2, 3), 0.5 + it, cfg);
      CHECK(r.rx_min >= 0.0);
      CHECK(r.ry_min >= 0.0);
      CHECK(r.rx_min <= r.sum_min + 1e-12);
      CHECK(r.ry_min <= r.sum_min + 1e-12);
    }
  }
  SUBCASE("contains() checks all three constraints") {
    const RateRegion r = rate_region(JointPmf::diagonal(Pmf::uniform(2)), 1.0, cfg);
    CHECK(r.contains(1.0, 1.0));
    CHECK_FALSE(r.contains(0.9, 1.2));   // rx below its bound
    CHECK_FALSE(r.contains(1.05, 0.7));  // sum below the sum bound
  }
}

TEST_CASE("simulate_list_moment validation") {
  const JointPmf j = JointPmf::from_rows({{0.4, 0.1}, {0.1, 0.4}});
  CHECK_THROWS_AS(simulate_list_moment(j, 2, 1.0, 1.0, 0.0, 0, 1, true),
                  std::invalid_argument);
  CHECK_THROWS_AS(simulate_list_moment(j, 0, 1.0, 1.0, 1.0, 0, 1, true),
                  std::invalid_argument);
  CHECK_THROWS_AS(simulate_list_moment(j, 2, -0.5, 1.0, 1.0, 0, 1, true),
                  std::invalid_argument);
  // 4^12 pairs exceed the exact enumeration cap
  CHECK_THROWS_AS(simulate_list_moment(j, 12, 1.0, 1.0, 1.0, 0, 1, true),
                  std::invalid_argument);
  // zero trials in Monte Carlo mode
  CHECK_THROWS_AS(simulate_list_moment(j, 2, 1.0, 1.0, 1.0, 0, 1, false),
                  std::invalid_argument);
}

TEST_CASE("simulate_list_moment degenerate encoders") {
  const JointPmf j = JointPmf::from_rows({{0.4, 0.1}, {0.1, 0.4}});
  SUBCASE("own bin per sequence gives moment exactly 1") {
    // 2^60 bins for 4 sequences: this seed draws no collision
    const SimOutcome s = simulate_list_moment(j, 2, 30.0, 30.0, 1.0, 0, 5, true);
    CHECK(s.moment_estimate == 1.0);
  }
  SUBCASE("single bin each lists everything") {
    for (double rho : {0.5, 1.0, 2.0}) {
      const SimOutcome s = simulate_list_moment(j, 1, 0.0, 0.0, rho, 0, 9, true);
      CHECK(s.moment_estimate == doctest::Approx(std::pow(4.0, rho)).epsilon(1e-13));
    }
  }
}

TEST_CASE("simulate_list_moment basics") {
  auto g = detail::seeded_engine(33, 0);
  const JointPmf j = random_joint(g, 2, 2, 0.2);
  SUBCASE("moment is always at least 1") {
    for (int n : {1, 2, 4}) {
      for (std::uint64_t seed : {1ull, 2ull, 3ull}) {
        const SimOutcome s = simulate_list_moment(j, n, 0.9, 1.1, 1.0, 0, seed, true);
        CHECK(s.moment_estimate >= 1.0);
      }
    }
  }
  SUBCASE("exact mode is deterministic given the seed") {
    const SimOutcome a = simulate_list_moment(j, 3, 0.8, 0.8, 1.5, 0, 77, true);
    const SimOutcome b = simulate_list_moment(j, 3, 0.8, 0.8, 1.5, 0, 77, true);
    CHECK(a.moment_estimate == b.moment_estimate);
  }
  SUBCASE("Monte Carlo agrees with exact enumeration within 3 standard errors") {
    const SimOutcome e = simulate_list_moment(j, 3, 0.8, 0.8, 1.0, 0, 4242, true);
    const SimOutcome mc = simulate_list_moment(j, 3, 0.8, 0.8, 1.0, 30000, 4242, false);
    CHECK(mc.method == SimOutcome::Method::kMonteCarlo);
    CHECK(std::fabs(mc.moment_estimate - e.moment_estimate) <= 3.0 * mc.std_error + 1e-12);
  }
}

TEST_CASE("list moment trend across block lengths") {
  // Rates far inside / far outside the region show the expected direction
  // even at tiny n once averaged over a few encoder draws.
  const JointPmf j = JointPmf::from_rows({{0.4, 0.1}, {0.1, 0.4}});
  const RateRegion region = rate_region(j, 1.0);
  auto averaged = [&](double rate, int n) {
    double s = 0.0;
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
      s += simulate_list_moment(j, n, rate, rate, 1.0, 0, seed, true).moment_estimate;
    }
    return s / 5.0;
  };
  // comfortably inside: every sequence almost surely alone in its bin
  const double far_in = 1.6 * region.sum_min / 2.0;
  CHECK(averaged(far_in, 6) <= averaged(far_in, 2) + 1e-9);
  // far outside: lists grow geometrically with n
  const double far_out = 0.4 * region.sum_min / 2.0;
  CHECK(averaged(far_out, 6) >= averaged(far_out, 2) * 2.0);
}

TEST_CASE("draw_bin_assignment") {
  const JointPmf j = JointPmf::from_rows({{0.4, 0.1}, {0.1, 0.4}});
  const BinAssignment a = draw_bin_assignment(j, 3, 1.0, 0.5, 11);
  const BinAssignment b = draw_bin_assignment(j, 3, 1.0, 0.5, 11);
  CHECK(a.popx == b.popx);
  CHECK(a.popy == b.popy);
  CHECK(a.popx.size() == 8);
  CHECK(a.bins_x == 8);
  CHECK(a.bins_y == 2);  // floor(2^1.5)
  for (std::uint32_t p : a.popx) CHECK(p >= 1);
}
