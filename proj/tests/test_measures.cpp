#include "doctest.h"

#include <cmath>

#include "renyidep/measures.hpp"
#include "renyidep/random.hpp"
#include "renyidep/selfcheck.hpp"

using namespace renyidep;

TEST_CASE("shannon_entropy") {
  CHECK(shannon_entropy(Pmf::uniform(4)).bits() == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(shannon_entropy(Pmf::from_probs({0.0, 1.0})).bits() == doctest::Approx(0.0));
  // direct evaluation: 0.75 log2(4/3) + 0.25 log2 4
  CHECK(shannon_entropy(Pmf::from_probs({0.75, 0.25})).bits() ==
        doctest::Approx(0.8112781244591328).epsilon(1e-12));
}

TEST_CASE("renyi_entropy") {
  for (double a : {0.2, 0.5, 2.0, 6.0}) {
    CHECK(renyi_entropy(Pmf::uniform(8), AlphaOrder(a)).bits() ==
          doctest::Approx(3.0).epsilon(1e-13));
  }
  const Pmf p = Pmf::from_probs({0.75, 0.25});
  CHECK(renyi_entropy(p, AlphaOrder(1.0)).bits() == shannon_entropy(p).bits());
  // -log2(0.5625 + 0.0625)
  CHECK(renyi_entropy(p, AlphaOrder(2.0)).bits() ==
        doctest::Approx(0.6780719051126377).epsilon(1e-12));
  // very large order approaches the min-entropy without underflow
  CHECK(renyi_entropy(p, AlphaOrder(5e5)).bits() ==
        doctest::Approx(min_entropy(p).bits()).epsilon(1e-4));
}

TEST_CASE("min_entropy") {
  CHECK(min_entropy(Pmf::uniform(6)).bits() == doctest::Approx(std::log2(6.0)));
  CHECK(min_entropy(Pmf::from_probs({1.0, 0.0})).bits() == doctest::Approx(0.0));
  CHECK(min_entropy(Pmf::from_probs({0.88, 0.06, 0.06})).bits() ==
        doctest::Approx(0.18442457113742744).epsilon(1e-12));
}

TEST_CASE("kl_divergence") {
  const Pmf p = Pmf::from_probs({0.5, 0.5});
  CHECK(kl_divergence(p, p).bits() == doctest::Approx(0.0));
  CHECK(kl_divergence(Pmf::from_probs({1.0, 0.0}), Pmf::from_probs({0.0, 1.0})).is_infinite());
  CHECK(kl_divergence(p, Pmf::from_probs({0.75, 0.25})).bits() ==
        doctest::Approx(0.2075187496394219).epsilon(1e-12));
}

TEST_CASE("renyi_divergence") {
  const Pmf p = Pmf::from_probs({0.5, 0.5});
  const Pmf q = Pmf::from_probs({0.9, 0.1});
  for (double a : {0.3, 1.0, 2.0, 4.0}) {
    CHECK(renyi_divergence(p, p, AlphaOrder(a)).bits() == doctest::Approx(0.0));
  }
  // alpha > 1 with Q lacking support where P > 0
  CHECK(renyi_divergence(p, Pmf::from_probs({1.0, 0.0}), AlphaOrder(2.0)).is_infinite());
  // alpha < 1: only disjoint supports are infinite
  CHECK_FALSE(renyi_divergence(p, Pmf::from_probs({1.0, 0.0}), AlphaOrder(0.5)).is_infinite());
  CHECK(renyi_divergence(Pmf::from_probs({1.0, 0.0}), Pmf::from_probs({0.0, 1.0}),
                         AlphaOrder(0.5))
            .is_infinite());
  // log2(0.25/0.9 + 0.25/0.1)
  CHECK(renyi_divergence(p, q, AlphaOrder(2.0)).bits() ==
        doctest::Approx(1.4739311883324122).epsilon(1e-12));
  CHECK(renyi_divergence(p, q, AlphaOrder(1.0)).bits() ==
        doctest::Approx(kl_divergence(p, q).bits()));
}

TEST_CASE("relative_alpha_entropy") {
  const Pmf p = Pmf::from_probs({0.5, 0.5});
  const Pmf q = Pmf::from_probs({0.9, 0.1});
  for (double a : {0.3, 1.0, 2.0}) {
    CHECK(relative_alpha_entropy(p, p, AlphaOrder(a)).bits() == doctest::Approx(0.0));
  }
  // frozen direct evaluation, cross-checked against the tilted-divergence route
  const double direct = relative_alpha_entropy(p, q, AlphaOrder(2.0)).bits();
  CHECK(direct == doctest::Approx(0.7136958148433586).epsilon(1e-10));
  const double via_tilt = renyi_divergence(tilt_pmf(p, AlphaOrder(2.0)),
                                           tilt_pmf(q, AlphaOrder(2.0)), AlphaOrder(0.5))
                              .bits();
  CHECK(direct == doctest::Approx(via_tilt).epsilon(1e-10));
  // alpha < 1 convention: p/0 = inf
  CHECK(relative_alpha_entropy(p, Pmf::from_probs({1.0, 0.0}), AlphaOrder(0.5)).is_infinite());
}

TEST_CASE("mutual_information") {
  auto g = detail::seeded_engine(3, 0);
  const JointPmf indep = product(random_pmf(g, 3), random_pmf(g, 2));
  CHECK(mutual_information(indep).bits() == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(mutual_information(JointPmf::diagonal(Pmf::uniform(4))).bits() ==
        doctest::Approx(2.0).epsilon(1e-13));
  CHECK(mutual_information(dpi_counterexample_joint()).bits() ==
        doctest::Approx(0.221).epsilon(0.005));
}

TEST_CASE("kl_decomposition_check") {
  const JointPmf j = dpi_counterexample_joint();
  SUBCASE("marginals zero the marginal terms") {
    const KlDecomposition d = kl_decomposition_check(j, j.marginal_x(), j.marginal_y());
    CHECK(d.marginal_x_divergence.bits() == doctest::Approx(0.0));
    CHECK(d.marginal_y_divergence.bits() == doctest::Approx(0.0));
  }
  SUBCASE("independent joint zeroes the mutual term") {
    auto g = detail::seeded_engine(4, 0);
    const JointPmf indep = product(random_pmf(g, 2), random_pmf(g, 3));
    const KlDecomposition d =
        kl_decomposition_check(indep, indep.marginal_y(), indep.marginal_x());
    CHECK(d.mutual_information.bits() == doctest::Approx(0.0).epsilon(1e-12));
  }
  SUBCASE("terms sum to the direct evaluation") {
    auto g = detail::seeded_engine(5, 0);
    for (int it = 0; it < 10; ++it) {
      const JointPmf r = random_joint(g, 3, 3);
      const Pmf qx(r.x_labels(), random_pmf(g, 3, 0.02).probs());
      const Pmf qy(r.y_labels(), random_pmf(g, 3, 0.02).probs());
      const KlDecomposition d = kl_decomposition_check(r, qx, qy);
      const double direct = kl_divergence(r.flattened(), product(qx, qy).flattened()).bits();
      const double sum = d.mutual_information.bits() + d.marginal_x_divergence.bits() +
                         d.marginal_y_divergence.bits();
      CHECK(sum == doctest::Approx(direct).epsilon(1e-10));
    }
  }
}

TEST_CASE("alphabet mismatches are rejected") {
  const Pmf p = Pmf::from_probs({0.5, 0.5}, "a");
  const Pmf q = Pmf::from_probs({0.5, 0.5}, "b");
  CHECK_THROWS_AS(kl_divergence(p, q), std::invalid_argument);
  CHECK_THROWS_AS(renyi_divergence(p, q, AlphaOrder(2.0)), std::invalid_argument);
  CHECK_THROWS_AS(relative_alpha_entropy(p, q, AlphaOrder(2.0)), std::invalid_argument);
}
