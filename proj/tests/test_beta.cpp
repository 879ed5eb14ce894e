#include <doctest.h>

#include "b2/beta.hpp"
#include "oracles.hpp"

using namespace b2;
using namespace b2::testing;

TEST_CASE("beta pdf reference values") {
  const BetaShape uniform = BetaShape::uniform();  // xi = eta = 1
  for (double mu : {-1.0, -0.4, 0.0, 0.7, 1.0})
    CHECK(beta_pdf(mu, uniform) == doctest::Approx(0.5).epsilon(1e-15));

  // gamma = 1/2, delta = 1/4 -> xi = eta = 2, density 3/4 (1 - mu^2) / ... at 0
  const BetaShape b22 = BetaShape::smooth(0.5, 0.25);
  CHECK(beta_pdf(0.0, b22) == doctest::Approx(0.75).epsilon(1e-14));

  CHECK_THROWS_AS(beta_pdf(0.0, BetaShape::dirac_pair(0.5)), DiracEvaluation);
  CHECK_THROWS_AS(beta_pdf(0.0, BetaShape::dirac_single(0.2)), DiracEvaluation);
  CHECK_THROWS_AS(beta_pdf(1.5, uniform), DomainError);
}

TEST_CASE("beta moments reference values") {
  const BetaShape uniform = BetaShape::uniform();
  CHECK(beta_moment(0, uniform) == 1.0);
  CHECK(beta_moment(1, uniform) == doctest::Approx(0.0));
  CHECK(beta_moment(2, uniform) == doctest::Approx(1.0 / 3).epsilon(1e-15));
  CHECK(beta_moment(3, uniform) == doctest::Approx(0.0));

  const BetaShape ds = BetaShape::dirac_single(-0.3);
  for (int k = 0; k <= 3; ++k)
    CHECK(beta_moment(k, ds) == doctest::Approx(std::pow(-0.3, k)));

  const BetaShape dp = BetaShape::dirac_pair(0.75);
  CHECK(beta_moment(0, dp) == 1.0);
  CHECK(beta_moment(1, dp) == doctest::Approx(0.5));
  CHECK(beta_moment(2, dp) == 1.0);
  CHECK(beta_moment(3, dp) == doctest::Approx(0.5));

  CHECK_THROWS_AS(beta_moment(4, uniform), UnsupportedOrder);
  CHECK_THROWS_AS(beta_moment(-1, uniform), UnsupportedOrder);
}

TEST_CASE("shape_from_moments branch selection") {
  const BetaShape uniform = shape_from_moments(0.0, 1.0 / 3);
  CHECK(uniform.is_smooth());
  CHECK(uniform.gamma() == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(uniform.delta() == doctest::Approx(0.5).epsilon(1e-15));

  const BetaShape beam = shape_from_moments(1.0, 1.0);
  CHECK(beam.branch() == BetaBranch::DiracSingle);
  CHECK(beam.mu() == 1.0);

  const BetaShape pair = shape_from_moments(0.0, 1.0);
  CHECK(pair.branch() == BetaBranch::DiracPair);
  CHECK(pair.weight_plus() == doctest::Approx(0.5));

  CHECK_THROWS_AS(shape_from_moments(0.5, 0.2), Unrealizable1D);  // m1^2 > m2
  CHECK_THROWS_AS(shape_from_moments(0.0, 1.1), Unrealizable1D);  // m2 > 1
}

TEST_CASE("family normalization via the tanh-sinh oracle") {
  auto rng = make_rng(101);
  std::uniform_real_distribution<double> ug(0.02, 0.98);
  std::uniform_real_distribution<double> uld(std::log(1e-2), std::log(1e2));
  int tested = 0;
  while (tested < 60) {
    const BetaShape s = BetaShape::smooth(ug(rng), std::exp(uld(rng)));
    // truncation of the oracle needs min(xi, eta) bounded away from zero
    if (std::min(s.xi(), s.eta()) < 5e-3) continue;
    ++tested;
    CHECK(beta_density_integral(0, s.xi(), s.eta()) ==
          doctest::Approx(1.0).epsilon(1e-10));
  }
}

TEST_CASE("beta_pdf agrees with the density definition at interior points") {
  auto rng = make_rng(104);
  std::uniform_real_distribution<double> ug(0.05, 0.95);
  std::uniform_real_distribution<double> uld(std::log(1e-2), std::log(1e2));
  std::uniform_real_distribution<double> um(-0.999, 0.999);
  for (int it = 0; it < 200; ++it) {
    const BetaShape s = BetaShape::smooth(ug(rng), std::exp(uld(rng)));
    const double mu = um(rng);
    const double log_norm = -std::log(2.0) - (std::lgamma(s.xi()) + std::lgamma(s.eta()) -
                                              std::lgamma(s.xi() + s.eta()));
    const double ref = std::exp(log_norm + (s.xi() - 1.0) * std::log((1.0 + mu) / 2) +
                                (s.eta() - 1.0) * std::log((1.0 - mu) / 2));
    CHECK(beta_pdf(mu, s) == doctest::Approx(ref).epsilon(1e-12));
  }
}

TEST_CASE("analytic moments match quadrature for delta >= 0.01") {
  auto rng = make_rng(102);
  std::uniform_real_distribution<double> ug(0.05, 0.95);
  std::uniform_real_distribution<double> uld(std::log(1e-2), std::log(1e2));
  int tested = 0;
  while (tested < 50) {
    const BetaShape s = BetaShape::smooth(ug(rng), std::exp(uld(rng)));
    if (std::min(s.xi(), s.eta()) < 5e-3) continue;
    ++tested;
    for (int k = 0; k <= 3; ++k)
      CHECK(beta_moment(k, s) ==
            doctest::Approx(beta_density_integral(k, s.xi(), s.eta()))
                .epsilon(1e-10)
                .scale(1.0));
  }
}

TEST_CASE("shape recovery is the inverse of the moment map") {
  auto rng = make_rng(103);
  std::uniform_real_distribution<double> u01(0, 1), u11(-1, 1);
  for (int it = 0; it < 2000; ++it) {
    // interior of the 1D realizability region m1^2 <= m2 <= 1
    const double m1 = 0.98 * u11(rng);
    const double m2 = m1 * m1 + (1.0 - m1 * m1) * (0.002 + 0.996 * u01(rng));
    const BetaShape s = shape_from_moments(m1, m2);
    CHECK(beta_moment(1, s) == doctest::Approx(m1).epsilon(1e-10).scale(1.0));
    CHECK(beta_moment(2, s) == doctest::Approx(m2).epsilon(1e-10).scale(1.0));
  }
  // and the other direction: moments of a shape invert to the same shape
  std::uniform_real_distribution<double> ug(0.05, 0.95);
  std::uniform_real_distribution<double> uld(std::log(1e-3), std::log(1e3));
  for (int it = 0; it < 2000; ++it) {
    const double g = ug(rng), d = std::exp(uld(rng));
    const BetaShape s = BetaShape::smooth(g, d);
    const BetaShape back = shape_from_moments(beta_moment(1, s), beta_moment(2, s));
    REQUIRE(back.is_smooth());
    CHECK(back.gamma() == doctest::Approx(g).epsilon(1e-9));
    CHECK(back.delta() == doctest::Approx(d).epsilon(1e-9));
  }
}

TEST_CASE("third moment formula vs quadrature near the Dirac guards") {
  // strongly concentrated but still Smooth shapes
  for (auto [g, d] : {std::pair{0.9, 1e-4}, {0.1, 1e-4}, {0.5, 5.0}, {0.8, 2.0}}) {
    const BetaShape s = BetaShape::smooth(g, d);
    const double quad = beta_density_integral(3, s.xi(), s.eta(), 12);
    CHECK(beta_moment(3, s) == doctest::Approx(quad).epsilon(1e-8).scale(1.0));
  }
}
