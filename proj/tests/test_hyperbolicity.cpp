#include <doctest.h>

#include "b2/hyperbolicity.hpp"
#include "b2/io.hpp"
#include "oracles.hpp"

using namespace b2;
using namespace b2::testing;

namespace {
constexpr std::array<double, 3> kEquilibrium{1. / 3, 1. / 3, 1. / 3};
}

TEST_CASE("analytic Jacobian at equilibrium") {
  const JacobianMatrix jx = jacobian_analytic_E1zero(kEquilibrium, 0);
  CHECK(jx.abc[0] == doctest::Approx(2.0 / 3).epsilon(1e-14));
  CHECK(jx.abc[1] == doctest::Approx(1.0 / 6).epsilon(1e-14));
  CHECK(jx.abc[2] == doctest::Approx(1.0 / 6).epsilon(1e-14));

  // sparsity of the x-direction matrix: advection rows then closure rows
  const Mat9& j = jx.entries;
  CHECK(j(0, 1) == 1.0);
  CHECK(j(1, 4) == 1.0);
  CHECK(j(2, 5) == 1.0);
  CHECK(j(3, 6) == 1.0);
  CHECK(j(4, 1) == doctest::Approx(2.0 / 3).epsilon(1e-14));
  CHECK(j(5, 2) == doctest::Approx(1.0 / 6).epsilon(1e-14));
  CHECK(j(6, 3) == doctest::Approx(1.0 / 6).epsilon(1e-14));
  CHECK(j(7, 1) == doctest::Approx(1.0 / 6).epsilon(1e-8));  // fd coupling
  for (int c = 0; c < 9; ++c) CHECK(j(8, c) == 0.0);          // last row zero
  int nonzero = 0;
  for (double v : j.a)
    if (v != 0.0) ++nonzero;
  CHECK(nonzero == 8);

  CHECK_THROWS_AS(jacobian_analytic_E1zero({0.5, 0.5, 0.0}, 0), DegenerateState);
  CHECK_THROWS_AS(jacobian_analytic_E1zero(kEquilibrium, 3), DomainError);
}

TEST_CASE("analytic entry bounds over the interior") {
  auto rng = make_rng(301);
  auto sigma_pos = [](const std::array<double, 3>& l) {
    for (int i = 0; i < 3; ++i) {
      const int j = (i + 1) % 3, k = (i + 2) % 3;
      if (!(3 * l[i] * l[i] + l[i] * (l[j] + l[k]) - l[j] * l[k] > 0)) return false;
    }
    return true;
  };
  for (int it = 0; it < 1000; ++it) {
    const auto l = random_simplex(rng, 0.01);
    const auto jac = axis_jacobians_E1zero(l);
    const SigmaWeights sw = sigma_weights(l, {0, 0, 0});
    for (int p = 0; p < 3; ++p) {
      const double a = jac[p].abc[0];
      CHECK(a <= 1.0 + 1e-12);
      CHECK((a > 0) == (sw.sigma[p] > 0));  // diagonalizable iff sigma_p > 0
      CHECK(jac[p].abc[1] > 0.0);
      CHECK(jac[p].abc[2] > 0.0);
      // the 1/2 bound on the transverse entries holds where every sigma is
      // positive (it needs sigma in (0, 3w), not just sigma <= w)
      if (sigma_pos(l)) {
        CHECK(jac[p].abc[1] < 0.5);
        CHECK(jac[p].abc[2] < 0.5);
      }
    }
  }
  // a <= 0 on a sigma-negative configuration, and the transverse bound fails
  // there too: B_2 = 0.5268... at this node
  const auto thin = axis_jacobians_E1zero({0.49, 0.02, 0.49});
  CHECK(thin[0].abc[1] > 0.5);
  const auto thin0 = axis_jacobians_E1zero({0.02, 0.49, 0.49});
  CHECK(thin0[0].abc[0] <= 0.0);
  CHECK_FALSE(is_real_diagonalizable(thin0[0]).ok);
}

TEST_CASE("finite differences agree with the analytic form") {
  const MomentState eq =
      build_moments(1.0, {0, 0, 0}, Mat3::diag(1. / 3, 1. / 3, 1. / 3));
  const JacobianMatrix ja = jacobian_analytic_E1zero(kEquilibrium, 0);
  const JacobianMatrix jf = jacobian_fd(eq, {1, 0, 0});
  double diff = 0;
  for (int i = 0; i < 81; ++i)
    diff = std::max(diff, std::abs(ja.entries.a[i] - jf.entries.a[i]));
  CHECK(diff < 1e-5);

  // generic interior state away from equilibrium
  const std::array<double, 3> l{0.5, 0.3, 0.2};
  const MomentState m = build_moments(1.0, {0, 0, 0}, Mat3::diag(l[0], l[1], l[2]));
  for (int p = 0; p < 3; ++p) {
    Vec3 n{};
    n[p] = 1.0;
    const JacobianMatrix ja2 = jacobian_analytic_E1zero(l, p);
    const JacobianMatrix jf2 = jacobian_fd(m, n);
    double d2 = 0;
    for (int i = 0; i < 81; ++i)
      d2 = std::max(d2, std::abs(ja2.entries.a[i] - jf2.entries.a[i]));
    CHECK(d2 < 1e-5);
  }
}

TEST_CASE("central differences converge at second order") {
  auto rng = make_rng(302);
  const MomentState m = random_box_state(rng, 0.18, 0.4, 1.0);
  const Vec3 n = random_unit(rng);
  const JacobianMatrix ref = jacobian_fd(m, n, 1e-6, true);  // Richardson
  auto err = [&](double step) {
    const JacobianMatrix j = jacobian_fd(m, n, step);
    double e = 0;
    for (int i = 0; i < 81; ++i)
      e = std::max(e, std::abs(j.entries.a[i] - ref.entries.a[i]));
    return e;
  };
  const double e1 = err(1e-3), e2 = err(5e-4), e4 = err(2.5e-4);
  CHECK(e1 / e2 == doctest::Approx(4.0).epsilon(0.5));
  CHECK(e2 / e4 == doctest::Approx(4.0).epsilon(0.5));
}

TEST_CASE("real diagonalizability: closed form and general path") {
  const JacobianMatrix jx = jacobian_analytic_E1zero(kEquilibrium, 0);
  const DiagResult r = is_real_diagonalizable(jx);
  REQUIRE(r.ok);
  const double sa = std::sqrt(2.0 / 3), sb = std::sqrt(1.0 / 6);
  const std::array<double, 9> want{-sa, -sb, -sb, 0, 0, 0, sb, sb, sa};
  for (int i = 0; i < 9; ++i)
    CHECK(r.speeds[i] == doctest::Approx(want[i]).scale(1.0).epsilon(1e-12));

  // the same matrix through the general eigendecomposition path
  const DiagResult g = is_real_diagonalizable(jx.entries);
  REQUIRE(g.ok);
  for (int i = 0; i < 9; ++i)
    CHECK(g.speeds[i] == doctest::Approx(want[i]).scale(1.0).epsilon(1e-9));

  // a vanishing squared speed is not diagonalizable
  JacobianMatrix degenerate = jx;
  degenerate.abc[0] = 0.0;
  const DiagResult d = is_real_diagonalizable(degenerate);
  CHECK_FALSE(d.ok);
  CHECK(d.reason == DiagFailure::nonpositive_speed_squared);

  // already-diagonal general matrix
  Mat9 diag;
  for (int i = 0; i < 9; ++i) diag(i, i) = i + 1.0;
  const DiagResult dd = is_real_diagonalizable(diag);
  REQUIRE(dd.ok);
  for (int i = 0; i < 9; ++i) CHECK(dd.speeds[i] == doctest::Approx(i + 1.0));

  // Jordan block: algebraic 2, geometric 1
  Mat9 jordan;
  jordan(0, 1) = 1.0;
  const DiagResult dj = is_real_diagonalizable(jordan);
  CHECK_FALSE(dj.ok);

  // rotating-block matrix has a complex pair
  Mat9 rot;
  rot(0, 1) = 1.0;
  rot(1, 0) = -1.0;
  const DiagResult dc = is_real_diagonalizable(rot);
  CHECK_FALSE(dc.ok);
  CHECK(dc.reason == DiagFailure::complex_pair);
}

TEST_CASE("speeds at E1 = 0 come in +- pairs") {
  auto rng = make_rng(303);
  for (int it = 0; it < 40; ++it) {
    const auto l = random_simplex(rng, 0.15);
    const auto jac = axis_jacobians_E1zero(l);
    const Vec3 n = random_unit(rng);
    Mat9 m = jac[0].entries * n.x;
    m += jac[1].entries * n.y;
    m += jac[2].entries * n.z;
    const DiagResult r = is_real_diagonalizable(m);
    if (!r.ok) continue;
    for (int i = 0; i < 9; ++i)
      CHECK(r.speeds[i] == doctest::Approx(-r.speeds[8 - i]).scale(1.0).epsilon(1e-9));
  }
}

TEST_CASE("fibonacci directions are unit and well spread") {
  const auto dirs = fibonacci_sphere(200);
  CHECK(dirs.size() == 200);
  Vec3 mean{};
  for (const Vec3& d : dirs) {
    CHECK(norm(d) == doctest::Approx(1.0).epsilon(1e-12));
    mean += d * (1.0 / 200);
  }
  CHECK(norm(mean) < 0.02);
}

TEST_CASE("region samplers: structure, nesting, determinism") {
  const int n = 15;
  const auto nonneg = sample_nonneg_region(n, 5);
  const auto hyp = sample_hyperbolic_region(n, 48);
  CHECK(nonneg.size() == (n + 1) * (n + 2) / 2);
  CHECK(hyp.size() == nonneg.size());

  for (size_t i = 0; i < hyp.size(); ++i) {
    const auto& s = hyp[i];
    CHECK(s.lambda_hat[0] + s.lambda_hat[1] + s.lambda_hat[2] ==
          doctest::Approx(1.0).epsilon(1e-12));
    // nesting: hyperbolic => sigma_pos
    if (s.hyperbolic) CHECK(s.sigma_pos);
    // boundary nodes are never hyperbolic
    const double mn = std::min({s.lambda_hat[0], s.lambda_hat[1], s.lambda_hat[2]});
    if (mn == 0.0) CHECK_FALSE(s.hyperbolic);
    // the nonneg sweep of the same grid visits the same nodes in order
    for (int c = 0; c < 3; ++c) CHECK(nonneg[i].lambda_hat[c] == s.lambda_hat[c]);
  }

  // equilibrium node: blue and hyperbolic
  bool found_eq = false;
  for (size_t i = 0; i < hyp.size(); ++i) {
    const auto& s = hyp[i];
    if (std::abs(s.lambda_hat[0] - 1. / 3) < 0.5 / n &&
        std::abs(s.lambda_hat[1] - 1. / 3) < 0.5 / n && s.lambda_hat[0] == s.lambda_hat[1]) {
      found_eq = true;
      CHECK(s.hyperbolic);
      CHECK(s.sigma_pos);
      CHECK(nonneg[i].delta >= -1e-12);
    }
  }
  CHECK(found_eq);

  // vertices excluded / marked exterior
  for (const auto& s : nonneg) {
    const double mx = std::max({s.lambda_hat[0], s.lambda_hat[1], s.lambda_hat[2]});
    if (mx == 1.0) CHECK_FALSE(s.sigma_pos);
    // the 1/7 claim on this coarse grid
    const double mn = std::min({s.lambda_hat[0], s.lambda_hat[1], s.lambda_hat[2]});
    if (mn >= 1.0 / 7) {
      CHECK(s.delta >= -1e-12);
      CHECK(s.sigma_pos);
    }
  }

  // byte-identical reruns
  CHECK(region_csv(sample_nonneg_region(n, 5)) == region_csv(nonneg));
  CHECK(region_csv(sample_hyperbolic_region(n, 48)) == region_csv(hyp));
}

TEST_CASE("directional spectra: axis form vs oblique directions") {
  // Along an eigenvector axis of E2 the spectrum is {0^3, +-sqrt(a), ...};
  // along oblique directions it is a genuinely different (still real) set --
  // which is why the hyperbolicity sweep samples directions instead of
  // reusing the axis closed form.
  const std::array<double, 3> lam{1. / 3 + 2e-3, 1. / 3, 1. / 3 - 2e-3};
  const MomentState m = build_moments(1.0, {0, 0, 0}, Mat3::diag(lam[0], lam[1], lam[2]));
  const auto jac = axis_jacobians_E1zero(lam);
  for (int p = 0; p < 3; ++p) {
    Vec3 n{};
    n[p] = 1.0;
    const DiagResult r = is_real_diagonalizable(jacobian_fd(m, n).entries);
    REQUIRE(r.ok);
    const double sa = std::sqrt(jac[p].abc[0]), sb = std::sqrt(jac[p].abc[1]),
                 sc = std::sqrt(jac[p].abc[2]);
    std::array<double, 9> want{-sa, -sb, -sc, 0, 0, 0, sc, sb, sa};
    std::sort(want.begin(), want.end());
    for (int i = 0; i < 9; ++i)
      CHECK(r.speeds[i] == doctest::Approx(want[i]).scale(1.0).epsilon(1e-5));
  }

  // at equilibrium the axis directions carry the standard speeds ...
  const MomentState eq =
      build_moments(1.0, {0, 0, 0}, Mat3::diag(1. / 3, 1. / 3, 1. / 3));
  const double sa = std::sqrt(2.0 / 3), sb = std::sqrt(1.0 / 6);
  const std::array<double, 9> want{-sa, -sb, -sb, 0, 0, 0, sb, sb, sa};
  const DiagResult rx = is_real_diagonalizable(jacobian_fd(eq, {1, 0, 0}).entries);
  REQUIRE(rx.ok);
  for (int i = 0; i < 9; ++i)
    CHECK(rx.speeds[i] == doctest::Approx(want[i]).scale(1.0).epsilon(2e-5));
  // ... while the (1,1,0)/sqrt(2) slice has squared speeds {1/6, 1/4, 7/12}
  const DiagResult rd =
      is_real_diagonalizable(jacobian_fd(eq, normalized(Vec3{1, 1, 0})).entries);
  REQUIRE(rd.ok);
  const double s1 = std::sqrt(7.0 / 12), s2 = 0.5, s3 = std::sqrt(1.0 / 6);
  const std::array<double, 9> lab{-s1, -s2, -s3, 0, 0, 0, s3, s2, s1};
  for (int i = 0; i < 9; ++i)
    CHECK(rd.speeds[i] == doctest::Approx(lab[i]).scale(1.0).epsilon(1e-5));
}
