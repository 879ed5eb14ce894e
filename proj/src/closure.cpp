#include "b2/closure.hpp"

#include <algorithm>
#include <cmath>

namespace b2 {

namespace {

constexpr double kZeroLambda = 1e-13;  // normalized-unit zero guard

// (x - fx^2/x) with the x -> 0, fx -> 0 limit convention
double q_factor(double x, double fx) {
  if (x <= kZeroLambda) {
    if (std::abs(fx) > 1e-12)
      throw DomainError("q: lambda ~ 0 with a nonzero first moment");
    return 0.0;
  }
  return x - fx * fx / x;
}

double r_term(double x, double fx) {
  if (x <= kZeroLambda) return 0.0;
  return fx * fx / x;
}

void check_box(double x, double fx) {
  if (std::abs(fx) > x + 1e-12)
    throw DomainError("first moment outside the box |F_i| <= lambda_i");
}

}  // namespace

double q_func(double x, double y, double fx, double fy) {
  check_box(x, fx);
  check_box(y, fy);
  return q_factor(x, fx) * q_factor(y, fy);
}

double r_func(double x, double y, double fx, double fy) {
  check_box(x, fx);
  check_box(y, fy);
  return -(1.0 - r_term(x, fx) - r_term(y, fy));
}

double h_func(double x, double y, double fx, double fy) {
  return (4.0 / 3.0) * q_func(x, y, fx, fy) * r_func(x, y, fx, fy);
}

namespace {

// g without the box check; the checked q/r wrappers above re-validate inputs
double g_unchecked(double x, double y, double fx, double fy) {
  const double s = x + y;
  if (s < kZeroLambda) return 0.0;
  const double q = q_factor(x, fx) * q_factor(y, fy);
  const double r = -(1.0 - r_term(x, fx) - r_term(y, fy));
  return 2.0 * q * (s - 1.0 - r) / (3.0 * s * s);
}

SigmaWeights assemble_sigma_w(const std::array<double, 3>& l,
                              const std::array<double, 3>& f) {
  const double g01 = g_unchecked(l[0], l[1], f[0], f[1]);
  const double g02 = g_unchecked(l[0], l[2], f[0], f[2]);
  const double g12 = g_unchecked(l[1], l[2], f[1], f[2]);
  SigmaWeights sw;
  sw.sigma = {l[0] - g01 - g02, l[1] - g01 - g12, l[2] - g02 - g12};
  sw.w = {sw.sigma[0] + 2.0 * g12, sw.sigma[1] + 2.0 * g02, sw.sigma[2] + 2.0 * g01};
  return sw;
}

}  // namespace

double g_func(double x, double y, double fx, double fy) {
  check_box(x, fx);
  check_box(y, fy);
  return g_unchecked(x, y, fx, fy);
}

SigmaWeights sigma_weights(const std::array<double, 3>& lambda_hat,
                           const std::array<double, 3>& f_hat) {
  for (int i = 0; i < 3; ++i) {
    if (lambda_hat[i] < -1e-12) throw DomainError("negative lambda_hat");
    check_box(lambda_hat[i], f_hat[i]);
  }
  return assemble_sigma_w(lambda_hat, f_hat);
}

SigmaWeights sigma_weights_unchecked(const std::array<double, 3>& lambda_hat,
                                     const std::array<double, 3>& f_hat) {
  return assemble_sigma_w(lambda_hat, f_hat);
}

namespace {

struct NormalizedState {
  ClosureFrame frame;  // physical-unit frame
  std::array<double, 3> lambda_hat, f_hat;
  SigmaWeights sw;  // normalized
  double e0;
};

NormalizedState normalized_closure(const MomentState& m) {
  NormalizedState n;
  n.e0 = m.e0();
  n.frame = eigenframe(m);
  for (int i = 0; i < 3; ++i) {
    n.lambda_hat[i] = n.frame.lambda[i] / n.e0;
    n.f_hat[i] = n.frame.f[i] / n.e0;
  }
  n.sw = sigma_weights_unchecked(n.lambda_hat, n.f_hat);
  return n;
}

NonnegDiagnostics diagnostics_of(const NormalizedState& n) {
  NonnegDiagnostics d;
  double delta_hat = std::numeric_limits<double>::infinity();
  d.box_ok = true;
  for (int i = 0; i < 3; ++i) {
    delta_hat = std::min(delta_hat,
                         n.sw.w[i] * n.sw.sigma[i] - n.f_hat[i] * n.f_hat[i]);
    if (std::abs(n.f_hat[i]) > n.lambda_hat[i] + 1e-12) d.box_ok = false;
  }
  d.delta = delta_hat * n.e0 * n.e0;
  d.sigma_pos_ok = true;
  const auto& l = n.lambda_hat;
  for (int i = 0; i < 3; ++i) {
    const int j = (i + 1) % 3, k = (i + 2) % 3;
    if (!(3.0 * l[i] * l[i] + l[i] * (l[j] + l[k]) - l[j] * l[k] > 0))
      d.sigma_pos_ok = false;
  }
  d.unsafe = !(d.box_ok && d.sigma_pos_ok && delta_hat >= -1e-12);
  return d;
}

}  // namespace

ClosureParams closure_params(const MomentState& m) {
  const double margin = realizability_margin(m);
  if (margin < -1e-12 * m.e0())
    throw NotRealizable("moments outside the realizability domain");

  const NormalizedState n = normalized_closure(m);
  ClosureParams p;
  p.frame = n.frame;
  p.e0 = n.e0;
  for (int i = 0; i < 3; ++i) {
    if (std::abs(n.sw.w[i]) < 1e-13) {
      if (std::abs(n.f_hat[i]) > 1e-12)
        throw ZeroWeightInconsistency("w_i ~ 0 but F_i != 0");
      p.w[i] = 0.0;
      p.sigma[i] = 0.0;
      p.shapes[i] = BetaShape::uniform();  // placeholder, never evaluated
      continue;
    }
    if (n.sw.w[i] < 0)
      throw Unrealizable1D("negative ansatz weight: no non-negative term");
    p.shapes[i] =
        shape_from_moments(n.f_hat[i] / n.sw.w[i], n.sw.sigma[i] / n.sw.w[i]);
    p.sigma[i] = n.sw.sigma[i] * n.e0;
    p.w[i] = n.sw.w[i] * n.e0;
  }
  return p;
}

std::array<AnsatzTerm, 3> ansatz_terms(const ClosureParams& p) {
  return {make_term(p.w[0], p.frame.rot.column(0), p.shapes[0]),
          make_term(p.w[1], p.frame.rot.column(1), p.shapes[1]),
          make_term(p.w[2], p.frame.rot.column(2), p.shapes[2])};
}

namespace {

// Per-axis closed-form values of <(Omega.R_l)^3 B> and <(Omega.R_m)^2
// (Omega.R_l) B>; both carry an overall factor F_l.
void axis_third_values(double f, double sigma, double w, double e0,
                       double& v_diag, double& v_trans) {
  if (std::abs(f) <= 1e-14 * e0) {
    v_diag = v_trans = 0.0;
    return;
  }
  const double den = 2.0 * f * f - w * sigma - w * w;
  double ratio;
  if (std::abs(den) < 1e-12 * e0 * e0) {
    // sigma = w limit: numerator and denominator share (2F^2 - 2w^2)
    ratio = 1.0;
  } else {
    ratio = (sigma * sigma + 2.0 * f * f - 3.0 * w * sigma) / den;
  }
  v_diag = f * ratio;
  v_trans = 0.5 * f * (1.0 - ratio);
}

ThirdMoments third_from(const ClosureFrame& frame,
                        const std::array<double, 3>& sigma,
                        const std::array<double, 3>& w, double e0) {
  ThirdMoments t;
  for (int l = 0; l < 3; ++l) {
    double v_diag, v_trans;
    axis_third_values(frame.f[l], sigma[l], w[l], e0, v_diag, v_trans);
    if (v_diag == 0.0 && v_trans == 0.0) continue;
    // v_diag u^3 + v_trans on the two (m,m,l) slots, m != l
    const Vec3 u = frame.rot.column(l);
    const double m1_eff = 2.0 * v_trans + v_diag;  // so (m1-m3)/2 = v_trans
    t += ThirdMoments::axisymmetric(u, m1_eff, v_diag);
  }
  return t;
}

}  // namespace

ThirdMoments third_moments(const ClosureParams& p) {
  return third_from(p.frame, p.sigma, p.w, p.e0);
}

Fluxes assemble_fluxes(const MomentState& m, const ThirdMoments& t) {
  const Mat3 e2 = m.e2();
  Fluxes fl;
  for (int d = 0; d < 3; ++d) {
    Vec9& f = fl.f[d];
    f[0] = m.e1()[d];
    f[1] = e2(d, 0);
    f[2] = e2(d, 1);
    f[3] = e2(d, 2);
    f[4] = t(d, 0, 0);
    f[5] = t(d, 0, 1);
    f[6] = t(d, 0, 2);
    f[7] = t(d, 1, 1);
    f[8] = t(d, 1, 2);
  }
  return fl;
}

Fluxes fluxes(const MomentState& m) {
  return assemble_fluxes(m, third_moments(closure_params(m)));
}

NonnegDiagnostics nonneg_diagnostics(const MomentState& m) {
  return diagnostics_of(normalized_closure(m));
}

AlgebraicClosure closure_algebraic(const MomentState& m) {
  const NormalizedState n = normalized_closure(m);
  AlgebraicClosure out;
  out.params.frame = n.frame;
  out.params.e0 = n.e0;
  for (int i = 0; i < 3; ++i) {
    out.params.sigma[i] = n.sw.sigma[i] * n.e0;
    out.params.w[i] = n.sw.w[i] * n.e0;
    if (std::abs(n.sw.w[i]) < 1e-13) {
      out.params.sigma[i] = 0.0;
      out.params.w[i] = 0.0;
      out.shape_ok[i] = std::abs(n.f_hat[i]) < 1e-12;
      continue;
    }
    try {
      out.params.shapes[i] =
          shape_from_moments(n.f_hat[i] / n.sw.w[i], n.sw.sigma[i] / n.sw.w[i]);
      out.shape_ok[i] = n.sw.w[i] > 0;
    } catch (const B2Error&) {
      out.shape_ok[i] = false;
    }
  }
  out.diag = diagnostics_of(n);
  out.third = third_from(out.params.frame, out.params.sigma, out.params.w, n.e0);
  return out;
}

}  // namespace b2
