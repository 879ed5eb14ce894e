#include "b2/ansatz.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

namespace b2 {

AnsatzTerm make_term(double weight, const Vec3& axis, const BetaShape& shape) {
  if (weight < -1e-14) throw DomainError("ansatz term: negative weight");
  if (std::abs(norm(axis) - 1.0) > 1e-12)
    throw DomainError("ansatz term: axis must be a unit vector");
  return {std::max(weight, 0.0), axis, shape};
}

double eval_ansatz(const Vec3& omega, std::span<const AnsatzTerm, 3> terms) {
  // cosines clamped strictly inside (-1,1): shapes with xi or eta below 1
  // have divergent endpoint limits, and directions exactly on a term axis
  // would otherwise poison sums that are finite everywhere else
  constexpr double kMuMax = 1.0 - 1e-16;
  double v = 0;
  for (const AnsatzTerm& t : terms) {
    if (t.weight == 0.0) continue;
    if (!t.shape.is_smooth())
      throw DiracEvaluation("ansatz has a positive-weight Dirac term");
    const double mu = std::clamp(dot(omega, t.axis), -kMuMax, kMuMax);
    v += t.weight / (2.0 * M_PI) * beta_pdf(mu, t.shape);
  }
  return v;
}

namespace {

void accumulate_term(double w, const Vec3& u, double m1, double m2, double m3,
                     double& e0, Vec3& e1, Mat3& e2, ThirdMoments& e3) {
  e0 += w;
  e1 += (w * m1) * u;
  // E2 = w [ m2 u u^T + (1-m2)/2 (I - u u^T) ]
  const double trans = 0.5 * (1.0 - m2);
  e2 += (w * (m2 - trans)) * Mat3::outer(u, u) + (w * trans) * Mat3::identity();
  e3 += ThirdMoments::axisymmetric(u, m1, m3) * w;
}

}  // namespace

SphericalMoments spherical_moments(std::span<const AnsatzTerm, 3> terms) {
  double e0 = 0;
  Vec3 e1{};
  Mat3 e2;
  ThirdMoments e3;
  for (const AnsatzTerm& t : terms) {
    if (t.weight == 0.0) continue;
    accumulate_term(t.weight, t.axis, beta_moment(1, t.shape),
                    beta_moment(2, t.shape), beta_moment(3, t.shape), e0, e1, e2, e3);
  }
  return {build_moments(e0, e1, e2), e3};
}

namespace {

// orthonormal completion of a unit axis
void term_frame(const Vec3& u, Vec3& t1, Vec3& t2) {
  const Vec3 helper = std::abs(u.x) < 0.9 ? Vec3{1, 0, 0} : Vec3{0, 1, 0};
  t1 = normalized(cross(u, helper));
  t2 = cross(u, t1);
}

}  // namespace

SphericalMoments spherical_moments_quadrature(std::span<const AnsatzTerm, 3> terms,
                                              int quad_order) {
  if (quad_order < 2) throw DomainError("quadrature order must be >= 2");

  double e0 = 0;
  Vec3 e1{};
  Mat3 e2;
  ThirdMoments e3;

  // Dirac terms enter with their exact moments
  for (const AnsatzTerm& t : terms) {
    if (t.weight == 0.0 || t.shape.is_smooth()) continue;
    accumulate_term(t.weight, t.axis, beta_moment(1, t.shape),
                    beta_moment(2, t.shape), beta_moment(3, t.shape), e0, e1, e2, e3);
  }

  const int n_phi = 2 * quad_order;
  const double w_phi = 1.0 / n_phi;  // the 2 pi cancels the ansatz prefactor

  for (const AnsatzTerm& t : terms) {
    if (t.weight == 0.0 || !t.shape.is_smooth()) continue;
    const Quadrature1D gq = gauss_beta_weight(quad_order, t.shape.xi(), t.shape.eta());
    Vec3 t1, t2;
    term_frame(t.axis, t1, t2);

    for (int i = 0; i < quad_order; ++i) {
      const double mu = gq.node[i];
      const double sin_theta = std::sqrt(std::max(0.0, 1.0 - mu * mu));
      const double wi = t.weight * gq.weight[i] * w_phi;
      for (int j = 0; j < n_phi; ++j) {
        const double phi = 2.0 * M_PI * j / n_phi;
        const Vec3 omega =
            mu * t.axis + (sin_theta * std::cos(phi)) * t1 + (sin_theta * std::sin(phi)) * t2;
        e0 += wi;
        e1 += wi * omega;
        for (int a = 0; a < 3; ++a)
          for (int b = a; b < 3; ++b) {
            const double v = wi * omega[a] * omega[b];
            e2(a, b) += v;
            if (a != b) e2(b, a) += v;
          }
        for (int a = 0; a < 3; ++a)
          for (int b = a; b < 3; ++b)
            for (int c = b; c < 3; ++c)
              e3.at(a, b, c) += wi * omega[a] * omega[b] * omega[c];
      }
    }
  }
  return {build_moments(e0, e1, e2), e3};
}

Quadrature1D gauss_beta_weight(int n, double xi, double eta) {
  if (n < 1 || !(xi > 0) || !(eta > 0))
    throw DomainError("gauss_beta_weight: need n >= 1 and xi, eta > 0");
  // Jacobi weight (1-x)^alpha (1+x)^beta with alpha = eta-1, beta = xi-1;
  // Golub-Welsch on the symmetric tridiagonal recurrence matrix
  const double a = eta - 1.0, b = xi - 1.0;
  Eigen::VectorXd diag(n), sub(n - 1 > 0 ? n - 1 : 0);
  diag[0] = (b - a) / (a + b + 2.0);
  for (int k = 1; k < n; ++k) {
    const double s = 2.0 * k + a + b;
    diag[k] = (b * b - a * a) / (s * (s + 2.0));
    double bk;
    if (k == 1)
      bk = 4.0 * (1.0 + a) * (1.0 + b) / ((a + b + 2.0) * (a + b + 2.0) * (a + b + 3.0));
    else
      bk = 4.0 * k * (k + a) * (k + b) * (k + a + b) / (s * s * (s + 1.0) * (s - 1.0));
    sub[k - 1] = std::sqrt(bk);
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
  solver.computeFromTridiagonal(diag, sub, Eigen::ComputeEigenvectors);
  Quadrature1D q;
  q.node.resize(n);
  q.weight.resize(n);
  for (int i = 0; i < n; ++i) {
    q.node[i] = solver.eigenvalues()[i];
    const double v0 = solver.eigenvectors()(0, i);
    q.weight[i] = v0 * v0;  // normalized: weights sum to 1
  }
  return q;
}

Quadrature1D gauss_legendre(int n) {
  Quadrature1D q;
  q.node.resize(n);
  q.weight.resize(n);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
    double dp = 0;
    for (int iter = 0; iter < 100; ++iter) {
      // Legendre recurrence for P_n and P'_n
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    q.node[i] = -x;
    q.node[n - 1 - i] = x;
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    q.weight[i] = w;
    q.weight[n - 1 - i] = w;
  }
  return q;
}

}  // namespace b2
