// Three-term axisymmetric beta ansatz on the sphere:
//   B(Omega) = sum_i w_i/(2 pi) f(Omega . R_i; gamma_i, delta_i),
// pointwise evaluation and its moments up to order three, computed either
// from the analytic 1D moment formulas or by product quadrature.
#pragma once

#include <array>
#include <span>
#include <vector>

#include "b2/beta.hpp"
#include "b2/geometry.hpp"
#include "b2/moments.hpp"
#include "b2/third_moments.hpp"

namespace b2 {

struct AnsatzTerm {
  double weight = 0;   // w_i >= 0 (values above -1e-14 are clamped)
  Vec3 axis{0, 0, 1};  // unit
  BetaShape shape = BetaShape::uniform();
};

// Validates invariants (unit axis to 1e-12, weight >= -1e-14) and clamps the
// weight at zero. Throws DomainError.
AnsatzTerm make_term(double weight, const Vec3& axis, const BetaShape& shape);

// Pointwise value at a unit direction. Zero-weight terms are skipped; a
// positive-weight Dirac term throws DiracEvaluation.
double eval_ansatz(const Vec3& omega, std::span<const AnsatzTerm, 3> terms);

struct SphericalMoments {
  MomentState state;
  ThirdMoments third;
};

// Semi-analytic path: per-term 1D moments assembled axisymmetrically and
// rotated to the lab frame. Exact for every branch.
SphericalMoments spherical_moments(std::span<const AnsatzTerm, 3> terms);

// Quadrature path: per Smooth term, an N x 2N product rule in the term's own
// frame (the lemma's coordinate choice) -- a Gauss rule in mu = cos(theta)
// taken with respect to the term's beta weight, so that polynomial x beta
// integrands of the orders needed are integrated exactly, crossed with a
// uniform phi rule (2N nodes, exact for the trigonometric polynomials that
// appear). Dirac terms contribute their exact point-mass moments (no
// pointwise density exists for them).
SphericalMoments spherical_moments_quadrature(std::span<const AnsatzTerm, 3> terms,
                                              int quad_order = 64);

struct Quadrature1D {
  std::vector<double> node, weight;
};
// Gauss-Legendre nodes/weights on [-1, 1].
Quadrature1D gauss_legendre(int n);
// Gauss nodes/weights on [-1, 1] for the weight (1+mu)^(xi-1) (1-mu)^(eta-1),
// normalized so the weights sum to 1 (Golub-Welsch on the Jacobi matrix).
Quadrature1D gauss_beta_weight(int n, double xi, double eta);

}  // namespace b2
