// The 3D second-order beta closure: interpolation functions q, r, h, g on the
// barycentric eigenvalue triangle, the sigma/w assignment, per-axis beta shape
// recovery, the closed-form third-moment tensor, flux assembly, and the
// non-negativity diagnostics.
//
// All interpolation formulas run in E0-normalized units (sum lambda_hat = 1);
// results are rescaled to physical units afterwards.
#pragma once

#include <array>
#include <optional>

#include "b2/ansatz.hpp"
#include "b2/moments.hpp"
#include "b2/third_moments.hpp"

namespace b2 {

// q(x,y; fx,fy) = (x - fx^2/x)(y - fy^2/y); each factor is taken as 0 in the
// limit x -> 0 with fx -> 0. Throws DomainError when |fx| > x + 1e-12.
double q_func(double x, double y, double fx, double fy);
// r(x,y; fx,fy) = -(1 - fx^2/x - fy^2/y), non-positive on the realizability
// domain; the fx^2/x terms use the same zero-limit convention.
double r_func(double x, double y, double fx, double fy);
// h = (4/3) q r; h(1/2,1/2;0,0) = -1/3 and h(x,y;+-x,+-y) = 0.
double h_func(double x, double y, double fx, double fy);
// g(x,y; fx,fy) = 2 q (x + y - 1 - r) / (3 (x+y)^2), symmetric under
// (x,fx) <-> (y,fy); defined as 0 when x + y < 1e-13.
double g_func(double x, double y, double fx, double fy);

struct SigmaWeights {
  std::array<double, 3> sigma{};  // sigma_i = lambda_i - g_ij - g_ik
  std::array<double, 3> w{};      // w_i = sigma_i + 2 g_jk
};

// Normalized sigma/w assignment on the box |f_hat_i| <= lambda_hat_i.
// Throws DomainError outside the box (tolerance 1e-12).
SigmaWeights sigma_weights(const std::array<double, 3>& lambda_hat,
                           const std::array<double, 3>& f_hat);
// Same formulas evaluated algebraically with no box check; used for region
// mapping and for closure values outside the guaranteed region.
SigmaWeights sigma_weights_unchecked(const std::array<double, 3>& lambda_hat,
                                     const std::array<double, 3>& f_hat);

struct ClosureParams {
  ClosureFrame frame;              // eigenvalues, axes, rotated first moments
  std::array<double, 3> sigma{};   // physical units (rescaled by E0)
  std::array<double, 3> w{};
  std::array<BetaShape, 3> shapes{BetaShape::uniform(), BetaShape::uniform(),
                                  BetaShape::uniform()};
  bool normalized = true;          // internal formulas ran with E0 = 1
  double e0 = 0;
};

// Full pipeline: eigenframe -> normalize -> sigma_weights -> per-axis
// shape_from_moments(F_i/w_i, sigma_i/w_i) -> rescale. Zero-weight axes
// (|w_i| < 1e-13 E0) get a placeholder shape and must carry |F_i| < 1e-12 E0.
// Throws NotRealizable (margin below -1e-12 E0), Unrealizable1D (discriminant
// negative / unsolvable 1D subproblem), ZeroWeightInconsistency.
ClosureParams closure_params(const MomentState& m);

// The three ansatz terms (w_i, R_i, shape_i) of a recovered parameter set.
std::array<AnsatzTerm, 3> ansatz_terms(const ClosureParams& p);

// Closed-form third-moment tensor in the lab frame. Works from (F, sigma, w)
// only, so it also evaluates on the algebraic route where no shape exists;
// the removable singularity 2F^2 - w sigma - w^2 = 0 (Dirac-pair corner)
// takes the factored limit value F.
ThirdMoments third_moments(const ClosureParams& p);

struct Fluxes {
  std::array<Vec9, 3> f{};  // f[d] = flux along axis d in the state ordering
};

// f_x = [E1x, E2xx, E2xy, E2xz, E3xxx, E3xxy, E3xxz, E3xyy, E3xyz], etc.
Fluxes fluxes(const MomentState& m);
Fluxes assemble_fluxes(const MomentState& m, const ThirdMoments& t);

struct NonnegDiagnostics {
  double delta = 0;          // min_i (w_i sigma_i - F_i^2), physical units
  bool box_ok = false;       // |F_j| <= lambda_j for all j
  bool sigma_pos_ok = false; // 3 l_i^2 + l_i(l_j + l_k) - l_j l_k > 0, all i
  bool unsafe = false;       // outside the guaranteed non-negativity region
};

NonnegDiagnostics nonneg_diagnostics(const MomentState& m);

// Tolerant evaluation used by region mapping and the slab export: computes
// frame, sigma, w and the algebraic third moments without requiring shape
// recovery. `params.shapes` entries are only meaningful where `shape_ok`.
struct AlgebraicClosure {
  ClosureParams params;
  NonnegDiagnostics diag;
  std::array<bool, 3> shape_ok{};
  ThirdMoments third;
};
AlgebraicClosure closure_algebraic(const MomentState& m);

}  // namespace b2
