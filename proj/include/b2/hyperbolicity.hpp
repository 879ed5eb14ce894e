// Flux Jacobians of the closed moment system, real-diagonalizability tests,
// wave speeds, and the barycentric region samplers behind the non-negativity
// and hyperbolicity maps.
#pragma once

#include <array>
#include <vector>

#include "b2/closure.hpp"
#include "b2/moments.hpp"

namespace b2 {

struct JacobianMatrix {
  Mat9 entries;
  Vec3 direction{1, 0, 0};
  bool analytic = false;              // closed-form E1 = 0 structure
  std::array<double, 3> abc{};        // squared nonzero speeds (analytic only)
};

// Closed-form Jacobian of the flux along lab axis `axis` (0..2) at E1 = 0,
// E2 = diag(lambda_hat), E0 = 1. The diagonal entry d E3_ppp / d E1_p and the
// transverse entries d E3_ppk / d E1_k use the analytic expressions
//   A_i = sigma_i (3 w_i - sigma_i) / (w_i (sigma_i + w_i)),
//   B_i = (w_i - sigma_i)^2 / (2 w_i (sigma_i + w_i));
// the couplings d E3_pkk / d E1_p come from central finite differences of the
// third-moment tensor (step fd_step). Throws DegenerateState when any
// lambda_hat_i <= 1e-12.
JacobianMatrix jacobian_analytic_E1zero(const std::array<double, 3>& lambda_hat,
                                        int axis, double fd_step = 1e-6);

// All three axis Jacobians at once (shares the finite-difference sweeps).
std::array<JacobianMatrix, 3> axis_jacobians_E1zero(
    const std::array<double, 3>& lambda_hat, double fd_step = 1e-6);

// General-state Jacobian of n . f by central differences of the closed
// fluxes, step h = step * E0, with optional Richardson refinement.
// Throws ClosureFailure when a stencil point leaves the evaluable set.
JacobianMatrix jacobian_fd(const MomentState& m, const Vec3& n,
                           double step = 1e-6, bool richardson = false);

enum class DiagFailure { none, nonpositive_speed_squared, complex_pair, defective };

struct DiagResult {
  bool ok = false;
  std::array<double, 9> speeds{};  // sorted ascending; NaN entries when !ok
  DiagFailure reason = DiagFailure::none;
  double min_gap = 0;  // smallest spacing between distinct eigenvalue clusters
};

// Analytic matrices use the closed-form criterion (all abc > tol); general
// matrices are tested by eigendecomposition: every eigenvalue must be real to
// tol*|J| and have geometric multiplicity (rank deficiency of J - lambda I at
// threshold tol*|J|) equal to its algebraic multiplicity.
DiagResult is_real_diagonalizable(const JacobianMatrix& j, double tol = 1e-9);
DiagResult is_real_diagonalizable(const Mat9& j, double tol = 1e-9);

struct RegionSample {
  std::array<double, 3> lambda_hat{};
  std::array<double, 3> f_hat{};
  double delta = 0;        // min_i (w_i sigma_i - f_i^2), normalized units
  bool sigma_pos = false;
  bool hyperbolic = false;
  double min_eig_gap = 0;
};

// Barycentric sweep of the lambda triangle at resolution grid_n (step
// 1/grid_n); per node the f-box |f_j| <= lambda_j is scanned on an
// f_grid_n^3 grid and the worst discriminant recorded (f_hat holds the
// minimizer). hyperbolic is not evaluated here (left false).
std::vector<RegionSample> sample_nonneg_region(int grid_n, int f_grid_n);

// Same sweep at E1 = 0: a node is hyperbolic when n.J is real diagonalizable
// for the three lab axes (closed form) and dir_n Fibonacci-sphere directions
// (general test). Boundary nodes are emitted as not hyperbolic.
std::vector<RegionSample> sample_hyperbolic_region(int grid_n, int dir_n);

// Quasi-uniform unit directions (Fibonacci sphere).
std::vector<Vec3> fibonacci_sphere(int n);

}  // namespace b2
