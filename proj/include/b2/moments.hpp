// Moment data model for the second-order system: the 9-component state
// [E0, E1x, E1y, E1z, E2xx, E2xy, E2xz, E2yy, E2yz] (E2zz = E0 - E2xx - E2yy),
// realizability checks, the eigenframe of E2, and rotation machinery.
#pragma once

#include <array>

#include "b2/geometry.hpp"

namespace b2 {

using Vec9 = std::array<double, 9>;

// Row-major dense 9x9, used for moment transform matrices and flux Jacobians.
struct Mat9 {
  std::array<double, 81> a{};

  double& operator()(int i, int j) { return a[9 * i + j]; }
  double operator()(int i, int j) const { return a[9 * i + j]; }

  static Mat9 identity() {
    Mat9 m;
    for (int i = 0; i < 9; ++i) m(i, i) = 1.0;
    return m;
  }

  Vec9 operator*(const Vec9& v) const {
    Vec9 r{};
    for (int i = 0; i < 9; ++i) {
      double s = 0;
      for (int j = 0; j < 9; ++j) s += (*this)(i, j) * v[j];
      r[i] = s;
    }
    return r;
  }
  Mat9 operator*(const Mat9& o) const {
    Mat9 m;
    for (int i = 0; i < 9; ++i)
      for (int j = 0; j < 9; ++j) {
        double s = 0;
        for (int k = 0; k < 9; ++k) s += (*this)(i, k) * o(k, j);
        m(i, j) = s;
      }
    return m;
  }
  Mat9& operator+=(const Mat9& o) {
    for (int i = 0; i < 81; ++i) a[i] += o.a[i];
    return *this;
  }
  Mat9 operator*(double s) const {
    Mat9 m;
    for (int i = 0; i < 81; ++i) m.a[i] = a[i] * s;
    return m;
  }
  double frobenius_norm() const {
    double s = 0;
    for (double v : a) s += v * v;
    return std::sqrt(s);
  }
};

// Validated moment state. Immutable after construction; trace(E2) = E0 is
// enforced exactly through the stored-component convention.
class MomentState {
 public:
  double e0() const { return e0_; }
  const Vec3& e1() const { return e1_; }
  Mat3 e2() const;                    // full symmetric matrix, zz reconstructed
  double e2zz() const { return e0_ - exx_ - eyy_; }

  Vec9 to_vec9() const;
  static MomentState from_vec9(const Vec9& v);

 private:
  friend MomentState build_moments(double e0, const Vec3& e1, const Mat3& e2);
  MomentState() = default;

  double e0_ = 0;
  Vec3 e1_{};
  double exx_ = 0, exy_ = 0, exz_ = 0, eyy_ = 0, eyz_ = 0;
};

// Eigenframe of E2: eigenvalues sorted descending, right-handed eigenvector
// columns R_1, R_2, R_3, and the rotated first moments f_i = E1 . R_i.
struct ClosureFrame {
  std::array<double, 3> lambda{};
  Mat3 rot;
  Vec3 f{};
};

// Validates and normalizes input: e2 is symmetrized by averaging, the
// diagonal is rescaled to make trace(e2) = e0 when the drift is <= 1e-10*e0.
// Throws NonPositiveEnergy / TraceMismatch.
MomentState build_moments(double e0, const Vec3& e1, const Mat3& e2);

// Analytic symmetric eigendecomposition of e2 with descending eigenvalues,
// deterministic degenerate-space orientation (gap < 1e-9*e0), the column sign
// convention, det = +1, and negative eigenvalues within -1e-14*e0 clamped.
ClosureFrame eigenframe(const MomentState& m);

// E0 - sum_i F_i^2/lambda_i computed in the eigenframe; a term is dropped
// when lambda_i <= 1e-14*e0 and |F_i| <= 1e-12*e0. margin >= 0 iff realizable.
// Throws BoundaryViolation when lambda_i ~ 0 (or negative beyond clamping)
// with |F_i| above tolerance: such moments lie outside the cone entirely.
double realizability_margin(const MomentState& m);

// Active rotation: e1 -> rot e1, e2 -> rot e2 rot^T.
MomentState rotate_moments(const MomentState& m, const Rotation& rot);

// 9x9 matrix T with rotate_moments(m, rot).to_vec9() == T * m.to_vec9().
// T(rot^T) is its inverse.
Mat9 moment_transform_matrix(const Rotation& rot);

}  // namespace b2
