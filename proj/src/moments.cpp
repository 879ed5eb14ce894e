#include "b2/moments.hpp"

#include <cmath>

namespace b2 {

Mat3 MomentState::e2() const {
  Mat3 m;
  m(0, 0) = exx_;
  m(1, 1) = eyy_;
  m(2, 2) = e2zz();
  m(0, 1) = m(1, 0) = exy_;
  m(0, 2) = m(2, 0) = exz_;
  m(1, 2) = m(2, 1) = eyz_;
  return m;
}

Vec9 MomentState::to_vec9() const {
  return {e0_, e1_.x, e1_.y, e1_.z, exx_, exy_, exz_, eyy_, eyz_};
}

MomentState MomentState::from_vec9(const Vec9& v) {
  Mat3 e2;
  e2(0, 0) = v[4];
  e2(0, 1) = e2(1, 0) = v[5];
  e2(0, 2) = e2(2, 0) = v[6];
  e2(1, 1) = v[7];
  e2(1, 2) = e2(2, 1) = v[8];
  e2(2, 2) = v[0] - v[4] - v[7];
  return build_moments(v[0], {v[1], v[2], v[3]}, e2);
}

MomentState build_moments(double e0, const Vec3& e1, const Mat3& e2) {
  if (!(e0 > 0)) throw NonPositiveEnergy("E0 must be positive");
  const Mat3 sym = (e2 + e2.transposed()) * 0.5;
  const double tr = sym(0, 0) + sym(1, 1) + sym(2, 2);
  if (std::abs(tr - e0) > 1e-10 * e0)
    throw TraceMismatch("trace(E2) differs from E0 beyond 1e-10 relative");

  // absorb the residual drift into the diagonal so trace(E2) = E0 holds
  const double s = e0 / tr;
  MomentState m;
  m.e0_ = e0;
  m.e1_ = e1;
  m.exx_ = sym(0, 0) * s;
  m.eyy_ = sym(1, 1) * s;
  m.exy_ = sym(0, 1);
  m.exz_ = sym(0, 2);
  m.eyz_ = sym(1, 2);
  return m;
}

ClosureFrame eigenframe(const MomentState& m) {
  SymEigen3 eig = sym_eigen3(m.e2(), 1e-9 * m.e0());
  for (double& v : eig.val)
    if (v < 0 && v >= -1e-14 * m.e0()) v = 0.0;

  ClosureFrame frame;
  frame.lambda = eig.val;
  frame.rot = eig.vec;
  for (int i = 0; i < 3; ++i) frame.f[i] = dot(m.e1(), eig.vec.column(i));
  return frame;
}

double realizability_margin(const MomentState& m) {
  const ClosureFrame frame = eigenframe(m);
  const double e0 = m.e0();
  double margin = e0;
  for (int i = 0; i < 3; ++i) {
    const double lam = frame.lambda[i];
    const double fi = frame.f[i];
    if (lam <= 1e-14 * e0) {
      if (std::abs(fi) > 1e-12 * e0)
        throw BoundaryViolation("lambda_i ~ 0 with nonzero F_i: outside the moment cone");
      continue;  // F_i^2/lambda_i taken as zero on the boundary
    }
    margin -= fi * fi / lam;
  }
  return margin;
}

MomentState rotate_moments(const MomentState& m, const Rotation& rot) {
  const Mat3& q = rot.matrix();
  return build_moments(m.e0(), q * m.e1(), q * m.e2() * q.transposed());
}

Mat9 moment_transform_matrix(const Rotation& rot) {
  const Mat3& q = rot.matrix();
  Mat9 t;
  t(0, 0) = 1.0;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) t(1 + i, 1 + j) = q(i, j);

  // quadratic rows: E2'_{ab} = sum_{cd} q_{ac} q_{bd} E2_{cd} with
  // E2_{zz} = E0 - E2_{xx} - E2_{yy} folded into the stored components
  static constexpr int kPairs[5][2] = {{0, 0}, {0, 1}, {0, 2}, {1, 1}, {1, 2}};
  for (int r = 0; r < 5; ++r) {
    const int a = kPairs[r][0], b = kPairs[r][1];
    const int row = 4 + r;
    const double qz = q(a, 2) * q(b, 2);
    t(row, 0) = qz;                                    // from E2_zz -> E0
    t(row, 4) = q(a, 0) * q(b, 0) - qz;                // E2_xx
    t(row, 7) = q(a, 1) * q(b, 1) - qz;                // E2_yy
    t(row, 5) = q(a, 0) * q(b, 1) + q(a, 1) * q(b, 0); // E2_xy
    t(row, 6) = q(a, 0) * q(b, 2) + q(a, 2) * q(b, 0); // E2_xz
    t(row, 8) = q(a, 1) * q(b, 2) + q(a, 2) * q(b, 1); // E2_yz
  }
  return t;
}

}  // namespace b2
