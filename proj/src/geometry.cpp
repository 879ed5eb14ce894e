#include "b2/geometry.hpp"

#include <algorithm>
#include <cmath>

namespace b2 {

Rotation::Rotation(const Mat3& m) : m_(m) {
  const Mat3 gram = m.transposed() * m;
  const Mat3 dev = gram - Mat3::identity();
  if (max_abs(dev) > 1e-12)
    throw InvalidRotation("rotation matrix is not orthogonal to 1e-12");
  if (std::abs(determinant(m) - 1.0) > 1e-12)
    throw InvalidRotation("rotation matrix determinant is not +1 to 1e-12");
}

Rotation Rotation::inverse() const { return Rotation(m_.transposed()); }

Rotation Rotation::axis_angle(const Vec3& axis, double angle) {
  const Vec3 u = normalized(axis);
  const double c = std::cos(angle), s = std::sin(angle);
  Mat3 m = Mat3::identity() * c + Mat3::outer(u, u) * (1.0 - c);
  m(0, 1) -= s * u.z;
  m(0, 2) += s * u.y;
  m(1, 0) += s * u.z;
  m(1, 2) -= s * u.x;
  m(2, 0) -= s * u.y;
  m(2, 1) += s * u.x;
  return Rotation(m);
}

Rotation Rotation::from_to(const Vec3& a, const Vec3& b) {
  const Vec3 u = normalized(a), v = normalized(b);
  const double c = dot(u, v);
  if (c > 1.0 - 1e-14) return Rotation::identity();
  if (c < -1.0 + 1e-14) {
    // antipodal: rotate by pi about any axis orthogonal to u
    Vec3 helper = std::abs(u.x) < 0.9 ? Vec3{1, 0, 0} : Vec3{0, 1, 0};
    return axis_angle(cross(u, helper), M_PI);
  }
  return axis_angle(cross(u, v), std::acos(std::clamp(c, -1.0, 1.0)));
}

namespace {

// Characteristic polynomial p(x) = x^3 - tr x^2 + c1 x - det(A), one Newton
// step per root to sharpen the Cardano values.
struct CharPoly {
  double c2, c1, c0;  // p(x) = x^3 + c2 x^2 + c1 x + c0
  double eval(double x) const { return ((x + c2) * x + c1) * x + c0; }
  double deriv(double x) const { return (3.0 * x + 2.0 * c2) * x + c1; }
};

std::array<double, 3> cardano_eigenvalues(const Mat3& A) {
  const double de = A(0, 1) * A(1, 2);
  const double dd = A(0, 1) * A(0, 1);
  const double ee = A(1, 2) * A(1, 2);
  const double ff = A(0, 2) * A(0, 2);
  const double m = A(0, 0) + A(1, 1) + A(2, 2);
  const double c1 =
      (A(0, 0) * A(1, 1) + A(0, 0) * A(2, 2) + A(1, 1) * A(2, 2)) - (dd + ee + ff);
  const double c0 = A(2, 2) * dd + A(0, 0) * ee + A(1, 1) * ff -
                    A(0, 0) * A(1, 1) * A(2, 2) - 2.0 * A(0, 2) * de;
  // note c0 = -det(A), so p(x) = x^3 - m x^2 + c1 x + c0

  const double p = m * m - 3.0 * c1;
  const double q = m * (p - 1.5 * c1) - 13.5 * c0;
  const double sqrt_p = std::sqrt(std::abs(p));
  double phi = 27.0 * (0.25 * c1 * c1 * (p - c1) + c0 * (q + 6.75 * c0));
  phi = (1.0 / 3.0) * std::atan2(std::sqrt(std::abs(phi)), q);

  const double c = sqrt_p * std::cos(phi);
  const double s = (1.0 / std::sqrt(3.0)) * sqrt_p * std::sin(phi);

  std::array<double, 3> w;
  w[1] = (1.0 / 3.0) * (m - c);
  w[2] = w[1] + s;
  w[0] = w[1] + c;
  w[1] -= s;

  // one Newton polish per eigenvalue; near-multiple roots have p' ~ 0 and the
  // step is rejected there (the 2x2 reduction downstream owns those)
  const CharPoly cp{-m, c1, c0};
  const double scale =
      std::max({std::abs(w[0]), std::abs(w[1]), std::abs(w[2]), 1e-300});
  for (double& x : w) {
    const double d = cp.deriv(x);
    if (std::abs(d) > 1e-8 * scale * scale) {
      const double step = cp.eval(x) / d;
      if (std::isfinite(step) && std::abs(step) <= 1e-3 * scale) x -= step;
    }
  }
  std::sort(w.begin(), w.end(), std::greater<double>());
  return w;
}

// Eigenvector of A for a well-separated eigenvalue, via the largest cross
// product of columns of (A - lambda I).
Vec3 simple_eigenvector(const Mat3& A, double lambda) {
  Mat3 B = A;
  B(0, 0) -= lambda;
  B(1, 1) -= lambda;
  B(2, 2) -= lambda;
  const Vec3 c0 = B.column(0), c1 = B.column(1), c2 = B.column(2);
  const Vec3 cand[3] = {cross(c0, c1), cross(c0, c2), cross(c1, c2)};
  int best = 0;
  double best_n = dot(cand[0], cand[0]);
  for (int i = 1; i < 3; ++i) {
    const double n = dot(cand[i], cand[i]);
    if (n > best_n) {
      best = i;
      best_n = n;
    }
  }
  return normalized(cand[best]);
}

// Lowest-index lab axis with the largest projection onto the subspace
// spanned by the columns of P (a projector).
Vec3 best_lab_axis_in(const Mat3& proj) {
  int best = 0;
  double best_n = -1.0;
  for (int i = 0; i < 3; ++i) {
    Vec3 e{};
    e[i] = 1.0;
    const Vec3 p = proj * e;
    const double n = dot(p, p);
    if (n > best_n + 1e-15) {  // strict improvement keeps the lowest index on ties
      best = i;
      best_n = n;
    }
  }
  Vec3 e{};
  e[best] = 1.0;
  return normalized(proj * e);
}

void apply_sign_convention(Mat3& v) {
  for (int j = 0; j < 3; ++j) {
    int arg = 0;
    double mx = std::abs(v(0, j));
    for (int i = 1; i < 3; ++i)
      if (std::abs(v(i, j)) > mx) {
        mx = std::abs(v(i, j));
        arg = i;
      }
    if (v(arg, j) < 0)
      for (int i = 0; i < 3; ++i) v(i, j) = -v(i, j);
  }
  if (determinant(v) < 0)
    for (int i = 0; i < 3; ++i) v(i, 2) = -v(i, 2);
}

}  // namespace

SymEigen3 sym_eigen3(const Mat3& a, double deg_tol) {
  const Mat3 A = (a + a.transposed()) * 0.5;
  const double scale = std::max(max_abs(A), 1e-300);

  SymEigen3 out;

  // exact path for (near-)diagonal input: keeps boundary states like
  // diag(1,1,0) bit-exact through the closure
  const double off =
      std::max({std::abs(A(0, 1)), std::abs(A(0, 2)), std::abs(A(1, 2))});
  if (off <= 1e-14 * scale) {
    std::array<int, 3> idx{0, 1, 2};
    std::stable_sort(idx.begin(), idx.end(),
                     [&](int i, int j) { return A(i, i) > A(j, j); });
    for (int j = 0; j < 3; ++j) out.val[j] = A(idx[j], idx[j]);
    // within a degenerate cluster the axis order is by lab index (values keep
    // their descending slots; the pairing is free inside the cluster)
    int lo = 0;
    while (lo < 3) {
      int hi = lo;
      while (hi + 1 < 3 && out.val[lo] - out.val[hi + 1] < deg_tol) ++hi;
      std::sort(idx.begin() + lo, idx.begin() + hi + 1);
      lo = hi + 1;
    }
    for (int j = 0; j < 3; ++j)
      for (int i = 0; i < 3; ++i) out.vec(i, j) = (i == idx[j]) ? 1.0 : 0.0;
    apply_sign_convention(out.vec);
    return out;
  }

  const std::array<double, 3> w = cardano_eigenvalues(A);
  const double g01 = w[0] - w[1];
  const double g12 = w[1] - w[2];

  Vec3 v0, v1, v2;
  if (g01 < deg_tol && g12 < deg_tol) {
    // near-scalar matrix: the whole space is one cluster
    out.val = w;
    v0 = {1, 0, 0};
    v1 = {0, 1, 0};
    v2 = {0, 0, 1};
  } else {
    // the best-separated eigenvalue has a well-conditioned eigenvector; the
    // remaining pair is diagonalized exactly on its invariant complement,
    // which stays accurate down to (and through) a degenerate pair
    const int sep = (g01 >= g12) ? 0 : 2;
    const Vec3 u = simple_eigenvector(A, w[sep]);
    Vec3 t1, t2;
    {
      const Vec3 helper = std::abs(u.x) < 0.9 ? Vec3{1, 0, 0} : Vec3{0, 1, 0};
      t1 = normalized(cross(u, helper));
      t2 = cross(u, t1);
    }
    const Vec3 at1 = A * t1, at2 = A * t2;
    const double b11 = dot(t1, at1), b22 = dot(t2, at2), b12 = dot(t1, at2);
    const double avg = 0.5 * (b11 + b22);
    const double r = std::hypot(0.5 * (b11 - b22), b12);
    const double pair_hi = avg + r, pair_lo = avg - r;

    Vec3 p1, p2;  // eigenvectors for pair_hi, pair_lo
    if (2.0 * r < deg_tol) {
      // degenerate pair: deterministic lab-aligned basis inside the subspace
      const Mat3 proj = Mat3::identity() - Mat3::outer(u, u);
      p1 = best_lab_axis_in(proj);
      p2 = cross(u, p1);
    } else {
      const double theta = 0.5 * std::atan2(2.0 * b12, b11 - b22);
      const double ct = std::cos(theta), st = std::sin(theta);
      p1 = ct * t1 + st * t2;
      p2 = -st * t1 + ct * t2;
      if (dot(p1, A * p1) < dot(p2, A * p2)) std::swap(p1, p2);
    }
    const double sep_val = (A(0, 0) + A(1, 1) + A(2, 2)) - pair_hi - pair_lo;
    if (sep == 0) {
      out.val = {sep_val, pair_hi, pair_lo};
      v0 = u;
      v1 = p1;
      v2 = p2;
    } else {
      out.val = {pair_hi, pair_lo, sep_val};
      v0 = p1;
      v1 = p2;
      v2 = u;
    }
    // enforce the descending order if the separated value interleaves
    std::array<Vec3, 3> vs{v0, v1, v2};
    std::array<int, 3> idx{0, 1, 2};
    std::stable_sort(idx.begin(), idx.end(),
                     [&](int i, int j) { return out.val[i] > out.val[j]; });
    const std::array<double, 3> vals = out.val;
    for (int j = 0; j < 3; ++j) out.val[j] = vals[idx[j]];
    v0 = vs[idx[0]];
    v1 = vs[idx[1]];
    v2 = vs[idx[2]];
  }
  out.vec = Mat3::from_columns(v0, v1, v2);
  apply_sign_convention(out.vec);
  return out;
}

}  // namespace b2
