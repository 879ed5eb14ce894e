// Fully symmetric rank-3 tensor E3_ijk, stored as its 10 independent entries
// in lexicographic index order: 111,112,113,122,123,133,222,223,233,333.
#pragma once

#include <array>

#include "b2/geometry.hpp"

namespace b2 {

class ThirdMoments {
 public:
  static constexpr int kCount = 10;

  static int index(int i, int j, int k) {
    // sort the triple (i <= j <= k), then rank lexicographically
    if (i > j) std::swap(i, j);
    if (j > k) std::swap(j, k);
    if (i > j) std::swap(i, j);
    static constexpr int kBase[3] = {0, 6, 9};  // offset of (i,i,i)
    // entries with first index i: pairs (j,k), j<=k, j>=i
    // i=0: 6 entries, i=1: 3, i=2: 1
    const int local = (j - i) * (2 * (3 - i) - (j - i) + 1) / 2 + (k - j);
    return kBase[i] + local;
  }

  double operator()(int i, int j, int k) const { return m_[index(i, j, k)]; }
  double& at(int i, int j, int k) { return m_[index(i, j, k)]; }

  const std::array<double, kCount>& data() const { return m_; }
  std::array<double, kCount>& data() { return m_; }

  // contraction E3(u, v, w)
  double contract(const Vec3& u, const Vec3& v, const Vec3& w) const {
    double s = 0;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        for (int k = 0; k < 3; ++k) s += (*this)(i, j, k) * u[i] * v[j] * w[k];
    return s;
  }

  // E3'_{abc} = Q_{ai} Q_{bj} Q_{ck} E3_{ijk}
  ThirdMoments rotated(const Mat3& q) const {
    ThirdMoments out;
    for (int a = 0; a < 3; ++a)
      for (int b = a; b < 3; ++b)
        for (int c = b; c < 3; ++c)
          out.at(a, b, c) = contract(q.row(a), q.row(b), q.row(c));
    return out;
  }

  ThirdMoments& operator+=(const ThirdMoments& o) {
    for (int i = 0; i < kCount; ++i) m_[i] += o.m_[i];
    return *this;
  }
  ThirdMoments operator*(double s) const {
    ThirdMoments out = *this;
    for (double& v : out.m_) v *= s;
    return out;
  }
  ThirdMoments operator-(const ThirdMoments& o) const {
    ThirdMoments out = *this;
    for (int i = 0; i < kCount; ++i) out.m_[i] -= o.m_[i];
    return out;
  }
  double max_abs() const {
    double r = 0;
    for (double v : m_) r = std::max(r, std::abs(v));
    return r;
  }

  // axisymmetric building block: the tensor of a unit-mass distribution with
  // axis u whose 1D moments along u are m1 (odd) and m3, i.e.
  //   m3 u_i u_j u_k + (m1 - m3)/2 * (u_i P_jk + u_j P_ik + u_k P_ij),
  // with P = I - u u^T.
  static ThirdMoments axisymmetric(const Vec3& u, double m1, double m3) {
    const double c = 0.5 * (m1 - m3);
    Mat3 p = Mat3::identity() - Mat3::outer(u, u);
    ThirdMoments out;
    for (int i = 0; i < 3; ++i)
      for (int j = i; j < 3; ++j)
        for (int k = j; k < 3; ++k)
          out.at(i, j, k) = m3 * u[i] * u[j] * u[k] +
                            c * (u[i] * p(j, k) + u[j] * p(i, k) + u[k] * p(i, j));
    return out;
  }

 private:
  std::array<double, kCount> m_{};
};

}  // namespace b2
