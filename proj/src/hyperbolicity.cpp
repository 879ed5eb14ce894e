#include "b2/hyperbolicity.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <functional>
#include <limits>
#include <thread>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

namespace b2 {

namespace {

constexpr int kE0Col = 0;
inline int e1_col(int i) { return 1 + i; }
// stored E2 components (xx, xy, xz, yy, yz)
inline int e2_col(int i, int j) {
  if (i > j) std::swap(i, j);
  if (i == 0) return 4 + j;       // (0,0)->4 (0,1)->5 (0,2)->6
  if (i == 1) return 6 + j;       // (1,1)->7 (1,2)->8
  return -1;                      // (2,2) is not stored
}

struct AxisCoefficients {
  std::array<double, 3> A{}, B{};              // closed forms at E1 = 0
  std::array<std::array<double, 3>, 3> fd{};   // fd[p][k] = d E3_pkk / d E1_p
};

AxisCoefficients axis_coefficients(const std::array<double, 3>& lambda_hat,
                                   double fd_step) {
  for (double l : lambda_hat)
    if (l <= 1e-12)
      throw DegenerateState("analytic Jacobian requires strictly interior lambda");

  const SigmaWeights sw = sigma_weights(lambda_hat, {0.0, 0.0, 0.0});
  AxisCoefficients c;
  for (int i = 0; i < 3; ++i) {
    const double s = sw.sigma[i], w = sw.w[i];
    const double d = w * (s + w);
    c.A[i] = s * (3.0 * w - s) / d;
    c.B[i] = 0.5 * (w - s) * (w - s) / d;
  }

  // couplings d E3_pkk / d E1_p by central differences of the tensor
  const Mat3 e2 = Mat3::diag(lambda_hat[0], lambda_hat[1], lambda_hat[2]);
  for (int p = 0; p < 3; ++p) {
    Vec3 e1{};
    e1[p] = fd_step;
    const ThirdMoments tp = closure_algebraic(build_moments(1.0, e1, e2)).third;
    const ThirdMoments tm = closure_algebraic(build_moments(1.0, -e1, e2)).third;
    for (int k = 0; k < 3; ++k)
      c.fd[p][k] = (tp(p, k, k) - tm(p, k, k)) / (2.0 * fd_step);
  }
  return c;
}

JacobianMatrix assemble_axis_jacobian(const AxisCoefficients& c, int p) {
  JacobianMatrix jm;
  jm.analytic = true;
  jm.direction = Vec3{};
  jm.direction[p] = 1.0;

  Mat9& j = jm.entries;
  j(0, e1_col(p)) = 1.0;  // d E1_p
  for (int t = 0; t < 3; ++t) {
    // d E2_pt rows; E2_zz = E0 - E2_xx - E2_yy when (p,t) = (2,2)
    const int col = e2_col(p, t);
    if (col >= 0) {
      j(1 + t, col) = 1.0;
    } else {
      j(1 + t, kE0Col) = 1.0;
      j(1 + t, e2_col(0, 0)) = -1.0;
      j(1 + t, e2_col(1, 1)) = -1.0;
    }
  }
  // third-moment rows of f_p: E3_p00, E3_p01, E3_p02, E3_p11, E3_p12
  static constexpr int kTriple[5][2] = {{0, 0}, {0, 1}, {0, 2}, {1, 1}, {1, 2}};
  for (int r = 0; r < 5; ++r) {
    const int a = kTriple[r][0], b = kTriple[r][1];
    const int row = 4 + r;
    if (a == b && a == p) {
      j(row, e1_col(p)) = c.A[p];
    } else if (a == b) {  // singleton p: finite-difference coupling
      j(row, e1_col(p)) = c.fd[p][a];
    } else if (a == p || b == p) {  // p repeated, singleton s
      const int s = (a == p) ? b : a;
      j(row, e1_col(s)) = c.B[s];
    }
    // all-distinct indices: identically zero row
  }

  const int q = (p + 1) % 3, r = (p + 2) % 3;
  jm.abc = {c.A[p], c.B[q], c.B[r]};
  return jm;
}

}  // namespace

std::array<JacobianMatrix, 3> axis_jacobians_E1zero(
    const std::array<double, 3>& lambda_hat, double fd_step) {
  const AxisCoefficients c = axis_coefficients(lambda_hat, fd_step);
  return {assemble_axis_jacobian(c, 0), assemble_axis_jacobian(c, 1),
          assemble_axis_jacobian(c, 2)};
}

JacobianMatrix jacobian_analytic_E1zero(const std::array<double, 3>& lambda_hat,
                                        int axis, double fd_step) {
  if (axis < 0 || axis > 2) throw DomainError("axis must be 0, 1, or 2");
  return assemble_axis_jacobian(axis_coefficients(lambda_hat, fd_step), axis);
}

namespace {

Mat9 fd_matrix(const MomentState& m, const Vec3& n, double h) {
  Mat9 j;
  const Vec9 base = m.to_vec9();
  for (int col = 0; col < 9; ++col) {
    Vec9 vp = base, vm = base;
    vp[col] += h;
    vm[col] -= h;
    Fluxes fp, fm;
    try {
      fp = fluxes(MomentState::from_vec9(vp));
      fm = fluxes(MomentState::from_vec9(vm));
    } catch (const B2Error& e) {
      throw ClosureFailure(std::string("finite-difference stencil left the "
                                       "evaluable set: ") + e.what());
    }
    for (int row = 0; row < 9; ++row) {
      const double p = n.x * fp.f[0][row] + n.y * fp.f[1][row] + n.z * fp.f[2][row];
      const double q = n.x * fm.f[0][row] + n.y * fm.f[1][row] + n.z * fm.f[2][row];
      j(row, col) = (p - q) / (2.0 * h);
    }
  }
  return j;
}

}  // namespace

JacobianMatrix jacobian_fd(const MomentState& m, const Vec3& n, double step,
                           bool richardson) {
  JacobianMatrix jm;
  jm.analytic = false;
  jm.direction = normalized(n);
  const double h = step * m.e0();
  jm.entries = fd_matrix(m, jm.direction, h);
  if (richardson) {
    const Mat9 half = fd_matrix(m, jm.direction, 0.5 * h);
    for (int i = 0; i < 81; ++i)
      jm.entries.a[i] = (4.0 * half.a[i] - jm.entries.a[i]) / 3.0;
  }
  return jm;
}

namespace {

double min_cluster_gap(const std::vector<double>& centers) {
  if (centers.size() < 2) return 0.0;
  double gap = std::numeric_limits<double>::infinity();
  for (size_t i = 1; i < centers.size(); ++i)
    gap = std::min(gap, centers[i] - centers[i - 1]);
  return gap;
}

}  // namespace

DiagResult is_real_diagonalizable(const Mat9& j, double tol) {
  DiagResult res;
  Eigen::Matrix<double, 9, 9> em;
  for (int r = 0; r < 9; ++r)
    for (int c = 0; c < 9; ++c) em(r, c) = j(r, c);
  const double scale = std::max(em.norm(), 1e-300);
  const double thresh = tol * scale;

  Eigen::EigenSolver<Eigen::Matrix<double, 9, 9>> solver(em, false);
  const auto ev = solver.eigenvalues();

  std::array<double, 9> re{};
  for (int i = 0; i < 9; ++i) {
    if (std::abs(ev[i].imag()) > thresh) {
      res.reason = DiagFailure::complex_pair;
      res.speeds.fill(std::numeric_limits<double>::quiet_NaN());
      return res;
    }
    re[i] = ev[i].real();
  }
  std::sort(re.begin(), re.end());
  res.speeds = re;

  // cluster (algebraic multiplicities), then rank-test each repeated cluster
  std::vector<std::pair<double, int>> clusters;  // (center, count)
  for (double v : re) {
    if (!clusters.empty() && v - clusters.back().first <= thresh) {
      auto& [ctr, cnt] = clusters.back();
      ctr = (ctr * cnt + v) / (cnt + 1);
      ++cnt;
    } else {
      clusters.push_back({v, 1});
    }
  }
  std::vector<double> centers;
  for (auto& [ctr, cnt] : clusters) centers.push_back(ctr);
  res.min_gap = min_cluster_gap(centers);

  for (auto& [ctr, cnt] : clusters) {
    if (cnt == 1) continue;
    Eigen::Matrix<double, 9, 9> shifted = em;
    for (int i = 0; i < 9; ++i) shifted(i, i) -= ctr;
    Eigen::JacobiSVD<Eigen::Matrix<double, 9, 9>> svd(shifted);
    const auto& sv = svd.singularValues();
    int nullity = 0;
    for (int i = 0; i < 9; ++i)
      if (sv[i] <= thresh) ++nullity;
    if (nullity != cnt) {
      res.reason = DiagFailure::defective;
      return res;
    }
  }
  res.ok = true;
  return res;
}

DiagResult is_real_diagonalizable(const JacobianMatrix& j, double tol) {
  if (!j.analytic) return is_real_diagonalizable(j.entries, tol);

  DiagResult res;
  for (double v : j.abc)
    if (!(v > tol)) {
      res.reason = DiagFailure::nonpositive_speed_squared;
      res.speeds.fill(std::numeric_limits<double>::quiet_NaN());
      return res;
    }
  const double sa = std::sqrt(j.abc[0]), sb = std::sqrt(j.abc[1]),
               sc = std::sqrt(j.abc[2]);
  res.speeds = {-sa, -sb, -sc, 0.0, 0.0, 0.0, sc, sb, sa};
  std::sort(res.speeds.begin(), res.speeds.end());
  std::vector<double> distinct{-sa, -sb, -sc, 0.0, sc, sb, sa};
  std::sort(distinct.begin(), distinct.end());
  distinct.erase(std::unique(distinct.begin(), distinct.end(),
                             [](double a, double b) { return std::abs(a - b) < 1e-300; }),
                 distinct.end());
  res.min_gap = min_cluster_gap(distinct);
  res.ok = true;
  return res;
}

std::vector<Vec3> fibonacci_sphere(int n) {
  std::vector<Vec3> dirs;
  dirs.reserve(n);
  const double golden = (std::sqrt(5.0) - 1.0) / 2.0;
  for (int k = 0; k < n; ++k) {
    const double z = 1.0 - (2.0 * k + 1.0) / n;
    const double rho = std::sqrt(std::max(0.0, 1.0 - z * z));
    const double phi = 2.0 * M_PI * golden * k;
    dirs.push_back({rho * std::cos(phi), rho * std::sin(phi), z});
  }
  return dirs;
}

namespace {

void parallel_for(int n, const std::function<void(int)>& fn) {
  const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  const int n_threads = static_cast<int>(std::min<unsigned>(hw, 16));
  if (n_threads <= 1 || n < 2 * n_threads) {
    for (int i = 0; i < n; ++i) fn(i);
    return;
  }
  std::vector<std::thread> pool;
  std::atomic<int> next{0};
  for (int t = 0; t < n_threads; ++t)
    pool.emplace_back([&] {
      for (int i = next.fetch_add(1); i < n; i = next.fetch_add(1)) fn(i);
    });
  for (auto& th : pool) th.join();
}

struct BaryNode {
  std::array<double, 3> lambda_hat;
  bool interior;
};

std::vector<BaryNode> barycentric_grid(int grid_n) {
  std::vector<BaryNode> nodes;
  nodes.reserve((grid_n + 1) * (grid_n + 2) / 2);
  for (int i = 0; i <= grid_n; ++i)
    for (int j = 0; j <= grid_n - i; ++j) {
      const int k = grid_n - i - j;
      nodes.push_back({{double(i) / grid_n, double(j) / grid_n, double(k) / grid_n},
                       i > 0 && j > 0 && k > 0});
    }
  return nodes;
}

bool sigma_pos_flag(const std::array<double, 3>& l) {
  for (int i = 0; i < 3; ++i) {
    const int j = (i + 1) % 3, k = (i + 2) % 3;
    if (!(3.0 * l[i] * l[i] + l[i] * (l[j] + l[k]) - l[j] * l[k] > 0)) return false;
  }
  return true;
}

}  // namespace

std::vector<RegionSample> sample_nonneg_region(int grid_n, int f_grid_n) {
  if (grid_n < 2 || f_grid_n < 2)
    throw DomainError("grid resolutions must be >= 2");

  const std::vector<BaryNode> nodes = barycentric_grid(grid_n);
  std::vector<RegionSample> out(nodes.size());

  parallel_for(static_cast<int>(nodes.size()), [&](int idx) {
    const auto& l = nodes[idx].lambda_hat;
    RegionSample s;
    s.lambda_hat = l;
    s.sigma_pos = sigma_pos_flag(l);
    s.hyperbolic = false;
    s.min_eig_gap = 0.0;

    // each axis with lambda ~ 0 contributes only f = 0
    std::array<std::vector<double>, 3> grids;
    for (int t = 0; t < 3; ++t) {
      if (l[t] <= 1e-15) {
        grids[t] = {0.0};
      } else {
        grids[t].resize(f_grid_n);
        for (int g = 0; g < f_grid_n; ++g)
          grids[t][g] = -l[t] + 2.0 * l[t] * g / (f_grid_n - 1);
      }
    }
    double worst = std::numeric_limits<double>::infinity();
    std::array<double, 3> worst_f{};
    std::array<double, 3> f{};
    for (double f0 : grids[0]) {
      f[0] = f0;
      for (double f1 : grids[1]) {
        f[1] = f1;
        for (double f2 : grids[2]) {
          f[2] = f2;
          const SigmaWeights sw = sigma_weights_unchecked(l, f);
          double delta = std::numeric_limits<double>::infinity();
          for (int t = 0; t < 3; ++t)
            delta = std::min(delta, sw.w[t] * sw.sigma[t] - f[t] * f[t]);
          if (delta < worst) {
            worst = delta;
            worst_f = f;
          }
        }
      }
    }
    s.delta = worst;
    s.f_hat = worst_f;
    out[idx] = s;
  });
  return out;
}

std::vector<RegionSample> sample_hyperbolic_region(int grid_n, int dir_n) {
  if (grid_n < 2) throw DomainError("grid resolution must be >= 2");
  if (dir_n < 1) throw DomainError("direction count must be >= 1");

  const std::vector<BaryNode> nodes = barycentric_grid(grid_n);
  const std::vector<Vec3> dirs = fibonacci_sphere(dir_n);
  std::vector<RegionSample> out(nodes.size());

  parallel_for(static_cast<int>(nodes.size()), [&](int idx) {
    const auto& l = nodes[idx].lambda_hat;
    RegionSample s;
    s.lambda_hat = l;
    s.f_hat = {0.0, 0.0, 0.0};
    s.sigma_pos = sigma_pos_flag(l);
    const SigmaWeights sw = sigma_weights_unchecked(l, {0.0, 0.0, 0.0});
    s.delta = std::min({sw.w[0] * sw.sigma[0], sw.w[1] * sw.sigma[1],
                        sw.w[2] * sw.sigma[2]});

    if (!nodes[idx].interior) {
      s.hyperbolic = false;  // axis Jacobians are undefined on the boundary
      s.min_eig_gap = 0.0;
      out[idx] = s;
      return;
    }

    const std::array<JacobianMatrix, 3> jax = axis_jacobians_E1zero(l);
    bool ok = true;
    double gap = std::numeric_limits<double>::infinity();
    for (int p = 0; p < 3 && ok; ++p) {  // known-critical directions first
      const DiagResult r = is_real_diagonalizable(jax[p]);
      ok = r.ok;
      if (r.ok) gap = std::min(gap, r.min_gap);
    }
    for (size_t d = 0; d < dirs.size() && ok; ++d) {
      Mat9 m = jax[0].entries * dirs[d].x;
      m += jax[1].entries * dirs[d].y;
      m += jax[2].entries * dirs[d].z;
      const DiagResult r = is_real_diagonalizable(m);
      ok = r.ok;
      if (r.ok) gap = std::min(gap, r.min_gap);
    }
    s.hyperbolic = ok;
    s.min_eig_gap = std::isfinite(gap) ? gap : 0.0;
    out[idx] = s;
  });
  return out;
}

}  // namespace b2
