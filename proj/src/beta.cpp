#include "b2/beta.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace b2 {

BetaShape BetaShape::smooth(double gamma, double delta) {
  if (!(gamma >= 0.0 && gamma <= 1.0))
    throw DomainError("beta shape: gamma must lie in [0,1]");
  if (!(delta > kDeltaMin))
    throw DomainError("beta shape: delta must exceed delta_min = 1e-10");
  BetaShape s;
  s.branch_ = BetaBranch::Smooth;
  s.gamma_ = gamma;
  s.delta_ = delta;
  return s;
}

BetaShape BetaShape::dirac_single(double mu) {
  if (std::abs(mu) > 1.0 + 1e-12)
    throw DomainError("dirac shape: mu must lie in [-1,1]");
  BetaShape s;
  s.branch_ = BetaBranch::DiracSingle;
  s.mu_ = std::clamp(mu, -1.0, 1.0);
  s.gamma_ = 0.5 * (1.0 + s.mu_);
  s.delta_ = 0.0;
  return s;
}

BetaShape BetaShape::dirac_pair(double weight_plus) {
  if (weight_plus < -1e-12 || weight_plus > 1.0 + 1e-12)
    throw DomainError("dirac pair: weight_plus must lie in [0,1]");
  BetaShape s;
  s.branch_ = BetaBranch::DiracPair;
  s.weight_plus_ = std::clamp(weight_plus, 0.0, 1.0);
  s.gamma_ = s.weight_plus_;
  s.delta_ = std::numeric_limits<double>::infinity();
  return s;
}

double beta_pdf(double mu, const BetaShape& shape) {
  if (!shape.is_smooth())
    throw DiracEvaluation("pointwise density requested for a Dirac branch");
  if (std::abs(mu) > 1.0)
    throw DomainError("beta_pdf: mu outside [-1,1]");

  const double xi = shape.xi(), eta = shape.eta();
  const double log_b = std::lgamma(xi) + std::lgamma(eta) - std::lgamma(xi + eta);
  double t = -std::log(2.0) - log_b;
  // zero exponents skipped so the flat kernel stays finite at mu = +-1
  if (xi != 1.0) t += (xi - 1.0) * (std::log1p(mu) - std::log(2.0));
  if (eta != 1.0) t += (eta - 1.0) * (std::log1p(-mu) - std::log(2.0));
  return std::exp(t);
}

double beta_moment(int k, const BetaShape& shape) {
  if (k < 0 || k > 3) throw UnsupportedOrder("beta_moment supports k = 0..3");

  switch (shape.branch()) {
    case BetaBranch::DiracSingle: {
      double r = 1.0;
      for (int i = 0; i < k; ++i) r *= shape.mu();
      return r;
    }
    case BetaBranch::DiracPair:
      return (k % 2 == 0) ? 1.0 : 2.0 * shape.weight_plus() - 1.0;
    case BetaBranch::Smooth:
      break;
  }

  const double g = shape.gamma(), d = shape.delta();
  switch (k) {
    case 0:
      return 1.0;
    case 1:
      return 2.0 * g - 1.0;
    case 2:
      return 4.0 * g * (g - 1.0) / (1.0 + d) + 1.0;
    default: {
      const double xi = shape.xi(), eta = shape.eta();
      const double num = (xi - eta) * (xi * xi - 2.0 * xi * eta + 3.0 * xi +
                                       eta * eta + 3.0 * eta + 2.0);
      const double den = (xi + eta) * (xi + eta + 1.0) * (xi + eta + 2.0);
      return num / den;
    }
  }
}

BetaShape shape_from_moments(double m1, double m2) {
  const double gap = m2 - m1 * m1;
  if (gap < -1e-12 || m2 > 1.0 + 1e-12)
    throw Unrealizable1D("1D moments outside m1^2 <= m2 <= 1");

  constexpr double kGuard = 1e-10;
  if (gap <= BetaShape::kDeltaMin * (1.0 - m1 * m1))
    return BetaShape::dirac_single(m1);
  if (1.0 - m2 <= kGuard)
    return BetaShape::dirac_pair(0.5 * (1.0 + m1));
  return BetaShape::smooth(0.5 * (1.0 + m1), gap / (1.0 - m2));
}

std::string to_string(BetaBranch b) {
  switch (b) {
    case BetaBranch::Smooth: return "smooth";
    case BetaBranch::DiracSingle: return "dirac_single";
    default: return "dirac_pair";
  }
}

}  // namespace b2
