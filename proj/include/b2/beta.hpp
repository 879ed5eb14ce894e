// Beta-distribution kernel on [-1,1]: densities, analytic moments up to
// order 3, and shape recovery from a (m1, m2) moment pair. The two Dirac
// limits of the family are first-class branches so that boundary moments stay
// exact where no density exists.
#pragma once

#include <string>

#include "b2/errors.hpp"

namespace b2 {

enum class BetaBranch { Smooth, DiracSingle, DiracPair };

// f(mu; gamma, delta) = ((1+mu)/2)^(xi-1) ((1-mu)/2)^(eta-1) / (2 B(xi,eta)),
// xi = gamma/delta, eta = (1-gamma)/delta.
//   DiracSingle: delta -> 0 limit, a point mass at mu = 2 gamma - 1.
//   DiracPair:   delta -> inf limit, masses weight_plus at +1, rest at -1.
class BetaShape {
 public:
  static constexpr double kDeltaMin = 1e-10;

  static BetaShape smooth(double gamma, double delta);
  static BetaShape dirac_single(double mu);
  static BetaShape dirac_pair(double weight_plus);
  static BetaShape uniform() { return smooth(0.5, 0.5); }  // xi = eta = 1

  BetaBranch branch() const { return branch_; }
  bool is_smooth() const { return branch_ == BetaBranch::Smooth; }

  double gamma() const { return gamma_; }
  double delta() const { return delta_; }
  double xi() const { return gamma_ / delta_; }
  double eta() const { return (1.0 - gamma_) / delta_; }
  double mu() const { return mu_; }                   // DiracSingle only
  double weight_plus() const { return weight_plus_; } // DiracPair only

 private:
  BetaBranch branch_ = BetaBranch::Smooth;
  double gamma_ = 0.5, delta_ = 0.5;
  double mu_ = 0;
  double weight_plus_ = 0.5;
};

// Pointwise density of a Smooth shape, via log-gamma for overflow safety.
// Throws DiracEvaluation for distributional branches, DomainError for |mu|>1.
double beta_pdf(double mu, const BetaShape& shape);

// Analytic k-th moment, k in {0,1,2,3}; Dirac branches use exact point-mass
// sums. Throws UnsupportedOrder for k > 3.
double beta_moment(int k, const BetaShape& shape);

// Inverts (m1, m2) -> shape on the 1D realizability region m1^2 <= m2 <= 1:
// gamma = (1+m1)/2, delta = (m2 - m1^2)/(1 - m2), with the Dirac branches
// taken inside a 1e-10 guard of the region boundary.
// Throws Unrealizable1D outside the region (tolerance 1e-12).
BetaShape shape_from_moments(double m1, double m2);

std::string to_string(BetaBranch b);

}  // namespace b2
