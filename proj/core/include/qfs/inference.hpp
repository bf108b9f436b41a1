#pragma once

#include <boost/rational.hpp>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qfs/group.hpp"
#include "qfs/linalg.hpp"

namespace qfs {

struct ZeroEvidence : Error {
  using Error::Error;
};
struct NonInvariantLoss : Error {
  using Error::Error;
};
struct NonTransitive : Error {
  using Error::Error;
};
struct NotFreeTransitive : Error {
  using Error::Error;
};
struct BadModel : Error {
  using Error::Error;
};

using Rational = boost::rational<long long>;

double to_double(const Rational& r);
std::string to_string(const Rational& r);
// Continued-fraction approximation; throws BadModel when no rational with
// denominator <= max_den reproduces x within tol.
Rational rational_from_double(double x, long long max_den = 1000000, double tol = 1e-9);

// Finite statistical model with a group acting on both the parameter set and
// the sample space, compatible with the likelihood:
//   p(y g | theta g) = p(y | theta)  for all theta, y, g   (validated).
// All probabilities are exact rationals.
struct FiniteModel {
  FiniteGroup group;
  GroupAction theta_action;
  GroupAction y_action;
  std::vector<std::vector<Rational>> likelihood;  // p[theta][y]

  int n_theta() const { return theta_action.points(); }
  int n_y() const { return y_action.points(); }

  static FiniteModel validated(FiniteGroup group, GroupAction theta_action, GroupAction y_action,
                               std::vector<std::vector<Rational>> likelihood);
  static FiniteModel from_json(const Json& j);
  Json to_json() const;
};

struct RationalMeasure {
  std::vector<Rational> weights;
  bool unique_invariant = false;
};

// Exact counterpart of the invariant measure: equal mass per orbit of the
// parameter action, uniform inside an orbit; unique iff transitive.
RationalMeasure invariant_prior(const GroupAction& theta_action);

// Exact Bayes posterior; throws ZeroEvidence when the observation has zero
// prior predictive mass.
std::vector<Rational> posterior(const FiniteModel& model, const RationalMeasure& prior, int y);

// Loss table with exact entries. Invariance loss(theta g, d g) = loss(theta, d)
// is what the estimation theory needs; `invariance_witness` reports a violating
// triple when there is one.
struct LossFunction {
  std::vector<std::vector<Rational>> loss;

  static LossFunction zero_one(int n);
  // Squared minimal cyclic distance on Z_n, invariant under translation.
  static LossFunction squared_cyclic(int n);

  std::optional<std::array<int, 3>> invariance_witness(const FiniteModel& model) const;
};

// Bayes action under the invariant prior: argmin over decisions of the
// posterior expected loss, ties broken at the smallest index. Requires a
// transitive parameter action (NonTransitive) and an invariant loss
// (NonInvariantLoss).
int pitman_estimate(const FiniteModel& model, const LossFunction& loss, int y);

struct Estimator {
  std::vector<int> theta_of_y;

  static Estimator pitman(const FiniteModel& model, const LossFunction& loss);
};

struct EquivarianceResult {
  bool equivariant = false;
  std::optional<std::pair<int, int>> witness;  // (y, g) with est(y g) != est(y) g
};

EquivarianceResult is_equivariant(const Estimator& est, const FiniteModel& model);

// R(theta) = sum_y p(y | theta) loss(theta, est(y)), exact.
Rational risk(const Estimator& est, const FiniteModel& model, const LossFunction& loss, int theta);

// Exhaustive search over all equivariant estimators. Requires the sample
// action to be free and transitive (NotFreeTransitive): an equivariant
// estimator is then determined by its value at one reference point, so there
// are exactly n_theta candidates.
struct BestEquivariant {
  Estimator estimator;
  int reference_y = 0;
  std::vector<Rational> candidate_risks;  // constant in theta; indexed by candidate
  int best_candidate = 0;
  Rational best_risk;
};

BestEquivariant brute_force_best_equivariant(const FiniteModel& model, const LossFunction& loss);

// candidate, risk (exact), risk (decimal) rows.
std::string risk_table_csv(const BestEquivariant& result);

}  // namespace qfs
