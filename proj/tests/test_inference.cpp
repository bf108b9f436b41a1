#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "qfs/inference.hpp"
#include "qfs/models.hpp"

using namespace qfs;

namespace {

// Cyclic location model on Z_n: p(y | theta) = eps[(y - theta) mod n].
FiniteModel location_model(int n, std::vector<Rational> eps) {
  std::vector<std::vector<Rational>> p(n, std::vector<Rational>(n));
  for (int theta = 0; theta < n; ++theta)
    for (int y = 0; y < n; ++y) p[theta][y] = eps[((y - theta) % n + n) % n];
  return FiniteModel::validated(models::cyclic_group(n), models::cyclic_translation(n),
                                models::cyclic_translation(n), std::move(p));
}

const std::vector<Rational> kNoise5 = {{1, 2}, {1, 5}, {1, 10}, {1, 10}, {1, 10}};
const std::vector<Rational> kNoise3 = {{3, 5}, {3, 10}, {1, 10}};

}  // namespace

TEST_CASE("decimals with small denominators become exact rationals") {
  CHECK(rational_from_double(0.5) == Rational(1, 2));
  CHECK(rational_from_double(0.1) == Rational(1, 10));
  CHECK(rational_from_double(1.0 / 3.0) == Rational(1, 3));
  CHECK(rational_from_double(-0.75) == Rational(-3, 4));
  CHECK(rational_from_double(2.0) == Rational(2, 1));
  CHECK_THROWS_AS(rational_from_double(std::sqrt(2.0), 10), BadModel);
  CHECK(to_string(Rational(3, 5)) == "3/5");
  CHECK(to_double(Rational(1, 4)) == 0.25);
}

TEST_CASE("the cyclic location model is compatible with translation") {
  const FiniteModel model = location_model(3, kNoise3);
  CHECK(model.n_theta() == 3);
  CHECK(model.n_y() == 3);
  for (int theta = 0; theta < 3; ++theta) {
    Rational total(0);
    for (int y = 0; y < 3; ++y) total += model.likelihood[theta][y];
    CHECK(total == Rational(1));
  }
}

TEST_CASE("incompatible or non-normalized likelihoods are rejected") {
  auto rows = std::vector<std::vector<Rational>>{
      {{3, 5}, {3, 10}, {1, 10}}, {{1, 10}, {3, 5}, {3, 10}}, {{3, 10}, {1, 10}, {3, 5}}};
  rows[2][0] = Rational(1, 10);  // breaks p(yg | theta g) = p(y | theta)
  rows[2][1] = Rational(3, 10);
  CHECK_THROWS_AS(FiniteModel::validated(models::cyclic_group(3), models::cyclic_translation(3),
                                         models::cyclic_translation(3), rows),
                  BadModel);

  auto heavy = std::vector<std::vector<Rational>>{{{1, 2}, {1, 2}, {1, 2}},
                                                  {{1, 2}, {1, 2}, {1, 2}},
                                                  {{1, 2}, {1, 2}, {1, 2}}};
  CHECK_THROWS_AS(FiniteModel::validated(models::cyclic_group(3), models::cyclic_translation(3),
                                         models::cyclic_translation(3), heavy),
                  BadModel);
}

TEST_CASE("invariant priors put equal mass on each orbit") {
  const RationalMeasure uniform = invariant_prior(models::cyclic_translation(5));
  CHECK(uniform.unique_invariant);
  for (const Rational& w : uniform.weights) CHECK(w == Rational(1, 5));

  // Reflection on {-1, 0, +1}: orbits {0, 2} and {1}, half mass each.
  const RationalMeasure split = invariant_prior(models::sign_flip_action());
  CHECK_FALSE(split.unique_invariant);
  CHECK(split.weights == std::vector<Rational>{{1, 4}, {1, 2}, {1, 4}});

  const RationalMeasure loose = invariant_prior(models::trivial_action(3));
  CHECK_FALSE(loose.unique_invariant);
}

TEST_CASE("posterior at the origin of the three-point model") {
  const FiniteModel model = location_model(3, kNoise3);
  const std::vector<Rational> post = posterior(model, invariant_prior(model.theta_action), 0);
  CHECK(post == std::vector<Rational>{{3, 5}, {1, 10}, {3, 10}});
}

TEST_CASE("a deterministic model concentrates the posterior") {
  const FiniteModel model = location_model(4, {{1, 1}, {0, 1}, {0, 1}, {0, 1}});
  const std::vector<Rational> post = posterior(model, invariant_prior(model.theta_action), 2);
  CHECK(post == std::vector<Rational>{{0, 1}, {0, 1}, {1, 1}, {0, 1}});
}

TEST_CASE("observations with zero predictive mass are flagged") {
  const auto rows =
      std::vector<std::vector<Rational>>{{{1, 1}, {0, 1}}, {{1, 1}, {0, 1}}};
  const FiniteModel model =
      FiniteModel::validated(models::trivial_group(), models::trivial_action(2),
                             models::trivial_action(2), rows);
  CHECK_THROWS_AS(posterior(model, invariant_prior(model.theta_action), 1), ZeroEvidence);
}

TEST_CASE("cyclic squared loss values and invariance") {
  const LossFunction loss = LossFunction::squared_cyclic(5);
  CHECK(loss.loss[0][0] == Rational(0));
  CHECK(loss.loss[0][1] == Rational(1));
  CHECK(loss.loss[0][2] == Rational(4));
  CHECK(loss.loss[0][3] == Rational(4));  // distance 2 the short way round
  CHECK(loss.loss[0][4] == Rational(1));
  CHECK(loss.loss[3][1] == Rational(4));

  const FiniteModel model = location_model(5, kNoise5);
  CHECK_FALSE(loss.invariance_witness(model).has_value());
  CHECK_FALSE(LossFunction::zero_one(5).invariance_witness(model).has_value());
}

TEST_CASE("non-invariant losses produce a witness and stop the estimator") {
  const FiniteModel model = location_model(3, kNoise3);
  LossFunction lopsided = LossFunction::zero_one(3);
  lopsided.loss[0][1] = Rational(7);  // penalize one direction at one point only
  const auto witness = lopsided.invariance_witness(model);
  REQUIRE(witness.has_value());
  const auto [theta, d, g] = *witness;
  const int tg = model.theta_action.apply(theta, g);
  const int dg = model.theta_action.apply(d, g);
  CHECK(lopsided.loss[tg][dg] != lopsided.loss[theta][d]);
  CHECK_THROWS_AS(pitman_estimate(model, lopsided, 0), NonInvariantLoss);
}

TEST_CASE("the location estimate follows the observation") {
  const FiniteModel model = location_model(3, kNoise3);
  const LossFunction loss = LossFunction::zero_one(3);
  // Posterior at y = 0 peaks at theta = 0, and translation covariance moves
  // the peak with y.
  for (int y = 0; y < 3; ++y) CHECK(pitman_estimate(model, loss, y) == y);

  // Independent Bayes route: minimize the posterior expected loss by hand.
  const RationalMeasure prior = invariant_prior(model.theta_action);
  for (int y = 0; y < 3; ++y) {
    const std::vector<Rational> post = posterior(model, prior, y);
    int best = 0;
    Rational best_value(0);
    for (int d = 0; d < 3; ++d) {
      Rational value(0);
      for (int theta = 0; theta < 3; ++theta) value += post[theta] * loss.loss[theta][d];
      if (d == 0 || value < best_value) {
        best = d;
        best_value = value;
      }
    }
    CHECK(pitman_estimate(model, loss, y) == best);
  }
}

TEST_CASE("noiseless observation gives the identity estimator") {
  const FiniteModel model = location_model(4, {{1, 1}, {0, 1}, {0, 1}, {0, 1}});
  const Estimator est = Estimator::pitman(model, LossFunction::zero_one(4));
  CHECK(est.theta_of_y == std::vector<int>{0, 1, 2, 3});
  CHECK(risk(est, model, LossFunction::zero_one(4), 0) == Rational(0));
}

TEST_CASE("estimators requiring transitivity reject frozen parameters") {
  // The group swaps the observations but fixes both parameter points, so the
  // parameter action has two orbits. Compatibility then forces symmetric rows.
  const FiniteGroup c2 = models::cyclic_group(2);
  const GroupAction frozen_theta = GroupAction::build(c2, {{0, 0}, {1, 1}});
  const auto rows =
      std::vector<std::vector<Rational>>{{{1, 2}, {1, 2}}, {{1, 2}, {1, 2}}};
  const FiniteModel model = FiniteModel::validated(c2, frozen_theta,
                                                   models::cyclic_translation(2), rows);
  CHECK_THROWS_AS(pitman_estimate(model, LossFunction::zero_one(2), 0), NonTransitive);
}

TEST_CASE("equivariance detection") {
  const FiniteModel model = location_model(3, kNoise3);
  const Estimator identity{{0, 1, 2}};
  CHECK(is_equivariant(identity, model).equivariant);

  const Estimator constant{{1, 1, 1}};
  const EquivarianceResult broken = is_equivariant(constant, model);
  CHECK_FALSE(broken.equivariant);
  REQUIRE(broken.witness.has_value());
  const auto [y, g] = *broken.witness;
  CHECK(constant.theta_of_y[model.y_action.apply(y, g)] !=
        model.theta_action.apply(constant.theta_of_y[y], g));

  const Estimator pitman = Estimator::pitman(model, LossFunction::zero_one(3));
  CHECK(is_equivariant(pitman, model).equivariant);
}

TEST_CASE("equivariant estimators have constant risk over the orbit") {
  const FiniteModel model = location_model(5, kNoise5);
  const LossFunction loss = LossFunction::squared_cyclic(5);
  const Estimator est = Estimator::pitman(model, loss);
  const Rational r0 = risk(est, model, loss, 0);
  for (int theta = 1; theta < 5; ++theta) CHECK(risk(est, model, loss, theta) == r0);

  const Estimator constant{{2, 2, 2, 2, 2}};
  bool varies = false;
  for (int theta = 1; theta < 5; ++theta)
    varies = varies || risk(constant, model, loss, theta) != risk(constant, model, loss, 0);
  CHECK(varies);
}

TEST_CASE("exhaustive search over equivariant estimators") {
  const FiniteModel model = location_model(5, kNoise5);
  const LossFunction loss = LossFunction::squared_cyclic(5);
  const BestEquivariant best = brute_force_best_equivariant(model, loss);

  // Risks of the five candidates est(0) = c, frozen from the noise profile
  // (1/2, 1/5, 1/10, 1/10, 1/10) and the squared cyclic distances.
  const std::vector<Rational> expected = {{11, 10}, {9, 5}, {3, 1}, {27, 10}, {7, 5}};
  CHECK(best.candidate_risks == expected);
  CHECK(best.best_candidate == 0);
  CHECK(best.best_risk == Rational(11, 10));

  // The Bayes route under the invariant prior lands on the same estimator
  // with the same risk.
  const Estimator pitman = Estimator::pitman(model, loss);
  CHECK(pitman.theta_of_y == best.estimator.theta_of_y);
  CHECK(risk(pitman, model, loss, 0) == best.best_risk);

  const std::string csv = risk_table_csv(best);
  CHECK(csv.find("11/10") != std::string::npos);
  CHECK(csv.find("27/10") != std::string::npos);
}

TEST_CASE("two-point coin model risks") {
  const auto rows =
      std::vector<std::vector<Rational>>{{{3, 4}, {1, 4}}, {{1, 4}, {3, 4}}};
  const FiniteModel model =
      FiniteModel::validated(models::cyclic_group(2), models::cyclic_translation(2),
                             models::cyclic_translation(2), rows);
  const BestEquivariant best =
      brute_force_best_equivariant(model, LossFunction::zero_one(2));
  CHECK(best.candidate_risks == std::vector<Rational>{{1, 4}, {3, 4}});
  CHECK(best.best_risk == Rational(1, 4));
  CHECK(best.estimator.theta_of_y == std::vector<int>{0, 1});
}

TEST_CASE("the exhaustive search needs a free transitive sample action") {
  // Two parameter points swapped by the group, three observations with the
  // third one fixed: the sample action has a nontrivial stabilizer.
  const FiniteGroup c2 = models::cyclic_group(2);
  const GroupAction y_action = GroupAction::build(c2, {{0, 1}, {1, 0}, {2, 2}});
  const auto rows = std::vector<std::vector<Rational>>{{{1, 2}, {1, 4}, {1, 4}},
                                                       {{1, 4}, {1, 2}, {1, 4}}};
  const FiniteModel model = FiniteModel::validated(c2, models::cyclic_translation(2),
                                                   y_action, rows);
  CHECK_THROWS_AS(brute_force_best_equivariant(model, LossFunction::zero_one(2)),
                  NotFreeTransitive);
}

TEST_CASE("finite models serialize with exact probabilities") {
  const FiniteModel model = location_model(5, kNoise5);
  const FiniteModel round = FiniteModel::from_json(model.to_json());
  CHECK(round.likelihood == model.likelihood);
  CHECK(round.group.order() == model.group.order());
  CHECK(round.theta_action.points() == model.theta_action.points());
  const std::vector<Rational> post =
      posterior(round, invariant_prior(round.theta_action), 0);
  CHECK(post[0] == Rational(1, 2));
}
