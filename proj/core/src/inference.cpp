#include "qfs/inference.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace qfs {

double to_double(const Rational& r) {
  return static_cast<double>(r.numerator()) / static_cast<double>(r.denominator());
}

std::string to_string(const Rational& r) {
  if (r.denominator() == 1) return std::to_string(r.numerator());
  return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

Rational rational_from_double(double x, long long max_den, double tol) {
  if (!std::isfinite(x)) throw BadModel("cannot convert a non-finite number");
  // Continued-fraction convergents h/k of x until one lands within tol.
  long long h_prev = 1, h = static_cast<long long>(std::floor(x));
  long long k_prev = 0, k = 1;
  double frac = x - std::floor(x);
  while (true) {
    const double approx = static_cast<double>(h) / static_cast<double>(k);
    if (std::abs(approx - x) <= tol) return Rational(h, k);
    if (frac == 0.0) break;
    const double next = 1.0 / frac;
    const long long a = static_cast<long long>(std::floor(next));
    frac = next - std::floor(next);
    const long long h_new = a * h + h_prev;
    const long long k_new = a * k + k_prev;
    if (k_new > max_den) break;
    h_prev = h;
    h = h_new;
    k_prev = k;
    k = k_new;
  }
  throw BadModel("no rational with denominator <= " + std::to_string(max_den) +
                 " matches " + std::to_string(x));
}

namespace {

bool same_group(const FiniteGroup& a, const FiniteGroup& b) {
  if (a.order() != b.order()) return false;
  for (int g = 0; g < a.order(); ++g)
    for (int h = 0; h < a.order(); ++h)
      if (a.compose(g, h) != b.compose(g, h)) return false;
  return true;
}

Rational parse_rational(const Json& j) {
  if (j.is_number_integer()) return Rational(j.get<long long>());
  if (j.is_number_float()) return rational_from_double(j.get<double>());
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    const auto slash = s.find('/');
    if (slash == std::string::npos) return Rational(std::stoll(s));
    return Rational(std::stoll(s.substr(0, slash)), std::stoll(s.substr(slash + 1)));
  }
  throw BadModel("expected a rational as integer, string or float");
}

}  // namespace

FiniteModel FiniteModel::validated(FiniteGroup group, GroupAction theta_action,
                                   GroupAction y_action,
                                   std::vector<std::vector<Rational>> likelihood) {
  if (!same_group(group, theta_action.group()) || !same_group(group, y_action.group()))
    throw BadModel("parameter and sample actions must share the model group");
  const int nt = theta_action.points();
  const int ny = y_action.points();
  if (static_cast<int>(likelihood.size()) != nt)
    throw BadModel("one likelihood row per parameter value required");
  for (int t = 0; t < nt; ++t) {
    if (static_cast<int>(likelihood[t].size()) != ny)
      throw BadModel("likelihood row " + std::to_string(t) + " has the wrong length");
    Rational sum(0);
    for (int y = 0; y < ny; ++y) {
      if (likelihood[t][y] < Rational(0))
        throw BadModel("negative probability at (" + std::to_string(t) + ", " +
                       std::to_string(y) + ")");
      sum += likelihood[t][y];
    }
    if (sum != Rational(1))
      throw BadModel("likelihood row " + std::to_string(t) + " sums to " + to_string(sum));
  }
  for (int t = 0; t < nt; ++t)
    for (int y = 0; y < ny; ++y)
      for (int g = 0; g < group.order(); ++g)
        if (likelihood[theta_action.apply(t, g)][y_action.apply(y, g)] != likelihood[t][y])
          throw BadModel("likelihood is not compatible with the action at theta " +
                         std::to_string(t) + ", y " + std::to_string(y) + ", g " +
                         std::to_string(g));
  return FiniteModel{std::move(group), std::move(theta_action), std::move(y_action),
                     std::move(likelihood)};
}

FiniteModel FiniteModel::from_json(const Json& j) {
  FiniteGroup group =
      FiniteGroup::from_table(j.at("group").at("table").get<std::vector<std::vector<int>>>());
  GroupAction theta_action = GroupAction::build(
      group, j.at("theta_action").at("map").get<std::vector<std::vector<int>>>());
  GroupAction y_action =
      GroupAction::build(group, j.at("y_action").at("map").get<std::vector<std::vector<int>>>());
  const Json& rows = j.at("likelihood");
  std::vector<std::vector<Rational>> likelihood;
  for (const Json& row : rows) {
    std::vector<Rational> r;
    for (const Json& cell : row) r.push_back(parse_rational(cell));
    likelihood.push_back(std::move(r));
  }
  return validated(std::move(group), std::move(theta_action), std::move(y_action),
                   std::move(likelihood));
}

Json FiniteModel::to_json() const {
  Json j;
  std::vector<std::vector<int>> table(group.order(), std::vector<int>(group.order()));
  for (int g = 0; g < group.order(); ++g)
    for (int h = 0; h < group.order(); ++h) table[g][h] = group.compose(g, h);
  j["group"]["table"] = table;
  auto dump_action = [](const GroupAction& action) {
    std::vector<std::vector<int>> map(action.points(),
                                      std::vector<int>(action.group().order()));
    for (int p = 0; p < action.points(); ++p)
      for (int g = 0; g < action.group().order(); ++g) map[p][g] = action.apply(p, g);
    Json a;
    a["map"] = map;
    return a;
  };
  j["theta_action"] = dump_action(theta_action);
  j["y_action"] = dump_action(y_action);
  Json rows = Json::array();
  for (const auto& row : likelihood) {
    Json r = Json::array();
    for (const Rational& cell : row) r.push_back(to_string(cell));
    rows.push_back(r);
  }
  j["likelihood"] = rows;
  return j;
}

RationalMeasure invariant_prior(const GroupAction& theta_action) {
  const Partition orb = orbits(theta_action);
  RationalMeasure out;
  out.weights.assign(theta_action.points(), Rational(0));
  const Rational per_orbit(1, orb.block_count());
  for (const auto& block : orb.blocks) {
    const Rational w = per_orbit / Rational(static_cast<long long>(block.size()));
    for (int p : block) out.weights[p] = w;
  }
  out.unique_invariant = orb.transitive();
  return out;
}

std::vector<Rational> posterior(const FiniteModel& model, const RationalMeasure& prior, int y) {
  if (y < 0 || y >= model.n_y()) throw BadModel("observation out of range");
  if (static_cast<int>(prior.weights.size()) != model.n_theta())
    throw BadModel("prior does not match the parameter set");
  std::vector<Rational> post(model.n_theta());
  Rational evidence(0);
  for (int t = 0; t < model.n_theta(); ++t) {
    post[t] = prior.weights[t] * model.likelihood[t][y];
    evidence += post[t];
  }
  if (evidence == Rational(0))
    throw ZeroEvidence("observation " + std::to_string(y) + " has zero predictive mass");
  for (Rational& p : post) p /= evidence;
  return post;
}

LossFunction LossFunction::zero_one(int n) {
  LossFunction out;
  out.loss.assign(n, std::vector<Rational>(n, Rational(1)));
  for (int t = 0; t < n; ++t) out.loss[t][t] = Rational(0);
  return out;
}

LossFunction LossFunction::squared_cyclic(int n) {
  LossFunction out;
  out.loss.assign(n, std::vector<Rational>(n, Rational(0)));
  for (int t = 0; t < n; ++t) {
    for (int d = 0; d < n; ++d) {
      const long long raw = std::abs(t - d);
      const long long dist = std::min(raw, static_cast<long long>(n) - raw);
      out.loss[t][d] = Rational(dist * dist);
    }
  }
  return out;
}

std::optional<std::array<int, 3>> LossFunction::invariance_witness(
    const FiniteModel& model) const {
  const GroupAction& action = model.theta_action;
  for (int t = 0; t < model.n_theta(); ++t)
    for (int d = 0; d < model.n_theta(); ++d)
      for (int g = 0; g < action.group().order(); ++g)
        if (loss[action.apply(t, g)][action.apply(d, g)] != loss[t][d])
          return std::array<int, 3>{t, d, g};
  return std::nullopt;
}

int pitman_estimate(const FiniteModel& model, const LossFunction& loss, int y) {
  if (!orbits(model.theta_action).transitive())
    throw NonTransitive("the parameter action is not transitive");
  if (static_cast<int>(loss.loss.size()) != model.n_theta())
    throw BadModel("loss does not match the parameter set");
  if (const auto witness = loss.invariance_witness(model))
    throw NonInvariantLoss("loss moves under element " + std::to_string((*witness)[2]));
  const std::vector<Rational> post = posterior(model, invariant_prior(model.theta_action), y);
  int best = 0;
  Rational best_value;
  for (int d = 0; d < model.n_theta(); ++d) {
    Rational value(0);
    for (int t = 0; t < model.n_theta(); ++t) value += post[t] * loss.loss[t][d];
    if (d == 0 || value < best_value) {
      best = d;
      best_value = value;
    }
  }
  return best;
}

Estimator Estimator::pitman(const FiniteModel& model, const LossFunction& loss) {
  Estimator out;
  out.theta_of_y.resize(model.n_y());
  for (int y = 0; y < model.n_y(); ++y) out.theta_of_y[y] = pitman_estimate(model, loss, y);
  return out;
}

EquivarianceResult is_equivariant(const Estimator& est, const FiniteModel& model) {
  EquivarianceResult out;
  for (int y = 0; y < model.n_y(); ++y) {
    for (int g = 0; g < model.group.order(); ++g) {
      const int lhs = est.theta_of_y[model.y_action.apply(y, g)];
      const int rhs = model.theta_action.apply(est.theta_of_y[y], g);
      if (lhs != rhs) {
        out.witness = {y, g};
        return out;
      }
    }
  }
  out.equivariant = true;
  return out;
}

Rational risk(const Estimator& est, const FiniteModel& model, const LossFunction& loss,
              int theta) {
  Rational out(0);
  for (int y = 0; y < model.n_y(); ++y)
    out += model.likelihood[theta][y] * loss.loss[theta][est.theta_of_y[y]];
  return out;
}

BestEquivariant brute_force_best_equivariant(const FiniteModel& model,
                                             const LossFunction& loss) {
  const GroupAction& ya = model.y_action;
  if (!orbits(model.theta_action).transitive())
    throw NonTransitive("the parameter action is not transitive");
  if (!orbits(ya).transitive())
    throw NotFreeTransitive("the sample action is not transitive");
  for (int y = 0; y < model.n_y(); ++y)
    for (int g = 0; g < model.group.order(); ++g)
      if (g != model.group.identity() && ya.apply(y, g) == y)
        throw NotFreeTransitive("the sample action has a fixed point at y " +
                                std::to_string(y));
  if (const auto witness = loss.invariance_witness(model))
    throw NonInvariantLoss("loss moves under element " + std::to_string((*witness)[2]));

  const int reference_y = 0;
  // y = reference . g for exactly one g; an equivariant estimator is pinned
  // by its value c at the reference: est(y) = c . g.
  std::vector<int> carrier(model.n_y(), -1);
  for (int g = 0; g < model.group.order(); ++g) carrier[ya.apply(reference_y, g)] = g;

  BestEquivariant out;
  out.reference_y = reference_y;
  for (int c = 0; c < model.n_theta(); ++c) {
    Estimator est;
    est.theta_of_y.resize(model.n_y());
    for (int y = 0; y < model.n_y(); ++y)
      est.theta_of_y[y] = model.theta_action.apply(c, carrier[y]);
    const EquivarianceResult eq = is_equivariant(est, model);
    if (!eq.equivariant) throw NotFreeTransitive("candidate estimator is not equivariant");
    const Rational r0 = risk(est, model, loss, 0);
    for (int t = 1; t < model.n_theta(); ++t)
      if (risk(est, model, loss, t) != r0)
        throw NonInvariantLoss("equivariant risk is not constant over the orbit");
    out.candidate_risks.push_back(r0);
    if (c == 0 || r0 < out.best_risk) {
      out.best_candidate = c;
      out.best_risk = r0;
      out.estimator = est;
    }
  }
  return out;
}

std::string risk_table_csv(const BestEquivariant& result) {
  std::ostringstream csv;
  csv.precision(17);
  csv << "candidate,risk,risk_decimal\n";
  for (std::size_t c = 0; c < result.candidate_risks.size(); ++c)
    csv << c << "," << to_string(result.candidate_risks[c]) << ","
        << to_double(result.candidate_risks[c]) << "\n";
  return csv.str();
}

}  // namespace qfs
