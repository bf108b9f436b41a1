#include "qfs/focusing.hpp"

#include <algorithm>
#include <cmath>

namespace qfs {

InducedValueAction induced_value_action(const FocusedParameter& param,
                                        const GroupAction& action) {
  param.validate();
  FiniteGroup sub = maximal_permissible_subgroup(param, action);
  const int nk = param.value_count();
  std::vector<std::vector<int>> value_map(nk, std::vector<int>(sub.order(), -1));
  for (int k = 0; k < nk; ++k) {
    const std::vector<int> level = param.level_set(k);
    for (int s = 0; s < sub.order(); ++s) {
      const int g = sub.parent_id(s);
      const int q = action.apply(level.front(), g);
      if (!param.in_domain(q))
        throw NotAnAction(param.label + ": level set " + std::to_string(k) +
                          " leaves the domain under element " + std::to_string(g));
      value_map[k][s] = param.value_index[q];
      // Permissibility makes the image independent of the representative;
      // verify anyway so the induced action is trustworthy on its own.
      for (int p : level)
        if (param.value_index[action.apply(p, g)] != value_map[k][s])
          throw NotAnAction(param.label + ": element " + std::to_string(g) +
                            " splits level set " + std::to_string(k));
    }
  }
  GroupAction induced = GroupAction::build(sub, value_map);
  InducedValueAction out{std::move(sub), std::move(value_map), orbits(induced)};
  return out;
}

ValueReduction reduce_to_orbit(const FocusedParameter& param, const GroupAction& action,
                               int orbit_block) {
  const InducedValueAction induced = induced_value_action(param, action);
  if (orbit_block < 0 || orbit_block >= induced.value_orbits.block_count())
    throw EmptyReduction(param.label + ": orbit block " + std::to_string(orbit_block) +
                         " does not exist");
  const std::vector<int>& kept = induced.value_orbits.blocks[orbit_block];

  std::vector<int> position(param.value_count(), -1);
  for (std::size_t i = 0; i < kept.size(); ++i) position[kept[i]] = static_cast<int>(i);

  std::vector<double> values;
  values.reserve(kept.size());
  for (int k : kept) values.push_back(param.values[k]);

  ValueReduction out;
  out.kept_values = kept;
  if (values.size() == 2 && values[0] == -values[1] && values[0] != 0.0) {
    out.scale = std::abs(values[0]);
    values[0] = values[0] < 0 ? -1.0 : 1.0;
    values[1] = -values[0];
  }

  std::vector<int> value_index(param.points(), -1);
  int covered = 0;
  for (int p = 0; p < param.points(); ++p) {
    if (!param.in_domain(p)) continue;
    const int pos = position[param.value_index[p]];
    if (pos >= 0) {
      value_index[p] = pos;
      ++covered;
    }
  }
  if (covered == 0) throw EmptyReduction(param.label + ": no point maps into the orbit");
  out.parameter = FocusedParameter::make(param.label, std::move(values), std::move(value_index));
  return out;
}

std::optional<int> find_transition(const FocusedParameter& param_a,
                                   const FocusedParameter& param_b, const GroupAction& action) {
  if (param_a.points() != action.points() || param_b.points() != action.points())
    throw NotAnAction("parameters and action disagree on the point count");
  const FiniteGroup& group = action.group();
  for (int g = 0; g < group.order(); ++g) {
    bool ok = true;
    for (int p = 0; p < action.points() && ok; ++p) {
      const int q = action.apply(p, g);
      const bool db = param_b.in_domain(p);
      const bool da = param_a.in_domain(q);
      if (db != da) {
        ok = false;
      } else if (db) {
        ok = param_b.values[param_b.value_index[p]] == param_a.values[param_a.value_index[q]];
      }
    }
    if (ok) return g;
  }
  return std::nullopt;
}

Json CouplingReport::to_json() const {
  Json j;
  j["pair"] = Json::array({label_a, label_b});
  j["transition"] = transition ? Json(*transition) : Json(nullptr);
  j["conjugation_ok"] = conjugation_ok;
  if (alignment) {
    j["alignment"] = *alignment;
  } else {
    j["alignment"] = nullptr;
  }
  j["subgroup_order_a"] = subgroup_order_a;
  j["subgroup_order_b"] = subgroup_order_b;
  return j;
}

CouplingReport verify_coupling(const FocusedParameter& param_a, const FocusedParameter& param_b,
                               const GroupAction& action, int g_ab) {
  if (param_a.points() != action.points() || param_b.points() != action.points())
    throw NotAnAction("parameters and action disagree on the point count");
  const FiniteGroup& group = action.group();
  if (g_ab < 0 || g_ab >= group.order()) throw InvalidTransition("transition id out of range");
  for (int p = 0; p < action.points(); ++p) {
    const int q = action.apply(p, g_ab);
    const bool db = param_b.in_domain(p);
    const bool da = param_a.in_domain(q);
    if (db != da ||
        (db && param_b.values[param_b.value_index[p]] != param_a.values[param_a.value_index[q]]))
      throw InvalidTransition(param_a.label + " -> " + param_b.label + ": element " +
                              std::to_string(g_ab) + " fails at point " + std::to_string(p));
  }

  CouplingReport report;
  report.label_a = param_a.label;
  report.label_b = param_b.label;
  report.transition = g_ab;

  const FiniteGroup sub_a = maximal_permissible_subgroup(param_a, action);
  const FiniteGroup sub_b = maximal_permissible_subgroup(param_b, action);
  report.subgroup_order_a = sub_a.order();
  report.subgroup_order_b = sub_b.order();

  std::vector<int> conjugated;
  conjugated.reserve(sub_a.order());
  const int inv = group.inverse(g_ab);
  for (int s = 0; s < sub_a.order(); ++s)
    conjugated.push_back(group.compose(group.compose(g_ab, sub_a.parent_id(s)), inv));
  std::sort(conjugated.begin(), conjugated.end());
  report.conjugation_ok = conjugated == sub_b.element_set();

  // Value alignment: index k of the first focus pairs with the index of the
  // equal value in the second focus. Present only when the value sets agree.
  std::vector<int> alignment(param_a.value_count(), -1);
  bool aligned = param_a.value_count() == param_b.value_count();
  for (int k = 0; aligned && k < param_a.value_count(); ++k) {
    for (int j = 0; j < param_b.value_count(); ++j) {
      if (param_a.values[k] == param_b.values[j]) {
        alignment[k] = j;
        break;
      }
    }
    aligned = alignment[k] >= 0;
  }
  if (aligned) report.alignment = alignment;
  return report;
}

bool is_function_of(const FocusedParameter& lam, const FocusedParameter& theta) {
  if (lam.points() != theta.points())
    throw BadParameter("parameters live on different point sets");
  for (int p = 0; p < theta.points(); ++p) {
    if (!theta.in_domain(p)) continue;
    if (!lam.in_domain(p)) return false;
    for (int q = p + 1; q < theta.points(); ++q) {
      if (!theta.in_domain(q)) continue;
      if (theta.value_index[p] != theta.value_index[q]) continue;
      if (!lam.in_domain(q) || lam.value_index[p] != lam.value_index[q]) return false;
    }
  }
  return true;
}

bool is_maximal_accessible(const FocusedParameter& lam,
                           const std::vector<FocusedParameter>& accessible) {
  for (const FocusedParameter& theta : accessible) {
    if (is_function_of(lam, theta) && !is_function_of(theta, lam)) return false;
  }
  return true;
}

}  // namespace qfs
