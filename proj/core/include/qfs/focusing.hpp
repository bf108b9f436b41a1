#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qfs/group.hpp"
#include "qfs/linalg.hpp"
#include "qfs/parameter.hpp"

namespace qfs {

struct EmptyReduction : Error {
  using Error::Error;
};
struct InvalidTransition : Error {
  using Error::Error;
};

// Action of the parameter's maximal permissible subgroup on the parameter's
// value indices. Well defined exactly because the subgroup preserves the
// level partition.
struct InducedValueAction {
  FiniteGroup subgroup;                     // G^a, embedded in action.group()
  std::vector<std::vector<int>> value_map;  // value_map[k][s] for subgroup element s
  Partition value_orbits;
};

InducedValueAction induced_value_action(const FocusedParameter& param, const GroupAction& action);

// Model reduction to one orbit of the induced value action. Points mapping
// outside the orbit leave the domain (value_index -1). A two-point orbit
// {-k, +k} is rescaled to {-1, +1} with the scale recorded; a single fixed
// value yields a constant parameter.
struct ValueReduction {
  FocusedParameter parameter;
  std::vector<int> kept_values;  // original value indices, ascending
  double scale = 1.0;            // k for a rescaled symmetric pair, else 1
};

ValueReduction reduce_to_orbit(const FocusedParameter& param, const GroupAction& action,
                               int orbit_block);

// Smallest element g with lambda_b(p) = lambda_a(p g) for all p in the common
// domain, comparing actual values. Returns nullopt when no element works.
std::optional<int> find_transition(const FocusedParameter& param_a,
                                   const FocusedParameter& param_b, const GroupAction& action);

// Structural report for a coupled pair of foci.
struct CouplingReport {
  std::string label_a;
  std::string label_b;
  std::optional<int> transition;              // g_ab
  bool conjugation_ok = false;                     // G^b == g_ab G^a g_ab^-1 as element sets
  std::optional<std::vector<int>> alignment;  // a-value index -> b-value index, equal values
  int subgroup_order_a = 0;
  int subgroup_order_b = 0;

  Json to_json() const;
};

// Validates a proposed transition element and reports the conjugation
// identity between the two maximal permissible subgroups together with the
// value alignment. Throws InvalidTransition if g_ab does not satisfy
// lambda_b(p) = lambda_a(p g_ab) pointwise.
CouplingReport verify_coupling(const FocusedParameter& param_a, const FocusedParameter& param_b,
                               const GroupAction& action, int g_ab);

// True when lam factors through theta, i.e. theta's level partition refines
// lam's on the common domain. This is the accessibility preorder lam <= theta.
bool is_function_of(const FocusedParameter& lam, const FocusedParameter& theta);

// True when no parameter in `accessible` is strictly finer than lam.
bool is_maximal_accessible(const FocusedParameter& lam,
                           const std::vector<FocusedParameter>& accessible);

}  // namespace qfs
