#pragma once

#include <Eigen/Dense>
#include <array>
#include <optional>
#include <string>
#include <vector>

#include "qfs/common.hpp"
#include "qfs/parameter.hpp"

namespace qfs {

struct NotAGroup : Error {
  using Error::Error;
};
struct NotAnAction : Error {
  using Error::Error;
};

// Finite group presented by its composition table. Element ids are dense
// 0-based indices; compose(g, h) is the id of g*h. Construction validates the
// full set of group axioms (Latin square, identity, inverses, associativity),
// all in integer arithmetic.
class FiniteGroup {
 public:
  static FiniteGroup from_table(std::vector<std::vector<int>> table);

  int order() const { return order_; }
  int identity() const { return identity_; }
  int compose(int g, int h) const { return table_[g][h]; }
  int inverse(int g) const { return inverse_[g]; }
  // g * h * g^-1
  int conjugate(int g, int h) const { return compose(compose(g, h), inverse_[g]); }

  int element_order(int g) const;
  std::vector<std::vector<int>> conjugacy_classes() const;

  // Subgroups produced by generated_subgroup() keep the id each of their
  // elements has in the parent group. For a group that is not a subgroup view,
  // parent_id(g) == g.
  bool is_subgroup_view() const { return !parent_ids_.empty(); }
  const std::vector<int>& parent_ids() const { return parent_ids_; }
  int parent_id(int g) const { return parent_ids_.empty() ? g : parent_ids_[g]; }
  // Sorted parent ids of all elements.
  std::vector<int> element_set() const;

 private:
  FiniteGroup() = default;
  friend FiniteGroup generated_subgroup(const FiniteGroup&, const std::vector<int>&);

  int order_ = 0;
  int identity_ = 0;
  std::vector<std::vector<int>> table_;
  std::vector<int> inverse_;
  std::vector<int> parent_ids_;
};

// Closure of `generators` (parent element ids) under composition. The result
// is a validated FiniteGroup whose parent_ids() embed it into `group`; its
// identity always has index 0.
FiniteGroup generated_subgroup(const FiniteGroup& group, const std::vector<int>& generators);

// Right action of a finite group on {0, ..., points-1}:
//   apply(p, e) = p,  apply(apply(p, g), h) = apply(p, compose(g, h)).
// Construction validates both laws exhaustively.
class GroupAction {
 public:
  // map[p][g] = image of point p under element g.
  static GroupAction build(FiniteGroup group, std::vector<std::vector<int>> map);

  const FiniteGroup& group() const { return group_; }
  int points() const { return static_cast<int>(map_.size()); }
  int apply(int p, int g) const { return map_[p][g]; }

 private:
  GroupAction(FiniteGroup group, std::vector<std::vector<int>> map)
      : group_(std::move(group)), map_(std::move(map)) {}
  FiniteGroup group_;
  std::vector<std::vector<int>> map_;
};

// Partition of the point set into orbits (or any disjoint blocks covering the
// set). Blocks are sorted by their minimal element; block_of maps a point to
// its block index.
struct Partition {
  std::vector<std::vector<int>> blocks;
  std::vector<int> block_of;

  int block_count() const { return static_cast<int>(blocks.size()); }
  bool transitive() const { return blocks.size() == 1; }
};

Partition orbits(const GroupAction& action);

// Probability measure on the point set, together with the uniqueness flag for
// the invariant-measure construction.
struct Measure {
  Eigen::VectorXd weights;
  bool unique_invariant = false;

  double total() const { return weights.sum(); }
  double mass(const std::vector<int>& points) const;
};

// The invariant probability measure that puts equal mass on every orbit and
// is uniform inside each orbit. Invariance: weights are constant along
// orbits, hence every singleton (and by additivity every subset) keeps its
// mass under the action. The measure is the unique invariant one exactly when
// the action is transitive.
Measure invariant_measure(const GroupAction& action);

struct PermissibilityResult {
  bool permissible = false;
  // (p1, p2, g): lambda(p1) == lambda(p2) but lambda(p1 g) != lambda(p2 g).
  // g is a parent-group element id.
  std::optional<std::array<int, 3>> witness;
};

// A subgroup is permissible for a parameter when the parameter's level sets
// map onto level sets under every subgroup element; equivalently, equal
// parameter values stay equal after acting. `subgroup` may be the action's
// own group or a subgroup view of it.
PermissibilityResult is_permissible(const FocusedParameter& param, const GroupAction& action,
                                    const FiniteGroup& subgroup);

// Largest subgroup whose elements all preserve the parameter's level
// partition. The preserving elements always form a subgroup; this is verified
// during construction.
FiniteGroup maximal_permissible_subgroup(const FocusedParameter& param,
                                         const GroupAction& action);

}  // namespace qfs
