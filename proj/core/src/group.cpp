#include "qfs/group.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

namespace qfs {

FiniteGroup FiniteGroup::from_table(std::vector<std::vector<int>> table) {
  const int n = static_cast<int>(table.size());
  if (n == 0) throw NotAGroup("empty composition table");
  for (int g = 0; g < n; ++g) {
    if (static_cast<int>(table[g].size()) != n)
      throw NotAGroup("row " + std::to_string(g) + " has the wrong length");
    for (int h = 0; h < n; ++h)
      if (table[g][h] < 0 || table[g][h] >= n)
        throw NotAGroup("entry (" + std::to_string(g) + ", " + std::to_string(h) +
                        ") is out of range");
  }
  // Latin square: each row and column is a permutation.
  for (int g = 0; g < n; ++g) {
    std::vector<bool> row(n, false), col(n, false);
    for (int h = 0; h < n; ++h) {
      if (row[table[g][h]])
        throw NotAGroup("row " + std::to_string(g) + " repeats element " +
                        std::to_string(table[g][h]));
      row[table[g][h]] = true;
      if (col[table[h][g]])
        throw NotAGroup("column " + std::to_string(g) + " repeats element " +
                        std::to_string(table[h][g]));
      col[table[h][g]] = true;
    }
  }
  // Two-sided identity.
  int identity = -1;
  for (int e = 0; e < n; ++e) {
    bool ok = true;
    for (int g = 0; g < n && ok; ++g) ok = table[e][g] == g && table[g][e] == g;
    if (ok) {
      identity = e;
      break;
    }
  }
  if (identity < 0) throw NotAGroup("no two-sided identity element");
  // Inverses.
  std::vector<int> inverse(n, -1);
  for (int g = 0; g < n; ++g) {
    for (int h = 0; h < n; ++h) {
      if (table[g][h] == identity && table[h][g] == identity) {
        inverse[g] = h;
        break;
      }
    }
    if (inverse[g] < 0) throw NotAGroup("element " + std::to_string(g) + " has no inverse");
  }
  // Associativity, exhaustive.
  for (int g = 0; g < n; ++g)
    for (int h = 0; h < n; ++h)
      for (int k = 0; k < n; ++k)
        if (table[table[g][h]][k] != table[g][table[h][k]])
          throw NotAGroup("associativity fails at (" + std::to_string(g) + ", " +
                          std::to_string(h) + ", " + std::to_string(k) + ")");
  FiniteGroup out;
  out.order_ = n;
  out.identity_ = identity;
  out.table_ = std::move(table);
  out.inverse_ = std::move(inverse);
  return out;
}

int FiniteGroup::element_order(int g) const {
  int k = 1;
  int x = g;
  while (x != identity_) {
    x = compose(x, g);
    ++k;
    if (k > order_) throw NotAGroup("element order exceeds the group order");
  }
  return k;
}

std::vector<std::vector<int>> FiniteGroup::conjugacy_classes() const {
  std::vector<int> cls(order_, -1);
  std::vector<std::vector<int>> classes;
  for (int h = 0; h < order_; ++h) {
    if (cls[h] >= 0) continue;
    const int id = static_cast<int>(classes.size());
    std::vector<int> members;
    for (int g = 0; g < order_; ++g) {
      const int c = conjugate(g, h);
      if (cls[c] < 0) {
        cls[c] = id;
        members.push_back(c);
      }
    }
    std::sort(members.begin(), members.end());
    classes.push_back(std::move(members));
  }
  return classes;
}

std::vector<int> FiniteGroup::element_set() const {
  std::vector<int> out(order_);
  for (int g = 0; g < order_; ++g) out[g] = parent_id(g);
  std::sort(out.begin(), out.end());
  return out;
}

FiniteGroup generated_subgroup(const FiniteGroup& group, const std::vector<int>& generators) {
  for (int g : generators)
    if (g < 0 || g >= group.order()) throw NotAGroup("generator id out of range");
  // Closure under composition, starting from the identity so it gets index 0.
  std::vector<int> members{group.identity()};
  std::set<int> seen{group.identity()};
  for (int g : generators)
    if (seen.insert(g).second) members.push_back(g);
  for (std::size_t i = 0; i < members.size(); ++i) {
    for (std::size_t j = 0; j < members.size(); ++j) {
      const int c = group.compose(members[i], members[j]);
      if (seen.insert(c).second) members.push_back(c);
    }
  }
  const int n = static_cast<int>(members.size());
  std::map<int, int> local;
  for (int i = 0; i < n; ++i) local[members[i]] = i;
  std::vector<std::vector<int>> table(n, std::vector<int>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) table[i][j] = local.at(group.compose(members[i], members[j]));
  FiniteGroup sub = FiniteGroup::from_table(std::move(table));
  sub.parent_ids_.resize(n);
  for (int i = 0; i < n; ++i) sub.parent_ids_[i] = group.parent_id(members[i]);
  return sub;
}

GroupAction GroupAction::build(FiniteGroup group, std::vector<std::vector<int>> map) {
  const int n = static_cast<int>(map.size());
  if (n == 0) throw NotAnAction("an action needs at least one point");
  for (int p = 0; p < n; ++p) {
    if (static_cast<int>(map[p].size()) != group.order())
      throw NotAnAction("point " + std::to_string(p) + " row does not cover the group");
    for (int g = 0; g < group.order(); ++g)
      if (map[p][g] < 0 || map[p][g] >= n)
        throw NotAnAction("image of point " + std::to_string(p) + " under element " +
                          std::to_string(g) + " is out of range");
  }
  for (int p = 0; p < n; ++p)
    if (map[p][group.identity()] != p)
      throw NotAnAction("identity moves point " + std::to_string(p));
  for (int p = 0; p < n; ++p)
    for (int g = 0; g < group.order(); ++g)
      for (int h = 0; h < group.order(); ++h)
        if (map[map[p][g]][h] != map[p][group.compose(g, h)])
          throw NotAnAction("compatibility fails at point " + std::to_string(p) +
                            ", elements " + std::to_string(g) + ", " + std::to_string(h));
  return GroupAction(std::move(group), std::move(map));
}

Partition orbits(const GroupAction& action) {
  const int n = action.points();
  Partition out;
  out.block_of.assign(n, -1);
  for (int p = 0; p < n; ++p) {
    if (out.block_of[p] >= 0) continue;
    const int id = static_cast<int>(out.blocks.size());
    std::vector<int> members;
    for (int g = 0; g < action.group().order(); ++g) {
      const int q = action.apply(p, g);
      if (out.block_of[q] < 0) {
        out.block_of[q] = id;
        members.push_back(q);
      }
    }
    std::sort(members.begin(), members.end());
    out.blocks.push_back(std::move(members));
  }
  return out;
}

double Measure::mass(const std::vector<int>& points) const {
  double m = 0.0;
  for (int p : points) m += weights[p];
  return m;
}

Measure invariant_measure(const GroupAction& action) {
  const Partition orb = orbits(action);
  Measure out;
  out.weights = Eigen::VectorXd::Zero(action.points());
  const double per_orbit = 1.0 / orb.block_count();
  for (const auto& block : orb.blocks) {
    const double w = per_orbit / static_cast<double>(block.size());
    for (int p : block) out.weights[p] = w;
  }
  out.unique_invariant = orb.transitive();
  return out;
}

PermissibilityResult is_permissible(const FocusedParameter& param, const GroupAction& action,
                                    const FiniteGroup& subgroup) {
  if (param.points() != action.points())
    throw NotAnAction("parameter and action disagree on the point count");
  PermissibilityResult out;
  for (int p1 = 0; p1 < param.points(); ++p1) {
    if (!param.in_domain(p1)) continue;
    for (int p2 = p1 + 1; p2 < param.points(); ++p2) {
      if (!param.in_domain(p2)) continue;
      if (param.value_index[p1] != param.value_index[p2]) continue;
      for (int s = 0; s < subgroup.order(); ++s) {
        const int g = subgroup.parent_id(s);
        const int q1 = action.apply(p1, g);
        const int q2 = action.apply(p2, g);
        const bool d1 = param.in_domain(q1);
        const bool d2 = param.in_domain(q2);
        if (d1 != d2 || (d1 && param.value_index[q1] != param.value_index[q2])) {
          out.permissible = false;
          out.witness = {p1, p2, g};
          return out;
        }
      }
    }
  }
  out.permissible = true;
  return out;
}

FiniteGroup maximal_permissible_subgroup(const FocusedParameter& param,
                                         const GroupAction& action) {
  if (param.points() != action.points())
    throw NotAnAction("parameter and action disagree on the point count");
  const FiniteGroup& g = action.group();
  std::vector<int> preserving;
  for (int e = 0; e < g.order(); ++e) {
    bool ok = true;
    for (int p1 = 0; p1 < param.points() && ok; ++p1) {
      if (!param.in_domain(p1)) continue;
      for (int p2 = p1 + 1; p2 < param.points() && ok; ++p2) {
        if (!param.in_domain(p2)) continue;
        if (param.value_index[p1] != param.value_index[p2]) continue;
        const int q1 = action.apply(p1, e);
        const int q2 = action.apply(p2, e);
        const bool d1 = param.in_domain(q1);
        const bool d2 = param.in_domain(q2);
        if (d1 != d2 || (d1 && param.value_index[q1] != param.value_index[q2])) ok = false;
      }
    }
    if (ok) preserving.push_back(e);
  }
  // The preserving set is closed under composition and inversion; building the
  // generated subgroup from it both constructs and verifies that structure.
  FiniteGroup sub = generated_subgroup(g, preserving);
  if (sub.order() != static_cast<int>(preserving.size()))
    throw NotAGroup("level-preserving elements failed to form a subgroup");
  return sub;
}

}  // namespace qfs
