#include <doctest.h>

#include <algorithm>
#include <set>
#include <vector>

#include "qfs/focusing.hpp"
#include "qfs/models.hpp"

using namespace qfs;

namespace {

// Identity parameter theta on (-kappa, 0, +kappa) under the sign flip.
FocusedParameter spin_style_theta(double kappa) {
  return FocusedParameter::make("theta", {-kappa, 0.0, kappa}, {0, 1, 2});
}

}  // namespace

TEST_CASE("induced value action of an axis sign swaps the two levels") {
  const models::CubeModel& cube = models::cube();
  const InducedValueAction induced = induced_value_action(cube.sign_z, cube.vertex_action);
  CHECK(induced.subgroup.order() == 8);
  CHECK(induced.value_orbits.transitive());
  // Half of G^a fixes the levels, the other half swaps them.
  int swaps = 0;
  for (int s = 0; s < 8; ++s)
    if (induced.value_map[0][s] == 1) ++swaps;
  CHECK(swaps == 4);
}

TEST_CASE("induced action on the squared parameter is trivial") {
  const FocusedParameter squared = FocusedParameter::make("squared", {1, 0}, {0, 1, 0});
  const InducedValueAction induced =
      induced_value_action(squared, models::sign_flip_action());
  CHECK(induced.subgroup.order() == 2);
  CHECK(induced.value_orbits.block_count() == 2);
  for (int k = 0; k < 2; ++k)
    for (int s = 0; s < 2; ++s) CHECK(induced.value_map[k][s] == k);
}

TEST_CASE("two-point orbit reduces to canonical plus minus one") {
  const GroupAction action = models::sign_flip_action();
  const FocusedParameter theta = spin_style_theta(2.0);
  const InducedValueAction induced = induced_value_action(theta, action);
  // Value orbits: {-2, +2} and {0}; blocks sorted by least value index.
  REQUIRE(induced.value_orbits.block_count() == 2);
  REQUIRE(induced.value_orbits.blocks[0] == std::vector<int>{0, 2});

  const ValueReduction reduced = reduce_to_orbit(theta, action, 0);
  CHECK(reduced.scale == 2.0);
  CHECK(reduced.kept_values == std::vector<int>{0, 2});
  CHECK(reduced.parameter.values == std::vector<double>{-1.0, 1.0});
  CHECK(reduced.parameter.value_index[0] == 0);
  CHECK(reduced.parameter.value_index[1] == -1);  // middle point leaves the domain
  CHECK(reduced.parameter.value_index[2] == 1);
  CHECK(reduced.parameter.domain_size() == 2);
}

TEST_CASE("fixed point orbit reduces to a constant parameter") {
  const GroupAction action = models::sign_flip_action();
  const ValueReduction reduced = reduce_to_orbit(spin_style_theta(2.0), action, 1);
  CHECK(reduced.scale == 1.0);
  CHECK(reduced.parameter.values == std::vector<double>{0.0});
  CHECK(reduced.parameter.domain_size() == 1);
  CHECK(reduced.parameter.value_index[1] == 0);
}

TEST_CASE("cube sign parameter is already reduced") {
  const models::CubeModel& cube = models::cube();
  const ValueReduction reduced = reduce_to_orbit(cube.sign_z, cube.vertex_action, 0);
  CHECK(reduced.scale == 1.0);
  CHECK(reduced.parameter.values == cube.sign_z.values);
  CHECK(reduced.parameter.value_index == cube.sign_z.value_index);
}

TEST_CASE("reduction to a nonexistent orbit block fails") {
  const GroupAction action = models::sign_flip_action();
  CHECK_THROWS_AS(reduce_to_orbit(spin_style_theta(1.0), action, 5), EmptyReduction);
}

TEST_CASE("transition between axis signs exists and satisfies the defining identity") {
  const models::CubeModel& cube = models::cube();
  const auto g = find_transition(cube.sign_z, cube.sign_x, cube.vertex_action);
  REQUIRE(g.has_value());
  for (int p = 0; p < 8; ++p) {
    const int q = cube.vertex_action.apply(p, *g);
    CHECK(cube.sign_x.values[cube.sign_x.value_index[p]] ==
          cube.sign_z.values[cube.sign_z.value_index[q]]);
  }
}

TEST_CASE("transition from a parameter to itself is the identity") {
  const models::CubeModel& cube = models::cube();
  const auto g = find_transition(cube.sign_z, cube.sign_z, cube.vertex_action);
  REQUIRE(g.has_value());
  CHECK(*g == cube.group.identity());
}

TEST_CASE("incompatible value sets admit no transition") {
  const models::CubeModel& cube = models::cube();
  std::vector<int> idx(8);
  for (int p = 0; p < 8; ++p) idx[p] = cube.sign_z.value_index[p];
  const FocusedParameter shifted = FocusedParameter::make("shifted", {0.0, 1.0}, idx);
  CHECK_FALSE(find_transition(cube.sign_z, shifted, cube.vertex_action).has_value());
}

TEST_CASE("coupling report carries the conjugation identity and the alignment") {
  const models::CubeModel& cube = models::cube();
  const GroupAction& action = cube.vertex_action;
  const std::vector<const FocusedParameter*> axes = {&cube.sign_x, &cube.sign_y, &cube.sign_z};
  for (const auto* a : axes) {
    for (const auto* b : axes) {
      const auto g = find_transition(*a, *b, action);
      REQUIRE(g.has_value());
      const CouplingReport report = verify_coupling(*a, *b, action, *g);
      CHECK(report.conjugation_ok);
      REQUIRE(report.alignment.has_value());
      // Equal values align: value k of a pairs with the equal value of b.
      for (int k = 0; k < a->value_count(); ++k)
        CHECK(a->values[k] == b->values[(*report.alignment)[k]]);
      CHECK(report.subgroup_order_a == 8);
      CHECK(report.subgroup_order_b == 8);

      // Reconstruct the conjugation identity independently of the library's
      // own comparison: g h g^-1 over the a-subgroup must give exactly the
      // b-subgroup's element set.
      const FiniteGroup sub_a = maximal_permissible_subgroup(*a, action);
      const FiniteGroup sub_b = maximal_permissible_subgroup(*b, action);
      std::set<int> conjugated;
      for (int s = 0; s < sub_a.order(); ++s)
        conjugated.insert(cube.group.conjugate(*g, sub_a.parent_id(s)));
      const std::vector<int> expect = sub_b.element_set();
      CHECK(std::equal(expect.begin(), expect.end(), conjugated.begin(), conjugated.end()));
    }
  }
}

TEST_CASE("coupling a parameter with itself through the identity is trivial") {
  const models::CubeModel& cube = models::cube();
  const CouplingReport report =
      verify_coupling(cube.sign_z, cube.sign_z, cube.vertex_action, cube.group.identity());
  CHECK(report.conjugation_ok);
  REQUIRE(report.alignment.has_value());
  CHECK(*report.alignment == std::vector<int>{0, 1});
}

TEST_CASE("an element that fails the pointwise identity is rejected") {
  const models::CubeModel& cube = models::cube();
  const auto good = find_transition(cube.sign_z, cube.sign_x, cube.vertex_action);
  REQUIRE(good.has_value());
  int bad = -1;
  for (int g = 0; g < cube.group.order() && bad < 0; ++g) {
    bool works = true;
    for (int p = 0; p < 8 && works; ++p) {
      const int q = cube.vertex_action.apply(p, g);
      works = cube.sign_x.values[cube.sign_x.value_index[p]] ==
              cube.sign_z.values[cube.sign_z.value_index[q]];
    }
    if (!works) bad = g;
  }
  REQUIRE(bad >= 0);
  CHECK_THROWS_AS(verify_coupling(cube.sign_z, cube.sign_x, cube.vertex_action, bad),
                  InvalidTransition);
}

TEST_CASE("accessibility ordering: square factors through the identity parameter") {
  const FocusedParameter theta = spin_style_theta(1.0);
  const FocusedParameter squared = FocusedParameter::make("squared", {1, 0}, {0, 1, 0});
  CHECK(is_function_of(squared, theta));
  CHECK_FALSE(is_function_of(theta, squared));
}

TEST_CASE("axis sign factors through the vertex identity parameter") {
  const models::CubeModel& cube = models::cube();
  std::vector<double> values(8);
  std::vector<int> idx(8);
  for (int p = 0; p < 8; ++p) {
    values[p] = p;
    idx[p] = p;
  }
  const FocusedParameter vertex_id = FocusedParameter::make("vertex", values, idx);
  CHECK(is_function_of(cube.sign_z, vertex_id));
  CHECK_FALSE(is_function_of(vertex_id, cube.sign_z));
}

TEST_CASE("the accessibility relation is a preorder") {
  const FocusedParameter theta = spin_style_theta(1.0);
  const FocusedParameter squared = FocusedParameter::make("squared", {1, 0}, {0, 1, 0});
  const FocusedParameter constant = FocusedParameter::make("const", {1.0}, {0, 0, 0});
  // Reflexive.
  for (const auto* p : {&theta, &squared, &constant}) CHECK(is_function_of(*p, *p));
  // Transitive along const <= squared <= theta.
  CHECK(is_function_of(constant, squared));
  CHECK(is_function_of(squared, theta));
  CHECK(is_function_of(constant, theta));
}

TEST_CASE("maximality among accessible parameters") {
  const models::CubeModel& cube = models::cube();
  const FocusedParameter constant =
      FocusedParameter::make("const", {1.0}, std::vector<int>(8, 0));
  const std::vector<FocusedParameter> accessible = {cube.sign_z, cube.sign_x, constant};
  CHECK(is_maximal_accessible(cube.sign_z, accessible));
  CHECK(is_maximal_accessible(cube.sign_x, accessible));
  CHECK_FALSE(is_maximal_accessible(constant, accessible));
  CHECK(is_maximal_accessible(constant, {constant}));
}
