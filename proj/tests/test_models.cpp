#include <doctest.h>

#include <array>
#include <complex>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <vector>

#include "qfs/models.hpp"

using namespace qfs;

namespace {

using Key = std::array<int, 9>;

Key key_of(const Eigen::Matrix3i& m) {
  Key k{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) k[3 * i + j] = m(i, j);
  return k;
}

// Independent reconstruction of the rotation group: plain closure over
// integer matrices with a different traversal and container than the library
// uses.
std::set<Key> rotation_closure_oracle() {
  Eigen::Matrix3i rz, rx;
  rz << 0, -1, 0, 1, 0, 0, 0, 0, 1;
  rx << 1, 0, 0, 0, 0, -1, 0, 1, 0;
  std::set<Key> seen{key_of(Eigen::Matrix3i::Identity())};
  std::vector<Eigen::Matrix3i> queue{Eigen::Matrix3i::Identity()};
  while (!queue.empty()) {
    const Eigen::Matrix3i m = queue.back();
    queue.pop_back();
    for (const Eigen::Matrix3i* g : {&rz, &rx}) {
      const Eigen::Matrix3i left = *g * m;
      const Eigen::Matrix3i right = m * *g;
      if (seen.insert(key_of(left)).second) queue.push_back(left);
      if (seen.insert(key_of(right)).second) queue.push_back(right);
    }
  }
  return seen;
}

int det3(const Eigen::Matrix3i& m) {
  return m(0, 0) * (m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1)) -
         m(0, 1) * (m(1, 0) * m(2, 2) - m(1, 2) * m(2, 0)) +
         m(0, 2) * (m(1, 0) * m(2, 1) - m(1, 1) * m(2, 0));
}

std::array<Eigen::Matrix2cd, 3> pauli() {
  const std::complex<double> i(0, 1);
  Eigen::Matrix2cd sx, sy, sz;
  sx << 0, 1, 1, 0;
  sy << 0, -i, i, 0;
  sz << 1, 0, 0, -1;
  return {sx, sy, sz};
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace

TEST_CASE("cyclic and klein groups have the right structure") {
  const FiniteGroup c4 = models::cyclic_group(4);
  CHECK(c4.order() == 4);
  CHECK(c4.element_order(1) == 4);
  CHECK(c4.element_order(2) == 2);
  const FiniteGroup klein = models::klein_group();
  CHECK(klein.order() == 4);
  for (int g = 1; g < 4; ++g) CHECK(klein.element_order(g) == 2);
}

TEST_CASE("library rotation set equals the independent closure") {
  const models::CubeModel& cube = models::cube();
  const std::set<Key> oracle = rotation_closure_oracle();
  CHECK(oracle.size() == 24);
  std::set<Key> lib;
  for (const auto& r : cube.rotations) lib.insert(key_of(r));
  CHECK(lib == oracle);
}

TEST_CASE("every cube element is a proper rotation") {
  for (const auto& r : models::cube().rotations) {
    CHECK(r.transpose() * r == Eigen::Matrix3i::Identity());
    CHECK(det3(r) == 1);
  }
}

TEST_CASE("element order census of the rotation group") {
  const models::CubeModel& cube = models::cube();
  std::map<int, int> census;
  for (int g = 0; g < 24; ++g) ++census[cube.group.element_order(g)];
  CHECK(census[1] == 1);
  CHECK(census[2] == 9);  // three face half-turns plus six edge half-turns
  CHECK(census[3] == 8);
  CHECK(census[4] == 6);
}

TEST_CASE("conjugacy class sizes of the rotation group") {
  std::multiset<int> sizes;
  for (const auto& cls : models::cube().group.conjugacy_classes())
    sizes.insert(static_cast<int>(cls.size()));
  CHECK(sizes == std::multiset<int>{1, 3, 6, 6, 8});
}

TEST_CASE("vertex action matches the stored geometry") {
  const models::CubeModel& cube = models::cube();
  REQUIRE(cube.vertices.size() == 8);
  for (int p = 0; p < 8; ++p)
    for (int g = 0; g < 24; ++g) {
      const Eigen::Vector3i image = cube.rotations[g].transpose() * cube.vertices[p];
      CHECK(cube.vertices[cube.vertex_action.apply(p, g)] == image);
    }
}

TEST_CASE("sign parameters read the vertex coordinates") {
  const models::CubeModel& cube = models::cube();
  for (int axis = 0; axis < 3; ++axis) {
    const FocusedParameter& param = cube.sign(axis);
    CHECK(param.values == std::vector<double>{-1.0, 1.0});
    for (int p = 0; p < 8; ++p)
      CHECK(param.values[param.value_index[p]] == (cube.vertices[p][axis] < 0 ? -1.0 : 1.0));
  }
}

TEST_CASE("character table satisfies the orthogonality relations") {
  const models::CubeModel& cube = models::cube();
  const Mat chi = models::cube_characters(cube);
  REQUIRE(chi.rows() == 5);
  REQUIRE(chi.cols() == 24);
  // Row orthonormality under the uniform group weight.
  for (int i = 0; i < 5; ++i)
    for (int j = 0; j < 5; ++j) {
      Complex acc = 0;
      for (int g = 0; g < 24; ++g) acc += std::conj(chi(i, g)) * chi(j, g);
      CHECK(std::abs(acc / 24.0 - (i == j ? 1.0 : 0.0)) < 1e-12);
    }
  // Dimensions at the identity: 1, 1, 2, 3, 3 in some order, squares sum 24.
  std::multiset<int> dims;
  double sq = 0;
  for (int i = 0; i < 5; ++i) {
    dims.insert(static_cast<int>(std::lround(chi(i, cube.group.identity()).real())));
    sq += std::norm(chi(i, cube.group.identity()));
  }
  CHECK(dims == std::multiset<int>{1, 1, 2, 3, 3});
  CHECK(sq == doctest::Approx(24.0));
  // Characters are class functions.
  for (const auto& cls : cube.group.conjugacy_classes())
    for (int g : cls)
      for (int i = 0; i < 5; ++i) CHECK(chi(i, g) == chi(i, cls.front()));
}

TEST_CASE("vertex representation multiplicities from fixed points") {
  const models::CubeModel& cube = models::cube();
  const Mat chi = models::cube_characters(cube);
  // Character of the permutation representation is the fixed-vertex count.
  std::vector<double> fix(24, 0.0);
  for (int g = 0; g < 24; ++g)
    for (int p = 0; p < 8; ++p)
      if (cube.vertex_action.apply(p, g) == p) fix[g] += 1.0;
  double total = 0;
  for (int i = 0; i < 5; ++i) {
    Complex acc = 0;
    for (int g = 0; g < 24; ++g) acc += std::conj(chi(i, g)) * fix[g];
    const double mult = acc.real() / 24.0;
    CHECK(mult == doctest::Approx(std::round(mult)).epsilon(1e-12));
    total += mult * chi(i, cube.group.identity()).real();
  }
  CHECK(total == doctest::Approx(8.0));
}

TEST_CASE("su2 section lifts every rotation faithfully") {
  const models::CubeModel& cube = models::cube();
  const auto sigma = pauli();
  for (const auto& ri : cube.rotations) {
    const Eigen::Matrix3d r = ri.cast<double>();
    const Eigen::Matrix2cd u = models::su2_from_rotation(r);
    CHECK((u.adjoint() * u - Eigen::Matrix2cd::Identity()).norm() < 1e-12);
    CHECK(std::abs(u.determinant() - 1.0) < 1e-12);
    // Adjoint action recovers the rotation: u (e_j . sigma) u^H = (R e_j) . sigma.
    for (int j = 0; j < 3; ++j) {
      const Eigen::Matrix2cd lhs = u * sigma[j] * u.adjoint();
      Eigen::Matrix2cd rhs = Eigen::Matrix2cd::Zero();
      for (int i = 0; i < 3; ++i) rhs += r(i, j) * sigma[i];
      CHECK((lhs - rhs).norm() < 1e-12);
    }
  }
}

TEST_CASE("spin family multiplies consistently up to sign") {
  const models::CubeModel& cube = models::cube();
  const UnitaryFamily family = models::cube_spin_family(cube);
  CHECK(family.max_unitarity_error() < 1e-12);
  double worst = 0;
  for (int g = 0; g < 24; ++g)
    for (int h = 0; h < 24; ++h) {
      const Mat prod = family.at(g) * family.at(h);
      const Mat& target = family.at(cube.group.compose(g, h));
      worst = std::max(worst, std::min((prod - target).norm(), (prod + target).norm()));
    }
  CHECK(worst < 1e-12);
  CHECK(family.max_homomorphism_error(true) < 1e-12);
}

TEST_CASE("model files round-trip through json") {
  for (const auto& model : {models::cube_model_file(), models::sign_flip_model_file()}) {
    const Json j = models::model_to_json(model);
    const models::ModelFile back = models::model_from_json(j);
    CHECK(models::model_to_json(back).dump(2) == j.dump(2));
    CHECK(back.group.order() == model.group.order());
    CHECK(back.parameters.size() == model.parameters.size());
  }
}

TEST_CASE("committed fixtures match freshly generated ones") {
  const std::string dir = QFS_DATA_DIR;
  CHECK(slurp(dir + "/cube_model.json") ==
        models::model_to_json(models::cube_model_file()).dump(2) + "\n");
  CHECK(slurp(dir + "/sign_flip_model.json") ==
        models::model_to_json(models::sign_flip_model_file()).dump(2) + "\n");
}

TEST_CASE("malformed model json is rejected") {
  Json j = models::model_to_json(models::sign_flip_model_file());
  j["group"]["table"][0][0] = 1;  // breaks the identity row
  CHECK_THROWS_AS(models::model_from_json(j), Error);
}
