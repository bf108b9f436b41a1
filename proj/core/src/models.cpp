#include "qfs/models.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>

namespace qfs::models {

FiniteGroup cyclic_group(int n) {
  if (n < 1) throw NotAGroup("cyclic group needs n >= 1");
  std::vector<std::vector<int>> table(n, std::vector<int>(n));
  for (int g = 0; g < n; ++g)
    for (int h = 0; h < n; ++h) table[g][h] = (g + h) % n;
  return FiniteGroup::from_table(std::move(table));
}

FiniteGroup klein_group() {
  std::vector<std::vector<int>> table(4, std::vector<int>(4));
  for (int g = 0; g < 4; ++g)
    for (int h = 0; h < 4; ++h) table[g][h] = g ^ h;
  return FiniteGroup::from_table(std::move(table));
}

FiniteGroup trivial_group() { return cyclic_group(1); }

GroupAction cyclic_translation(int n) {
  FiniteGroup group = cyclic_group(n);
  std::vector<std::vector<int>> map(n, std::vector<int>(n));
  for (int p = 0; p < n; ++p)
    for (int g = 0; g < n; ++g) map[p][g] = (p + g) % n;
  return GroupAction::build(std::move(group), std::move(map));
}

GroupAction sign_flip_action() {
  FiniteGroup group = cyclic_group(2);
  // Points 0, 1, 2 carry the values -1, 0, +1; the nontrivial element negates.
  std::vector<std::vector<int>> map = {{0, 2}, {1, 1}, {2, 0}};
  return GroupAction::build(std::move(group), std::move(map));
}

GroupAction regular_action(const FiniteGroup& group) {
  const int n = group.order();
  std::vector<std::vector<int>> map(n, std::vector<int>(n));
  for (int p = 0; p < n; ++p)
    for (int g = 0; g < n; ++g) map[p][g] = group.compose(p, g);
  return GroupAction::build(group, std::move(map));
}

GroupAction trivial_action(int points) {
  FiniteGroup group = trivial_group();
  std::vector<std::vector<int>> map(points, std::vector<int>(1));
  for (int p = 0; p < points; ++p) map[p][0] = p;
  return GroupAction::build(std::move(group), std::move(map));
}

const FocusedParameter& CubeModel::sign(int axis) const {
  switch (axis) {
    case 0:
      return sign_x;
    case 1:
      return sign_y;
    case 2:
      return sign_z;
    default:
      throw BadParameter("axis must be 0, 1 or 2");
  }
}

namespace {

CubeModel build_cube() {
  using Eigen::Matrix3i;
  using Eigen::Vector3i;

  Matrix3i rz90, rx90;
  // Quarter turns about z and x; columns are the images of the axes.
  rz90 << 0, -1, 0, 1, 0, 0, 0, 0, 1;
  rx90 << 1, 0, 0, 0, 0, -1, 0, 1, 0;

  auto key = [](const Matrix3i& m) {
    std::array<int, 9> k{};
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) k[3 * i + j] = m(i, j);
    return k;
  };

  std::vector<Matrix3i> rotations{Matrix3i::Identity()};
  std::map<std::array<int, 9>, int> index{{key(rotations[0]), 0}};
  const std::vector<Matrix3i> generators{rz90, rx90};
  for (std::size_t i = 0; i < rotations.size(); ++i) {
    for (const Matrix3i& g : generators) {
      const Matrix3i m = rotations[i] * g;
      if (index.emplace(key(m), static_cast<int>(rotations.size())).second)
        rotations.push_back(m);
    }
  }
  if (rotations.size() != 24)
    throw NotAGroup("cube rotation closure has order " + std::to_string(rotations.size()));

  const int n = 24;
  std::vector<std::vector<int>> table(n, std::vector<int>(n));
  for (int g = 0; g < n; ++g)
    for (int h = 0; h < n; ++h) table[g][h] = index.at(key(rotations[g] * rotations[h]));

  std::vector<Vector3i> vertices;
  for (int z : {-1, 1})
    for (int y : {-1, 1})
      for (int x : {-1, 1}) vertices.push_back(Vector3i(x, y, z));

  auto vertex_index = [&vertices](const Vector3i& v) {
    for (std::size_t i = 0; i < vertices.size(); ++i)
      if (vertices[i] == v) return static_cast<int>(i);
    throw NotAnAction("rotation image is not a cube vertex");
  };

  std::vector<std::vector<int>> map(8, std::vector<int>(n));
  for (int p = 0; p < 8; ++p)
    for (int g = 0; g < n; ++g)
      map[p][g] = vertex_index(rotations[g].transpose() * vertices[p]);

  auto sign_param = [&vertices](std::string label, int axis) {
    std::vector<int> value_index(8);
    for (int p = 0; p < 8; ++p) value_index[p] = vertices[p][axis] < 0 ? 0 : 1;
    return FocusedParameter::make(std::move(label), {-1.0, 1.0}, std::move(value_index));
  };

  FiniteGroup group = FiniteGroup::from_table(std::move(table));
  GroupAction action = GroupAction::build(group, std::move(map));
  FocusedParameter sx = sign_param("sign_x", 0);
  FocusedParameter sy = sign_param("sign_y", 1);
  FocusedParameter sz = sign_param("sign_z", 2);
  CubeModel model{std::move(group),     std::move(rotations), std::move(vertices),
                  std::move(action),    std::move(sx),        std::move(sy),
                  std::move(sz)};
  return model;
}

}  // namespace

const CubeModel& cube() {
  static const CubeModel model = build_cube();
  return model;
}

Mat cyclic_characters(int n) {
  Mat chi(n, n);
  const double w = 2.0 * std::numbers::pi / n;
  for (int k = 0; k < n; ++k)
    for (int g = 0; g < n; ++g) chi(k, g) = std::polar(1.0, w * k * g);
  return chi;
}

Mat cube_characters(const CubeModel& model) {
  const FiniteGroup& group = model.group;
  const auto classes = group.conjugacy_classes();
  if (classes.size() != 5)
    throw BadCharacterTable("expected 5 conjugacy classes, found " +
                            std::to_string(classes.size()));
  // Classes are identified by (size, element order); the five irreducible
  // characters are constant on them.
  const std::map<std::pair<int, int>, std::array<int, 5>> by_class = {
      {{1, 1}, {1, 1, 2, 3, 3}},
      {{8, 3}, {1, 1, -1, 0, 0}},
      {{3, 2}, {1, 1, 2, -1, -1}},
      {{6, 4}, {1, -1, 0, 1, -1}},
      {{6, 2}, {1, -1, 0, -1, 1}},
  };
  Mat chi(5, group.order());
  for (const auto& members : classes) {
    const std::pair<int, int> k{static_cast<int>(members.size()),
                                group.element_order(members.front())};
    const auto it = by_class.find(k);
    if (it == by_class.end())
      throw BadCharacterTable("unexpected conjugacy class (size " + std::to_string(k.first) +
                              ", order " + std::to_string(k.second) + ")");
    for (int g : members)
      for (int row = 0; row < 5; ++row) chi(row, g) = static_cast<double>(it->second[row]);
  }
  return chi;
}

Eigen::Matrix2cd su2_from_rotation(const Eigen::Matrix3d& r) {
  double w, x, y, z;
  const double t = r.trace();
  if (t > 0.0) {
    const double s = std::sqrt(t + 1.0) * 2.0;
    w = s / 4.0;
    x = (r(2, 1) - r(1, 2)) / s;
    y = (r(0, 2) - r(2, 0)) / s;
    z = (r(1, 0) - r(0, 1)) / s;
  } else if (r(0, 0) >= r(1, 1) && r(0, 0) >= r(2, 2)) {
    const double s = std::sqrt(1.0 + r(0, 0) - r(1, 1) - r(2, 2)) * 2.0;
    w = (r(2, 1) - r(1, 2)) / s;
    x = s / 4.0;
    y = (r(0, 1) + r(1, 0)) / s;
    z = (r(0, 2) + r(2, 0)) / s;
  } else if (r(1, 1) >= r(2, 2)) {
    const double s = std::sqrt(1.0 + r(1, 1) - r(0, 0) - r(2, 2)) * 2.0;
    w = (r(0, 2) - r(2, 0)) / s;
    x = (r(0, 1) + r(1, 0)) / s;
    y = s / 4.0;
    z = (r(1, 2) + r(2, 1)) / s;
  } else {
    const double s = std::sqrt(1.0 + r(2, 2) - r(0, 0) - r(1, 1)) * 2.0;
    w = (r(1, 0) - r(0, 1)) / s;
    x = (r(0, 2) + r(2, 0)) / s;
    y = (r(1, 2) + r(2, 1)) / s;
    z = s / 4.0;
  }
  const double norm = std::sqrt(w * w + x * x + y * y + z * z);
  w /= norm;
  x /= norm;
  y /= norm;
  z /= norm;
  // Fix the double-cover sign: first component larger than the tolerance is
  // made positive.
  const double comps[4] = {w, x, y, z};
  for (double c : comps) {
    if (std::abs(c) > 1e-12) {
      if (c < 0.0) {
        w = -w;
        x = -x;
        y = -y;
        z = -z;
      }
      break;
    }
  }
  Eigen::Matrix2cd u;
  const Complex i(0.0, 1.0);
  u << Complex(w, 0) - i * z, -i * x - y, -i * x + y, Complex(w, 0) + i * z;
  return u;
}

UnitaryFamily cube_spin_family(const CubeModel& model) {
  UnitaryFamily family{model.group, WeightedSpace::standard(2), {}};
  family.matrices.reserve(model.group.order());
  for (int g = 0; g < model.group.order(); ++g)
    family.matrices.push_back(su2_from_rotation(model.rotations[g].cast<double>()));
  return family;
}

ModelFile model_from_json(const Json& j) {
  if (!j.contains("group") || !j["group"].contains("table"))
    throw Error("model file: missing group.table");
  FiniteGroup group =
      FiniteGroup::from_table(j["group"]["table"].get<std::vector<std::vector<int>>>());
  if (!j.contains("action") || !j["action"].contains("map"))
    throw Error("model file: missing action.map");
  GroupAction action =
      GroupAction::build(group, j["action"]["map"].get<std::vector<std::vector<int>>>());
  ModelFile model{std::move(group), std::move(action), {}, false};
  if (j.contains("parameters")) {
    for (const Json& p : j["parameters"]) {
      FocusedParameter param = FocusedParameter::make(p.at("label").get<std::string>(),
                                                      p.at("values").get<std::vector<double>>(),
                                                      p.at("value_index").get<std::vector<int>>());
      if (param.points() != model.action.points())
        throw BadParameter(param.label + ": point count does not match the action");
      model.parameters.push_back(std::move(param));
    }
  }
  if (j.contains("inaccessible_c_variable"))
    model.inaccessible_c_variable = j["inaccessible_c_variable"].get<bool>();
  return model;
}

Json model_to_json(const ModelFile& model) {
  Json j;
  std::vector<std::vector<int>> table(model.group.order(), std::vector<int>(model.group.order()));
  for (int g = 0; g < model.group.order(); ++g)
    for (int h = 0; h < model.group.order(); ++h) table[g][h] = model.group.compose(g, h);
  j["group"]["table"] = table;
  std::vector<std::vector<int>> map(model.action.points(),
                                    std::vector<int>(model.group.order()));
  for (int p = 0; p < model.action.points(); ++p)
    for (int g = 0; g < model.group.order(); ++g) map[p][g] = model.action.apply(p, g);
  j["action"]["points"] = model.action.points();
  j["action"]["map"] = map;
  j["parameters"] = Json::array();
  for (const FocusedParameter& param : model.parameters) {
    Json p;
    p["label"] = param.label;
    p["values"] = param.values;
    p["value_index"] = param.value_index;
    j["parameters"].push_back(p);
  }
  j["inaccessible_c_variable"] = model.inaccessible_c_variable;
  return j;
}

ModelFile cube_model_file() {
  const CubeModel& model = cube();
  return ModelFile{model.group,
                   model.vertex_action,
                   {model.sign_x, model.sign_y, model.sign_z},
                   true};
}

ModelFile sign_flip_model_file() {
  GroupAction action = sign_flip_action();
  FiniteGroup group = action.group();
  FocusedParameter theta = FocusedParameter::make("theta", {-1.0, 0.0, 1.0}, {0, 1, 2});
  FocusedParameter theta_sq = FocusedParameter::make("theta_squared", {0.0, 1.0}, {1, 0, 1});
  return ModelFile{std::move(group), std::move(action), {theta, theta_sq}, false};
}

}  // namespace qfs::models
