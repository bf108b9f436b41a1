#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "qfs/group.hpp"
#include "qfs/hilbert.hpp"
#include "qfs/linalg.hpp"
#include "qfs/parameter.hpp"

namespace qfs::models {

FiniteGroup cyclic_group(int n);
FiniteGroup klein_group();
FiniteGroup trivial_group();

// Z_n acting on itself by translation.
GroupAction cyclic_translation(int n);
// C2 acting on {-1, 0, +1} by sign flip; points ordered (-1, 0, +1).
GroupAction sign_flip_action();
// Any group acting on itself on the right.
GroupAction regular_action(const FiniteGroup& group);
GroupAction trivial_action(int points);

// Rotation group of the cube (order 24) acting on the 8 vertices, with the
// three sign-of-coordinate parameters. Rotations are stored as exact integer
// matrices; the vertex action is p . g = R_g^T p.
struct CubeModel {
  FiniteGroup group;
  std::vector<Eigen::Matrix3i> rotations;
  std::vector<Eigen::Vector3i> vertices;
  GroupAction vertex_action;
  FocusedParameter sign_x;
  FocusedParameter sign_y;
  FocusedParameter sign_z;

  const FocusedParameter& sign(int axis) const;  // 0 = x, 1 = y, 2 = z
};

const CubeModel& cube();

// Character tables as per-element matrices (row = irreducible, column =
// element id). The cyclic table is the DFT; the cube table carries the five
// integer-valued irreducibles, with rows matched to conjugacy classes by
// (class size, element order).
Mat cyclic_characters(int n);
Mat cube_characters(const CubeModel& model);

// Deterministic SU(2) image of a rotation matrix: the quaternion with
// first nonzero component positive. A section of the double cover, so it is
// a homomorphism only up to sign.
Eigen::Matrix2cd su2_from_rotation(const Eigen::Matrix3d& r);

// The 2x2 section applied to every cube rotation.
UnitaryFamily cube_spin_family(const CubeModel& model);

// On-disk model: a group table, an action, and named parameters.
struct ModelFile {
  FiniteGroup group;
  GroupAction action;
  std::vector<FocusedParameter> parameters;
  bool inaccessible_c_variable = false;  // annotation only, never enforced
};

ModelFile model_from_json(const Json& j);
Json model_to_json(const ModelFile& model);
ModelFile cube_model_file();
ModelFile sign_flip_model_file();

}  // namespace qfs::models
