#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "qfs/focusing.hpp"
#include "qfs/group.hpp"
#include "qfs/linalg.hpp"

namespace qfs {

struct DegenerateMeasure : Error {
  using Error::Error;
};
struct BadCharacterTable : Error {
  using Error::Error;
};
struct NotGenerating : Error {
  using Error::Error;
};
struct NonUnitaryW : Error {
  using Error::Error;
};
struct NoMatch : Error {
  using Error::Error;
};

// Subspace spanned by the normalized level indicators of a focused parameter
// inside the weighted function space, together with the multiplication
// operator that acts as the parameter value on each level set.
//
// basis column k is f_k(p) = 1{lambda(p) = values[k]} / sqrt(mass of level k);
// multiplication is diagonal with entry lambda(p) (zero off the domain).
struct ParametricSpace {
  std::string label;
  WeightedSpace space;
  Mat basis;
  Eigen::VectorXd eigenvalues;
  Mat multiplication;
  std::optional<FocusedParameter> source;

  int dim() const { return static_cast<int>(basis.cols()); }
};

ParametricSpace build_parametric_space(const FocusedParameter& param, const Measure& measure);

// Abstract variant: orthonormal states supplied directly (standard inner
// product), as in the explicit two-dimensional spin model.
ParametricSpace parametric_space_from_states(std::string label, const Mat& states,
                                             const Eigen::VectorXd& eigenvalues);

// One matrix per group element. Depending on the construction the family is
// an exact homomorphism (permutation representations) or one only up to a
// global sign (spin section); validation exposes both readings.
struct UnitaryFamily {
  FiniteGroup group;
  WeightedSpace space;
  std::vector<Mat> matrices;

  const Mat& at(int g) const { return matrices[g]; }
  double max_unitarity_error() const;
  double max_homomorphism_error(bool projective = false) const;
};

// Right regular representation on functions: (U(g) f)(p) = f(p g). Unitary
// with respect to the weighted inner product exactly when the measure is
// invariant; throws NonInvariantMeasure otherwise.
UnitaryFamily regular_representation(const GroupAction& action, const Measure& measure);

// Checks that the aligned level indicators of two coupled foci transport into
// each other: f_k^b = U(g_ab) f_k^a after matching equal values.
struct TransportReport {
  std::vector<int> alignment;  // a-index -> b-index
  double max_deviation = 0.0;
};

TransportReport transport_check(const ParametricSpace& space_a, const ParametricSpace& space_b,
                                const UnitaryFamily& u, int g_ab);

// Isotypic decomposition of a unitary family from a character table.
// characters(i, g) is the value of irreducible character i on element g; the
// table must list every irreducible exactly once (row orthonormality and
// sum of squared dimensions are validated, BadCharacterTable otherwise).
struct IsotypicDecomposition {
  std::vector<Mat> projectors;
  std::vector<int> dimensions;  // dimension of each isotypic component
  double idempotency_error = 0.0;
  double orthogonality_error = 0.0;
  double completeness_error = 0.0;  // || sum P - I ||
};

IsotypicDecomposition isotypic_projectors(const UnitaryFamily& u, const Mat& characters,
                                          double tol = 1e-10);

// One focus entering the coupled construction: its maximal permissible
// subgroup (a subgroup view of the full group) and the transition element
// carrying the reference focus to it. The reference focus itself couples with
// the identity transition.
struct FocusCoupling {
  FiniteGroup subgroup;
  int transition;
};

struct CoupledOptions {
  int samples = 32;
  std::uint64_t seed = 0x5eedULL;
  int max_prefix = 4;
};

struct CoupledReport {
  double discrepancy = 0.0;  // max projective spread across factorizations
  double leakage = 0.0;      // max || (I - Q) V(g) Q ||_F, Q onto W0 L^a
  int unreached = 0;

  Json to_json() const;
};

struct CoupledRepresentation {
  UnitaryFamily family;
  CoupledReport report;
};

// Builds the candidate representation coupled across foci and scores it.
//
// A factorization of g is a sequence of letters (c, h) with h in subgroup c
// and plain product g. Each letter acts through its reference-frame avatar
// h0 = t_c^-1 h t_c (an element of the reference subgroup by the conjugation
// identity), transported by V0 = W0 U W0^H:
//     block(c, h) = V0(t_c) U(h0) V0(t_c^-1).
// With the exact intertwiner (W0 = I) and a genuine representation U every
// block equals U(h), so V is well defined with zero discrepancy; a family
// that is a representation only up to sign stays consistent projectively;
// a wrong W0 leaves interleaved factors that different factorizations order
// differently, which the discrepancy score exposes.
//
// For every group element the canonical factorization comes from a BFS over
// letters (NotGenerating when the subgroups fail to reach all of G);
// `samples` random factorizations per element are compared projectively.
// Leakage measures how far the V(g) move the coupled subspace W0 * span(L^a)
// of the reference focus.
CoupledRepresentation build_coupled_representation(const std::vector<ParametricSpace>& spaces,
                                                   const std::vector<FocusCoupling>& couplings,
                                                   const UnitaryFamily& u, const Mat& w0,
                                                   const CoupledOptions& options = {});

// Unitary image of a parametric space: states v_k = W f_k and observable
// T = W S W^* (adjoint in the weighted space). Throws NonUnitaryW.
struct QuantumSpace {
  std::string label;
  WeightedSpace space;
  Mat states;
  Eigen::VectorXd eigenvalues;
  Mat observable;

  int dim() const { return static_cast<int>(states.cols()); }
};

QuantumSpace build_quantum_space(const ParametricSpace& parametric, const Mat& w);

// Catalog of focused questions-with-answers: state vector per (focus label,
// value); level sets are carried when the catalog comes from a point model
// and enable the consistency check that two entries matching the same state
// describe the same level set.
struct CatalogEntry {
  std::string label;
  int value_index = 0;
  double value = 0.0;
  Vec state;
  std::vector<int> level_set;  // empty for abstract models
};

struct StateMatch {
  int entry = 0;
  double deviation = 0.0;
};

struct Interpretation {
  std::vector<StateMatch> matches;
  bool level_sets_consistent = true;
};

// Finds every catalog entry whose rank-one projector matches the given unit
// state within tol (phase-invariant comparison). Throws NoMatch when none do.
Interpretation interpret_state(const Vec& state, const std::vector<CatalogEntry>& catalog,
                               const WeightedSpace& space, double tol = 1e-10);

// Operator of the subparameter mu = h(lambda): same eigenvectors, mapped
// eigenvalues (degenerate when h is not injective on the value list).
Mat operator_for_subparameter(const QuantumSpace& qspace,
                              const std::function<double(double)>& h);

}  // namespace qfs
