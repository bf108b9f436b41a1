#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qfs/linalg.hpp"

namespace qfs {

struct NotABasis : Error {
  using Error::Error;
};
struct BadPrior : Error {
  using Error::Error;
};
struct BadLikelihood : Error {
  using Error::Error;
};
struct AmbiguousDecomposition : Error {
  using Error::Error;
};

// Positive, trace-one operator. Validated on construction.
struct DensityOperator {
  Mat matrix;
  static DensityOperator validated(Mat m, const WeightedSpace& space, double tol = 1e-10);
};

// Operator with spectrum inside [0, 1]. Validated on construction.
struct EffectOperator {
  Mat matrix;
  static EffectOperator validated(Mat m, const WeightedSpace& space, double tol = 1e-10);
};

// p(y | value j): rows indexed by the value of the focused question, columns
// by outcome. Rows sum to one within 1e-12.
struct LikelihoodTable {
  Eigen::MatrixXd p;

  int values() const { return static_cast<int>(p.rows()); }
  int outcomes() const { return static_cast<int>(p.cols()); }
  static LikelihoodTable validated(Eigen::MatrixXd p);
  static LikelihoodTable from_json(const Json& j);
  static LikelihoodTable from_csv(const std::string& text);
  Json to_json() const;
};

// b[j][k] = |<v_j^b, v_k^a>|^2. Both arguments must be orthonormal bases of
// the full space (NotABasis otherwise); the result is doubly stochastic.
Eigen::MatrixXd born_transition_matrix(const Mat& states_a, const Mat& states_b,
                                       const WeightedSpace& space);

// <v, T v> for a unit state; the imaginary part (always ~0 for hermitian T)
// is discarded after being checked.
double expectation(const Vec& state, const Mat& observable, const WeightedSpace& space);

// sigma = sum_k prior_k |v_k><v_k| for a probability vector over basis states.
DensityOperator density_from_prior(const Mat& states, const Eigen::VectorXd& prior,
                                   const WeightedSpace& space);

struct DensityDecomposition {
  Mat states;                    // eigenvector columns, descending eigenvalue
  Eigen::VectorXd probabilities; // matching eigenvalues
  double residual = 0.0;         // reconstruction error
};

// Spectral recovery of the focused experiment behind a density operator.
// Throws AmbiguousDecomposition when two eigenvalues are closer than gap_tol,
// since the eigenbasis (and hence the experiment) is then not unique.
DensityDecomposition recover_from_density(const DensityOperator& sigma,
                                          const WeightedSpace& space, double gap_tol = 1e-8);

// E(y) = sum_j p(y | j) |v_j><v_j|.
EffectOperator effect_from_likelihood(const Mat& states, const LikelihoodTable& table, int outcome,
                                      const WeightedSpace& space);

// All effects of the table; they sum to the identity because rows of the
// likelihood sum to one.
std::vector<EffectOperator> build_povm(const Mat& states, const LikelihoodTable& table,
                                       const WeightedSpace& space);

double povm_completeness_error(const std::vector<EffectOperator>& povm);

// P(y) = tr(sigma E(y)).
Eigen::VectorXd predictive_distribution(const DensityOperator& sigma,
                                        const std::vector<EffectOperator>& povm);

// State change under a perfect measurement in the orthonormal basis
// `states_b`. Without selection the result is the dephased mixture
// sum_j P_j sigma P_j; with a selected outcome j the state jumps to v_j^b and
// the outcome probability is returned alongside.
DensityOperator collapse(const DensityOperator& sigma, const Mat& states_b,
                         const WeightedSpace& space);
DensityOperator collapse(const Vec& state, const Mat& states_b, const WeightedSpace& space);
std::pair<Vec, double> collapse_selected(const Vec& state, const Mat& states_b, int outcome,
                                         const WeightedSpace& space);

}  // namespace qfs
