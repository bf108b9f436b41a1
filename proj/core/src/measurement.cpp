#include "qfs/measurement.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace qfs {

DensityOperator DensityOperator::validated(Mat m, const WeightedSpace& space, double tol) {
  if (m.rows() != space.dim() || m.cols() != space.dim())
    throw DimensionMismatch("density operator does not match the space");
  const Eigh eig = weighted_eigh(m, space, tol);
  if (eig.values.minCoeff() < -tol)
    throw BadPrior("density operator has a negative eigenvalue " +
                   std::to_string(eig.values.minCoeff()));
  const double tr = WeightedSpace::trace(m).real();
  if (std::abs(tr - 1.0) > tol)
    throw BadPrior("density operator has trace " + std::to_string(tr));
  return DensityOperator{std::move(m)};
}

EffectOperator EffectOperator::validated(Mat m, const WeightedSpace& space, double tol) {
  if (m.rows() != space.dim() || m.cols() != space.dim())
    throw DimensionMismatch("effect operator does not match the space");
  const Eigh eig = weighted_eigh(m, space, tol);
  if (eig.values.minCoeff() < -tol || eig.values.maxCoeff() > 1.0 + tol)
    throw BadLikelihood("effect spectrum [" + std::to_string(eig.values.minCoeff()) + ", " +
                        std::to_string(eig.values.maxCoeff()) + "] leaves [0, 1]");
  return EffectOperator{std::move(m)};
}

LikelihoodTable LikelihoodTable::validated(Eigen::MatrixXd p) {
  if (p.rows() == 0 || p.cols() == 0) throw BadLikelihood("empty likelihood table");
  for (Eigen::Index r = 0; r < p.rows(); ++r) {
    double sum = 0.0;
    for (Eigen::Index c = 0; c < p.cols(); ++c) {
      if (p(r, c) < 0.0)
        throw BadLikelihood("negative probability in row " + std::to_string(r));
      sum += p(r, c);
    }
    if (std::abs(sum - 1.0) > 1e-12)
      throw BadLikelihood("row " + std::to_string(r) + " sums to " + std::to_string(sum));
  }
  return LikelihoodTable{std::move(p)};
}

LikelihoodTable LikelihoodTable::from_json(const Json& j) {
  const Json& rows = j.contains("p") ? j["p"] : j;
  if (!rows.is_array() || rows.empty()) throw BadLikelihood("expected an array of rows");
  Eigen::MatrixXd p(rows.size(), rows[0].size());
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != rows[0].size()) throw BadLikelihood("ragged likelihood rows");
    for (std::size_t c = 0; c < rows[r].size(); ++c)
      p(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = rows[r][c].get<double>();
  }
  return validated(std::move(p));
}

LikelihoodTable LikelihoodTable::from_csv(const std::string& text) {
  std::vector<std::vector<double>> rows;
  std::istringstream lines(text);
  std::string line;
  while (std::getline(lines, line)) {
    if (line.empty()) continue;
    std::vector<double> row;
    std::istringstream cells(line);
    std::string cell;
    while (std::getline(cells, cell, ',')) row.push_back(std::stod(cell));
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw BadLikelihood("empty likelihood csv");
  Eigen::MatrixXd p(rows.size(), rows[0].size());
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != rows[0].size()) throw BadLikelihood("ragged likelihood rows");
    for (std::size_t c = 0; c < rows[r].size(); ++c)
      p(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = rows[r][c];
  }
  return validated(std::move(p));
}

Json LikelihoodTable::to_json() const {
  Json rows = Json::array();
  for (Eigen::Index r = 0; r < p.rows(); ++r) {
    Json row = Json::array();
    for (Eigen::Index c = 0; c < p.cols(); ++c) row.push_back(p(r, c));
    rows.push_back(row);
  }
  Json j;
  j["p"] = rows;
  return j;
}

Eigen::MatrixXd born_transition_matrix(const Mat& states_a, const Mat& states_b,
                                       const WeightedSpace& space) {
  if (states_a.rows() != space.dim() || states_b.rows() != space.dim())
    throw DimensionMismatch("states do not live in the space");
  if (states_a.cols() != space.dim() || states_b.cols() != space.dim())
    throw NotABasis("transition probabilities need full orthonormal bases");
  if (space.orthonormality_error(states_a) > 1e-9 ||
      space.orthonormality_error(states_b) > 1e-9)
    throw NotABasis("states are not orthonormal");
  Eigen::MatrixXd b(states_b.cols(), states_a.cols());
  for (Eigen::Index j = 0; j < states_b.cols(); ++j)
    for (Eigen::Index k = 0; k < states_a.cols(); ++k)
      b(j, k) = std::norm(space.inner(states_b.col(j), states_a.col(k)));
  return b;
}

double expectation(const Vec& state, const Mat& observable, const WeightedSpace& space) {
  const Complex e = space.inner(state, observable * state);
  if (std::abs(e.imag()) > 1e-9)
    throw DimensionMismatch("expectation has imaginary part " + std::to_string(e.imag()));
  return e.real();
}

DensityOperator density_from_prior(const Mat& states, const Eigen::VectorXd& prior,
                                   const WeightedSpace& space) {
  if (states.cols() != prior.size())
    throw DimensionMismatch("one prior weight per state required");
  if (prior.minCoeff() < 0.0) throw BadPrior("negative prior weight");
  if (std::abs(prior.sum() - 1.0) > 1e-12)
    throw BadPrior("prior sums to " + std::to_string(prior.sum()));
  if (space.orthonormality_error(states) > 1e-9) throw NotABasis("states are not orthonormal");
  Mat sigma = Mat::Zero(space.dim(), space.dim());
  for (Eigen::Index k = 0; k < states.cols(); ++k)
    sigma += prior[k] * space.rank_one(states.col(k));
  return DensityOperator::validated(std::move(sigma), space);
}

DensityDecomposition recover_from_density(const DensityOperator& sigma,
                                          const WeightedSpace& space, double gap_tol) {
  const Eigh eig = weighted_eigh(sigma.matrix, space);
  const int n = static_cast<int>(eig.values.size());
  for (int i = 0; i + 1 < n; ++i)
    if (std::abs(eig.values[i + 1] - eig.values[i]) < gap_tol)
      throw AmbiguousDecomposition("eigenvalues " + std::to_string(eig.values[i]) + " and " +
                                   std::to_string(eig.values[i + 1]) +
                                   " are too close to fix the basis");
  DensityDecomposition out;
  out.states = Mat(space.dim(), n);
  out.probabilities = Eigen::VectorXd(n);
  for (int i = 0; i < n; ++i) {
    out.states.col(i) = eig.vectors.col(n - 1 - i);
    out.probabilities[i] = eig.values[n - 1 - i];
  }
  Mat rebuilt = Mat::Zero(space.dim(), space.dim());
  for (int i = 0; i < n; ++i)
    rebuilt += out.probabilities[i] * space.rank_one(out.states.col(i));
  out.residual = (rebuilt - sigma.matrix).cwiseAbs().maxCoeff();
  return out;
}

EffectOperator effect_from_likelihood(const Mat& states, const LikelihoodTable& table,
                                      int outcome, const WeightedSpace& space) {
  if (states.cols() != table.values())
    throw DimensionMismatch("likelihood rows must match the states");
  if (outcome < 0 || outcome >= table.outcomes()) throw BadLikelihood("outcome out of range");
  Mat e = Mat::Zero(space.dim(), space.dim());
  for (Eigen::Index j = 0; j < states.cols(); ++j)
    e += table.p(j, outcome) * space.rank_one(states.col(j));
  return EffectOperator::validated(std::move(e), space);
}

std::vector<EffectOperator> build_povm(const Mat& states, const LikelihoodTable& table,
                                       const WeightedSpace& space) {
  std::vector<EffectOperator> povm;
  povm.reserve(table.outcomes());
  for (int y = 0; y < table.outcomes(); ++y)
    povm.push_back(effect_from_likelihood(states, table, y, space));
  return povm;
}

double povm_completeness_error(const std::vector<EffectOperator>& povm) {
  if (povm.empty()) throw BadLikelihood("empty povm");
  Mat total = Mat::Zero(povm.front().matrix.rows(), povm.front().matrix.cols());
  for (const EffectOperator& e : povm) total += e.matrix;
  return (total - Mat::Identity(total.rows(), total.cols())).cwiseAbs().maxCoeff();
}

Eigen::VectorXd predictive_distribution(const DensityOperator& sigma,
                                        const std::vector<EffectOperator>& povm) {
  Eigen::VectorXd out(static_cast<Eigen::Index>(povm.size()));
  for (std::size_t y = 0; y < povm.size(); ++y)
    out[static_cast<Eigen::Index>(y)] =
        WeightedSpace::trace(sigma.matrix * povm[y].matrix).real();
  return out;
}

DensityOperator collapse(const DensityOperator& sigma, const Mat& states_b,
                         const WeightedSpace& space) {
  if (space.orthonormality_error(states_b) > 1e-9)
    throw NotABasis("measurement basis is not orthonormal");
  Mat out = Mat::Zero(space.dim(), space.dim());
  for (Eigen::Index j = 0; j < states_b.cols(); ++j) {
    const Mat p = space.rank_one(states_b.col(j));
    out += p * sigma.matrix * p;
  }
  return DensityOperator{std::move(out)};
}

DensityOperator collapse(const Vec& state, const Mat& states_b, const WeightedSpace& space) {
  return collapse(DensityOperator{space.rank_one(state)}, states_b, space);
}

std::pair<Vec, double> collapse_selected(const Vec& state, const Mat& states_b, int outcome,
                                         const WeightedSpace& space) {
  if (outcome < 0 || outcome >= states_b.cols()) throw NotABasis("outcome out of range");
  if (space.orthonormality_error(states_b) > 1e-9)
    throw NotABasis("measurement basis is not orthonormal");
  const Vec target = states_b.col(outcome);
  const double probability = std::norm(space.inner(target, state));
  return {target, probability};
}

}  // namespace qfs
