#include "qfs/linalg.hpp"

#include <cmath>
#include <numbers>

namespace qfs {

double Rng::normal() {
  if (have_spare_) {
    have_spare_ = false;
    return spare_;
  }
  double u1 = uniform();
  while (u1 <= 0.0) u1 = uniform();
  const double u2 = uniform();
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double a = 2.0 * std::numbers::pi * u2;
  spare_ = r * std::sin(a);
  have_spare_ = true;
  return r * std::cos(a);
}

WeightedSpace::WeightedSpace(Eigen::VectorXd weights) : weights_(std::move(weights)) {
  if (weights_.size() == 0) throw DimensionMismatch("weighted space needs at least one point");
  for (Eigen::Index i = 0; i < weights_.size(); ++i) {
    if (!(weights_[i] > 0.0))
      throw DimensionMismatch("weight " + std::to_string(i) + " is not strictly positive");
  }
  sqrt_w_ = weights_.cwiseSqrt();
  inv_sqrt_w_ = sqrt_w_.cwiseInverse();
}

WeightedSpace WeightedSpace::standard(int dim) {
  return WeightedSpace(Eigen::VectorXd::Ones(dim));
}

Complex WeightedSpace::inner(const Vec& a, const Vec& b) const {
  if (a.size() != dim() || b.size() != dim()) throw DimensionMismatch("inner: size mismatch");
  return a.dot(weights_.asDiagonal() * b);  // Eigen's dot conjugates the left argument
}

double WeightedSpace::norm(const Vec& a) const { return std::sqrt(std::abs(inner(a, a))); }

Vec WeightedSpace::normalized(const Vec& a) const {
  const double n = norm(a);
  if (n == 0.0) throw DimensionMismatch("cannot normalize the zero vector");
  return a / n;
}

Mat WeightedSpace::adjoint(const Mat& a) const {
  return weights_.cwiseInverse().asDiagonal() * a.adjoint() * weights_.asDiagonal();
}

double WeightedSpace::hermiticity_error(const Mat& a) const {
  return (a - adjoint(a)).cwiseAbs().maxCoeff();
}

double WeightedSpace::unitarity_error(const Mat& u) const {
  const Mat g = adjoint(u) * u;
  return (g - Mat::Identity(dim(), dim())).cwiseAbs().maxCoeff();
}

Mat WeightedSpace::gram(const Mat& basis) const {
  return basis.adjoint() * weights_.asDiagonal() * basis;
}

double WeightedSpace::orthonormality_error(const Mat& basis) const {
  const Mat g = gram(basis);
  return (g - Mat::Identity(basis.cols(), basis.cols())).cwiseAbs().maxCoeff();
}

Mat WeightedSpace::projector(const Mat& orthonormal_columns) const {
  return orthonormal_columns * orthonormal_columns.adjoint() * weights_.asDiagonal();
}

Mat WeightedSpace::rank_one(const Vec& v) const {
  return v * v.adjoint() * weights_.asDiagonal();
}

bool WeightedSpace::same_weights(const WeightedSpace& other, double tol) const {
  if (other.dim() != dim()) return false;
  return (other.weights_ - weights_).cwiseAbs().maxCoeff() <= tol;
}

Eigh weighted_eigh(const Mat& a, const WeightedSpace& space, double hermiticity_tol) {
  if (a.rows() != space.dim() || a.cols() != space.dim())
    throw DimensionMismatch("eigh: operator does not match the space");
  const double herm = space.hermiticity_error(a);
  if (herm > hermiticity_tol)
    throw DimensionMismatch("eigh: operator is not hermitian in this space (error " +
                            std::to_string(herm) + ")");
  // Conjugating by D^(1/2) turns a weighted-hermitian operator into an
  // ordinary hermitian one with the same spectrum.
  const Mat b = space.sqrt_w_.asDiagonal() * a * space.inv_sqrt_w_.asDiagonal();
  Eigen::SelfAdjointEigenSolver<Mat> solver((b + b.adjoint()) / 2.0);
  if (solver.info() != Eigen::Success) throw Error("eigh: eigensolver failed");
  Eigh out;
  out.values = solver.eigenvalues();
  out.vectors = space.inv_sqrt_w_.asDiagonal() * solver.eigenvectors();
  return out;
}

double projective_distance(const Mat& a, const Mat& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw DimensionMismatch("projective_distance: shape mismatch");
  // The minimizing phase is tr(B^H A)/|tr(B^H A)|. Applying it and
  // subtracting directly stays accurate near zero, where the closed-form
  // sqrt(|A|^2+|B|^2-2|tr|) loses half the significant digits.
  const Complex overlap = (b.adjoint() * a).trace();
  const double magnitude = std::abs(overlap);
  if (magnitude == 0.0) return std::hypot(a.norm(), b.norm());
  return (a - (overlap / magnitude) * b).norm();
}

double projector_distance(const Vec& a, const Vec& b, const WeightedSpace& space) {
  return (space.rank_one(a) - space.rank_one(b)).cwiseAbs().maxCoeff();
}

Vec random_state(int dim, Rng& rng) {
  Vec v(dim);
  for (int i = 0; i < dim; ++i) v[i] = Complex(rng.normal(), rng.normal());
  return v / v.norm();
}

Mat random_unitary(int dim, Rng& rng) {
  Mat g(dim, dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) g(i, j) = Complex(rng.normal(), rng.normal());
  const Eigen::HouseholderQR<Mat> qr(g);
  Mat q = qr.householderQ();
  const Mat r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int j = 0; j < dim; ++j) {
    const Complex d = r(j, j);
    q.col(j) *= (d == Complex(0, 0)) ? 1.0 : d / std::abs(d);
  }
  return q;
}

Mat random_hermitian(int dim, Rng& rng) {
  Mat g(dim, dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) g(i, j) = Complex(rng.normal(), rng.normal());
  return (g + g.adjoint()) / 2.0;
}

Json complex_to_json(const Complex& z) { return Json::array({z.real(), z.imag()}); }

Json vec_to_json(const Vec& v) {
  Json out = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(complex_to_json(v[i]));
  return out;
}

Json mat_to_json(const Mat& m) {
  Json out = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(complex_to_json(m(i, j)));
    out.push_back(row);
  }
  return out;
}

static Complex complex_from_json(const Json& j) {
  if (j.is_number()) return Complex(j.get<double>(), 0.0);
  if (!j.is_array() || j.size() != 2) throw Error("expected [re, im]");
  return Complex(j[0].get<double>(), j[1].get<double>());
}

Mat mat_from_json(const Json& j) {
  if (!j.is_array() || j.empty()) throw Error("expected a matrix as nested arrays");
  const int rows = static_cast<int>(j.size());
  const int cols = static_cast<int>(j[0].size());
  Mat m(rows, cols);
  for (int i = 0; i < rows; ++i) {
    if (static_cast<int>(j[i].size()) != cols) throw Error("ragged matrix rows");
    for (int c = 0; c < cols; ++c) m(i, c) = complex_from_json(j[i][c]);
  }
  return m;
}

Vec vec_from_json(const Json& j) {
  if (!j.is_array()) throw Error("expected a vector as an array");
  Vec v(j.size());
  for (std::size_t i = 0; i < j.size(); ++i) v[static_cast<Eigen::Index>(i)] = complex_from_json(j[i]);
  return v;
}

}  // namespace qfs
