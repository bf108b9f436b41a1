#pragma once

#include <Eigen/Dense>
#include <complex>
#include <nlohmann/json.hpp>
#include <vector>

#include "qfs/common.hpp"

namespace qfs {

using Json = nlohmann::ordered_json;
using Complex = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;

struct DimensionMismatch : Error {
  using Error::Error;
};
struct NonInvariantMeasure : Error {
  using Error::Error;
};

class WeightedSpace;

// Spectral decomposition of an operator that is hermitian with respect to the
// weighted inner product. Columns of `vectors` are orthonormal in the space,
// eigenvalues ascend.
struct Eigh {
  Eigen::VectorXd values;
  Mat vectors;
};

Eigh weighted_eigh(const Mat& a, const WeightedSpace& space, double hermiticity_tol = 1e-9);

// Function space over a finite point set with inner product
//   <f, g> = sum_p w(p) * conj(f(p)) * g(p).
// A unit weight vector recovers the ordinary Hilbert space; a probability
// measure on the point set gives the weighted space the rest of the library
// builds on. Operators are plain matrices in the point basis; hermiticity and
// unitarity are always meant with respect to this inner product.
class WeightedSpace {
 public:
  explicit WeightedSpace(Eigen::VectorXd weights);

  static WeightedSpace standard(int dim);  // all weights 1

  int dim() const { return static_cast<int>(weights_.size()); }
  const Eigen::VectorXd& weights() const { return weights_; }

  Complex inner(const Vec& a, const Vec& b) const;
  double norm(const Vec& a) const;
  Vec normalized(const Vec& a) const;

  // Adjoint with respect to the weighted inner product: D^-1 A^H D.
  Mat adjoint(const Mat& a) const;
  double hermiticity_error(const Mat& a) const;
  double unitarity_error(const Mat& u) const;

  // Gram matrix of the columns of `basis`.
  Mat gram(const Mat& basis) const;
  double orthonormality_error(const Mat& basis) const;

  // Orthogonal projector onto the span of orthonormal columns: C C^H D.
  Mat projector(const Mat& orthonormal_columns) const;
  // Rank-one projector |v><v| for a unit vector.
  Mat rank_one(const Vec& v) const;

  // Trace of an operator written in the point basis (equals the sum of
  // weighted diagonal expectations over any orthonormal basis).
  static Complex trace(const Mat& a) { return a.trace(); }

  bool same_weights(const WeightedSpace& other, double tol = 0.0) const;

 private:
  Eigen::VectorXd weights_;
  Eigen::VectorXd sqrt_w_;
  Eigen::VectorXd inv_sqrt_w_;
  friend Eigh weighted_eigh(const Mat&, const WeightedSpace&, double);
};

// min over phases of ||A - e^{i t} B||_F; zero iff A and B agree up to a
// global phase. Sound comparison for states and representation operators
// that are only defined projectively.
double projective_distance(const Mat& a, const Mat& b);

// ||P_a - P_b||_inf for the rank-one projectors of two unit vectors.
double projector_distance(const Vec& a, const Vec& b, const WeightedSpace& space);

Vec random_state(int dim, Rng& rng);
Mat random_unitary(int dim, Rng& rng);   // Haar-like via Ginibre QR, deterministic
Mat random_hermitian(int dim, Rng& rng);

// JSON encoding of complex data: a complex number is [re, im], matrices are
// nested row-major arrays.
Json complex_to_json(const Complex& z);
Json vec_to_json(const Vec& v);
Json mat_to_json(const Mat& m);
Mat mat_from_json(const Json& j);
Vec vec_from_json(const Json& j);

}  // namespace qfs
