#include "qfs/dynamics.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace qfs {

Hamiltonian Hamiltonian::validated(Mat m, double hbar, double tol) {
  if (m.rows() != m.cols() || m.rows() == 0) throw BadHamiltonian("hamiltonian must be square");
  if (!(hbar > 0.0)) throw BadHamiltonian("hbar must be positive");
  const double herm = (m - m.adjoint()).cwiseAbs().maxCoeff();
  if (herm > tol)
    throw BadHamiltonian("hamiltonian is not hermitian (error " + std::to_string(herm) + ")");
  return Hamiltonian{std::move(m), hbar};
}

Hamiltonian Hamiltonian::from_json(const Json& j) {
  Mat m = mat_from_json(j.at("matrix"));
  const double hbar = j.contains("hbar") ? j["hbar"].get<double>() : 1.0;
  return validated(std::move(m), hbar);
}

Json Hamiltonian::to_json() const {
  Json j;
  j["matrix"] = mat_to_json(matrix);
  j["hbar"] = hbar;
  return j;
}

Mat propagator(const Hamiltonian& h, double t) {
  Eigen::SelfAdjointEigenSolver<Mat> solver(h.matrix);
  if (solver.info() != Eigen::Success) throw BadHamiltonian("eigensolver failed");
  const Eigen::VectorXd& ev = solver.eigenvalues();
  Vec phases(ev.size());
  for (Eigen::Index k = 0; k < ev.size(); ++k)
    phases[k] = std::polar(1.0, -ev[k] * t / h.hbar);
  return solver.eigenvectors() * phases.asDiagonal() * solver.eigenvectors().adjoint();
}

Vec evolve_state(const Vec& state, const Hamiltonian& h, double t) {
  if (state.size() != h.matrix.rows())
    throw DimensionMismatch("state does not match the hamiltonian");
  return propagator(h, t) * state;
}

Mat heisenberg_operator(const Mat& observable, const Hamiltonian& h, double t) {
  if (observable.rows() != h.matrix.rows() || observable.cols() != h.matrix.cols())
    throw DimensionMismatch("observable does not match the hamiltonian");
  const Mat u = propagator(h, t);
  return u * observable * u.adjoint();
}

TranslationOperators translation_generator(const Lattice& lattice, double hbar) {
  const int n = lattice.sites;
  if (n <= 0) throw BadHamiltonian("lattice needs at least one site");
  if (!(lattice.spacing > 0.0)) throw BadHamiltonian("lattice spacing must be positive");

  TranslationOperators out;
  out.shift = Mat::Zero(n, n);
  // (S f)(j) = f(j + 1 mod n): translation of the function, matching the
  // right regular representation convention.
  for (int j = 0; j < n; ++j) out.shift(j, (j + 1) % n) = 1.0;

  // Fourier modes e_m(j) = exp(i k_m x_j) / sqrt(n) with the symmetric mode
  // numbering; D is diagonal there with symbol i k_m, so exp(spacing D)
  // reproduces the shift exactly on every mode.
  Mat modes(n, n);
  Eigen::VectorXd wavenumbers(n);
  for (int m = 0; m < n; ++m) {
    const int folded = m <= n / 2 ? m : m - n;
    wavenumbers[m] = 2.0 * std::numbers::pi * folded / lattice.length();
    for (int j = 0; j < n; ++j)
      modes(j, m) = std::polar(1.0 / std::sqrt(static_cast<double>(n)),
                               wavenumbers[m] * lattice.coordinate(j));
  }
  Vec symbol(n);
  for (int m = 0; m < n; ++m) symbol[m] = Complex(0.0, wavenumbers[m]);
  out.derivative = modes * symbol.asDiagonal() * modes.adjoint();
  out.momentum = (hbar / Complex(0.0, 1.0)) * out.derivative;
  return out;
}

std::string evolution_trace_csv(const Vec& state, const Hamiltonian& h, double t_max,
                                int steps) {
  if (steps < 1) throw BadHamiltonian("steps must be positive");
  std::ostringstream csv;
  csv.precision(17);
  csv << "t,norm";
  for (Eigen::Index i = 0; i < state.size(); ++i)
    csv << ",re" << i << ",im" << i;
  csv << "\n";
  for (int s = 0; s <= steps; ++s) {
    const double t = t_max * s / steps;
    const Vec v = evolve_state(state, h, t);
    csv << t << "," << v.norm();
    for (Eigen::Index i = 0; i < v.size(); ++i)
      csv << "," << v[i].real() << "," << v[i].imag();
    csv << "\n";
  }
  return csv.str();
}

}  // namespace qfs
