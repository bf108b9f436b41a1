#pragma once

#include <string>

#include "qfs/linalg.hpp"

namespace qfs {

struct BadHamiltonian : Error {
  using Error::Error;
};

// Hermitian generator of time evolution; hbar is configurable and defaults
// to 1.
struct Hamiltonian {
  Mat matrix;
  double hbar = 1.0;

  static Hamiltonian validated(Mat m, double hbar = 1.0, double tol = 1e-12);
  static Hamiltonian from_json(const Json& j);
  Json to_json() const;
};

// exp(-i H t / hbar) v, computed by spectral decomposition. Exactly unitary
// up to rounding; preserves the spectrum of conjugated observables.
Vec evolve_state(const Vec& state, const Hamiltonian& h, double t);

// Propagator itself, for callers that reuse it.
Mat propagator(const Hamiltonian& h, double t);

// T(t) = exp(-i H t / hbar) T exp(+i H t / hbar). If T v = a v then
// T(t) (U v) = a (U v): eigenvalues are frozen, eigenvectors ride along.
Mat heisenberg_operator(const Mat& observable, const Hamiltonian& h, double t);

// Periodic one-dimensional lattice of `sites` points with physical spacing.
struct Lattice {
  int sites = 0;
  double spacing = 1.0;

  double length() const { return sites * spacing; }
  double coordinate(int j) const { return j * spacing; }
};

// Discrete translation structure on the lattice: the cyclic shift, the
// spectral derivative D (diagonal in the Fourier basis with symbol i k), and
// the momentum operator (hbar / i) D. exp(spacing * D) reproduces the shift
// on every Fourier mode.
struct TranslationOperators {
  Mat shift;
  Mat derivative;
  Mat momentum;
};

TranslationOperators translation_generator(const Lattice& lattice, double hbar = 1.0);

// CSV trace of an evolution: t, norm, and per-component re/im columns.
std::string evolution_trace_csv(const Vec& state, const Hamiltonian& h, double t_max, int steps);

}  // namespace qfs
