#include "qfs/hilbert.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace qfs {

ParametricSpace build_parametric_space(const FocusedParameter& param, const Measure& measure) {
  param.validate();
  if (measure.weights.size() != param.points())
    throw DimensionMismatch(param.label + ": measure does not match the point set");
  WeightedSpace space(measure.weights);
  const int nk = param.value_count();
  Mat basis = Mat::Zero(param.points(), nk);
  for (int k = 0; k < nk; ++k) {
    const std::vector<int> level = param.level_set(k);
    const double mass = measure.mass(level);
    if (mass <= 0.0)
      throw DegenerateMeasure(param.label + ": level set " + std::to_string(k) +
                              " has zero mass");
    for (int p : level) basis(p, k) = 1.0 / std::sqrt(mass);
  }
  Mat multiplication = Mat::Zero(param.points(), param.points());
  for (int p = 0; p < param.points(); ++p)
    if (param.in_domain(p)) multiplication(p, p) = param.values[param.value_index[p]];
  Eigen::VectorXd eigenvalues(nk);
  for (int k = 0; k < nk; ++k) eigenvalues[k] = param.values[k];
  return ParametricSpace{param.label, std::move(space), std::move(basis),
                         std::move(eigenvalues), std::move(multiplication), param};
}

ParametricSpace parametric_space_from_states(std::string label, const Mat& states,
                                             const Eigen::VectorXd& eigenvalues) {
  if (states.cols() != eigenvalues.size())
    throw DimensionMismatch(label + ": one eigenvalue per state required");
  WeightedSpace space = WeightedSpace::standard(static_cast<int>(states.rows()));
  const double ortho = space.orthonormality_error(states);
  if (ortho > 1e-9)
    throw DimensionMismatch(label + ": states are not orthonormal (error " +
                            std::to_string(ortho) + ")");
  Mat multiplication = Mat::Zero(states.rows(), states.rows());
  for (Eigen::Index k = 0; k < states.cols(); ++k)
    multiplication += eigenvalues[k] * space.rank_one(states.col(k));
  return ParametricSpace{std::move(label), std::move(space),        states,
                         eigenvalues,      std::move(multiplication), std::nullopt};
}

double UnitaryFamily::max_unitarity_error() const {
  double err = 0.0;
  for (const Mat& m : matrices) err = std::max(err, space.unitarity_error(m));
  return err;
}

double UnitaryFamily::max_homomorphism_error(bool projective) const {
  double err = 0.0;
  for (int g = 0; g < group.order(); ++g) {
    for (int h = 0; h < group.order(); ++h) {
      const Mat product = matrices[g] * matrices[h];
      const Mat& direct = matrices[group.compose(g, h)];
      const double d = projective ? projective_distance(product, direct)
                                  : (product - direct).cwiseAbs().maxCoeff();
      err = std::max(err, d);
    }
  }
  return err;
}

UnitaryFamily regular_representation(const GroupAction& action, const Measure& measure) {
  const int n = action.points();
  if (measure.weights.size() != n)
    throw DimensionMismatch("measure does not match the point set");
  const FiniteGroup& group = action.group();
  for (int g = 0; g < group.order(); ++g)
    for (int p = 0; p < n; ++p)
      if (std::abs(measure.weights[action.apply(p, g)] - measure.weights[p]) > 1e-12)
        throw NonInvariantMeasure("measure moves under element " + std::to_string(g) +
                                  " at point " + std::to_string(p));
  UnitaryFamily family{group, WeightedSpace(measure.weights), {}};
  family.matrices.reserve(group.order());
  for (int g = 0; g < group.order(); ++g) {
    Mat u = Mat::Zero(n, n);
    for (int p = 0; p < n; ++p) u(p, action.apply(p, g)) = 1.0;
    family.matrices.push_back(std::move(u));
  }
  return family;
}

TransportReport transport_check(const ParametricSpace& space_a, const ParametricSpace& space_b,
                                const UnitaryFamily& u, int g_ab) {
  if (!space_a.space.same_weights(space_b.space, 1e-12) ||
      !space_a.space.same_weights(u.space, 1e-12))
    throw DimensionMismatch("transport: the foci must share one function space");
  if (space_a.dim() != space_b.dim())
    throw DimensionMismatch("transport: foci have different value counts");
  TransportReport report;
  report.alignment.assign(space_a.dim(), -1);
  for (int k = 0; k < space_a.dim(); ++k) {
    for (int j = 0; j < space_b.dim(); ++j) {
      if (space_a.eigenvalues[k] == space_b.eigenvalues[j]) {
        report.alignment[k] = j;
        break;
      }
    }
    if (report.alignment[k] < 0)
      throw NoMatch(space_a.label + " value " + std::to_string(space_a.eigenvalues[k]) +
                    " has no partner in " + space_b.label);
  }
  const Mat& transported = u.at(g_ab);
  for (int k = 0; k < space_a.dim(); ++k) {
    const Vec image = transported * space_a.basis.col(k);
    const double dev =
        (image - space_b.basis.col(report.alignment[k])).cwiseAbs().maxCoeff();
    report.max_deviation = std::max(report.max_deviation, dev);
  }
  return report;
}

IsotypicDecomposition isotypic_projectors(const UnitaryFamily& u, const Mat& characters,
                                          double tol) {
  const int n = u.group.order();
  const int rows = static_cast<int>(characters.rows());
  if (static_cast<int>(characters.cols()) != n)
    throw BadCharacterTable("character table must have one column per element");
  // First orthogonality relation and the dimension sum rule pin down a full
  // list of irreducible characters.
  for (int i = 0; i < rows; ++i) {
    for (int j = 0; j < rows; ++j) {
      Complex inner = 0.0;
      for (int g = 0; g < n; ++g) inner += characters(i, g) * std::conj(characters(j, g));
      inner /= static_cast<double>(n);
      const Complex expected = i == j ? 1.0 : 0.0;
      if (std::abs(inner - expected) > tol)
        throw BadCharacterTable("rows " + std::to_string(i) + ", " + std::to_string(j) +
                                " violate orthonormality");
    }
  }
  double dim_sq = 0.0;
  for (int i = 0; i < rows; ++i) {
    const Complex d = characters(i, u.group.identity());
    if (std::abs(d.imag()) > tol || d.real() < 1.0 - tol)
      throw BadCharacterTable("row " + std::to_string(i) + " has a bad dimension");
    dim_sq += d.real() * d.real();
  }
  if (std::abs(dim_sq - n) > tol * n)
    throw BadCharacterTable("squared dimensions sum to " + std::to_string(dim_sq) +
                            ", expected the group order");

  const int dim = u.space.dim();
  IsotypicDecomposition out;
  Mat total = Mat::Zero(dim, dim);
  for (int i = 0; i < rows; ++i) {
    const double d = characters(i, u.group.identity()).real();
    Mat p = Mat::Zero(dim, dim);
    for (int g = 0; g < n; ++g) p += std::conj(characters(i, g)) * u.at(g);
    p *= d / static_cast<double>(n);
    out.idempotency_error =
        std::max(out.idempotency_error, (p * p - p).cwiseAbs().maxCoeff());
    out.dimensions.push_back(
        static_cast<int>(std::lround(WeightedSpace::trace(p).real())));
    total += p;
    out.projectors.push_back(std::move(p));
  }
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < rows; ++j)
      if (i != j)
        out.orthogonality_error = std::max(
            out.orthogonality_error,
            (out.projectors[i] * out.projectors[j]).cwiseAbs().maxCoeff());
  out.completeness_error = (total - Mat::Identity(dim, dim)).cwiseAbs().maxCoeff();
  return out;
}

Json CoupledReport::to_json() const {
  Json j;
  j["discrepancy"] = discrepancy;
  j["leakage"] = leakage;
  j["unreached"] = unreached;
  return j;
}

namespace {

struct Letter {
  int focus;
  int element;  // full-group id
  int avatar;   // t^-1 h t, full-group id, member of the reference subgroup
};

}  // namespace

CoupledRepresentation build_coupled_representation(const std::vector<ParametricSpace>& spaces,
                                                   const std::vector<FocusCoupling>& couplings,
                                                   const UnitaryFamily& u, const Mat& w0,
                                                   const CoupledOptions& options) {
  if (spaces.empty() || spaces.size() != couplings.size())
    throw DimensionMismatch("one coupling per focus space is required");
  const FiniteGroup& group = u.group;
  const int n = group.order();
  for (const ParametricSpace& s : spaces)
    if (!s.space.same_weights(u.space, 1e-12))
      throw DimensionMismatch(s.label + ": focus space does not match the representation");
  if (couplings.front().transition != group.identity())
    throw InvalidTransition("the first focus is the reference and must carry the identity");
  const double w0_err = u.space.unitarity_error(w0);
  if (w0_err > 1e-8)
    throw NonUnitaryW("intertwiner is not unitary (error " + std::to_string(w0_err) + ")");

  const std::vector<int> reference_elements = couplings.front().subgroup.element_set();
  const std::set<int> reference_members(reference_elements.begin(), reference_elements.end());

  // V0 transports the base representation through the intertwiner.
  const Mat w0_adj = u.space.adjoint(w0);
  const auto v0 = [&](int g) { return Mat(w0 * u.at(g) * w0_adj); };

  std::vector<Letter> letters;
  for (std::size_t c = 0; c < couplings.size(); ++c) {
    const FocusCoupling& coupling = couplings[c];
    const int t = coupling.transition;
    const int t_inv = group.inverse(t);
    for (int s = 0; s < coupling.subgroup.order(); ++s) {
      const int h = coupling.subgroup.parent_id(s);
      const int avatar = group.compose(group.compose(t_inv, h), t);
      if (!reference_members.count(avatar))
        throw InvalidTransition("focus " + std::to_string(c) + " element " + std::to_string(h) +
                                " does not conjugate into the reference subgroup");
      letters.push_back(Letter{static_cast<int>(c), h, avatar});
    }
  }

  const int dim = u.space.dim();
  std::vector<Mat> blocks;
  blocks.reserve(letters.size());
  for (const Letter& letter : letters) {
    const int t = couplings[letter.focus].transition;
    blocks.push_back(v0(t) * u.at(letter.avatar) * v0(group.inverse(t)));
  }

  // Canonical factorizations by breadth-first search over right products.
  std::vector<std::vector<int>> canonical(n);
  std::vector<bool> reached(n, false);
  reached[group.identity()] = true;
  std::vector<int> frontier{group.identity()};
  while (!frontier.empty()) {
    std::vector<int> next;
    for (int g : frontier) {
      for (std::size_t li = 0; li < letters.size(); ++li) {
        const int image = group.compose(g, letters[li].element);
        if (!reached[image]) {
          reached[image] = true;
          canonical[image] = canonical[g];
          canonical[image].push_back(static_cast<int>(li));
          next.push_back(image);
        }
      }
    }
    frontier = std::move(next);
  }
  const int unreached =
      static_cast<int>(std::count(reached.begin(), reached.end(), false));
  if (unreached > 0)
    throw NotGenerating(std::to_string(unreached) +
                        " group elements cannot be written in the coupled letters");

  const auto product_of = [&](const std::vector<int>& word) {
    Mat v = Mat::Identity(dim, dim);
    for (int li : word) v = v * blocks[li];
    return v;
  };

  std::vector<Mat> v(n);
  for (int g = 0; g < n; ++g) v[g] = product_of(canonical[g]);

  // Alternative factorizations: a random letter prefix, closed up by the
  // canonical word of what remains.
  Rng rng(options.seed);
  double discrepancy = 0.0;
  for (int g = 0; g < n; ++g) {
    for (int s = 0; s < options.samples; ++s) {
      const int len = 1 + rng.index(options.max_prefix);
      std::vector<int> word;
      int prefix = group.identity();
      for (int i = 0; i < len; ++i) {
        const int li = rng.index(static_cast<int>(letters.size()));
        word.push_back(li);
        prefix = group.compose(prefix, letters[li].element);
      }
      const int remainder = group.compose(group.inverse(prefix), g);
      word.insert(word.end(), canonical[remainder].begin(), canonical[remainder].end());
      discrepancy = std::max(discrepancy, projective_distance(product_of(word), v[g]));
    }
  }

  // How far the candidate moves the embedded reference subspace.
  const Mat embedded = w0 * spaces.front().basis;
  const Mat q = u.space.projector(embedded);
  const Mat complement = Mat::Identity(dim, dim) - q;
  double leakage = 0.0;
  for (int g = 0; g < n; ++g)
    leakage = std::max(leakage, (complement * v[g] * q).norm());

  CoupledRepresentation out{UnitaryFamily{group, u.space, std::move(v)},
                            CoupledReport{discrepancy, leakage, 0}};
  return out;
}

QuantumSpace build_quantum_space(const ParametricSpace& parametric, const Mat& w) {
  const double err = parametric.space.unitarity_error(w);
  if (err > 1e-8)
    throw NonUnitaryW(parametric.label + ": W is not unitary (error " + std::to_string(err) +
                      ")");
  QuantumSpace out{parametric.label, parametric.space, w * parametric.basis,
                   parametric.eigenvalues,
                   w * parametric.multiplication * parametric.space.adjoint(w)};
  return out;
}

Interpretation interpret_state(const Vec& state, const std::vector<CatalogEntry>& catalog,
                               const WeightedSpace& space, double tol) {
  Interpretation out;
  for (std::size_t i = 0; i < catalog.size(); ++i) {
    const double dev = projector_distance(state, catalog[i].state, space);
    if (dev <= tol) out.matches.push_back(StateMatch{static_cast<int>(i), dev});
  }
  if (out.matches.empty()) throw NoMatch("state matches no catalog entry");
  for (std::size_t i = 0; i < out.matches.size(); ++i) {
    for (std::size_t j = i + 1; j < out.matches.size(); ++j) {
      const CatalogEntry& a = catalog[out.matches[i].entry];
      const CatalogEntry& b = catalog[out.matches[j].entry];
      if (!a.level_set.empty() && !b.level_set.empty() && a.level_set != b.level_set)
        out.level_sets_consistent = false;
    }
  }
  return out;
}

Mat operator_for_subparameter(const QuantumSpace& qspace,
                              const std::function<double(double)>& h) {
  Mat out = Mat::Zero(qspace.space.dim(), qspace.space.dim());
  for (int k = 0; k < qspace.dim(); ++k)
    out += h(qspace.eigenvalues[k]) * qspace.space.rank_one(qspace.states.col(k));
  return out;
}

}  // namespace qfs
