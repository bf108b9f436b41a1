#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "qfs/linalg.hpp"
#include "qfs/models.hpp"

namespace qfs::scenarios {

struct SingularProjection : Error {
  using Error::Error;
};

// Unit vector in R^3 naming a measurement direction.
struct Direction {
  Eigen::Vector3d axis;
  std::string label;

  static Direction of(double x, double y, double z, std::string label = "");
  // "z", "-x", "0.6,0,0.8" (normalized), or "deg:45" for an angle in the
  // x-z plane.
  static Direction parse(const std::string& text);
};

struct Check {
  std::string name;
  double measured = 0.0;
  double expected = 0.0;
  double tolerance = 0.0;
  bool pass = false;
  std::string note;
};

struct ScenarioReport {
  std::string scenario;
  std::uint64_t seed = 0;
  std::vector<Check> checks;
  double runtime_ms = 0.0;  // serialized only on request, to keep reports byte-reproducible
  Json extra;               // scenario-specific structured results
  std::vector<std::pair<std::string, std::string>> tables;  // (name, csv)

  bool all_pass() const;
  Json to_json(bool include_timing = false) const;
  std::string checks_csv() const;
};

struct ScenarioConfig {
  std::uint64_t seed = 1;
  double tol_linalg = 1e-10;
  double tol_representation = 1e-8;
  int sweep_pairs = 100;
};

// Two-dimensional spin model: eigenstates of a.sigma per direction,
// transition probabilities against the half-angle law, explicit rotation
// transport between foci, and uniqueness of interpretation over the catalog.
ScenarioReport run_spin_half(const std::vector<Direction>& directions,
                             const ScenarioConfig& config = {});

// Exact end-to-end run of the cube vertex model: axioms, orbits, measure,
// maximal subgroups, transitions, conjugation and alignment, indicator
// transport, generation, and isotypic dimensions.
ScenarioReport run_cube_model(const ScenarioConfig& config = {});

// Singlet pair correlations from the tensor-product state: perfect
// anticorrelation at equal settings, E(a,b) = -a.b, and no-signalling
// marginals, swept over seeded random setting pairs.
ScenarioReport run_singlet_epr(const Direction& a, const Direction& b,
                               const ScenarioConfig& config = {});

// Sign-assignment inequality checked exhaustively, the singlet value of the
// four-correlation combination at the given settings, and a deterministic
// numerical maximization over planar settings.
ScenarioReport run_chsh(const Direction& a, const Direction& a2, const Direction& b,
                        const Direction& b2, const ScenarioConfig& config = {});

// Two-station latent variable model: project out the measured direction,
// recover the outer product of the unmeasured one, and report what stays
// unidentified; optionally with additive noise.
ScenarioReport run_latent_epr(const Eigen::VectorXd& t, const Eigen::VectorXd& u,
                              const Eigen::VectorXd& a, const Eigen::VectorXd& b, double noise,
                              const ScenarioConfig& config = {});
ScenarioReport run_latent_epr(double noise, const ScenarioConfig& config = {});  // built-in instance

// Z5 location model: exact agreement of the Bayes estimator under the
// invariant prior with the exhaustive best equivariant estimator.
ScenarioReport run_pitman_demo(const ScenarioConfig& config = {});

// Coupled representation checker on the spin family over the cube group;
// with corrupt_intertwiner the wired-in failure case must be flagged.
ScenarioReport run_coupled_spin(bool corrupt_intertwiner, const ScenarioConfig& config = {});

// Structural verification of an on-disk model, as used by `qfs verify`.
ScenarioReport verify_model(const models::ModelFile& model, const std::string& name,
                            const ScenarioConfig& config = {});

struct ScenarioInfo {
  std::string name;
  std::string summary;
};
std::vector<ScenarioInfo> list_scenarios();

// Dispatch by name with default arguments (as the CLI uses).
ScenarioReport run_by_name(const std::string& name, const ScenarioConfig& config = {});

}  // namespace qfs::scenarios
