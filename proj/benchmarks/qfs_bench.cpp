#include <benchmark/benchmark.h>

#include <cmath>
#include <complex>
#include <vector>

#include "qfs/dynamics.hpp"
#include "qfs/focusing.hpp"
#include "qfs/hilbert.hpp"
#include "qfs/inference.hpp"
#include "qfs/measurement.hpp"
#include "qfs/models.hpp"
#include "qfs/scenarios.hpp"

using namespace qfs;

namespace {

const Complex kI(0, 1);

Mat spin_states(double theta, double phi) {
  Mat states(2, 2);
  const Complex phase = std::exp(kI * phi);
  states.col(0) << -std::conj(phase) * std::sin(theta / 2), std::cos(theta / 2);
  states.col(1) << std::cos(theta / 2), phase * std::sin(theta / 2);
  return states;
}

void bm_orbits(benchmark::State& state) {
  const models::CubeModel& cube = models::cube();
  for (auto _ : state) benchmark::DoNotOptimize(orbits(cube.vertex_action));
}
BENCHMARK(bm_orbits);

void bm_maximal_subgroup(benchmark::State& state) {
  const models::CubeModel& cube = models::cube();
  for (auto _ : state)
    benchmark::DoNotOptimize(maximal_permissible_subgroup(cube.sign_z, cube.vertex_action));
}
BENCHMARK(bm_maximal_subgroup);

void bm_invariant_measure(benchmark::State& state) {
  const models::CubeModel& cube = models::cube();
  for (auto _ : state) benchmark::DoNotOptimize(invariant_measure(cube.vertex_action));
}
BENCHMARK(bm_invariant_measure);

void bm_regular_representation(benchmark::State& state) {
  const models::CubeModel& cube = models::cube();
  const Measure measure = invariant_measure(cube.vertex_action);
  for (auto _ : state)
    benchmark::DoNotOptimize(regular_representation(cube.vertex_action, measure));
}
BENCHMARK(bm_regular_representation);

void bm_born_matrix(benchmark::State& state) {
  const int dim = static_cast<int>(state.range(0));
  Rng rng(8);
  const WeightedSpace space = WeightedSpace::standard(dim);
  const Mat a = random_unitary(dim, rng), b = random_unitary(dim, rng);
  for (auto _ : state) benchmark::DoNotOptimize(born_transition_matrix(a, b, space));
}
BENCHMARK(bm_born_matrix)->Arg(8);

void bm_propagator(benchmark::State& state) {
  const int dim = static_cast<int>(state.range(0));
  Rng rng(12);
  Mat a(dim, dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) a(i, j) = Complex(rng.normal(), rng.normal());
  const Hamiltonian h = Hamiltonian::validated(0.5 * (a + a.adjoint()));
  for (auto _ : state) benchmark::DoNotOptimize(propagator(h, 0.7));
}
BENCHMARK(bm_propagator)->Arg(32)->Arg(64);

void bm_translation_generator(benchmark::State& state) {
  const Lattice lattice{64, 0.5};
  for (auto _ : state) benchmark::DoNotOptimize(translation_generator(lattice));
}
BENCHMARK(bm_translation_generator);

void bm_pitman(benchmark::State& state) {
  const int n = 5;
  const std::vector<Rational> eps = {{1, 2}, {1, 5}, {1, 10}, {1, 10}, {1, 10}};
  std::vector<std::vector<Rational>> p(n, std::vector<Rational>(n));
  for (int theta = 0; theta < n; ++theta)
    for (int y = 0; y < n; ++y) p[theta][y] = eps[((y - theta) % n + n) % n];
  const FiniteModel model =
      FiniteModel::validated(models::cyclic_group(n), models::cyclic_translation(n),
                             models::cyclic_translation(n), p);
  const LossFunction loss = LossFunction::squared_cyclic(n);
  for (auto _ : state) benchmark::DoNotOptimize(Estimator::pitman(model, loss));
}
BENCHMARK(bm_pitman);

void bm_coupled_representation(benchmark::State& state) {
  const models::CubeModel& cube = models::cube();
  const UnitaryFamily family = models::cube_spin_family(cube);
  Eigen::VectorXd values(2);
  values << -1.0, 1.0;
  std::vector<ParametricSpace> spaces;
  spaces.push_back(parametric_space_from_states("z", spin_states(0, 0), values));
  spaces.push_back(parametric_space_from_states("x", spin_states(M_PI / 2, 0), values));
  spaces.push_back(
      parametric_space_from_states("y", spin_states(M_PI / 2, M_PI / 2), values));
  std::vector<FocusCoupling> couplings;
  const std::vector<const FocusedParameter*> params = {&cube.sign_z, &cube.sign_x,
                                                       &cube.sign_y};
  for (const auto* param : params) {
    FiniteGroup sub = maximal_permissible_subgroup(*param, cube.vertex_action);
    const int transition =
        param == params.front()
            ? cube.group.identity()
            : *find_transition(*params.front(), *param, cube.vertex_action);
    couplings.push_back(FocusCoupling{std::move(sub), transition});
  }
  const Mat w0 = Mat::Identity(2, 2);
  for (auto _ : state)
    benchmark::DoNotOptimize(build_coupled_representation(spaces, couplings, family, w0));
}
BENCHMARK(bm_coupled_representation);

void bm_cube_scenario(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(scenarios::run_cube_model());
}
BENCHMARK(bm_cube_scenario);

}  // namespace

BENCHMARK_MAIN();
