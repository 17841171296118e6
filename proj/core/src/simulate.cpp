#include "stabfv/simulate.hpp"

#include <algorithm>
#include <cmath>

#include "stabfv/error.hpp"
#include "stabfv/parallel.hpp"

namespace stabfv {

StateField initial_state(const ProblemConfig& config, const Mesh& mesh, const RandomEnsemble& ensemble,
                         bool close_boundaries) {
  const int p = config.system.p;
  const int m = config.system.m;
  const int M = mesh.cells();
  StateField state(p, M, ensemble.K);
  std::vector<double> u(p);
  for (int k = 0; k <= ensemble.K; ++k) {
    const double xi = ensemble.nodes[k];
    for (int j = 0; j <= M; ++j) {
      config.initial(mesh.node(j), xi, u);
      for (int i = 0; i < p; ++i) {
        if (i < m) {
          state.at(i, j, k) = u[i];
        } else if (j >= 1) {
          state.at(i, j, k) = u[i];
        }
      }
    }
    // Without a closure the negative family's inflow slot holds the data at x = 1.
    for (int i = m; i < p; ++i) state.at(i, M + 1, k) = state.at(i, M, k);
  }
  if (close_boundaries) apply_boundaries(state, config.bc, m);
  return state;
}

CellAverageField initial_averages(const ProblemConfig& config, const Mesh& mesh, const RandomEnsemble& ensemble) {
  const int p = config.system.p;
  CellAverageField avg(p, mesh.cells(), ensemble.K);
  std::vector<double> u(p);
  for (int k = 0; k <= ensemble.K; ++k) {
    for (int j = 0; j < mesh.cells(); ++j) {
      config.initial(mesh.centre(j), ensemble.nodes[k], u);
      for (int i = 0; i < p; ++i) avg.at(i, j, k) = u[i];
    }
  }
  return avg;
}

namespace {

struct Bounds {
  double sup = 0.0;
  double derivative_sup = 0.0;
};

Bounds average_bounds(const CellAverageField& avg, double dx) {
  Bounds b;
  double jump = 0.0;
  for (int i = 0; i < avg.components(); ++i) {
    for (int k = 0; k < avg.nodes(); ++k) {
      const auto r = avg.row(i, k);
      b.sup = std::max(b.sup, std::fabs(r[0]));
      for (std::size_t j = 1; j < r.size(); ++j) {
        b.sup = std::max(b.sup, std::fabs(r[j]));
        jump = std::max(jump, std::fabs(r[j] - r[j - 1]));
      }
    }
  }
  b.derivative_sup = jump / dx;
  return b;
}

}  // namespace

SimulationResult simulate(const ProblemConfig& config, const SimulationOptions& options, const Recorder& recorder) {
  const SystemSpec& spec = config.system;
  spec.check_well_formed();
  config.bc.check(spec.p, spec.m);
  if (!(config.T > 0.0)) throw ValidationError("final time must be positive");
  if (!config.initial) throw ValidationError("problem has no initial data");

  const Mesh mesh(config.cells);
  const RandomEnsemble ensemble = uniform_random_ensemble(config.sigma, config.K);
  const int workers = options.workers > 0 ? options.workers : default_worker_count();

  SimulationResult res;
  res.delta = spec.delta;
  res.lambda = speed_range(spec, spec.delta).max_abs;
  res.grid = cfl_time_step(res.lambda, mesh.dx(), config.cfl, config.T, spec.max_damping());
  res.courant = courant_bounds(spec, mesh, res.grid.dt);
  res.weights =
      admissible_mu(config.bc.kappa, res.courant.Dmin, res.courant.Dmax, config.regime, mesh.dx(), spec.m);
  res.Jmax = speed_gradient_bound(spec, spec.delta);
  res.delta_threshold = delta_threshold(res.weights.mu, res.courant.Dmin, res.Jmax, config.T, mesh.dx(),
                                        res.grid.dt, spec.epsilon);
  if (config.certified_rate) {
    res.report.nu = theoretical_nu(res.weights, res.courant.Dmin, mesh.dx(), res.grid.dt, config.regime);
  }

  const int N = res.grid.steps;
  const double dt = res.grid.dt;
  res.trajectory.reserve(static_cast<std::size_t>(N) + 1);

  auto record = [&](int n, double t, double L, double sup, double dsup) {
    res.trajectory.t.push_back(t);
    res.trajectory.L.push_back(L);
    res.trajectory.sup.push_back(sup);
    res.trajectory.derivative_sup.push_back(dsup);
    res.max_sup = std::max(res.max_sup, sup);
    if (sup > spec.delta * (1.0 + 1e-12)) res.sup_within_delta = false;
    if (recorder) recorder(StepRecord{n, t, L, sup, dsup});
  };

  if (config.scheme == Scheme::Upwind) {
    StateField state = initial_state(config, mesh, ensemble, !options.lagged_closure);
    const auto functional = LyapunovFunctional::nodal(res.weights, ensemble, mesh);
    UpwindOptions uo;
    uo.workers = workers;
    uo.lagged_closure = options.lagged_closure;
    const UpwindSolver solver(spec, config.bc, mesh, dt, uo);

    auto monitor = monitor_bounds(state, spec, 0, dt, res.Jmax);
    res.initial_derivative_sup = monitor.derivative_sup;
    record(0, 0.0, functional(state, workers), monitor.sup, monitor.derivative_sup);
    for (int n = 1; n <= N; ++n) {
      solver.step(state);
      monitor = monitor_bounds(state, spec, n, dt, res.Jmax);
      if (!monitor.derivative_within_bound) res.derivative_within_bound = false;
      record(n, n * dt, functional(state, workers), monitor.sup, monitor.derivative_sup);
    }
  } else {
    CellAverageField avg = initial_averages(config, mesh, ensemble);
    const auto functional = LyapunovFunctional::cell_centred(res.weights, ensemble, mesh);
    CuOptions co;
    co.workers = workers;
    co.feedback = options.cu_feedback;
    CuSolver solver(spec, config.bc, mesh, dt, co);

    std::vector<std::vector<double>> traces(spec.p, std::vector<double>(ensemble.K + 1));
    std::vector<double> u(spec.p);
    for (int k = 0; k <= ensemble.K; ++k) {
      for (int i = 0; i < spec.p; ++i) {
        config.initial(i < spec.m ? 1.0 : 0.0, ensemble.nodes[k], u);
        traces[i][k] = u[i];
      }
    }
    solver.set_outgoing_traces(std::move(traces));

    auto b = average_bounds(avg, mesh.dx());
    res.initial_derivative_sup = b.derivative_sup;
    record(0, 0.0, functional(avg, workers), b.sup, b.derivative_sup);
    for (int n = 1; n <= N; ++n) {
      solver.step(avg);
      b = average_bounds(avg, mesh.dx());
      record(n, n * dt, functional(avg, workers), b.sup, b.derivative_sup);
    }
  }

  const double L0 = res.trajectory.L.front();
  if (L0 > 0.0) {
    res.report.nu_emp = empirical_nu(L0, res.trajectory.L.back(), config.T);
  }
  const double envelope_rate = config.certified_rate ? res.report.nu : res.report.nu_emp;
  res.report.E = std::isfinite(envelope_rate) ? decay_envelope_error(res.trajectory, envelope_rate)
                 : L0 == 0.0                  ? 0.0
                                              : std::numeric_limits<double>::quiet_NaN();
  return res;
}

}  // namespace stabfv
