#include "stabfv/upwind.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "stabfv/error.hpp"
#include "stabfv/parallel.hpp"

namespace stabfv {

TimeGrid cfl_time_step(double lambda, double dx, double cfl, double T, double max_damping) {
  if (!(lambda > 0.0)) throw DegenerateSystemError("largest characteristic speed is zero");
  if (!(cfl > 0.0 && cfl <= 1.0)) throw ValidationError("CFL number must lie in (0, 1]");
  if (!(dx > 0.0)) throw ValidationError("mesh spacing must be positive");

  double dt = cfl * dx / lambda;
  const double rate = lambda / dx + max_damping;
  if (dt * rate > 1.0) dt = 1.0 / rate;

  TimeGrid grid{dt, 0, T};
  if (T > 0.0) {
    const double ratio = T / dt;
    grid.steps = static_cast<int>(std::ceil(ratio * (1.0 - 1e-12)));
    if (grid.steps < 1) grid.steps = 1;
    grid.dt = T / grid.steps;
  }
  return grid;
}

TimeGrid cfl_time_step(const SystemSpec& spec, const Mesh& mesh, double cfl, double T) {
  const auto range = speed_range(spec, spec.delta);
  return cfl_time_step(range.max_abs, mesh.dx(), cfl, T, spec.max_damping());
}

CourantBounds courant_bounds(const SystemSpec& spec, const Mesh& mesh, double dt) {
  const auto range = speed_range(spec, spec.delta);
  const double r = dt / mesh.dx();
  CourantBounds b;
  b.Dmin.resize(spec.p);
  b.Dmax.resize(spec.p);
  for (int i = 0; i < spec.p; ++i) {
    if (i < spec.m) {
      b.Dmin[i] = r * range.min[i];
      b.Dmax[i] = r * range.max[i];
    } else {
      b.Dmin[i] = -r * range.max[i];
      b.Dmax[i] = -r * range.min[i];
    }
  }
  return b;
}

void apply_boundaries(StateField& state, const BoundaryCoupling& bc, int m, int k) {
  const int M = state.cells();
  if (bc.topology == Topology::CrossTwoByTwo) {
    state.at(0, 0, k) = bc.kappa[1] * state.at(1, 1, k);
    state.at(1, M + 1, k) = bc.kappa[0] * state.at(0, M, k);
    return;
  }
  for (int i = 0; i < state.components(); ++i) {
    if (i < m) {
      state.at(i, 0, k) = bc.kappa[i] * state.at(i, M, k);
    } else {
      state.at(i, M + 1, k) = bc.kappa[i] * state.at(i, 1, k);
    }
  }
}

void apply_boundaries(StateField& state, const BoundaryCoupling& bc, int m) {
  bc.check(state.components(), m);
  for (int k = 0; k < state.nodes(); ++k) apply_boundaries(state, bc, m, k);
}

UpwindSolver::UpwindSolver(SystemSpec spec, BoundaryCoupling bc, Mesh mesh, double dt, UpwindOptions options)
    : spec_(std::move(spec)),
      bc_(std::move(bc)),
      mesh_(mesh),
      dt_(dt),
      options_(options),
      workers_(options.workers > 0 ? options.workers : default_worker_count()) {
  spec_.check_well_formed();
  bc_.check(spec_.p, spec_.m);
  if (!(dt > 0.0)) throw ValidationError("time step must be positive");
}

void UpwindSolver::step_node(StateField& state, int k, std::vector<double>& scratch) const {
  const int p = spec_.p;
  const int m = spec_.m;
  const int M = mesh_.cells();
  const int W = M + 2;
  const double r = dt_ / mesh_.dx();

  // Outflow values at the old level, used only by the lagged closure.
  double out_pos[2] = {0.0, 0.0};
  std::vector<double> lagged;
  if (options_.lagged_closure) {
    lagged.resize(p);
    for (int i = 0; i < p; ++i) lagged[i] = i < m ? state.at(i, M, k) : state.at(i, 1, k);
    if (bc_.topology == Topology::CrossTwoByTwo) {
      out_pos[0] = state.at(1, 1, k);
      out_pos[1] = state.at(0, M, k);
    }
  }

  if (spec_.is_linear()) {
    for (int i = 0; i < p; ++i) {
      double* u = state.row(i, k).data();
      const double D = r * std::fabs(spec_.constant_speeds[i]);
      const double keep = 1.0 - D - dt_ * spec_.damping(i);
      if (i < m) {
        for (int j = M; j >= 1; --j) u[j] = u[j] * keep + D * u[j - 1];
      } else {
        for (int j = 1; j <= M; ++j) u[j] = u[j] * keep + D * u[j + 1];
      }
    }
  } else {
    // Speeds depend on the whole state vector, so work from a copy of the
    // old level. Column j of `lam` holds Lambda(u_j) for j = 1..M+1; at
    // j = M+1 the positive components have no value and reuse u_M.
    scratch.resize(static_cast<std::size_t>(p) * W * 2);
    double* old = scratch.data();
    double* lam = scratch.data() + static_cast<std::size_t>(p) * W;
    for (int i = 0; i < p; ++i) {
      const auto row = state.row(i, k);
      std::copy(row.begin(), row.end(), old + static_cast<std::size_t>(i) * W);
    }
    std::vector<double> u(p), l(p);
    for (int j = 1; j <= M + 1; ++j) {
      for (int i = 0; i < p; ++i) {
        const int jj = (j == M + 1 && i < m) ? M : j;
        u[i] = old[static_cast<std::size_t>(i) * W + jj];
      }
      spec_.speeds(u, l);
      for (int i = 0; i < p; ++i) lam[static_cast<std::size_t>(i) * W + j] = l[i];
    }
    for (int i = 0; i < p; ++i) {
      const double* o = old + static_cast<std::size_t>(i) * W;
      const double* li = lam + static_cast<std::size_t>(i) * W;
      double* un = state.row(i, k).data();
      const double damp = dt_ * spec_.damping(i);
      if (i < m) {
        for (int j = 1; j <= M; ++j) {
          const double D = r * li[j];
          un[j] = o[j] * (1.0 - D - damp) + D * o[j - 1];
        }
      } else {
        for (int j = 1; j <= M; ++j) {
          const double D = -r * li[j + 1];
          un[j] = o[j] * (1.0 - D - damp) + D * o[j + 1];
        }
      }
    }
  }

  if (options_.lagged_closure) {
    if (bc_.topology == Topology::CrossTwoByTwo) {
      state.at(0, 0, k) = bc_.kappa[1] * out_pos[0];
      state.at(1, M + 1, k) = bc_.kappa[0] * out_pos[1];
    } else {
      for (int i = 0; i < p; ++i) {
        if (i < m) {
          state.at(i, 0, k) = bc_.kappa[i] * lagged[i];
        } else {
          state.at(i, M + 1, k) = bc_.kappa[i] * lagged[i];
        }
      }
    }
  } else {
    apply_boundaries(state, bc_, m, k);
  }

  for (int i = 0; i < p; ++i) {
    const auto row = state.row(i, k);
    const int lo = i < m ? 0 : 1;
    const int hi = i < m ? M : M + 1;
    for (int j = lo; j <= hi; ++j) {
      if (!std::isfinite(row[j])) throw BlowUpError(i, j, k, state.time + dt_);
    }
  }
}

void UpwindSolver::step(StateField& state) const {
  if (state.components() != spec_.p || state.cells() != mesh_.cells()) {
    throw ValidationError("state dimensions do not match the solver");
  }
  parallel_for(state.nodes(), workers_, [&](int k) {
    thread_local std::vector<double> scratch;
    step_node(state, k, scratch);
  });
  state.time += dt_;
}

void upwind_step(StateField& state, const SystemSpec& spec, const BoundaryCoupling& bc, const Mesh& mesh,
                 double dt) {
  UpwindOptions options;
  options.workers = 1;
  UpwindSolver(spec, bc, mesh, dt, options).step(state);
}

MonitorReport monitor_bounds(const StateField& state, const SystemSpec& spec, int n, double dt,
                             const std::vector<double>& Jmax) {
  MonitorReport rep;
  const int M = state.cells();
  const double inv_dx = static_cast<double>(M);
  double jmax_all = 0.0;
  for (int i = 0; i < spec.p; ++i) {
    const double J = i < static_cast<int>(Jmax.size()) ? Jmax[i] : 0.0;
    jmax_all = std::max(jmax_all, J);
    const double bound = spec.delta * std::exp(n * dt * J);
    double dsup = 0.0;
    for (int k = 0; k < state.nodes(); ++k) {
      const auto u = state.row(i, k);
      const int lo = i < spec.m ? 0 : 1;
      const int hi = i < spec.m ? M : M + 1;
      for (int j = lo; j <= hi; ++j) rep.sup = std::max(rep.sup, std::fabs(u[j]));
      for (int j = lo + 1; j <= hi; ++j) dsup = std::max(dsup, std::fabs(u[j] - u[j - 1]) * inv_dx);
    }
    rep.derivative_sup = std::max(rep.derivative_sup, dsup);
    if (dsup > bound + 1e-10) rep.derivative_within_bound = false;
  }
  rep.derivative_bound = spec.delta * std::exp(n * dt * jmax_all);
  rep.within_delta = rep.sup <= spec.delta * (1.0 + 1e-12);
  return rep;
}

}  // namespace stabfv
