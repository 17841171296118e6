#pragma once

#include <vector>

#include "boundary.hpp"
#include "ensemble.hpp"
#include "mesh.hpp"
#include "state_field.hpp"
#include "system.hpp"

namespace stabfv {

struct TimeGrid {
  double dt = 0.0;
  int steps = 0;
  double T = 0.0;
};

/// dt = cfl * dx / lambda, with lambda the largest |Lambda_i| on the delta box.
///
/// The step is further shrunk so that D + dt * b <= 1 for every component and,
/// when T > 0, so that an integer number of steps lands exactly on T.
TimeGrid cfl_time_step(const SystemSpec& spec, const Mesh& mesh, double cfl, double T = 0.0);

/// Same rule with a known lambda.
TimeGrid cfl_time_step(double lambda, double dx, double cfl, double T = 0.0, double max_damping = 0.0);

/// Extremal Courant numbers dt |Lambda_i| / dx over the delta box.
struct CourantBounds {
  std::vector<double> Dmin;
  std::vector<double> Dmax;
};

CourantBounds courant_bounds(const SystemSpec& spec, const Mesh& mesh, double dt);

/// Closes the inflow slots from the (already updated) interior values.
void apply_boundaries(StateField& state, const BoundaryCoupling& bc, int m);

/// Closes the inflow slots of one random node.
void apply_boundaries(StateField& state, const BoundaryCoupling& bc, int m, int k);

struct UpwindOptions {
  int workers = 0;  ///< 0 selects default_worker_count()
  /// Feed inflow from the previous time level instead of the new one. Off by
  /// default; kept as a diagnostic to compare closure orderings.
  bool lagged_closure = false;
};

/// First-order upwind stepper with feedback closure.
class UpwindSolver {
 public:
  UpwindSolver(SystemSpec spec, BoundaryCoupling bc, Mesh mesh, double dt, UpwindOptions options = {});

  /// Advances the state by one step. Throws BlowUpError on non-finite output.
  void step(StateField& state) const;

  double dt() const noexcept { return dt_; }
  const SystemSpec& system() const noexcept { return spec_; }

 private:
  void step_node(StateField& state, int k, std::vector<double>& scratch) const;

  SystemSpec spec_;
  BoundaryCoupling bc_;
  Mesh mesh_;
  double dt_;
  UpwindOptions options_;
  int workers_;
};

/// One step without building a solver.
void upwind_step(StateField& state, const SystemSpec& spec, const BoundaryCoupling& bc, const Mesh& mesh,
                 double dt);

struct MonitorReport {
  double sup = 0.0;
  double derivative_sup = 0.0;
  double derivative_bound = 0.0;
  bool within_delta = true;
  bool derivative_within_bound = true;
};

/// Sup-norm and one-sided derivative sup over the meaningful slots (k >= 0).
///
/// The derivative bound is delta * exp(n dt Jmax_i), taken per component.
MonitorReport monitor_bounds(const StateField& state, const SystemSpec& spec, int n, double dt,
                             const std::vector<double>& Jmax);

}  // namespace stabfv
