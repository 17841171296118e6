#pragma once

#include <functional>
#include <limits>
#include <vector>

#include "cu_scheme.hpp"
#include "ensemble.hpp"
#include "lyapunov.hpp"
#include "mesh.hpp"
#include "problems.hpp"
#include "state_field.hpp"
#include "upwind.hpp"

namespace stabfv {

struct StepRecord {
  int n = 0;
  double t = 0.0;
  double L = 0.0;
  double sup = 0.0;
  double derivative_sup = 0.0;
};

using Recorder = std::function<void(const StepRecord&)>;

struct SimulationOptions {
  int workers = 0;
  bool lagged_closure = false;
  FeedbackTrace cu_feedback = FeedbackTrace::Characteristic;
};

struct SimulationResult {
  TimeGrid grid;
  double lambda = 0.0;
  CourantBounds courant;
  LyapunovWeights weights;
  Trajectory trajectory;
  DecayReport report;
  /// Radius of the invariant box used for the CFL bound and the monitors.
  double delta = 0.0;
  /// Radius permitted by the nonlinear theory for this run.
  double delta_threshold = 0.0;
  std::vector<double> Jmax;
  double max_sup = 0.0;
  bool sup_within_delta = true;
  bool derivative_within_bound = true;
  double initial_derivative_sup = 0.0;
};

/// Nodal initial data psi(x_j, xi_k) with the inflow slots closed.
StateField initial_state(const ProblemConfig& config, const Mesh& mesh, const RandomEnsemble& ensemble,
                         bool close_boundaries = true);

/// Midpoint values psi(x_{j+1/2}, xi_k).
CellAverageField initial_averages(const ProblemConfig& config, const Mesh& mesh, const RandomEnsemble& ensemble);

/// Runs the configured scheme to T, recording the functional every step.
SimulationResult simulate(const ProblemConfig& config, const SimulationOptions& options = {},
                          const Recorder& recorder = {});

}  // namespace stabfv
