#pragma once

#include <cmath>
#include <initializer_list>
#include <span>
#include <vector>

#include "boundary.hpp"
#include "mesh.hpp"
#include "state_field.hpp"
#include "system.hpp"

namespace stabfv {

/// Smallest-magnitude argument when all share a sign, zero otherwise.
double minmod(std::span<const double> z);
double minmod(std::initializer_list<double> z);

inline double minmod(double a, double b) noexcept {
  // Branch-free: the sign factor is 1, -1 or 0 and multiplies the smaller magnitude.
  const double sign = std::copysign(0.5, a) + std::copysign(0.5, b);
  const double fa = std::fabs(a);
  const double fb = std::fabs(b);
  return sign * (fa < fb ? fa : fb);
}

/// Piecewise-linear reconstruction of one spatial line of cell averages.
///
/// `minus[j]` and `plus[j]` (j = 0..M) are the left/right-sided values at
/// x_j; `minus[0]` and `plus[M]` are the supplied boundary traces.
struct Reconstruction {
  std::vector<double> slope;
  std::vector<double> minus;
  std::vector<double> plus;
};

/// Interior slopes use the two neighbouring differences; the first and last
/// cells compare against the boundary trace over half a cell.
Reconstruction reconstruct(std::span<const double> averages, double dx, double left_trace, double right_trace);

struct LocalSpeeds {
  double a_plus = 0.0;
  double a_minus = 0.0;
};

/// a+ = max(Lambda_max(u-), Lambda_max(u+), 0), a- = min(Lambda_min(u-), Lambda_min(u+), 0).
LocalSpeeds local_speeds(std::span<const double> u_minus, std::span<const double> u_plus, const SystemSpec& spec);

/// Scalar central-upwind flux given the flux values at both sides.
inline double cu_flux(double u_minus, double u_plus, double a_plus, double a_minus, double f_minus,
                      double f_plus) noexcept {
  const double gap = a_plus - a_minus;
  if (gap <= 0.0) return f_minus;
  // Rearranged so that equal states and a- = 0 both return f_minus exactly.
  return f_minus + (a_minus / gap) * ((f_minus - f_plus) + a_plus * (u_plus - u_minus));
}

/// Vector flux for a system; `out` receives one value per component.
void cu_flux(std::span<const double> u_minus, std::span<const double> u_plus, LocalSpeeds speeds,
             const SystemSpec& spec, std::span<double> out);

/// Which outgoing value the feedback gain multiplies.
enum class FeedbackTrace {
  Characteristic,  ///< the exterior trace traced back along the characteristic
  Interior,        ///< the one-sided reconstruction inside the outflow cell
};

struct CuOptions {
  int workers = 0;
  FeedbackTrace feedback = FeedbackTrace::Characteristic;
};

/// Semi-discrete central-upwind scheme with SSP-RK3 time integration for
/// diagonal linear systems with feedback boundaries.
///
/// The solver keeps the outgoing boundary traces between steps: each stage at
/// t + tau evaluates them along the characteristics of the reconstruction at
/// the step start.
class CuSolver {
 public:
  CuSolver(SystemSpec spec, BoundaryCoupling bc, Mesh mesh, double dt, CuOptions options = {});

  /// Sets the averages' companion boundary values: for each component the
  /// point value at its outflow end (x = 1 for positive speeds, x = 0 for
  /// negative ones), indexed [i][k].
  void set_outgoing_traces(std::vector<std::vector<double>> traces);

  const std::vector<std::vector<double>>& outgoing_traces() const noexcept { return traces_; }

  /// d/dt of the averages for a single node with the given outgoing traces.
  void rhs(const CellAverageField& avg, int k, std::span<const double> outgoing, CellAverageField& out) const;

  /// One SSP-RK3 step of all nodes.
  void step(CellAverageField& avg);

  double dt() const noexcept { return dt_; }

 private:
  struct Scratch;
  void step_node(CellAverageField& avg, int k, Scratch& s);
  void node_rhs(const double* const* rows, std::span<const double> outgoing, double* const* out, Scratch& s) const;
  void trace_at(const double* const* rows, const double* const* slopes, double tau, std::span<double> out) const;

  SystemSpec spec_;
  BoundaryCoupling bc_;
  Mesh mesh_;
  double dt_;
  CuOptions options_;
  int workers_;
  double a_plus_;
  double a_minus_;
  std::vector<std::vector<double>> traces_;
};

}  // namespace stabfv
