#pragma once

#include <limits>
#include <vector>

#include "ensemble.hpp"
#include "mesh.hpp"
#include "state_field.hpp"

namespace stabfv {

/// Which decay theorem supplies mu and nu.
enum class Regime { Linear, General, Cross };

/// Exponential weights exp(-mu_i x) for positive-speed components and
/// exp(+mu_i x) for negative-speed ones.
struct LyapunovWeights {
  std::vector<double> mu;
  int m = 0;

  /// Every gain is zero: any decay rate is attainable.
  bool unbounded() const noexcept;
  double weight(int i, double x) const;
};

/// Largest admissible mu for the given regime.
///
/// Linear: mu_i = ln(kappa_i^-2), |kappa_i| < 1.
/// General: mu_i = ln((sqrt(Dmax_i/Dmin_i) kappa_i)^-2), |kappa_i| < sqrt(Dmin_i/Dmax_i).
/// Cross (p = 2, m = 1): mu_1 = mu_2 = ln((sqrt(Dmax_2/Dmin_1) kappa_1)^-2) / (2 + dx).
///
/// A zero gain yields mu = +infinity. Throws InadmissibleGainError otherwise
/// when a gain leaves its open interval.
LyapunovWeights admissible_mu(const std::vector<double>& kappa, const std::vector<double>& Dmin,
                              const std::vector<double>& Dmax, Regime regime, double dx, int m);

/// Linear: nu = (dx/dt) min_i mu_i Dmin_i exp(-mu_i dx) = min_i |Lambda_i| mu_i exp(-mu_i dx).
/// General and Cross: nu = (dx / (2 dt)) min_i mu_i Dmin_i exp(-mu_i dx).
/// Components with infinite mu are skipped; returns +infinity if none remain.
double theoretical_nu(const LyapunovWeights& weights, const std::vector<double>& Dmin, double dx, double dt,
                      Regime regime);

/// min{1, eps, (dx/(2dt)) min_i mu_i Dmin_i exp(-T J_i) / J_i}; terms with J_i = 0 drop out.
double delta_threshold(const std::vector<double>& mu, const std::vector<double>& Dmin,
                       const std::vector<double>& Jmax, double T, double dx, double dt, double epsilon);

/// Weighted L2 functional
///   dx dxi sum_i sum_j sum_{k=1..K} u^2 w_i(x_j) rho(xi_k)
/// over a set of columns with given positions. Each random node is summed
/// separately with compensation; the per-node totals are then combined in
/// node order, so the value does not depend on how nodes are distributed
/// over workers.
class LyapunovFunctional {
 public:
  LyapunovFunctional(const LyapunovWeights& weights, const RandomEnsemble& ensemble, double dx,
                     int first_column, std::vector<double> positions);

  /// Node values j = 1..M at x_j.
  static LyapunovFunctional nodal(const LyapunovWeights& weights, const RandomEnsemble& ensemble,
                                  const Mesh& mesh);

  /// Cell averages j = 0..M-1 at the centres x_{j+1/2}.
  static LyapunovFunctional cell_centred(const LyapunovWeights& weights, const RandomEnsemble& ensemble,
                                         const Mesh& mesh);

  double operator()(const FieldBlock& field, int workers = 1) const;

  /// Same sum without the exponential weights.
  double unweighted(const FieldBlock& field) const;

 private:
  double node_sum(const FieldBlock& field, int k, bool weighted) const;

  std::vector<std::vector<double>> w_;  // per component, per column
  std::vector<double> rho_;
  double scale_;
  int first_;
  int components_;
};

/// Free-function form over nodal values.
double lyapunov_value(const StateField& state, const LyapunovWeights& weights, const RandomEnsemble& ensemble,
                      const Mesh& mesh);

struct Trajectory {
  std::vector<double> t;
  std::vector<double> L;
  std::vector<double> sup;
  std::vector<double> derivative_sup;

  void reserve(std::size_t n);
  std::size_t size() const noexcept { return t.size(); }
};

/// -(1/T) ln(LT / L0). Throws UndefinedRateError when L0 <= 0 or T <= 0.
double empirical_nu(double L0, double LT, double T);

/// max_n |exp(-nu t^n) L^0 - L^n| over the recorded steps.
double decay_envelope_error(const Trajectory& traj, double nu);

struct DecayReport {
  double nu = std::numeric_limits<double>::quiet_NaN();
  double nu_emp = std::numeric_limits<double>::quiet_NaN();
  double E = std::numeric_limits<double>::quiet_NaN();
};

}  // namespace stabfv
