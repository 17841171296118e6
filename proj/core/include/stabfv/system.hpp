#pragma once

#include <functional>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "boundary.hpp"

namespace stabfv {

/// Evaluates all characteristic speeds at one state vector.
using SpeedFunction = std::function<void(std::span<const double> u, std::span<double> speeds)>;

/// Conservative flux f(u) used by the central-upwind scheme.
using FluxFunction = std::function<void(std::span<const double> u, std::span<double> flux)>;

/// Diagonal hyperbolic system u_t + Lambda(u) u_x = -B u.
///
/// Components 0..m-1 carry positive speeds and m..p-1 negative ones.
struct SystemSpec {
  int p = 1;
  int m = 1;

  /// Non-empty for linear systems; takes precedence over `speed_fn`.
  std::vector<double> constant_speeds;
  SpeedFunction speed_fn;

  /// Diagonal damping b^{(i)} >= 0; empty means no source.
  std::vector<double> source;

  /// Optional flux. Linear systems fall back to f_i = Lambda_i u_i.
  FluxFunction flux;

  double delta = 1.0;
  double epsilon = std::numeric_limits<double>::infinity();

  bool is_linear() const noexcept { return !constant_speeds.empty(); }
  double damping(int i) const noexcept { return source.empty() ? 0.0 : source[i]; }
  double max_damping() const noexcept;

  void speeds(std::span<const double> u, std::span<double> out) const;
  void evaluate_flux(std::span<const double> u, std::span<double> out) const;
  bool has_flux() const noexcept { return is_linear() || static_cast<bool>(flux); }

  /// Throws ValidationError for inconsistent sizes or missing speeds.
  void check_well_formed() const;
};

/// Points of the box |u^{(i)}| <= delta: `per_dim` values per component,
/// always including -delta, 0 and +delta when per_dim is odd.
std::vector<std::vector<double>> delta_box_lattice(int p, double delta, int per_dim = 5);

struct SpeedRange {
  std::vector<double> min;
  std::vector<double> max;
  /// max_i max_u |Lambda_i(u)|
  double max_abs = 0.0;
};

/// Lattice points where the speeds raise DryStateError are skipped; if every
/// point is dry the error is rethrown.
SpeedRange speed_range(const SystemSpec& spec, double delta, int per_dim = 5);

/// Largest sup-norm of grad Lambda_i over the lattice, by central differences.
std::vector<double> speed_gradient_bound(const SystemSpec& spec, double delta, int per_dim = 5);

struct SystemDiagnostics {
  std::vector<std::string> sign_violations;
  std::vector<std::string> coincidences;
  std::vector<std::string> topology_errors;
  std::vector<std::string> warnings;
  double spectral_radius = 0.0;
  bool strictly_dissipative = false;

  bool ok() const noexcept {
    return sign_violations.empty() && coincidences.empty() && topology_errors.empty() && strictly_dissipative;
  }
};

/// Checks the sign split, strict hyperbolicity and boundary dissipativity.
SystemDiagnostics validate_system(const SystemSpec& spec, const BoundaryCoupling& bc, double delta);

}  // namespace stabfv
