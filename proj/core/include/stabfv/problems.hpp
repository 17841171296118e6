#pragma once

#include <array>
#include <functional>
#include <optional>
#include <span>

#include "boundary.hpp"
#include "lyapunov.hpp"
#include "mesh.hpp"
#include "system.hpp"

namespace stabfv {

/// Target state of the canal around which the shallow-water system is linearized.
struct SaintVenantParams {
  double hbar = 4.0;
  double vbar = 2.5;
  double g = 10.0;

  double celerity() const;       ///< sqrt(g hbar)
  double depth_factor() const;   ///< sqrt(g / hbar)
  std::array<double, 2> linear_speeds() const;
};

/// (dh, dv) -> (u1, u2) = (dv + c dh, dv - c dh), c = sqrt(g / hbar).
std::array<double, 2> saint_venant_transform(double dh, double dv, const SaintVenantParams& params);

/// (u1, u2) -> (dh, dv).
std::array<double, 2> saint_venant_inverse(double u1, double u2, const SaintVenantParams& params);

/// vbar + dv +/- sqrt(g (hbar + dh)). Throws DryStateError if hbar + dh <= 0.
std::array<double, 2> nonlinear_sv_speeds(double u1, double u2, const SaintVenantParams& params);

using InitialData = std::function<void(double x, double xi, std::span<double> u)>;

enum class Scheme { Upwind, CentralUpwind };

struct ProblemConfig {
  int id = 0;
  SystemSpec system;
  BoundaryCoupling bc;
  InitialData initial;
  double T = 1.0;
  double cfl = 1.0;
  Scheme scheme = Scheme::Upwind;
  /// Regime used for the weights and for nu.
  Regime regime = Regime::Linear;
  /// False when no decay rate is certified; the envelope then uses nu_emp.
  bool certified_rate = true;
  double sigma = 0.5;
  int cells = 100;
  int K = 100;
};

struct ExampleOverrides {
  std::optional<Scheme> scheme;
  std::optional<double> cfl;
  std::optional<double> T;
  std::optional<int> K;
  std::optional<double> delta;
  bool zero_initial_data = false;
};

/// Builds one of the eight reference problems (id 1..8).
ProblemConfig make_example(int id, double sigma, double dx, const ExampleOverrides& overrides = {});

/// Largest |psi_i(x, xi)| over a regular samples x samples lattice of [0,1] x [-sigma, sigma].
double initial_sup(const InitialData& psi, int p, double sigma, int samples = 401);

}  // namespace stabfv
