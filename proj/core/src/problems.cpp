#include "stabfv/problems.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "stabfv/error.hpp"

namespace stabfv {

double SaintVenantParams::celerity() const { return std::sqrt(g * hbar); }

double SaintVenantParams::depth_factor() const {
  if (!(hbar > 0.0)) throw ValidationError("target depth must be positive");
  return std::sqrt(g / hbar);
}

std::array<double, 2> SaintVenantParams::linear_speeds() const { return {vbar + celerity(), vbar - celerity()}; }

std::array<double, 2> saint_venant_transform(double dh, double dv, const SaintVenantParams& params) {
  const double c = params.depth_factor();
  return {dv + c * dh, dv - c * dh};
}

std::array<double, 2> saint_venant_inverse(double u1, double u2, const SaintVenantParams& params) {
  const double c = params.depth_factor();
  return {(u1 - u2) / (2.0 * c), 0.5 * (u1 + u2)};
}

std::array<double, 2> nonlinear_sv_speeds(double u1, double u2, const SaintVenantParams& params) {
  const auto [dh, dv] = saint_venant_inverse(u1, u2, params);
  const double h = params.hbar + dh;
  if (!(h > 0.0)) throw DryStateError("water depth " + std::to_string(h) + " is not positive");
  const double c = std::sqrt(params.g * h);
  return {params.vbar + dv + c, params.vbar + dv - c};
}

double initial_sup(const InitialData& psi, int p, double sigma, int samples) {
  std::vector<double> u(p);
  double sup = 0.0;
  for (int a = 0; a < samples; ++a) {
    const double x = static_cast<double>(a) / (samples - 1);
    for (int b = 0; b < samples; ++b) {
      const double xi = -sigma + 2.0 * sigma * b / (samples - 1);
      psi(x, xi, u);
      for (double v : u) sup = std::max(sup, std::fabs(v));
    }
  }
  return sup;
}

namespace {

ProblemConfig advection(int id, double sigma) {
  ProblemConfig c;
  c.id = id;
  c.system.p = 1;
  c.system.m = 1;
  c.system.constant_speeds = {1.0};
  c.bc = BoundaryCoupling::same_index({0.75});
  c.T = 12.0;
  c.cfl = 1.0;
  if (id == 1) {
    c.initial = [sigma](double, double xi, std::span<double> u) { u[0] = -0.5 * (-sigma + xi); };
  } else {
    c.initial = [sigma](double x, double xi, std::span<double> u) {
      u[0] = x < 0.25 ? -0.5 : -0.5 * (-sigma + xi);
    };
  }
  return c;
}

ProblemConfig shallow_water(int id, double sigma) {
  const SaintVenantParams sv;
  ProblemConfig c;
  c.id = id;
  c.system.p = 2;
  c.system.m = 1;
  const auto lam = sv.linear_speeds();
  c.system.constant_speeds = {lam[0], lam[1]};
  c.bc = BoundaryCoupling::same_index({0.8, 0.8});
  c.T = 6.0;
  c.cfl = 1.0;

  if (id == 3) {
    c.initial = [sigma, sv](double x, double xi, std::span<double> u) {
      const double s = std::sin(std::numbers::pi * x);
      const double dh = 0.5 * s * (-sigma + xi);
      const double dv = 20.0 / (8.0 + s) - 2.5;
      const auto r = saint_venant_transform(dh, dv, sv);
      u[0] = r[0];
      u[1] = r[1];
    };
    return c;
  }

  c.initial = [sigma, sv](double x, double xi, std::span<double> u) {
    const double dh = 0.5 * std::sin(std::numbers::pi * x) * (-sigma + xi);
    const double dv = 10.0 / (4.0 + dh) - 2.5;
    const auto r = saint_venant_transform(dh, dv, sv);
    u[0] = r[0];
    u[1] = r[1];
  };

  switch (id) {
    case 5:
      c.bc = BoundaryCoupling::cross(0.6, 0.6);
      c.regime = Regime::Cross;
      break;
    case 6:
      c.system.constant_speeds.clear();
      c.system.speed_fn = [sv](std::span<const double> u, std::span<double> out) {
        const auto l = nonlinear_sv_speeds(u[0], u[1], sv);
        out[0] = l[0];
        out[1] = l[1];
      };
      c.cfl = 0.5;
      c.certified_rate = false;
      break;
    case 7:
      c.scheme = Scheme::CentralUpwind;
      c.cfl = 0.45;
      break;
    case 8:
      c.system.source = {0.1, 0.1};
      c.cfl = 0.5;
      break;
    default:
      break;
  }
  return c;
}

}  // namespace

ProblemConfig make_example(int id, double sigma, double dx, const ExampleOverrides& overrides) {
  if (id < 1 || id > 8) throw ValidationError("unknown example id " + std::to_string(id));
  if (!(sigma > 0.0)) throw ValidationError("sigma must be positive");

  ProblemConfig c = id <= 2 ? advection(id, sigma) : shallow_water(id, sigma);
  c.sigma = sigma;
  c.cells = Mesh::from_spacing(dx).cells();

  if (overrides.zero_initial_data) {
    c.initial = [](double, double, std::span<double> u) { std::fill(u.begin(), u.end(), 0.0); };
  }
  if (overrides.scheme) {
    if (*overrides.scheme == Scheme::CentralUpwind && c.scheme != Scheme::CentralUpwind) c.cfl = 0.45;
    c.scheme = *overrides.scheme;
  }
  if (overrides.cfl) c.cfl = *overrides.cfl;
  if (overrides.T) c.T = *overrides.T;
  if (overrides.K) c.K = *overrides.K;

  if (overrides.delta) {
    c.system.delta = *overrides.delta;
  } else {
    const double sup = initial_sup(c.initial, c.system.p, sigma);
    c.system.delta = sup > 0.0 ? 1.5 * sup : 1.0;
  }
  c.system.epsilon = c.system.delta;
  return c;
}

}  // namespace stabfv
