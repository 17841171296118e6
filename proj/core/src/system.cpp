#include "stabfv/system.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "stabfv/error.hpp"

namespace stabfv {

double SystemSpec::max_damping() const noexcept {
  double b = 0.0;
  for (double v : source) b = std::max(b, v);
  return b;
}

void SystemSpec::speeds(std::span<const double> u, std::span<double> out) const {
  if (is_linear()) {
    std::copy(constant_speeds.begin(), constant_speeds.end(), out.begin());
    return;
  }
  speed_fn(u, out);
}

void SystemSpec::evaluate_flux(std::span<const double> u, std::span<double> out) const {
  if (flux) {
    flux(u, out);
    return;
  }
  if (!is_linear()) throw ValidationError("system has no flux and non-constant speeds");
  for (int i = 0; i < p; ++i) out[i] = constant_speeds[i] * u[i];
}

void SystemSpec::check_well_formed() const {
  if (p < 1) throw ValidationError("system needs at least one component");
  if (m < 0 || m > p) throw ValidationError("positive-speed count m must lie in [0, p]");
  if (is_linear()) {
    if (static_cast<int>(constant_speeds.size()) != p) throw ValidationError("constant speed count differs from p");
  } else if (!speed_fn) {
    throw ValidationError("system has neither constant speeds nor a speed function");
  }
  if (!source.empty()) {
    if (static_cast<int>(source.size()) != p) throw ValidationError("source coefficient count differs from p");
    for (double b : source) {
      if (!(b >= 0.0)) throw ValidationError("source coefficients must be non-negative");
    }
  }
  if (!(delta > 0.0)) throw ValidationError("delta must be positive");
  if (!(epsilon >= delta)) throw ValidationError("epsilon must be at least delta");
}

std::vector<std::vector<double>> delta_box_lattice(int p, double delta, int per_dim) {
  if (per_dim < 1) per_dim = 1;
  std::vector<double> axis(per_dim);
  for (int a = 0; a < per_dim; ++a) {
    axis[a] = per_dim == 1 ? 0.0 : -delta + 2.0 * delta * a / (per_dim - 1);
  }
  std::size_t count = 1;
  for (int i = 0; i < p; ++i) count *= static_cast<std::size_t>(per_dim);

  std::vector<std::vector<double>> points(count, std::vector<double>(p));
  for (std::size_t n = 0; n < count; ++n) {
    std::size_t rem = n;
    for (int i = 0; i < p; ++i) {
      points[n][i] = axis[rem % per_dim];
      rem /= per_dim;
    }
  }
  return points;
}

SpeedRange speed_range(const SystemSpec& spec, double delta, int per_dim) {
  SpeedRange r;
  r.min.assign(spec.p, std::numeric_limits<double>::infinity());
  r.max.assign(spec.p, -std::numeric_limits<double>::infinity());
  std::vector<double> lam(spec.p);
  const auto lattice = spec.is_linear() ? std::vector<std::vector<double>>{std::vector<double>(spec.p, 0.0)}
                                        : delta_box_lattice(spec.p, delta, per_dim);
  bool any = false;
  for (const auto& u : lattice) {
    try {
      spec.speeds(u, lam);
    } catch (const DryStateError&) {
      continue;
    }
    any = true;
    for (int i = 0; i < spec.p; ++i) {
      r.min[i] = std::min(r.min[i], lam[i]);
      r.max[i] = std::max(r.max[i], lam[i]);
      r.max_abs = std::max(r.max_abs, std::fabs(lam[i]));
    }
  }
  if (!any) throw DryStateError("no admissible state in the delta box");
  return r;
}

std::vector<double> speed_gradient_bound(const SystemSpec& spec, double delta, int per_dim) {
  std::vector<double> J(spec.p, 0.0);
  if (spec.is_linear()) return J;

  const double h = 1e-6 * std::max(1.0, delta);
  std::vector<double> up(spec.p), lp(spec.p), lm(spec.p);
  for (const auto& u : delta_box_lattice(spec.p, delta, per_dim)) {
    for (int l = 0; l < spec.p; ++l) {
      up = u;
      try {
        up[l] = u[l] + h;
        spec.speeds(up, lp);
        up[l] = u[l] - h;
        spec.speeds(up, lm);
      } catch (const DryStateError&) {
        continue;
      }
      for (int i = 0; i < spec.p; ++i) J[i] = std::max(J[i], std::fabs(lp[i] - lm[i]) / (2.0 * h));
    }
  }
  return J;
}

namespace {

std::string point_to_string(const std::vector<double>& u) {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < u.size(); ++i) os << (i ? ", " : "") << u[i];
  os << ')';
  return os.str();
}

}  // namespace

SystemDiagnostics validate_system(const SystemSpec& spec, const BoundaryCoupling& bc, double delta) {
  SystemDiagnostics d;
  spec.check_well_formed();

  try {
    bc.check(spec.p, spec.m);
  } catch (const TopologyError& e) {
    d.topology_errors.emplace_back(e.what());
  }

  std::vector<double> lam(spec.p);
  for (const auto& u : delta_box_lattice(spec.p, delta, 5)) {
    try {
      spec.speeds(u, lam);
    } catch (const Error& e) {
      d.sign_violations.push_back("speeds undefined at " + point_to_string(u) + ": " + e.what());
      continue;
    }
    for (int i = 0; i < spec.p; ++i) {
      const bool positive = i < spec.m;
      if (positive ? !(lam[i] > 0.0) : !(lam[i] < 0.0)) {
        std::ostringstream os;
        os << "Lambda_" << (i + 1) << " = " << lam[i] << " has the wrong sign at " << point_to_string(u);
        d.sign_violations.push_back(os.str());
      }
      for (int j = i + 1; j < spec.p; ++j) {
        if (lam[i] == lam[j]) {
          std::ostringstream os;
          os << "Lambda_" << (i + 1) << " = Lambda_" << (j + 1) << " at " << point_to_string(u);
          d.coincidences.push_back(os.str());
        }
      }
    }
  }

  if (d.topology_errors.empty()) {
    d.spectral_radius = bc.spectral_radius();
    d.strictly_dissipative = d.spectral_radius < 1.0;
    if (!d.strictly_dissipative) {
      std::ostringstream os;
      os << "boundary not strictly dissipative: spectral radius " << d.spectral_radius << " >= 1";
      d.warnings.push_back(os.str());
    }
  }
  return d;
}

}  // namespace stabfv
