// Acceptance driver: prints one line per criterion and exits nonzero if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "stabfv/cu_scheme.hpp"
#include "stabfv/ensemble.hpp"
#include "stabfv/experiment.hpp"
#include "stabfv/problems.hpp"
#include "stabfv/simulate.hpp"
#include "stabfv/upwind.hpp"

using namespace stabfv;

namespace {

struct Verdict {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok) pass = false;
    detail << what << (ok ? " ok" : " FAIL") << "; ";
  }
};

std::string fmt(double v, int digits = 6) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, v);
  return buf;
}

bool within(double value, double target, double tol) { return std::fabs(value - target) <= tol; }

// Runs are cached so that several criteria can share them.
class Runs {
 public:
  const SimulationResult& get(int id, double dx, double sigma, const ExampleOverrides& o = {},
                              const std::string& tag = "") {
    const std::string key = std::to_string(id) + '/' + fmt(dx) + '/' + fmt(sigma) + '/' + tag;
    auto it = cache_.find(key);
    if (it != cache_.end()) return it->second;
    const auto start = std::chrono::steady_clock::now();
    auto res = simulate(make_example(id, sigma, dx, o));
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::fprintf(stderr, "  run example=%d dx=%s sigma=%s %s: %.1fs\n", id, fmt(dx).c_str(), fmt(sigma).c_str(),
                 tag.c_str(), secs);
    return cache_.emplace(key, std::move(res)).first->second;
  }

 private:
  std::map<std::string, SimulationResult> cache_;
};

// Certified rate without running the scheme.
double certified_nu(const ProblemConfig& c) {
  const Mesh mesh(c.cells);
  const auto& spec = c.system;
  const double lambda = speed_range(spec, spec.delta).max_abs;
  const auto grid = cfl_time_step(lambda, mesh.dx(), c.cfl, c.T, spec.max_damping());
  const auto courant = courant_bounds(spec, mesh, grid.dt);
  const auto w = admissible_mu(c.bc.kappa, courant.Dmin, courant.Dmax, c.regime, mesh.dx(), spec.m);
  return theoretical_nu(w, courant.Dmin, mesh.dx(), grid.dt, c.regime);
}

double nu_for_gravity(double g, double dx) {
  ProblemConfig c = make_example(3, 0.5, dx);
  SaintVenantParams sv;
  sv.g = g;
  const auto l = sv.linear_speeds();
  c.system.constant_speeds = {l[0], l[1]};
  return certified_nu(c);
}

bool envelope_holds(const Trajectory& tr, double nu) {
  const double L0 = tr.L.front();
  for (std::size_t n = 0; n < tr.size(); ++n) {
    if (tr.L[n] > std::exp(-nu * tr.t[n]) * L0 * (1.0 + 1e-10)) return false;
  }
  return true;
}

bool per_step_decay(const Trajectory& tr, double nu, double dt) {
  const double L0 = tr.L.front();
  for (std::size_t n = 0; n + 1 < tr.size(); ++n) {
    if (tr.L[n + 1] > (1.0 - nu * dt) * tr.L[n] + 1e-12 * L0) return false;
  }
  return true;
}

double smooth_average(double a, double b) {
  const double tp = 2.0 * std::numbers::pi;
  const double Fb = -std::cos(tp * b) / tp + 0.3 * std::sin(2.0 * tp * b) / (2.0 * tp);
  const double Fa = -std::cos(tp * a) / tp + 0.3 * std::sin(2.0 * tp * a) / (2.0 * tp);
  return (Fb - Fa) / (b - a);
}

SystemSpec unit_advection() {
  SystemSpec s;
  s.p = 1;
  s.m = 1;
  s.constant_speeds = {1.0};
  return s;
}

std::vector<double> cu_loop_advection(int M, double T) {
  const Mesh mesh(M);
  CellAverageField avg(1, M, 0);
  for (int j = 0; j < M; ++j) avg.at(0, j, 0) = smooth_average(mesh.node(j), mesh.node(j + 1));
  const int N = static_cast<int>(std::ceil(T / (0.45 * mesh.dx())));
  CuSolver solver(unit_advection(), BoundaryCoupling::same_index({1.0}), mesh, T / N);
  solver.set_outgoing_traces({{0.3}});
  for (int n = 0; n < N; ++n) solver.step(avg);
  std::vector<double> out(M);
  for (int j = 0; j < M; ++j) out[j] = avg.at(0, j, 0);
  return out;
}

double restricted_l1(const std::vector<double>& coarse, const std::vector<double>& fine) {
  double e = 0.0;
  for (std::size_t j = 0; j < coarse.size(); ++j) e += std::fabs(coarse[j] - 0.5 * (fine[2 * j] + fine[2 * j + 1]));
  return e / static_cast<double>(coarse.size());
}

Verdict criterion1(Runs&) {
  Verdict v;
  const double a = certified_nu(make_example(1, 0.5, 0.01));
  const double b = certified_nu(make_example(1, 0.5, 1.0 / 1600));
  v.require(within(a, 0.5721, 1e-4), "nu(1/100)=" + fmt(a));
  v.require(within(b, 0.5752, 1e-4), "nu(1/1600)=" + fmt(b));
  return v;
}

Verdict criterion2(Runs& runs) {
  Verdict v;
  const auto& coarse = runs.get(1, 0.01, 0.5);
  const auto& fine = runs.get(1, 1.0 / 1600, 0.5);
  v.require(within(coarse.report.nu_emp, 0.5691, 5e-3), "nu_emp(1/100)=" + fmt(coarse.report.nu_emp));
  const double gap = std::fabs(fine.report.nu_emp - fine.report.nu);
  v.require(gap <= 5e-4, "|nu_emp-nu|(1/1600)=" + fmt(gap, 3));
  return v;
}

Verdict criterion3(Runs& runs) {
  Verdict v;
  const auto& s1 = runs.get(1, 0.01, 0.5);
  const auto& s2 = runs.get(1, 0.01, 1.0);
  const auto& s4 = runs.get(1, 0.01, 2.0);
  const double base = s1.report.nu_emp;
  const double spread = std::max(std::fabs(s2.report.nu_emp - base), std::fabs(s4.report.nu_emp - base)) / base;
  v.require(spread <= 1e-10, "nu_emp spread=" + fmt(spread, 3));
  const double r1 = s2.report.E / s1.report.E;
  const double r2 = s4.report.E / s2.report.E;
  v.require(within(r1, 4.0, 0.08), "E(1)/E(1/2)=" + fmt(r1, 5));
  v.require(within(r2, 4.0, 0.08), "E(2)/E(1)=" + fmt(r2, 5));
  return v;
}

Verdict criterion4(Runs& runs) {
  Verdict v;
  for (double dx : {0.01, 1.0 / 1600}) {
    for (double sigma : default_sigma_list()) {
      const auto& r = runs.get(2, dx, sigma);
      const double ref = find_reference(2, dx, sigma)->nu_emp;
      v.require(within(r.report.nu_emp, ref, 5e-3),
                "dx=" + fmt(dx) + " sigma=" + fmt(sigma) + " nu_emp=" + fmt(r.report.nu_emp) + " ref " + fmt(ref));
    }
  }
  return v;
}

Verdict criterion5(Runs& runs) {
  Verdict v;
  const double a = certified_nu(make_example(3, 0.5, 0.01));
  const double b = certified_nu(make_example(3, 0.5, 1.0 / 1600));
  v.require(within(a, 1.699, 1e-3), "nu(1/100)=" + fmt(a));
  v.require(within(b, 1.706, 1e-3), "nu(1/1600)=" + fmt(b));
  const double g10 = nu_for_gravity(10.0, 0.01);
  const double g981 = nu_for_gravity(9.81, 0.01);
  v.require(within(g10, 1.699, 1e-3) && within(g981, 1.672, 1e-3) && !within(g981, 1.699, 1e-3),
            "g=10 gives " + fmt(g10, 4) + ", g=9.81 gives " + fmt(g981, 4));
  const auto& r = runs.get(3, 0.01, 0.5);
  v.require(within(r.report.nu_emp, 1.806, 0.02), "nu_emp(1/100)=" + fmt(r.report.nu_emp));
  return v;
}

Verdict criterion6(Runs& runs) {
  Verdict v;
  const auto& r = runs.get(5, 0.01, 0.5);
  v.require(within(r.report.nu, 1.751, 1e-3), "nu=" + fmt(r.report.nu));
  v.require(envelope_holds(r.trajectory, r.report.nu), "envelope over " + std::to_string(r.trajectory.size()) +
                                                           " steps");
  return v;
}

Verdict criterion7(Runs& runs) {
  Verdict v;
  const auto& r = runs.get(6, 0.01, 0.5);
  v.require(within(r.report.nu_emp, 3.91, 0.05), "nu_emp=" + fmt(r.report.nu_emp));
  const double ref = 6.92e-3;
  v.require(r.report.E >= ref / 1.5 && r.report.E <= ref * 1.5, "E=" + fmt(r.report.E, 4) + " ref 6.92e-3");
  v.require(r.sup_within_delta && r.max_sup <= r.delta,
            "max sup=" + fmt(r.max_sup, 4) + " delta=" + fmt(r.delta, 4));
  return v;
}

Verdict criterion8(Runs& runs) {
  Verdict v;
  const auto& r = runs.get(7, 0.01, 0.5);
  v.require(r.report.E <= 2e-4, "E=" + fmt(r.report.E, 4));
  v.require(within(r.report.nu_emp, 1.702, 0.01), "nu_emp=" + fmt(r.report.nu_emp));
  const double T = 0.5;
  const auto u200 = cu_loop_advection(200, T), u400 = cu_loop_advection(400, T);
  const auto u800 = cu_loop_advection(800, T), u1600 = cu_loop_advection(1600, T);
  const double o1 = std::log2(restricted_l1(u200, u400) / restricted_l1(u400, u800));
  const double o2 = std::log2(restricted_l1(u400, u800) / restricted_l1(u800, u1600));
  v.require(std::min(o1, o2) >= 1.8, "self-convergence orders " + fmt(o1, 3) + ", " + fmt(o2, 3));
  return v;
}

Verdict criterion9(Runs& runs) {
  Verdict v;
  const auto& cu = runs.get(8, 0.01, 0.5, reproduction_overrides(8), "cu");
  const auto& up = runs.get(8, 0.01, 0.5, {}, "upwind");
  v.require(within(cu.report.nu_emp, 1.946, 0.05), "central-upwind nu_emp=" + fmt(cu.report.nu_emp));
  v.require(cu.report.nu_emp >= 1.699 && up.report.nu_emp >= 1.699,
            "upwind nu_emp=" + fmt(up.report.nu_emp) + ", both >= 1.699");
  return v;
}

bool exact_shift() {
  const int M = 64;
  const Mesh mesh(M);
  StateField f(1, M, 0);
  for (int j = 0; j <= M; ++j) f.at(0, j, 0) = std::sin(5.0 * mesh.node(j)) + 0.05 * j;
  const auto bc = BoundaryCoupling::same_index({0.75});
  apply_boundaries(f, bc, 1);
  const StateField start = f;
  const UpwindSolver solver(unit_advection(), bc, mesh, mesh.dx());
  const int n = 25;
  for (int s = 0; s < n; ++s) solver.step(f);
  for (int j = n + 1; j <= M; ++j)
    if (f.at(0, j, 0) != start.at(0, j - n, 0)) return false;
  return true;
}

bool convex_identity() {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> val(-1.0, 1.0), courant(0.05, 1.0);
  const int M = 12;
  const Mesh mesh(M);
  for (int trial = 0; trial < 40; ++trial) {
    const double D = courant(rng);
    const double speed = trial % 2 ? -1.5 : 1.5;
    SystemSpec s;
    s.p = 1;
    s.m = speed > 0 ? 1 : 0;
    s.constant_speeds = {speed};
    StateField f(1, M, 2);
    for (double& x : f.raw()) x = val(rng);
    const StateField old = f;
    upwind_step(f, s, BoundaryCoupling::same_index({0.5}), mesh, D * mesh.dx() / 1.5);
    for (int k = 0; k <= 2; ++k) {
      for (int j = 1; j <= M; ++j) {
        const double up = speed > 0 ? old.at(0, j - 1, k) : old.at(0, j + 1, k);
        if (std::fabs(f.at(0, j, k) - ((1.0 - D) * old.at(0, j, k) + D * up)) > 1e-14) return false;
      }
    }
  }
  return true;
}

bool minmod_table() {
  return minmod(1.0, 2.0) == 1.0 && minmod(-1.0, 2.0) == 0.0 && minmod(-3.0, -2.0) == -2.0 &&
         minmod(0.0, 4.0) == 0.0 && minmod({3.0, 0.5, 2.0}) == 0.5 && minmod({3.0, -0.5, 2.0}) == 0.0 &&
         minmod({-3.0, -0.5, -2.0}) == -0.5;
}

bool flux_consistency() {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> val(-3.0, 3.0), sp(0.0, 4.0);
  for (int n = 0; n < 1000; ++n) {
    const double u = val(rng);
    const double f = 0.5 * u * u;
    if (cu_flux(u, u, sp(rng), -sp(rng), f, f) != f) return false;
  }
  return true;
}

bool normalization_ok() {
  for (int K : {1, 2, 7, 100, 1000}) {
    for (double sigma : {0.5, 1.0, 2.0}) {
      if (std::fabs(uniform_random_ensemble(sigma, K).normalization() - 1.0) > 1e-12) return false;
    }
  }
  return true;
}

bool deterministic() {
  for (int id : {4, 6, 7}) {
    ExampleOverrides o;
    o.T = 1.0;
    o.K = 13;
    const auto c = make_example(id, 1.0, 1.0 / 50, o);
    SimulationOptions one, four;
    one.workers = 1;
    four.workers = 4;
    const auto a = simulate(c, one);
    const auto b = simulate(c, four);
    if (a.trajectory.L != b.trajectory.L || a.trajectory.sup != b.trajectory.sup) return false;
  }
  return true;
}

Verdict criterion10(Runs& runs) {
  Verdict v;
  v.require(exact_shift(), "exact shift");
  v.require(convex_identity(), "convex combination");

  bool sup_ok = true;
  for (int id = 1; id <= 5; ++id) {
    for (double sigma : default_sigma_list()) {
      const auto& r = runs.get(id, 0.01, sigma);
      const double s0 = r.trajectory.sup.front();
      for (double s : r.trajectory.sup) sup_ok = sup_ok && s <= r.delta && s <= s0 * (1.0 + 1e-12);
    }
  }
  v.require(sup_ok, "sup bound on examples 1-5");

  bool decay_ok = true;
  for (int id : {1, 2, 3, 4, 5}) {
    for (double sigma : default_sigma_list()) {
      const auto& r = runs.get(id, 0.01, sigma);
      decay_ok = decay_ok && per_step_decay(r.trajectory, r.report.nu, r.grid.dt);
    }
  }
  const auto& damped = runs.get(8, 0.01, 0.5, {}, "upwind");
  decay_ok = decay_ok && per_step_decay(damped.trajectory, damped.report.nu, damped.grid.dt);
  const auto& fine = runs.get(1, 1.0 / 1600, 0.5);
  decay_ok = decay_ok && per_step_decay(fine.trajectory, fine.report.nu, fine.grid.dt);
  v.require(decay_ok, "per-step decay");

  v.require(normalization_ok(), "ensemble normalization");
  v.require(minmod_table(), "minmod");
  v.require(flux_consistency(), "flux consistency");
  v.require(deterministic(), "worker determinism");
  return v;
}

}  // namespace

int main() {
  Runs runs;
  const std::vector<std::function<Verdict(Runs&)>> criteria{criterion1, criterion2, criterion3, criterion4,
                                                            criterion5, criterion6, criterion7, criterion8,
                                                            criterion9, criterion10};
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Verdict v;
    try {
      v = criteria[i](runs);
    } catch (const std::exception& e) {
      v.pass = false;
      v.detail << "error: " << e.what();
    }
    if (!v.pass) ++failures;
    std::printf("criterion %zu: %s  %s\n", i + 1, v.pass ? "PASS" : "FAIL", v.detail.str().c_str());
    std::fflush(stdout);
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
