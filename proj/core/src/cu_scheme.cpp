#include "stabfv/cu_scheme.hpp"

#include <algorithm>
#include <cmath>

#include "stabfv/error.hpp"
#include "stabfv/parallel.hpp"

namespace stabfv {

double minmod(std::span<const double> z) {
  if (z.empty()) return 0.0;
  const bool all_pos = std::all_of(z.begin(), z.end(), [](double v) { return v > 0.0; });
  const bool all_neg = std::all_of(z.begin(), z.end(), [](double v) { return v < 0.0; });
  if (all_pos) return *std::min_element(z.begin(), z.end());
  if (all_neg) return *std::max_element(z.begin(), z.end());
  return 0.0;
}

double minmod(std::initializer_list<double> z) { return minmod(std::span<const double>(z.begin(), z.size())); }

Reconstruction reconstruct(std::span<const double> averages, double dx, double left_trace, double right_trace) {
  const int M = static_cast<int>(averages.size());
  if (M < 2) throw ValidationError("reconstruction needs at least two cells");
  const double h = 0.5 * dx;
  Reconstruction r;
  r.slope.resize(M);
  r.minus.resize(M + 1);
  r.plus.resize(M + 1);
  r.slope[0] = minmod((averages[0] - left_trace) / h, (averages[1] - averages[0]) / dx);
  for (int j = 1; j < M - 1; ++j) {
    r.slope[j] = minmod((averages[j] - averages[j - 1]) / dx, (averages[j + 1] - averages[j]) / dx);
  }
  r.slope[M - 1] = minmod((averages[M - 1] - averages[M - 2]) / dx, (right_trace - averages[M - 1]) / h);
  r.minus[0] = left_trace;
  r.plus[M] = right_trace;
  for (int j = 0; j < M; ++j) {
    r.minus[j + 1] = averages[j] + h * r.slope[j];
    r.plus[j] = averages[j] - h * r.slope[j];
  }
  return r;
}

LocalSpeeds local_speeds(std::span<const double> u_minus, std::span<const double> u_plus, const SystemSpec& spec) {
  std::vector<double> lm(spec.p), lp(spec.p);
  spec.speeds(u_minus, lm);
  spec.speeds(u_plus, lp);
  LocalSpeeds s;
  for (int i = 0; i < spec.p; ++i) {
    s.a_plus = std::max({s.a_plus, lm[i], lp[i]});
    s.a_minus = std::min({s.a_minus, lm[i], lp[i]});
  }
  return s;
}

void cu_flux(std::span<const double> u_minus, std::span<const double> u_plus, LocalSpeeds speeds,
             const SystemSpec& spec, std::span<double> out) {
  std::vector<double> fm(spec.p), fp(spec.p);
  spec.evaluate_flux(u_minus, fm);
  spec.evaluate_flux(u_plus, fp);
  for (int i = 0; i < spec.p; ++i) {
    out[i] = cu_flux(u_minus[i], u_plus[i], speeds.a_plus, speeds.a_minus, fm[i], fp[i]);
  }
}

struct CuSolver::Scratch {
  int p = 0;
  int M = 0;
  std::vector<double> u0, u1, u2, k, slope0, slope, flux;
  std::vector<double> feed, inflow, traces;

  void resize(int p_, int M_) {
    if (p == p_ && M == M_) return;
    p = p_;
    M = M_;
    const std::size_t n = static_cast<std::size_t>(p) * M;
    u0.assign(n, 0.0);
    u1.assign(n, 0.0);
    u2.assign(n, 0.0);
    k.assign(n, 0.0);
    slope0.assign(n, 0.0);
    slope.assign(n, 0.0);
    flux.assign(M + 1, 0.0);
    feed.assign(p, 0.0);
    inflow.assign(p, 0.0);
    traces.assign(p, 0.0);
  }
  double* row(std::vector<double>& v, int i) { return v.data() + static_cast<std::size_t>(i) * M; }
};

CuSolver::CuSolver(SystemSpec spec, BoundaryCoupling bc, Mesh mesh, double dt, CuOptions options)
    : spec_(std::move(spec)),
      bc_(std::move(bc)),
      mesh_(mesh),
      dt_(dt),
      options_(options),
      workers_(options.workers > 0 ? options.workers : default_worker_count()),
      a_plus_(0.0),
      a_minus_(0.0) {
  spec_.check_well_formed();
  bc_.check(spec_.p, spec_.m);
  if (!spec_.is_linear()) {
    throw ValidationError("the central-upwind solver supports constant characteristic speeds only");
  }
  if (!(dt > 0.0)) throw ValidationError("time step must be positive");
  for (double l : spec_.constant_speeds) {
    a_plus_ = std::max(a_plus_, l);
    a_minus_ = std::min(a_minus_, l);
  }
  if (a_plus_ * dt_ > mesh_.dx() || -a_minus_ * dt_ > mesh_.dx()) {
    throw ClosureError("time step exceeds one cell per step; characteristic boundary traces are undefined");
  }
}

void CuSolver::set_outgoing_traces(std::vector<std::vector<double>> traces) {
  if (static_cast<int>(traces.size()) != spec_.p) throw ValidationError("one trace row per component expected");
  traces_ = std::move(traces);
}

namespace {

// Exterior value at the outflow end of component i: traced back from the
// step-start reconstruction along the characteristic through (x_end, t + tau).
inline double characteristic_trace(const double* u, const double* s, int M, double h, double lambda, double tau,
                                   bool positive) {
  return positive ? u[M - 1] + s[M - 1] * (h - tau * lambda) : u[0] + s[0] * (-h - tau * lambda);
}

}  // namespace

void CuSolver::trace_at(const double* const* rows, const double* const* slopes, double tau,
                        std::span<double> out) const {
  const int M = mesh_.cells();
  const double h = 0.5 * mesh_.dx();
  for (int i = 0; i < spec_.p; ++i) {
    const double lambda = spec_.constant_speeds[i];
    if (tau * std::fabs(lambda) > mesh_.dx() * (1.0 + 1e-12)) {
      throw ClosureError("stage offset leaves the outflow cell");
    }
    out[i] = characteristic_trace(rows[i], slopes[i], M, h, lambda, tau, i < spec_.m);
  }
}

// Fills s.slope (all components) and s.inflow from the cell averages and the
// exterior traces at each outflow end; with `out` set, also the time derivative.
void CuSolver::node_rhs(const double* const* rows, std::span<const double> outgoing, double* const* out,
                        Scratch& s) const {
  const int p = spec_.p;
  const int m = spec_.m;
  const int M = mesh_.cells();
  const double dx = mesh_.dx();
  const double h = 0.5 * dx;
  const double inv_dx = 1.0 / dx;
  const double inv_h = 2.0 / dx;

  // Slopes everywhere except the inflow-end cell, which waits for the feedback value.
  for (int i = 0; i < p; ++i) {
    const double* a = rows[i];
    double* sl = s.row(s.slope, i);
    double left = (a[1] - a[0]) * inv_dx;
    for (int j = 1; j < M - 1; ++j) {
      const double right = (a[j + 1] - a[j]) * inv_dx;
      sl[j] = minmod(left, right);
      left = right;
    }
    if (i < m) {
      sl[M - 1] = minmod((a[M - 1] - a[M - 2]) * inv_dx, (outgoing[i] - a[M - 1]) * inv_h);
      s.feed[i] = options_.feedback == FeedbackTrace::Characteristic ? outgoing[i] : a[M - 1] + h * sl[M - 1];
    } else {
      sl[0] = minmod((a[0] - outgoing[i]) * inv_h, (a[1] - a[0]) * inv_dx);
      s.feed[i] = options_.feedback == FeedbackTrace::Characteristic ? outgoing[i] : a[0] - h * sl[0];
    }
  }

  if (bc_.topology == Topology::CrossTwoByTwo) {
    s.inflow[0] = bc_.kappa[1] * s.feed[1];
    s.inflow[1] = bc_.kappa[0] * s.feed[0];
  } else {
    for (int i = 0; i < p; ++i) s.inflow[i] = bc_.kappa[i] * s.feed[i];
  }

  const double gap = a_plus_ - a_minus_;
  const double wm = a_plus_ / gap;
  const double wp = -a_minus_ / gap;
  const double diss = a_plus_ * a_minus_ / gap;

  for (int i = 0; i < p; ++i) {
    const double* a = rows[i];
    double* sl = s.row(s.slope, i);
    if (i < m) {
      sl[0] = minmod((a[0] - s.inflow[i]) * inv_h, (a[1] - a[0]) * inv_dx);
    } else {
      sl[M - 1] = minmod((a[M - 1] - a[M - 2]) * inv_dx, (s.inflow[i] - a[M - 1]) * inv_h);
    }
    if (out == nullptr) continue;

    // Interface x_j sees u- from cell j-1/2 and u+ from cell j+1/2. With
    // f = lambda u the central-upwind flux is linear in (u-, u+).
    const double lambda = spec_.constant_speeds[i];
    const double cm = wm * lambda - diss;
    const double cp = wp * lambda + diss;
    double* F = s.flux.data();
    {
      const double um = i < m ? s.inflow[i] : outgoing[i];
      const double up = i < m ? s.inflow[i] : a[0] - h * sl[0];
      F[0] = cm * um + cp * up;
    }
    for (int j = 1; j < M; ++j) F[j] = cm * (a[j - 1] + h * sl[j - 1]) + cp * (a[j] - h * sl[j]);
    {
      const double um = i < m ? a[M - 1] + h * sl[M - 1] : s.inflow[i];
      const double up = i < m ? outgoing[i] : s.inflow[i];
      F[M] = cm * um + cp * up;
    }
    const double b = spec_.damping(i);
    double* o = out[i];
    for (int j = 0; j < M; ++j) o[j] = -(F[j + 1] - F[j]) * inv_dx - b * a[j];
  }
}

void CuSolver::rhs(const CellAverageField& avg, int k, std::span<const double> outgoing,
                   CellAverageField& out) const {
  Scratch s;
  s.resize(spec_.p, mesh_.cells());
  std::vector<const double*> rows(spec_.p);
  std::vector<double*> outs(spec_.p);
  for (int i = 0; i < spec_.p; ++i) {
    rows[i] = avg.row(i, k).data();
    outs[i] = out.row(i, k).data();
  }
  node_rhs(rows.data(), outgoing, outs.data(), s);
}

void CuSolver::step_node(CellAverageField& avg, int k, Scratch& s) {
  const int p = spec_.p;
  const int M = mesh_.cells();
  const std::size_t n = static_cast<std::size_t>(M);
  s.resize(p, M);

  std::vector<const double*> in(p), slope0(p);
  std::vector<double*> out(p);

  for (int i = 0; i < p; ++i) {
    const auto r = avg.row(i, k);
    std::copy(r.begin(), r.end(), s.row(s.u0, i));
    s.traces[i] = traces_[i][k];
  }

  // Step-start slopes, limited against the stored exterior traces.
  for (int i = 0; i < p; ++i) {
    in[i] = s.row(s.u0, i);
    out[i] = s.row(s.k, i);
  }
  node_rhs(in.data(), s.traces, nullptr, s);
  std::copy(s.slope.begin(), s.slope.end(), s.slope0.begin());
  for (int i = 0; i < p; ++i) slope0[i] = s.row(s.slope0, i);

  std::vector<double> tr(p);
  const double dt = dt_;

  // Stage 1 at tau = 0.
  trace_at(in.data(), slope0.data(), 0.0, tr);
  node_rhs(in.data(), tr, out.data(), s);
  for (int i = 0; i < p; ++i) {
    const double* u0 = s.row(s.u0, i);
    const double* kk = s.row(s.k, i);
    double* u1 = s.row(s.u1, i);
    for (std::size_t j = 0; j < n; ++j) u1[j] = u0[j] + dt * kk[j];
  }

  // Stage 2 at tau = dt.
  for (int i = 0; i < p; ++i) in[i] = s.row(s.u1, i);
  std::vector<const double*> base(p);
  for (int i = 0; i < p; ++i) base[i] = s.row(s.u0, i);
  trace_at(base.data(), slope0.data(), dt, tr);
  node_rhs(in.data(), tr, out.data(), s);
  for (int i = 0; i < p; ++i) {
    const double* u0 = s.row(s.u0, i);
    const double* u1 = s.row(s.u1, i);
    const double* kk = s.row(s.k, i);
    double* u2 = s.row(s.u2, i);
    for (std::size_t j = 0; j < n; ++j) u2[j] = 0.75 * u0[j] + 0.25 * (u1[j] + dt * kk[j]);
  }

  // Stage 3 at tau = dt / 2.
  for (int i = 0; i < p; ++i) in[i] = s.row(s.u2, i);
  trace_at(base.data(), slope0.data(), 0.5 * dt, tr);
  node_rhs(in.data(), tr, out.data(), s);
  for (int i = 0; i < p; ++i) {
    const double* u0 = s.row(s.u0, i);
    const double* u2 = s.row(s.u2, i);
    const double* kk = s.row(s.k, i);
    auto r = avg.row(i, k);
    for (std::size_t j = 0; j < n; ++j) {
      r[j] = u0[j] / 3.0 + 2.0 / 3.0 * (u2[j] + dt * kk[j]);
      if (!std::isfinite(r[j])) throw BlowUpError(i, static_cast<int>(j), k, avg.time + dt);
    }
  }

  trace_at(base.data(), slope0.data(), dt, tr);
  for (int i = 0; i < p; ++i) traces_[i][k] = tr[i];
}

void CuSolver::step(CellAverageField& avg) {
  if (avg.components() != spec_.p || avg.cells() != mesh_.cells()) {
    throw ValidationError("average field dimensions do not match the solver");
  }
  if (traces_.empty()) {
    traces_.assign(spec_.p, std::vector<double>(avg.nodes(), 0.0));
    for (int i = 0; i < spec_.p; ++i) {
      for (int k = 0; k < avg.nodes(); ++k) {
        traces_[i][k] = i < spec_.m ? avg.at(i, avg.cells() - 1, k) : avg.at(i, 0, k);
      }
    }
  }
  parallel_for(avg.nodes(), workers_, [&](int k) {
    thread_local Scratch s;
    step_node(avg, k, s);
  });
  avg.time += dt_;
}

}  // namespace stabfv
