#include "stabfv/lyapunov.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "stabfv/compensated_sum.hpp"
#include "stabfv/error.hpp"
#include "stabfv/parallel.hpp"

namespace stabfv {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::string describe(const char* what, int i, double lhs, double rhs) {
  std::ostringstream os;
  os << what << " violated for component " << (i + 1) << ": |kappa| = " << lhs << " must be < " << rhs;
  return os.str();
}

}  // namespace

bool LyapunovWeights::unbounded() const noexcept {
  return !mu.empty() && std::all_of(mu.begin(), mu.end(), [](double v) { return std::isinf(v); });
}

double LyapunovWeights::weight(int i, double x) const {
  return i < m ? std::exp(-mu[i] * x) : std::exp(mu[i] * x);
}

LyapunovWeights admissible_mu(const std::vector<double>& kappa, const std::vector<double>& Dmin,
                              const std::vector<double>& Dmax, Regime regime, double dx, int m) {
  LyapunovWeights w;
  w.m = m;

  if (regime == Regime::Cross) {
    if (kappa.size() != 2 || Dmin.size() != 2 || Dmax.size() != 2) {
      throw TopologyError("cross-coupled weights need exactly two components");
    }
    const double k1 = std::fabs(kappa[0]);
    const double k2 = std::fabs(kappa[1]);
    const double lim2 = std::sqrt(Dmin[1] / Dmax[0]);
    const double lim1 = std::sqrt(Dmin[0] / Dmax[1]);
    if (!(k2 < lim2)) throw InadmissibleGainError(describe("kappa_2 < sqrt(D2min/D1max)", 1, k2, lim2));
    if (!(k1 < lim1)) throw InadmissibleGainError(describe("kappa_1 < sqrt(D1min/D2max)", 0, k1, lim1));
    double mu = kInf;
    if (k1 > 0.0) {
      const double a = std::sqrt(Dmax[1] / Dmin[0]) * k1;
      mu = std::log(1.0 / (a * a)) / (2.0 + dx);
    }
    w.mu = {mu, mu};
    return w;
  }

  w.mu.resize(kappa.size());
  for (std::size_t i = 0; i < kappa.size(); ++i) {
    const double k = std::fabs(kappa[i]);
    double scale = 1.0;
    if (regime == Regime::General) {
      scale = std::sqrt(Dmax.at(i) / Dmin.at(i));
      if (!(k < 1.0 / scale)) {
        throw InadmissibleGainError(describe("kappa < sqrt(Dmin/Dmax)", static_cast<int>(i), k, 1.0 / scale));
      }
    } else if (!(k < 1.0)) {
      throw InadmissibleGainError(describe("kappa < 1", static_cast<int>(i), k, 1.0));
    }
    if (k == 0.0) {
      w.mu[i] = kInf;
    } else {
      const double a = scale * k;
      w.mu[i] = std::log(1.0 / (a * a));
    }
  }
  return w;
}

double theoretical_nu(const LyapunovWeights& weights, const std::vector<double>& Dmin, double dx, double dt,
                      Regime regime) {
  double best = kInf;
  for (std::size_t i = 0; i < weights.mu.size(); ++i) {
    const double mu = weights.mu[i];
    if (std::isinf(mu)) continue;
    best = std::min(best, mu * Dmin.at(i) * std::exp(-mu * dx));
  }
  if (std::isinf(best)) return kInf;
  const double factor = regime == Regime::Linear ? dx / dt : dx / (2.0 * dt);
  return factor * best;
}

double delta_threshold(const std::vector<double>& mu, const std::vector<double>& Dmin,
                       const std::vector<double>& Jmax, double T, double dx, double dt, double epsilon) {
  double third = kInf;
  for (std::size_t i = 0; i < mu.size(); ++i) {
    const double J = Jmax.at(i);
    if (J <= 0.0 || std::isinf(mu[i])) continue;
    third = std::min(third, mu[i] * Dmin.at(i) * std::exp(-T * J) / J);
  }
  if (!std::isinf(third)) third *= dx / (2.0 * dt);
  return std::min({1.0, epsilon, third});
}

LyapunovFunctional::LyapunovFunctional(const LyapunovWeights& weights, const RandomEnsemble& ensemble, double dx,
                                       int first_column, std::vector<double> positions)
    : rho_(ensemble.density),
      scale_(dx * ensemble.dxi),
      first_(first_column),
      components_(static_cast<int>(weights.mu.size())) {
  for (double mu : weights.mu) {
    if (std::isinf(mu)) throw ValidationError("Lyapunov weights are unbounded for zero gains");
  }
  w_.resize(components_);
  for (int i = 0; i < components_; ++i) {
    w_[i].resize(positions.size());
    for (std::size_t j = 0; j < positions.size(); ++j) w_[i][j] = weights.weight(i, positions[j]);
  }
}

LyapunovFunctional LyapunovFunctional::nodal(const LyapunovWeights& weights, const RandomEnsemble& ensemble,
                                             const Mesh& mesh) {
  std::vector<double> x(mesh.cells());
  for (int j = 1; j <= mesh.cells(); ++j) x[j - 1] = mesh.node(j);
  return {weights, ensemble, mesh.dx(), 1, std::move(x)};
}

LyapunovFunctional LyapunovFunctional::cell_centred(const LyapunovWeights& weights, const RandomEnsemble& ensemble,
                                                    const Mesh& mesh) {
  std::vector<double> x(mesh.cells());
  for (int j = 0; j < mesh.cells(); ++j) x[j] = mesh.centre(j);
  return {weights, ensemble, mesh.dx(), 0, std::move(x)};
}

double LyapunovFunctional::node_sum(const FieldBlock& field, int k, bool weighted) const {
  CompensatedSum s;
  const std::size_t n = w_.empty() ? 0 : w_[0].size();
  for (int i = 0; i < components_; ++i) {
    const double* u = field.row(i, k).data() + first_;
    const double* w = w_[i].data();
    for (std::size_t j = 0; j < n; ++j) {
      const double sq = u[j] * u[j];
      s.add(weighted ? sq * w[j] : sq);
    }
  }
  return s.value() * rho_[k];
}

double LyapunovFunctional::operator()(const FieldBlock& field, int workers) const {
  const int K = field.nodes() - 1;
  std::vector<double> partial(K + 1, 0.0);
  parallel_for(K, workers, [&](int idx) { partial[idx + 1] = node_sum(field, idx + 1, true); });
  CompensatedSum total;
  for (int k = 1; k <= K; ++k) total.add(partial[k]);
  return scale_ * total.value();
}

double LyapunovFunctional::unweighted(const FieldBlock& field) const {
  CompensatedSum total;
  for (int k = 1; k < field.nodes(); ++k) total.add(node_sum(field, k, false));
  return scale_ * total.value();
}

double lyapunov_value(const StateField& state, const LyapunovWeights& weights, const RandomEnsemble& ensemble,
                      const Mesh& mesh) {
  return LyapunovFunctional::nodal(weights, ensemble, mesh)(state);
}

void Trajectory::reserve(std::size_t n) {
  t.reserve(n);
  L.reserve(n);
  sup.reserve(n);
  derivative_sup.reserve(n);
}

double empirical_nu(double L0, double LT, double T) {
  if (!(L0 > 0.0)) throw UndefinedRateError("initial Lyapunov value is zero; decay rate undefined");
  if (!(T > 0.0)) throw UndefinedRateError("final time must be positive");
  if (!(LT > 0.0)) return kInf;
  return -std::log(LT / L0) / T;
}

double decay_envelope_error(const Trajectory& traj, double nu) {
  if (traj.size() == 0) throw ValidationError("empty trajectory");
  const double L0 = traj.L.front();
  double E = 0.0;
  for (std::size_t n = 0; n < traj.size(); ++n) {
    E = std::max(E, std::fabs(std::exp(-nu * traj.t[n]) * L0 - traj.L[n]));
  }
  return E;
}

}  // namespace stabfv
