#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "stabfv/error.hpp"
#include "stabfv/lyapunov.hpp"
#include "stabfv/problems.hpp"
#include "stabfv/simulate.hpp"
#include "stabfv/upwind.hpp"

using namespace stabfv;

namespace {

// Reference values evaluated from the closed forms, independent of the library.
const double kLambda1 = 2.5 + std::sqrt(40.0);
const double kLambda2 = std::sqrt(40.0) - 2.5;  // |Lambda_2|

double oracle_mu_linear(double kappa) { return -2.0 * std::log(std::fabs(kappa)); }

double oracle_nu_linear(double speed, double mu, double dx) { return speed * mu * std::exp(-mu * dx); }

LyapunovWeights weights_of(std::vector<double> mu, int m) {
  LyapunovWeights w;
  w.mu = std::move(mu);
  w.m = m;
  return w;
}

}  // namespace

TEST(LyapunovValue, ZeroStateIsZero) {
  const Mesh mesh(10);
  const auto ens = uniform_random_ensemble(1.0, 8);
  StateField f(2, 10, 8);
  EXPECT_EQ(lyapunov_value(f, weights_of({0.3, 0.4}, 1), ens, mesh), 0.0);
}

TEST(LyapunovValue, HandSum) {
  const auto ens = uniform_random_ensemble(1.0, 1);
  ASSERT_DOUBLE_EQ(ens.dxi, 2.0);
  const LyapunovFunctional L(weights_of({0.0}, 1), ens, 1.0, 1, {1.0});
  StateField f(1, 1, 1);
  f.at(0, 1, 1) = 1.0;
  f.at(0, 1, 0) = 5.0;  // k = 0 is outside the quadrature
  f.at(0, 0, 1) = 7.0;  // inflow slot is outside the spatial sum
  EXPECT_EQ(L(f), 1.0);
}

TEST(LyapunovValue, MatchesDirectTripleSum) {
  const Mesh mesh(12);
  const auto ens = uniform_random_ensemble(0.7, 9);
  const auto w = weights_of({0.4, 0.9}, 1);
  StateField f(2, 12, 9);
  std::mt19937_64 rng(3);
  std::normal_distribution<double> nd;
  for (double& v : f.raw()) v = nd(rng);
  long double direct = 0.0L;
  for (int i = 0; i < 2; ++i)
    for (int j = 1; j <= 12; ++j)
      for (int k = 1; k <= 9; ++k) {
        const double x = mesh.node(j);
        const double wt = i == 0 ? std::exp(-0.4 * x) : std::exp(0.9 * x);
        direct += static_cast<long double>(f.at(i, j, k)) * f.at(i, j, k) * wt * ens.density[k];
      }
  direct *= static_cast<long double>(mesh.dx()) * ens.dxi;
  EXPECT_NEAR(lyapunov_value(f, w, ens, mesh), static_cast<double>(direct), 1e-14 * static_cast<double>(direct));
}

TEST(LyapunovValue, SandwichBetweenWeightedBounds) {
  const Mesh mesh(40);
  const auto ens = uniform_random_ensemble(1.0, 20);
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> ud(-1.0, 1.0);
  for (int m : {2, 1}) {
    const auto w = weights_of({0.575, 1.3}, m);
    StateField f(2, 40, 20);
    for (double& v : f.raw()) v = ud(rng);
    const auto func = LyapunovFunctional::nodal(w, ens, mesh);
    const double L = func(f);
    const double W = func.unweighted(f);
    double lo = 1e300, hi = 0.0;
    for (int i = 0; i < 2; ++i) {
      lo = std::min({lo, w.weight(i, mesh.node(1)), w.weight(i, 1.0)});
      hi = std::max({hi, w.weight(i, mesh.node(1)), w.weight(i, 1.0)});
    }
    if (m == 2) {
      EXPECT_DOUBLE_EQ(lo, std::exp(-1.3));
      EXPECT_LE(hi, 1.0);
    }
    EXPECT_LE(lo * W, L);
    EXPECT_LE(L, hi * W);
  }
}

TEST(LyapunovValue, WorkerCountDoesNotChangeBits) {
  const Mesh mesh(50);
  const auto ens = uniform_random_ensemble(2.0, 100);
  StateField f(2, 50, 100);
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> ud(-3.0, 3.0);
  for (double& v : f.raw()) v = ud(rng);
  const auto func = LyapunovFunctional::nodal(weights_of({0.44, 0.44}, 1), ens, mesh);
  const double ref = func(f, 1);
  for (int w : {2, 3, 7}) EXPECT_EQ(func(f, w), ref);
}

TEST(LyapunovValue, CellCentredPositions) {
  const Mesh mesh(4);
  const auto ens = uniform_random_ensemble(1.0, 2);
  CellAverageField avg(1, 4, 2);
  for (int k = 0; k <= 2; ++k) avg.at(0, 0, k) = 1.0;
  const auto func = LyapunovFunctional::cell_centred(weights_of({2.0}, 1), ens, mesh);
  // two nodes k = 1, 2 with rho = 1/2, dxi = 1, dx = 1/4, value 1 at x = 1/8
  EXPECT_NEAR(func(avg), 0.25 * 1.0 * std::exp(-2.0 * 0.125), 1e-16);
}

TEST(LyapunovValue, UnboundedWeightsRejected) {
  const auto w = admissible_mu({0.0}, {1.0}, {1.0}, Regime::Linear, 0.01, 1);
  EXPECT_TRUE(w.unbounded());
  EXPECT_TRUE(std::isinf(theoretical_nu(w, {1.0}, 0.01, 0.01, Regime::Linear)));
  EXPECT_THROW(LyapunovFunctional::nodal(w, uniform_random_ensemble(1.0, 4), Mesh(4)), ValidationError);
}

TEST(Weights, Orientation) {
  const auto w = weights_of({0.5, 0.5}, 1);
  EXPECT_DOUBLE_EQ(w.weight(0, 1.0), std::exp(-0.5));
  EXPECT_DOUBLE_EQ(w.weight(1, 1.0), std::exp(0.5));
  EXPECT_EQ(w.weight(0, 0.0), 1.0);
}

TEST(AdmissibleMu, LinearGain) {
  const auto w = admissible_mu({0.75}, {1.0}, {1.0}, Regime::Linear, 0.01, 1);
  EXPECT_NEAR(w.mu[0], oracle_mu_linear(0.75), 1e-15);
  EXPECT_NEAR(w.mu[0], 0.575364, 5e-7);
}

TEST(AdmissibleMu, NegativeGainOfSameMagnitude) {
  const auto a = admissible_mu({0.75}, {1.0}, {1.0}, Regime::Linear, 0.01, 1);
  const auto b = admissible_mu({-0.75}, {1.0}, {1.0}, Regime::Linear, 0.01, 1);
  EXPECT_EQ(a.mu[0], b.mu[0]);
}

TEST(AdmissibleMu, UnitGainLimit) {
  const auto w = admissible_mu({1.0 - 1e-9}, {1.0}, {1.0}, Regime::Linear, 0.01, 1);
  EXPECT_GT(w.mu[0], 0.0);
  EXPECT_LT(w.mu[0], 1e-8);
  EXPECT_THROW(admissible_mu({1.0}, {1.0}, {1.0}, Regime::Linear, 0.01, 1), InadmissibleGainError);
}

TEST(AdmissibleMu, GeneralRegimeBound) {
  const std::vector<double> Dmin{0.5}, Dmax{0.8};
  const double limit = std::sqrt(0.5 / 0.8);
  const auto w = admissible_mu({0.6}, Dmin, Dmax, Regime::General, 0.01, 1);
  const double a = std::sqrt(0.8 / 0.5) * 0.6;
  EXPECT_NEAR(w.mu[0], -2.0 * std::log(a), 1e-15);
  EXPECT_THROW(admissible_mu({limit}, Dmin, Dmax, Regime::General, 0.01, 1), InadmissibleGainError);
  try {
    admissible_mu({0.9}, Dmin, Dmax, Regime::General, 0.01, 1);
    FAIL();
  } catch (const InadmissibleGainError& e) {
    EXPECT_NE(std::string(e.what()).find("sqrt(Dmin/Dmax)"), std::string::npos);
  }
}

TEST(AdmissibleMu, CrossExampleFive) {
  const double D2 = kLambda2 / kLambda1;
  // The worked values are quoted to six digits; the exact evaluation sits 4e-6 away.
  EXPECT_NEAR(D2, 0.433400, 1e-6);
  const auto w = admissible_mu({0.6, 0.6}, {1.0, D2}, {1.0, D2}, Regime::Cross, 0.01, 1);
  const double oracle = -2.0 * std::log(std::sqrt(D2 / 1.0) * 0.6) / 2.01;
  EXPECT_NEAR(w.mu[0], oracle, 1e-14);
  EXPECT_NEAR(w.mu[0], 0.924248, 5e-6);
  EXPECT_EQ(w.mu[0], w.mu[1]);
}

TEST(AdmissibleMu, CrossInequalitiesNamed) {
  const double D2 = kLambda2 / kLambda1;
  try {
    admissible_mu({0.6, 0.7}, {1.0, D2}, {1.0, D2}, Regime::Cross, 0.01, 1);
    FAIL();
  } catch (const InadmissibleGainError& e) {
    EXPECT_NE(std::string(e.what()).find("kappa_2"), std::string::npos);
  }
  EXPECT_THROW(admissible_mu({0.6}, {1.0}, {1.0}, Regime::Cross, 0.01, 1), TopologyError);
}

TEST(TheoreticalNu, ExampleOne) {
  const double mu = oracle_mu_linear(0.75);
  const auto w = admissible_mu({0.75}, {1.0}, {1.0}, Regime::Linear, 0.01, 1);
  const double nu = theoretical_nu(w, {1.0}, 0.01, 0.01, Regime::Linear);
  EXPECT_NEAR(nu, oracle_nu_linear(1.0, mu, 0.01), 1e-15);
  EXPECT_NEAR(nu, 0.572063, 5e-7);
  EXPECT_NEAR(nu, 0.5721, 1e-4);
}

TEST(TheoreticalNu, ExampleThreeWithLandingStep) {
  const auto grid = cfl_time_step(kLambda1, 0.01, 1.0, 6.0);
  const std::vector<double> Dmin{grid.dt * kLambda1 / 0.01, grid.dt * kLambda2 / 0.01};
  const auto w = admissible_mu({0.8, 0.8}, Dmin, Dmin, Regime::Linear, 0.01, 1);
  EXPECT_NEAR(w.mu[0], 0.446287, 5e-7);
  const double nu = theoretical_nu(w, Dmin, 0.01, grid.dt, Regime::Linear);
  EXPECT_NEAR(nu, oracle_nu_linear(kLambda2, w.mu[1], 0.01), 1e-12);
  EXPECT_NEAR(nu, 1.699, 1e-3);
}

TEST(TheoreticalNu, ExampleFiveCross) {
  const double D2 = kLambda2 / kLambda1;
  const double dt = 0.01 / kLambda1;
  const auto w = admissible_mu({0.6, 0.6}, {1.0, D2}, {1.0, D2}, Regime::Cross, 0.01, 1);
  const double nu = theoretical_nu(w, {1.0, D2}, 0.01, dt, Regime::Cross);
  EXPECT_NEAR(0.01 / (2.0 * dt), 4.41228, 5e-6);
  const double oracle = kLambda1 / 2.0 * w.mu[0] * D2 * std::exp(-w.mu[0] * 0.01);
  EXPECT_NEAR(nu, oracle, 1e-12);
  EXPECT_NEAR(nu, 1.7512, 1e-4);
}

TEST(TheoreticalNu, GeneralRegimeHasHalfFactor) {
  const auto w = weights_of({0.5}, 1);
  const double lin = theoretical_nu(w, {0.8}, 0.01, 0.005, Regime::Linear);
  const double gen = theoretical_nu(w, {0.8}, 0.01, 0.005, Regime::General);
  EXPECT_DOUBLE_EQ(lin, 2.0 * gen);
}

TEST(DeltaThreshold, LinearSystemIsOneOrEpsilon) {
  EXPECT_EQ(delta_threshold({0.5}, {1.0}, {0.0}, 12.0, 0.01, 0.01, 0.3), 0.3);
  EXPECT_EQ(delta_threshold({0.5}, {1.0}, {0.0}, 12.0, 0.01, 0.01, std::numeric_limits<double>::infinity()), 1.0);
}

TEST(DeltaThreshold, UnitCase) {
  EXPECT_EQ(delta_threshold({1.0}, {1.0}, {1.0}, 0.0, 0.02, 0.01, std::numeric_limits<double>::infinity()), 1.0);
}

TEST(DeltaThreshold, NonlinearTermDecaysWithHorizon) {
  const double got = delta_threshold({0.5, 0.5}, {1.0, 0.4}, {2.0, 3.0}, 1.0, 0.01, 0.001, 10.0);
  const double oracle = 5.0 * std::min(0.5 * 1.0 * std::exp(-2.0) / 2.0, 0.5 * 0.4 * std::exp(-3.0) / 3.0);
  EXPECT_NEAR(got, oracle, 1e-15);
}

TEST(EmpiricalNu, LogarithmIdentity) {
  EXPECT_NEAR(empirical_nu(1.0, std::exp(-12.0), 12.0), 1.0, 1e-15);
  EXPECT_THROW(empirical_nu(0.0, 0.0, 12.0), UndefinedRateError);
  EXPECT_THROW(empirical_nu(1.0, 0.5, 0.0), UndefinedRateError);
  EXPECT_TRUE(std::isinf(empirical_nu(1.0, 0.0, 1.0)));
}

TEST(EnvelopeError, ExactEnvelopeGivesZero) {
  Trajectory t;
  for (int n = 0; n <= 10; ++n) {
    t.t.push_back(0.1 * n);
    t.L.push_back(3.0 * std::exp(-0.7 * 0.1 * n));
  }
  EXPECT_NEAR(decay_envelope_error(t, 0.7), 0.0, 1e-15);
  t.L[4] += 0.25;
  EXPECT_NEAR(decay_envelope_error(t, 0.7), 0.25, 1e-15);
  EXPECT_THROW(decay_envelope_error(Trajectory{}, 1.0), ValidationError);
}

// Discrete decay on every admissible linear upwind configuration.
class DecayOnLinearRuns : public ::testing::TestWithParam<int> {};

TEST_P(DecayOnLinearRuns, PerStepAndEnvelope) {
  const int id = GetParam();
  for (double sigma : {0.5, 2.0}) {
    const auto res = simulate(make_example(id, sigma, 1.0 / 100));
    const auto& L = res.trajectory.L;
    const double nu = res.report.nu;
    const double dt = res.grid.dt;
    ASSERT_TRUE(std::isfinite(nu));
    for (std::size_t n = 0; n + 1 < L.size(); ++n) {
      ASSERT_LE(L[n + 1], (1.0 - nu * dt) * L[n] + 1e-12 * L[0]) << "example " << id << " step " << n;
    }
    for (std::size_t n = 0; n < L.size(); ++n) {
      ASSERT_LE(L[n], std::exp(-nu * res.trajectory.t[n]) * L[0] * (1.0 + 1e-10)) << "example " << id;
    }
  }
}

INSTANTIATE_TEST_SUITE_P(UpwindLinear, DecayOnLinearRuns, ::testing::Values(1, 2, 3, 4, 5, 8));

TEST(NormEquivalence, HoldsAlongExampleThree) {
  const auto cfg = make_example(3, 1.0, 1.0 / 50);
  const Mesh mesh(50);
  const auto ens = uniform_random_ensemble(1.0, 40);
  const auto grid = cfl_time_step(cfg.system, mesh, 1.0, 1.0);
  const auto D = courant_bounds(cfg.system, mesh, grid.dt);
  const auto w = admissible_mu(cfg.bc.kappa, D.Dmin, D.Dmax, Regime::Linear, mesh.dx(), 1);
  const auto func = LyapunovFunctional::nodal(w, ens, mesh);
  const UpwindSolver solver(cfg.system, cfg.bc, mesh, grid.dt);
  StateField f = initial_state(cfg, mesh, ens);
  const double lo = std::min(std::exp(-w.mu[0]), w.weight(1, mesh.node(1)));
  const double hi = std::max(w.weight(0, mesh.node(1)), std::exp(w.mu[1]));
  for (int n = 0; n <= grid.steps; ++n) {
    const double L = func(f);
    const double W = func.unweighted(f);
    ASSERT_LE(lo * W, L * (1.0 + 1e-14));
    ASSERT_LE(L, hi * W * (1.0 + 1e-14));
    if (n < grid.steps) solver.step(f);
  }
}

TEST(EmpiricalRate, SigmaInvarianceForExampleOne) {
  std::vector<double> nus, Es;
  for (double sigma : {0.5, 1.0, 2.0}) {
    const auto res = simulate(make_example(1, sigma, 1.0 / 100));
    nus.push_back(res.report.nu_emp);
    Es.push_back(res.report.E);
  }
  EXPECT_NEAR(nus[1], nus[0], 1e-10 * nus[0]);
  EXPECT_NEAR(nus[2], nus[0], 1e-10 * nus[0]);
  EXPECT_NEAR(Es[1] / Es[0], 4.0, 0.08);
  EXPECT_NEAR(Es[2] / Es[1], 4.0, 0.08);
}

TEST(EmpiricalRate, GapShrinksUnderRefinementForExamplesOneAndTwo) {
  for (int id : {1, 2}) {
    double previous = std::numeric_limits<double>::infinity();
    for (int M : {100, 200, 400}) {
      const auto res = simulate(make_example(id, 0.5, 1.0 / M));
      const double gap = std::fabs(res.report.nu_emp - res.report.nu);
      EXPECT_LT(gap, previous) << "example " << id << " M=" << M;
      previous = gap;
    }
  }
}
