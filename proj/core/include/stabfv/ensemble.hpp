#pragma once

#include <vector>

namespace stabfv {

/// Collocation nodes xi_k = -sigma + k * dxi, k = 0..K, with density values.
struct RandomEnsemble {
  double sigma = 0.0;
  int K = 0;
  double dxi = 0.0;
  std::vector<double> nodes;
  std::vector<double> density;

  /// dxi * sum_{k=1..K} rho(xi_k); the functionals skip k = 0.
  double normalization() const;
};

/// Equally spaced nodes on [-sigma, sigma] with rho = 1 / (2 sigma).
RandomEnsemble uniform_random_ensemble(double sigma, int K);

}  // namespace stabfv
