#include "stabfv/ensemble.hpp"

#include <string>

#include "stabfv/compensated_sum.hpp"
#include "stabfv/error.hpp"

namespace stabfv {

double RandomEnsemble::normalization() const {
  CompensatedSum s;
  for (int k = 1; k <= K; ++k) s.add(density[k]);
  return dxi * s.value();
}

RandomEnsemble uniform_random_ensemble(double sigma, int K) {
  if (!(sigma > 0.0)) throw ValidationError("ensemble half-width sigma must be positive");
  if (K < 1) throw ValidationError("ensemble needs K >= 1, got " + std::to_string(K));

  RandomEnsemble e;
  e.sigma = sigma;
  e.K = K;
  e.dxi = 2.0 * sigma / K;
  e.nodes.resize(K + 1);
  e.density.assign(K + 1, 1.0 / (2.0 * sigma));
  for (int k = 0; k <= K; ++k) {
    // -sigma + 2 sigma k / K hits both endpoints exactly.
    e.nodes[k] = -sigma + 2.0 * sigma * static_cast<double>(k) / K;
  }
  return e;
}

}  // namespace stabfv
