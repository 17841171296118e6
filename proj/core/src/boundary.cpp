#include "stabfv/boundary.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "stabfv/error.hpp"

namespace stabfv {

BoundaryCoupling BoundaryCoupling::same_index(std::vector<double> gains) {
  return {Topology::SameIndex, std::move(gains)};
}

BoundaryCoupling BoundaryCoupling::cross(double kappa1, double kappa2) {
  return {Topology::CrossTwoByTwo, {kappa1, kappa2}};
}

double BoundaryCoupling::spectral_radius() const {
  if (topology == Topology::CrossTwoByTwo) {
    // The loop u1 -> u2 -> u1 multiplies by kappa1 kappa2 per round trip.
    return std::sqrt(std::fabs(kappa.at(0) * kappa.at(1)));
  }
  double r = 0.0;
  for (double k : kappa) r = std::max(r, std::fabs(k));
  return r;
}

void BoundaryCoupling::check(int p, int m) const {
  if (topology == Topology::CrossTwoByTwo) {
    if (p != 2 || m != 1) {
      throw TopologyError("cross-coupled boundaries need p = 2 and m = 1, got p=" + std::to_string(p) +
                          ", m=" + std::to_string(m));
    }
    if (kappa.size() != 2) throw TopologyError("cross-coupled boundaries need exactly two gains");
    return;
  }
  if (static_cast<int>(kappa.size()) != p) {
    throw TopologyError("expected " + std::to_string(p) + " gains, got " + std::to_string(kappa.size()));
  }
}

}  // namespace stabfv
