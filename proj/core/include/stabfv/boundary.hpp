#pragma once

#include <vector>

namespace stabfv {

enum class Topology { SameIndex, CrossTwoByTwo };

/// Linear feedback gains closing the inflow boundaries.
///
/// SameIndex: the inflow of component i is kappa[i] times its own outflow.
/// CrossTwoByTwo (p = 2, m = 1): u1(0) = kappa[1] u2(0), u2(1) = kappa[0] u1(1).
struct BoundaryCoupling {
  Topology topology = Topology::SameIndex;
  std::vector<double> kappa;

  static BoundaryCoupling same_index(std::vector<double> gains);
  static BoundaryCoupling cross(double kappa1, double kappa2);

  /// max |kappa_i| for SameIndex, sqrt(|kappa1 kappa2|) for the cross loop.
  double spectral_radius() const;

  /// Throws TopologyError if the coupling does not fit a p-component system.
  void check(int p, int m) const;
};

}  // namespace stabfv
