#include "stabfv/mesh.hpp"

#include <cmath>
#include <string>

#include "stabfv/error.hpp"

namespace stabfv {

BlowUpError::BlowUpError(int component, int j, int k, double t)
    : Error("non-finite value in component " + std::to_string(component) + " at j=" + std::to_string(j) +
            ", k=" + std::to_string(k) + ", t=" + std::to_string(t)),
      component_(component),
      j_(j),
      k_(k),
      t_(t) {}

Mesh::Mesh(int cells) : M_(cells), dx_(0.0) {
  if (cells < 2) throw ValidationError("mesh needs at least 2 cells, got " + std::to_string(cells));
  dx_ = 1.0 / static_cast<double>(cells);
}

Mesh Mesh::from_spacing(double dx) {
  if (!(dx > 0.0) || dx > 0.5) throw ValidationError("mesh spacing must lie in (0, 1/2]");
  const double n = 1.0 / dx;
  const double rounded = std::round(n);
  if (std::fabs(n - rounded) > 1e-6 * rounded) {
    throw ValidationError("1/dx must be an integer, got dx=" + std::to_string(dx));
  }
  return Mesh(static_cast<int>(rounded));
}

}  // namespace stabfv
