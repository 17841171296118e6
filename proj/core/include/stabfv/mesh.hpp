#pragma once

namespace stabfv {

/// Uniform grid on [0, 1] with nodes x_j = j / M.
class Mesh {
 public:
  explicit Mesh(int cells);

  /// Mesh with spacing closest to `dx`; `1/dx` must be (nearly) an integer.
  static Mesh from_spacing(double dx);

  int cells() const noexcept { return M_; }
  double dx() const noexcept { return dx_; }

  /// Node coordinate; exact at both ends.
  double node(int j) const noexcept { return static_cast<double>(j) / M_; }

  /// Centre of the cell (x_j, x_{j+1}).
  double centre(int j) const noexcept { return (static_cast<double>(j) + 0.5) / M_; }

 private:
  int M_;
  double dx_;
};

}  // namespace stabfv
