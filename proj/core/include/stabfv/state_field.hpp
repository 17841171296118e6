#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace stabfv {

/// Dense (component, node, column) block with the column index innermost.
///
/// Rows are indexed by (i, k); each row holds `width()` contiguous values so a
/// whole spatial line for one random node can be handed out as a span.
class FieldBlock {
 public:
  FieldBlock() = default;
  FieldBlock(int components, int width, int nodes);

  int components() const noexcept { return p_; }
  int width() const noexcept { return width_; }
  int nodes() const noexcept { return nk_; }

  double& at(int i, int j, int k) noexcept { return data_[offset(i, k) + j]; }
  double at(int i, int j, int k) const noexcept { return data_[offset(i, k) + j]; }

  std::span<double> row(int i, int k) noexcept {
    return {data_.data() + offset(i, k), static_cast<std::size_t>(width_)};
  }
  std::span<const double> row(int i, int k) const noexcept {
    return {data_.data() + offset(i, k), static_cast<std::size_t>(width_)};
  }

  std::span<double> raw() noexcept { return data_; }
  std::span<const double> raw() const noexcept { return data_; }

  double time = 0.0;

 private:
  std::size_t offset(int i, int k) const noexcept {
    return (static_cast<std::size_t>(i) * nk_ + k) * width_;
  }

  int p_ = 0;
  int width_ = 0;
  int nk_ = 0;
  std::vector<double> data_;
};

/// Point values u^{(i)}_{j,k}, j = 0..M+1, k = 0..K.
///
/// Positive-speed components use j = 0..M and negative-speed components use
/// j = 1..M+1; the remaining slot stays zero.
class StateField : public FieldBlock {
 public:
  StateField() = default;
  StateField(int components, int cells, int K)
      : FieldBlock(components, cells + 2, K + 1), M_(cells) {}

  int cells() const noexcept { return M_; }
  int K() const noexcept { return nodes() - 1; }

  /// True when every entry is finite; reports the first offender otherwise.
  bool all_finite(int* bad_i = nullptr, int* bad_j = nullptr, int* bad_k = nullptr) const;

 private:
  int M_ = 0;
};

/// Cell averages ubar_{j+1/2,k}, stored at column j = 0..M-1.
class CellAverageField : public FieldBlock {
 public:
  CellAverageField() = default;
  CellAverageField(int components, int cells, int K)
      : FieldBlock(components, cells, K + 1) {}

  int cells() const noexcept { return width(); }
  int K() const noexcept { return nodes() - 1; }
};

}  // namespace stabfv
