#include "stabfv/state_field.hpp"

#include <cmath>

#include "stabfv/error.hpp"

namespace stabfv {

FieldBlock::FieldBlock(int components, int width, int nodes)
    : p_(components), width_(width), nk_(nodes) {
  if (components < 1 || width < 1 || nodes < 1) throw ValidationError("field dimensions must be positive");
  data_.assign(static_cast<std::size_t>(components) * width * nodes, 0.0);
}

bool StateField::all_finite(int* bad_i, int* bad_j, int* bad_k) const {
  for (int i = 0; i < components(); ++i) {
    for (int k = 0; k < nodes(); ++k) {
      const auto r = row(i, k);
      for (int j = 0; j < width(); ++j) {
        if (!std::isfinite(r[j])) {
          if (bad_i) *bad_i = i;
          if (bad_j) *bad_j = j;
          if (bad_k) *bad_k = k;
          return false;
        }
      }
    }
  }
  return true;
}

}  // namespace stabfv
