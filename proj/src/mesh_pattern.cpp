#include "meshpatt/mesh_pattern.hpp"

#include <stdexcept>

namespace meshpatt {

Shading Shading::full(int grid) {
  Shading s;
  for (int b = 0; b < grid * grid; ++b) s.set(b);
  return s;
}

int Shading::highest_bit() const {
  for (int i = kWords - 1; i >= 0; --i)
    if (words_[i]) return 64 * i + 63 - std::countl_zero(words_[i]);
  return -1;
}

MeshPattern::MeshPattern(Permutation pattern, Shading shading)
    : pattern_(std::move(pattern)), shading_(shading) {
  check_size();
  if (shading_.highest_bit() >= num_squares()) {
    throw std::invalid_argument("shading bit out of range for pattern of size " + std::to_string(size()));
  }
}

MeshPattern::MeshPattern(Permutation pattern, const std::vector<Square>& shaded)
    : pattern_(std::move(pattern)) {
  check_size();
  shading_ = make_shading(grid(), shaded);
}

void MeshPattern::check_size() const {
  if (pattern_.size() > Shading::kMaxPatternSize) {
    throw std::invalid_argument("mesh patterns are limited to size " + std::to_string(Shading::kMaxPatternSize));
  }
}

MeshPattern MeshPattern::with_shaded(Square sq) const {
  if (!in_range(sq)) throw std::invalid_argument("square " + to_string(sq) + " out of range");
  MeshPattern r = *this;
  r.shading_.set(bit(sq));
  return r;
}

std::vector<Square> MeshPattern::shaded_squares() const {
  std::vector<Square> out;
  for (int b = 0; b < num_squares(); ++b)
    if (shading_.test(b)) out.push_back(square(b));
  return out;
}

Shading make_shading(int grid, const std::vector<Square>& squares) {
  Shading s;
  for (Square sq : squares) {
    if (sq.col < 0 || sq.row < 0 || sq.col >= grid || sq.row >= grid) {
      throw std::invalid_argument("square " + to_string(sq) + " out of range");
    }
    s.set(sq.col * grid + sq.row);
  }
  return s;
}

std::string to_string(Square sq) { return "[" + std::to_string(sq.col) + "," + std::to_string(sq.row) + "]"; }

}  // namespace meshpatt
