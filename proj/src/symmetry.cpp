#include "meshpatt/symmetry.hpp"

#include <utility>

namespace meshpatt {

const std::array<Symmetry, 8>& all_symmetries() {
  static const std::array<Symmetry, 8> all = [] {
    std::array<Symmetry, 8> a{};
    for (int m = 0; m < 8; ++m) a[static_cast<std::size_t>(m)] = Symmetry{(m & 4) != 0, (m & 2) != 0, (m & 1) != 0};
    return a;
  }();
  return all;
}

// inverse . reverse = complement . inverse, so moving the inverse past the
// reflections swaps them.
Symmetry inverse_of(Symmetry s) {
  if (!s.inverse) return s;
  return Symmetry{true, s.complement, s.reverse};
}

Symmetry compose(Symmetry a, Symmetry b) {
  // a(b(x)) = C^ac R^ar I^ai C^bc R^br I^bi x. Push I^ai rightwards.
  bool r = b.reverse, c = b.complement;
  if (a.inverse) std::swap(r, c);
  return Symmetry{a.inverse != b.inverse, a.reverse != r, a.complement != c};
}

Permutation apply_symmetry(const Permutation& p, Symmetry s) {
  Permutation r = s.inverse ? p.inverse() : p;
  if (s.reverse) r = r.reverse();
  if (s.complement) r = r.complement();
  return r;
}

Square apply_symmetry(Square sq, int k, Symmetry s) {
  if (s.inverse) std::swap(sq.col, sq.row);
  if (s.reverse) sq.col = k - sq.col;
  if (s.complement) sq.row = k - sq.row;
  return sq;
}

MeshPattern apply_symmetry(const MeshPattern& p, Symmetry s) {
  const int k = p.size();
  Shading out;
  const int g = p.grid();
  for (const Square sq : p.shaded_squares()) {
    const Square t = apply_symmetry(sq, k, s);
    out.set(t.col * g + t.row);
  }
  return MeshPattern(apply_symmetry(p.pattern(), s), out);
}

std::string to_string(Symmetry s) {
  if (!s.inverse && !s.reverse && !s.complement) return "identity";
  std::string out;
  auto add = [&](const char* name) {
    if (!out.empty()) out += "*";
    out += name;
  };
  if (s.complement) add("complement");
  if (s.reverse) add("reverse");
  if (s.inverse) add("inverse");
  return out;
}

}  // namespace meshpatt
