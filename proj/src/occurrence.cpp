#include "meshpatt/occurrence.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace meshpatt {

namespace detail {

OrderBounds order_bounds(std::span<const int> patt) {
  const int k = static_cast<int>(patt.size());
  OrderBounds b;
  b.below.assign(static_cast<std::size_t>(k), -1);
  b.above.assign(static_cast<std::size_t>(k), -1);
  for (int j = 0; j < k; ++j) {
    for (int t = 0; t < j; ++t) {
      if (patt[t] < patt[j] && (b.below[j] < 0 || patt[t] > patt[b.below[j]])) b.below[j] = t;
      if (patt[t] > patt[j] && (b.above[j] < 0 || patt[t] < patt[b.above[j]])) b.above[j] = t;
    }
  }
  return b;
}

}  // namespace detail

namespace {

void check_occurrence(int host_size, const Occurrence& occ) {
  for (int i = 0; i < occ.size(); ++i) {
    const int x = occ.indices[static_cast<std::size_t>(i)];
    if (x < 1 || x > host_size || (i > 0 && x <= occ.indices[static_cast<std::size_t>(i - 1)])) {
      throw std::invalid_argument("malformed occurrence " + to_string(occ));
    }
  }
}

// Column/row boundaries of an occurrence: cols[a] is the host position of the
// a-th occurrence point (cols[0] = 0, cols[k+1] = m+1); rows likewise for
// the sorted occurrence values.
struct Frame {
  std::vector<int> cols;
  std::vector<int> rows;
};

Frame frame_of(std::span<const int> host, const Occurrence& occ) {
  const int m = static_cast<int>(host.size());
  const int k = occ.size();
  Frame f;
  f.cols.reserve(static_cast<std::size_t>(k) + 2);
  f.rows.reserve(static_cast<std::size_t>(k) + 2);
  f.cols.push_back(0);
  f.rows.push_back(0);
  for (int x : occ.indices) {
    f.cols.push_back(x);
    f.rows.push_back(host[static_cast<std::size_t>(x - 1)]);
  }
  std::sort(f.rows.begin() + 1, f.rows.end());
  f.cols.push_back(m + 1);
  f.rows.push_back(m + 1);
  return f;
}

// Pattern squares that contain at least one non-occurrence host point.
Shading occupied_squares(std::span<const int> host, const Occurrence& occ) {
  const int m = static_cast<int>(host.size());
  const int k = occ.size();
  const int g = k + 1;
  // col_of[x]: pattern column of host position x; row_of[v]: pattern row of value v.
  std::vector<int> col_of(static_cast<std::size_t>(m) + 1, 0), row_of(static_cast<std::size_t>(m) + 1, 0);
  std::vector<char> in_occ(static_cast<std::size_t>(m) + 1, 0), val_in_occ(static_cast<std::size_t>(m) + 1, 0);
  for (int x : occ.indices) {
    in_occ[static_cast<std::size_t>(x)] = 1;
    val_in_occ[static_cast<std::size_t>(host[static_cast<std::size_t>(x - 1)])] = 1;
  }
  for (int x = 1, c = 0; x <= m; ++x) {
    if (in_occ[static_cast<std::size_t>(x)]) ++c;
    col_of[static_cast<std::size_t>(x)] = c;
  }
  for (int v = 1, r = 0; v <= m; ++v) {
    if (val_in_occ[static_cast<std::size_t>(v)]) ++r;
    row_of[static_cast<std::size_t>(v)] = r;
  }
  Shading occupied;
  for (int x = 1; x <= m; ++x) {
    if (in_occ[static_cast<std::size_t>(x)]) continue;
    const int v = host[static_cast<std::size_t>(x - 1)];
    occupied.set(col_of[static_cast<std::size_t>(x)] * g + row_of[static_cast<std::size_t>(v)]);
  }
  return occupied;
}

}  // namespace

std::string to_string(const Occurrence& occ) {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < occ.indices.size(); ++i) os << (i ? "," : "") << occ.indices[i];
  os << ')';
  return os.str();
}

std::vector<int> occurrence_values(const Permutation& host, const Occurrence& occ) {
  check_occurrence(host.size(), occ);
  std::vector<int> v;
  v.reserve(occ.indices.size());
  for (int x : occ.indices) v.push_back(host(x));
  return v;
}

void for_each_classical_occurrence(std::span<const int> host, std::span<const int> patt,
                                   const std::function<bool(std::span<const int>)>& fn) {
  visit_classical_occurrences(host, patt, fn);
}

std::vector<Occurrence> classical_occurrences(const Permutation& host, const Permutation& patt) {
  std::vector<Occurrence> out;
  visit_classical_occurrences(host.word(), patt.word(), [&](std::span<const int> idx) {
    out.push_back({std::vector<int>(idx.begin(), idx.end())});
    return true;
  });
  return out;
}

Shading shading_allowed_mask(const Permutation& host, const Occurrence& occ) {
  check_occurrence(host.size(), occ);
  const int g = occ.size() + 1;
  return Shading::full(g) - occupied_squares(host.word(), occ);
}

Shading maximal_shading(const MeshPattern& host, const Occurrence& occ) {
  const auto word = host.pattern().word();
  check_occurrence(host.size(), occ);
  const int g = occ.size() + 1;
  const int hg = host.grid();
  const Shading occupied = occupied_squares(word, occ);
  const Frame f = frame_of(word, occ);
  Shading out;
  for (int a = 0; a < g; ++a) {
    for (int b = 0; b < g; ++b) {
      const int bit = a * g + b;
      if (occupied.test(bit)) continue;
      bool all_shaded = true;
      for (int x = f.cols[a]; x < f.cols[a + 1] && all_shaded; ++x)
        for (int y = f.rows[b]; y < f.rows[b + 1]; ++y)
          if (!host.shading().test(x * hg + y)) {
            all_shaded = false;
            break;
          }
      if (all_shaded) out.set(bit);
    }
  }
  return out;
}

std::vector<Occurrence> mesh_occurrences(const Permutation& host, const MeshPattern& p) {
  std::vector<Occurrence> out;
  const int g = p.grid();
  const Shading full = Shading::full(g);
  visit_classical_occurrences(host.word(), p.pattern().word(), [&](std::span<const int> idx) {
    Occurrence occ{std::vector<int>(idx.begin(), idx.end())};
    if (p.shading().is_subset_of(full - occupied_squares(host.word(), occ))) out.push_back(std::move(occ));
    return true;
  });
  return out;
}

bool contains(const Permutation& host, const MeshPattern& p) {
  bool found = false;
  visit_classical_occurrences(host.word(), p.pattern().word(), [&](std::span<const int> idx) {
    Occurrence occ{std::vector<int>(idx.begin(), idx.end())};
    if ((p.shading() & occupied_squares(host.word(), occ)).none()) found = true;
    return !found;
  });
  return found;
}

int count_occurrences(const Permutation& host, const MeshPattern& p) {
  int n = 0;
  visit_classical_occurrences(host.word(), p.pattern().word(), [&](std::span<const int> idx) {
    Occurrence occ{std::vector<int>(idx.begin(), idx.end())};
    if ((p.shading() & occupied_squares(host.word(), occ)).none()) ++n;
    return true;
  });
  return n;
}

std::vector<Occurrence> mesh_in_mesh_occurrences(const MeshPattern& host, const MeshPattern& p) {
  std::vector<Occurrence> out;
  visit_classical_occurrences(host.pattern().word(), p.pattern().word(), [&](std::span<const int> idx) {
    Occurrence occ{std::vector<int>(idx.begin(), idx.end())};
    if (p.shading().is_subset_of(maximal_shading(host, occ))) out.push_back(std::move(occ));
    return true;
  });
  return out;
}

bool contains(const MeshPattern& host, const MeshPattern& p) {
  bool found = false;
  visit_classical_occurrences(host.pattern().word(), p.pattern().word(), [&](std::span<const int> idx) {
    Occurrence occ{std::vector<int>(idx.begin(), idx.end())};
    found = p.shading().is_subset_of(maximal_shading(host, occ));
    return !found;
  });
  return found;
}

std::vector<Square> region_squares(std::span<const int> host_word, const Occurrence& occ, Square sq) {
  check_occurrence(static_cast<int>(host_word.size()), occ);
  const Frame f = frame_of(host_word, occ);
  std::vector<Square> out;
  for (int y = f.rows[static_cast<std::size_t>(sq.row)]; y < f.rows[static_cast<std::size_t>(sq.row) + 1]; ++y)
    for (int x = f.cols[static_cast<std::size_t>(sq.col)]; x < f.cols[static_cast<std::size_t>(sq.col) + 1]; ++x)
      out.push_back({x, y});
  return out;
}

bool region_has_point(std::span<const int> host_word, const Occurrence& occ, Square sq) {
  const Frame f = frame_of(host_word, occ);
  const int x0 = f.cols[static_cast<std::size_t>(sq.col)], x1 = f.cols[static_cast<std::size_t>(sq.col) + 1];
  const int y0 = f.rows[static_cast<std::size_t>(sq.row)], y1 = f.rows[static_cast<std::size_t>(sq.row) + 1];
  for (int x = x0 + 1; x < x1; ++x) {
    const int v = host_word[static_cast<std::size_t>(x - 1)];
    if (v > y0 && v < y1) return true;
  }
  return false;
}

}  // namespace meshpatt
