#include "meshpatt/force.hpp"

#include <algorithm>
#include <functional>
#include <sstream>
#include <stdexcept>

namespace meshpatt {

void validate_force(const Force& f, int pattern_size) {
  if (static_cast<int>(f.size()) > pattern_size) throw std::invalid_argument("force longer than pattern");
  std::vector<bool> used(static_cast<std::size_t>(pattern_size) + 1, false);
  for (const ForceEntry& e : f) {
    if (e.point < 1 || e.point > pattern_size) {
      throw std::invalid_argument("force point " + std::to_string(e.point) + " out of range");
    }
    if (used[static_cast<std::size_t>(e.point)]) {
      throw std::invalid_argument("force point " + std::to_string(e.point) + " repeated");
    }
    used[static_cast<std::size_t>(e.point)] = true;
  }
}

std::string format_force(const Force& f) {
  std::ostringstream os;
  for (std::size_t i = 0; i < f.size(); ++i) os << (i ? "," : "") << f[i].point << ':' << direction_letter(f[i].dir);
  return os.str();
}

Force parse_force(std::string_view text) {
  Force f;
  std::size_t start = 0;
  while (start < text.size()) {
    const std::size_t end = std::min(text.find(',', start), text.size());
    const std::string_view item = text.substr(start, end - start);
    const std::size_t colon = item.find(':');
    if (colon == std::string_view::npos || colon + 2 != item.size()) {
      throw std::invalid_argument("bad force entry '" + std::string(item) + "'");
    }
    const auto dir = direction_from_letter(item[colon + 1]);
    if (!dir) throw std::invalid_argument("bad direction in '" + std::string(item) + "'");
    int point = 0;
    for (char c : item.substr(0, colon)) {
      if (c < '0' || c > '9') throw std::invalid_argument("bad force point in '" + std::string(item) + "'");
      point = point * 10 + (c - '0');
    }
    if (colon == 0) throw std::invalid_argument("bad force entry '" + std::string(item) + "'");
    f.push_back({point, *dir});
    start = end + 1;
  }
  return f;
}

StrengthVector strength(std::span<const int> host_word, const Occurrence& occ, const Force& f) {
  StrengthVector s;
  s.components.reserve(f.size());
  for (const ForceEntry& e : f) {
    if (e.point < 1 || e.point > occ.size()) throw std::invalid_argument("force point out of range");
    const int index = occ[e.point];
    const int value = host_word[static_cast<std::size_t>(index - 1)];
    switch (e.dir) {
      case Direction::Up: s.components.push_back(value); break;
      case Direction::Down: s.components.push_back(-value); break;
      case Direction::Left: s.components.push_back(-index); break;
      case Direction::Right: s.components.push_back(index); break;
    }
  }
  return s;
}

StrengthVector strength(const Permutation& host, const Occurrence& occ, const Force& f) {
  return strength(host.word(), occ, f);
}

std::vector<Occurrence> strongest_occurrences(const Permutation& host, const ForcedPattern& fp) {
  validate_force(fp.force, fp.pattern.size());
  std::vector<Occurrence> best;
  StrengthVector best_strength;
  for (Occurrence& occ : mesh_occurrences(host, fp.pattern)) {
    StrengthVector s = strength(host, occ, fp.force);
    if (best.empty() || s > best_strength) {
      best.clear();
      best_strength = std::move(s);
      best.push_back(std::move(occ));
    } else if (s == best_strength) {
      best.push_back(std::move(occ));
    }
  }
  return best;
}

Relation compare_wrt_point(const Permutation& host, const Occurrence& u, const Occurrence& v, int point) {
  if (u.size() != v.size()) throw std::invalid_argument("occurrences of different lengths");
  if (point < 1 || point > u.size()) throw std::invalid_argument("point out of range");
  const int ui = u[point], vi = v[point];
  const int uv = host(ui), vv = host(vi);
  return Relation{uv > vv, uv < vv, ui < vi, ui > vi};
}

std::vector<Force> enumerate_forces(int k, int max_size) {
  std::vector<Force> out;
  max_size = std::min(max_size, k);
  for (int size = 0; size <= max_size; ++size) {
    std::vector<int> points;
    std::vector<bool> used(static_cast<std::size_t>(k) + 1, false);
    std::vector<Force> tuples;
    std::function<void()> pick = [&] {
      if (static_cast<int>(points.size()) == size) {
        Force f;
        for (int pt : points) f.push_back({pt, Direction::Up});
        tuples.push_back(std::move(f));
        return;
      }
      for (int pt = 1; pt <= k; ++pt) {
        if (used[static_cast<std::size_t>(pt)]) continue;
        used[static_cast<std::size_t>(pt)] = true;
        points.push_back(pt);
        pick();
        points.pop_back();
        used[static_cast<std::size_t>(pt)] = false;
      }
    };
    pick();
    for (const Force& base : tuples) {
      const std::size_t combos = std::size_t{1} << (2 * base.size());
      for (std::size_t code = 0; code < combos; ++code) {
        Force f = base;
        for (std::size_t e = 0; e < f.size(); ++e) {
          f[e].dir = kDirections[(code >> (2 * (f.size() - 1 - e))) & 3u];
        }
        out.push_back(std::move(f));
      }
    }
  }
  return out;
}

}  // namespace meshpatt
