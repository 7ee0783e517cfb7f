#include "meshpatt/text_format.hpp"

#include <algorithm>
#include <cctype>
#include <stdexcept>

namespace meshpatt {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

int parse_int(std::string_view s) {
  if (s.empty() || s.size() > 6 || !std::all_of(s.begin(), s.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); })) {
    throw std::invalid_argument("bad integer '" + std::string(s) + "'");
  }
  return std::stoi(std::string(s));
}

// Multiplies the 256-bit little-endian value by 10 and adds `digit`; returns
// false on overflow.
bool mul10_add(std::array<std::uint64_t, Shading::kWords>& v, unsigned digit) {
  unsigned __int128 carry = digit;
  for (auto& w : v) {
    const unsigned __int128 x = static_cast<unsigned __int128>(w) * 10u + carry;
    w = static_cast<std::uint64_t>(x);
    carry = x >> 64;
  }
  return carry == 0;
}

}  // namespace

Permutation parse_permutation(std::string_view text) {
  text = trim(text);
  std::vector<int> word;
  if (text.find(',') != std::string_view::npos) {
    std::size_t start = 0;
    while (start <= text.size()) {
      const std::size_t end = std::min(text.find(',', start), text.size());
      word.push_back(parse_int(trim(text.substr(start, end - start))));
      start = end + 1;
    }
  } else {
    for (char c : text) {
      if (!std::isdigit(static_cast<unsigned char>(c))) throw std::invalid_argument("bad permutation '" + std::string(text) + "'");
      word.push_back(c - '0');
    }
  }
  return Permutation(std::move(word));
}

MeshPattern parse_pattern(std::string_view text) {
  text = trim(text);
  const std::size_t colon = text.find(':');
  Permutation perm = parse_permutation(text.substr(0, colon));
  if (colon == std::string_view::npos) return MeshPattern(std::move(perm));
  const Shading s = parse_mesh_int(text.substr(colon + 1));
  const int g = perm.size() + 1;
  if (s.highest_bit() >= g * g) {
    throw std::invalid_argument("mesh integer has bit " + std::to_string(s.highest_bit()) + " set; pattern of size " +
                                std::to_string(perm.size()) + " has only " + std::to_string(g * g) + " squares");
  }
  return MeshPattern(std::move(perm), s);
}

std::string format_pattern(const MeshPattern& p) {
  return p.pattern().to_string() + ":" + mesh_int_string(p.shading());
}

std::string mesh_int_string(const Shading& s) {
  std::array<std::uint64_t, Shading::kWords> v{};
  for (int i = 0; i < Shading::kWords; ++i) v[static_cast<std::size_t>(i)] = s.word(i);
  std::string digits;
  auto is_zero = [&] { return std::all_of(v.begin(), v.end(), [](std::uint64_t w) { return w == 0; }); };
  if (is_zero()) return "0";
  while (!is_zero()) {
    unsigned __int128 rem = 0;
    for (int i = Shading::kWords - 1; i >= 0; --i) {
      const unsigned __int128 cur = (rem << 64) | v[static_cast<std::size_t>(i)];
      v[static_cast<std::size_t>(i)] = static_cast<std::uint64_t>(cur / 10);
      rem = cur % 10;
    }
    digits.push_back(static_cast<char>('0' + static_cast<int>(rem)));
  }
  std::reverse(digits.begin(), digits.end());
  return digits;
}

Shading parse_mesh_int(std::string_view text) {
  text = trim(text);
  if (text.empty()) throw std::invalid_argument("empty mesh integer");
  std::array<std::uint64_t, Shading::kWords> v{};
  for (char c : text) {
    if (!std::isdigit(static_cast<unsigned char>(c))) throw std::invalid_argument("bad mesh integer '" + std::string(text) + "'");
    if (!mul10_add(v, static_cast<unsigned>(c - '0'))) throw std::invalid_argument("mesh integer too large");
  }
  Shading s;
  for (int i = 0; i < Shading::kMaxBits; ++i)
    if ((v[static_cast<std::size_t>(i / 64)] >> (i % 64)) & 1u) s.set(i);
  return s;
}

std::vector<Permutation> parse_permutation_list(std::string_view text) {
  std::vector<Permutation> out;
  text = trim(text);
  if (text.empty()) return out;
  std::size_t start = 0;
  while (start <= text.size()) {
    const std::size_t end = std::min(text.find(',', start), text.size());
    out.push_back(parse_permutation(trim(text.substr(start, end - start))));
    start = end + 1;
  }
  return out;
}

}  // namespace meshpatt
