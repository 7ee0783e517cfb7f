#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "meshpatt/mesh_pattern.hpp"
#include "meshpatt/permutation.hpp"

namespace meshpatt {

// Pattern text format: "<word>:<mesh-int>" or a bare "<word>". The word is
// written in digits, or comma separated when the pattern has 10 or more
// points. Bit i of the mesh integer shades square (i / (k+1), i mod (k+1)).

Permutation parse_permutation(std::string_view text);

// Throws std::invalid_argument on a non-permutation word, a malformed integer
// or a set bit at index >= (k+1)^2.
MeshPattern parse_pattern(std::string_view text);

std::string format_pattern(const MeshPattern& p);

// Decimal rendering of the shading bit mask.
std::string mesh_int_string(const Shading& s);

// Inverse of mesh_int_string; throws std::invalid_argument on non-digits or
// overflow past Shading::kMaxBits.
Shading parse_mesh_int(std::string_view text);

// Comma separated list of permutations, e.g. "1234,1243".
std::vector<Permutation> parse_permutation_list(std::string_view text);

}  // namespace meshpatt
