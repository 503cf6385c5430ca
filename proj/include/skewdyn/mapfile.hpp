#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "skewdyn/algebra.hpp"
#include "skewdyn/oracles.hpp"

// Text format for skew products, one term per line:
//   # comment
//   p <i> <re> [<im>]
//   q <i> <j> <re> [<im>]
// or a single constructor line for the semiconjugate family:
//   builtin semiconjugate <degenerate|nondegenerate> <alpha> <delta> ; h: <k> <re> <im> [<k> <re> <im> ...]
// where the h triples list the monic polynomial h(w) = sum c_k w^k.
namespace skewdyn {

struct MapSource {
    SkewProduct map;
    std::optional<oracles::SemiconjugateSpec> semiconjugate;
};

MapSource parse_map(const std::string& text);
MapSource load_map_file(const std::string& path);

// Canonical text (p lines then q lines in exponent order, coefficients with 17 digits).
std::string format_map(const SkewProduct& f);
// FNV-1a over the canonical text.
std::uint64_t map_hash(const SkewProduct& f);

}  // namespace skewdyn
