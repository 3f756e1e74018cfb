#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "dyext/mixing.hpp"
#include "dyext/permutation.hpp"

namespace dyext {

/// Header line `rank=k rows=R [kind=square|discrete] [weights=w1,...]`.
/// A discrete header without weights gets equal weights.
GridGeometry parse_header(std::string_view line);
std::string format_header(const GridGeometry& geometry);

enum class PermutationStyle { cycles, explicit_map };

/// Header, then any mix of cycle lines `(1 11 5 3)(13 15)` over 1-based
/// row-major labels and explicit lines `col,row -> col,row`. Cells not
/// mentioned are fixed; `#` starts a comment.
CellPermutation parse_permutation(std::string_view text);
std::string format_permutation(const CellPermutation& p, PermutationStyle style = PermutationStyle::cycles);

/// Header, then one `column,row` line per cell.
DyadicSet parse_dyadic_set(std::string_view text);
std::string format_dyadic_set(const DyadicSet& set);

/// Header, then one rational per cell in row-major order (any whitespace).
GridFunction parse_grid_function(std::string_view text);
std::string format_grid_function(const GridFunction& f);

/// Throws ParseError when the file cannot be read.
std::string read_text_file(const std::filesystem::path& path);
/// Throws Error when the file cannot be written.
void write_text_file(const std::filesystem::path& path, const std::string& content);

}  // namespace dyext
