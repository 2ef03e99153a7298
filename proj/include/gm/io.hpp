#pragma once

#include <filesystem>
#include <string>

#include "gm/digraph.hpp"

namespace gm {

// Edge-list text format: first line `n`, then one `u v` pair per line,
// whitespace-separated, 0-indexed. Lines starting with `#` are comments.
DirectedGraph read_edge_list(const std::filesystem::path& path);
void write_edge_list(const DirectedGraph& g, const std::filesystem::path& path);

std::string slurp(const std::filesystem::path& path);

// Write-then-rename so partial outputs are never left behind.
void atomic_write(const std::filesystem::path& path, const std::string& contents);

} // namespace gm
