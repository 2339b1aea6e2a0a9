#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>

#include "sumner/directed_tree.hpp"
#include "sumner/tournament.hpp"

namespace sumner::io {

// Tournament text format:
//   tournament n
//   n lines of n characters over {0,1}; char j of line i is 1 iff i→j.
// Tree text format:
//   tree n
//   n-1 lines "u v" meaning u→v.
// Parse failures raise ParseError with 1-based line/column.

Tournament parse_tournament(std::istream& in);
Tournament parse_tournament(const std::string& text);
DirectedTree parse_tree(std::istream& in);
DirectedTree parse_tree(const std::string& text);

std::string format_tournament(const Tournament& g);
std::string format_tree(const DirectedTree& t);

Tournament read_tournament_file(const std::filesystem::path& path);
DirectedTree read_tree_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, const std::string& contents);

} // namespace sumner::io
