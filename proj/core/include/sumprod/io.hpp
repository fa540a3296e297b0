#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "sumprod/applications.hpp"
#include "sumprod/lattice.hpp"
#include "sumprod/set.hpp"

namespace sumprod {

// Text formats. Every reader throws InvalidArgument with `source:line:`
// prefixed to the message. `#` starts a comment; blank lines are skipped.

/// One rational per line; duplicates are an error.
RationalSet read_set(std::istream& in, const std::string& source = "<input>");
RationalSet read_set_file(const std::filesystem::path& path);
void write_set(std::ostream& out, const RationalSet& A);

/// CSV, one integer vector per row; duplicates are an error.
LatticeSet read_lattice(std::istream& in, const std::string& source = "<input>");
LatticeSet read_lattice_file(const std::filesystem::path& path);
void write_lattice(std::ostream& out, const LatticeSet& A);

struct GraphFile {
  std::size_t dimension = 0;
  std::size_t a_size = 0;
  std::size_t b_size = 0;
  EdgeList edges;
};

/// Header `n |A| |B|`, then `i j` rows with 0-based indices.
GraphFile read_graph(std::istream& in, const std::string& source = "<input>");
GraphFile read_graph_file(const std::filesystem::path& path);
void write_graph(std::ostream& out, const GraphFile& g);

/// One `a b c` row per line a x + b y = c.
std::vector<Line> read_lines(std::istream& in, const std::string& source = "<input>");
std::vector<Line> read_lines_file(const std::filesystem::path& path);
void write_lines(std::ostream& out, const std::vector<Line>& lines);

}  // namespace sumprod
