#pragma once

#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>

#include "trimatch/graph.hpp"

namespace trimatch {

// Malformed input data. line() is 1-based within the input stream.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& message, std::uint64_t line)
      : std::runtime_error(message + " (line " + std::to_string(line) + ")"),
        line_(line) {}
  std::uint64_t line() const { return line_; }

 private:
  std::uint64_t line_;
};

// File could not be opened, read, or written.
class IoError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

// MatrixMarket coordinate input: `%%MatrixMarket matrix coordinate ...`
// banner, optional %-comment lines, a `rows cols nnz` size line, then nnz
// 1-based `i j [value]` entries. Values are discarded; indices come back
// 0-based; num_vertices_declared = max(rows, cols). Both `general` and
// `symmetric` headers are accepted, since build_graph symmetrizes anyway.
EdgeList parse_matrix_market(std::istream& in);
EdgeList parse_matrix_market_file(const std::string& path);

// Binary CSR cache: 8-byte magic, then version, num_vertices, num_edges,
// row_offsets and neighbors as little-endian fixed-width integers.
void write_csr_cache(const std::string& path, const Graph& g);
Graph read_csr_cache(const std::string& path);
bool is_csr_cache_file(const std::string& path);

// Sniffs the cache magic and dispatches to the cache reader or the
// MatrixMarket parser followed by build_graph.
Graph load_graph(const std::string& path, BuildReport* report = nullptr);

}  // namespace trimatch
