#include "trimatch/io.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <charconv>
#include <cstring>
#include <fstream>
#include <istream>
#include <sstream>
#include <string>
#include <string_view>

namespace trimatch {

namespace {

constexpr std::array<char, 8> kCsrMagic = {'T', 'R', 'I', 'M', 'C', 'S', 'R', '1'};
constexpr std::uint64_t kCsrVersion = 1;

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

bool iequals(std::string_view a, std::string_view b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (std::tolower(static_cast<unsigned char>(a[i])) !=
        std::tolower(static_cast<unsigned char>(b[i])))
      return false;
  }
  return true;
}

std::vector<std::string_view> split_ws(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    std::size_t j = i;
    while (j < s.size() && !std::isspace(static_cast<unsigned char>(s[j]))) ++j;
    if (j > i) out.push_back(s.substr(i, j - i));
    i = j;
  }
  return out;
}

std::uint64_t parse_index(std::string_view tok, std::uint64_t line, const char* what) {
  std::uint64_t value = 0;
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
  if (ec != std::errc{} || ptr != tok.data() + tok.size()) {
    throw ParseError(std::string("expected integer ") + what + ", got '" +
                         std::string(tok) + "'",
                     line);
  }
  return value;
}

void put_u64_le(std::ostream& out, std::uint64_t v) {
  char buf[8];
  for (int i = 0; i < 8; ++i) buf[i] = static_cast<char>((v >> (8 * i)) & 0xFF);
  out.write(buf, 8);
}

void put_u32_le(std::ostream& out, std::uint32_t v) {
  char buf[4];
  for (int i = 0; i < 4; ++i) buf[i] = static_cast<char>((v >> (8 * i)) & 0xFF);
  out.write(buf, 4);
}

std::uint64_t get_u64_le(std::istream& in) {
  char buf[8];
  in.read(buf, 8);
  std::uint64_t v = 0;
  for (int i = 0; i < 8; ++i)
    v |= static_cast<std::uint64_t>(static_cast<unsigned char>(buf[i])) << (8 * i);
  return v;
}

std::uint32_t get_u32_le(std::istream& in) {
  char buf[4];
  in.read(buf, 4);
  std::uint32_t v = 0;
  for (int i = 0; i < 4; ++i)
    v |= static_cast<std::uint32_t>(static_cast<unsigned char>(buf[i])) << (8 * i);
  return v;
}

}  // namespace

EdgeList parse_matrix_market(std::istream& in) {
  std::string raw;
  std::uint64_t line_no = 0;

  if (!std::getline(in, raw)) throw ParseError("empty input", 1);
  ++line_no;
  auto banner = split_ws(trim(raw));
  if (banner.size() < 3 || !iequals(banner[0], "%%MatrixMarket") ||
      !iequals(banner[1], "matrix") || !iequals(banner[2], "coordinate")) {
    throw ParseError("malformed MatrixMarket banner", line_no);
  }

  // Size line: first non-comment, non-blank line after the banner.
  std::uint64_t rows = 0, cols = 0, nnz = 0;
  for (;;) {
    if (!std::getline(in, raw)) throw ParseError("missing size line", line_no + 1);
    ++line_no;
    auto s = trim(raw);
    if (s.empty() || s.front() == '%') continue;
    auto tok = split_ws(s);
    if (tok.size() != 3) throw ParseError("size line must be 'rows cols nnz'", line_no);
    rows = parse_index(tok[0], line_no, "row count");
    cols = parse_index(tok[1], line_no, "column count");
    nnz = parse_index(tok[2], line_no, "entry count");
    break;
  }

  const std::uint64_t declared = std::max(rows, cols);
  if (declared > kInvalidVertex) throw ParseError("vertex count exceeds 32-bit id range", line_no);

  EdgeList result;
  result.num_vertices_declared = static_cast<VertexId>(declared);
  result.edges.reserve(nnz);

  std::uint64_t seen = 0;
  while (seen < nnz) {
    if (!std::getline(in, raw)) {
      throw ParseError("expected " + std::to_string(nnz) + " entries, got " +
                           std::to_string(seen),
                       line_no + 1);
    }
    ++line_no;
    auto s = trim(raw);
    if (s.empty() || s.front() == '%') continue;
    auto tok = split_ws(s);
    if (tok.size() < 2) throw ParseError("entry needs at least 'i j'", line_no);
    std::uint64_t i = parse_index(tok[0], line_no, "row index");
    std::uint64_t j = parse_index(tok[1], line_no, "column index");
    if (i < 1 || i > rows || j < 1 || j > cols) {
      throw ParseError("entry index out of declared range", line_no);
    }
    // Trailing value field(s) ignored.
    result.edges.emplace_back(static_cast<VertexId>(i - 1), static_cast<VertexId>(j - 1));
    ++seen;
  }

  // Only comments and blank lines may follow the last entry.
  while (std::getline(in, raw)) {
    ++line_no;
    auto s = trim(raw);
    if (!s.empty() && s.front() != '%') {
      throw ParseError("unexpected content after " + std::to_string(nnz) + " entries", line_no);
    }
  }

  return result;
}

EdgeList parse_matrix_market_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path + "' for reading");
  return parse_matrix_market(in);
}

void write_csr_cache(const std::string& path, const Graph& g) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  out.write(kCsrMagic.data(), kCsrMagic.size());
  put_u64_le(out, kCsrVersion);
  put_u64_le(out, g.num_vertices());
  put_u64_le(out, g.num_edges());
  for (std::uint64_t off : g.row_offsets()) put_u64_le(out, off);
  for (VertexId v : g.neighbor_array()) put_u32_le(out, v);
  if (!out) throw IoError("write failed for '" + path + "'");
}

bool is_csr_cache_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return false;
  std::array<char, 8> magic{};
  in.read(magic.data(), magic.size());
  return in.gcount() == static_cast<std::streamsize>(magic.size()) && magic == kCsrMagic;
}

Graph read_csr_cache(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path + "' for reading");
  std::array<char, 8> magic{};
  in.read(magic.data(), magic.size());
  if (in.gcount() != static_cast<std::streamsize>(magic.size()) || magic != kCsrMagic) {
    throw ParseError("bad CSR cache magic", 1);
  }
  if (get_u64_le(in) != kCsrVersion) throw ParseError("unsupported CSR cache version", 1);
  const std::uint64_t nv = get_u64_le(in);
  const std::uint64_t ne = get_u64_le(in);
  if (!in || nv > kInvalidVertex) throw ParseError("corrupt CSR cache header", 1);

  std::vector<std::uint64_t> offsets(nv + 1);
  for (auto& off : offsets) off = get_u64_le(in);
  std::vector<VertexId> nbrs(2 * ne);
  for (auto& v : nbrs) v = get_u32_le(in);
  if (!in) throw ParseError("truncated CSR cache", 1);

  // Validate the invariants the rest of the engine relies on.
  if (offsets.front() != 0 || offsets.back() != 2 * ne ||
      !std::is_sorted(offsets.begin(), offsets.end())) {
    throw ParseError("corrupt CSR cache offsets", 1);
  }
  for (std::uint64_t u = 0; u < nv; ++u) {
    for (std::uint64_t k = offsets[u]; k < offsets[u + 1]; ++k) {
      if (nbrs[k] >= nv || nbrs[k] == u ||
          (k > offsets[u] && nbrs[k - 1] >= nbrs[k])) {
        throw ParseError("corrupt CSR cache adjacency", 1);
      }
    }
  }
  return Graph(static_cast<VertexId>(nv), ne, std::move(offsets), std::move(nbrs));
}

Graph load_graph(const std::string& path, BuildReport* report) {
  if (is_csr_cache_file(path)) {
    if (report != nullptr) *report = BuildReport{};
    return read_csr_cache(path);
  }
  return build_graph(parse_matrix_market_file(path), report);
}

}  // namespace trimatch
