#include "sumprod/io.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>
#include <string_view>

#include "sumprod/error.hpp"

namespace sumprod {
namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

// Calls body(content, line_number) for every non-blank line with comments removed.
template <typename Body>
void for_each_line(std::istream& in, const std::string& source, Body body) {
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    std::string_view view = line;
    if (const auto hash = view.find('#'); hash != std::string_view::npos) view = view.substr(0, hash);
    view = trim(view);
    if (view.empty()) continue;
    try {
      body(view, number);
    } catch (const InvalidArgument& e) {
      throw InvalidArgument(source + ":" + std::to_string(number) + ": " + e.what());
    }
  }
}

std::vector<std::string_view> fields(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  if (sep == ' ') {
    while (!(s = trim(s)).empty()) {
      const auto end = s.find_first_of(" \t");
      out.push_back(s.substr(0, end));
      if (end == std::string_view::npos) break;
      s = s.substr(end);
    }
    return out;
  }
  for (;;) {
    const auto pos = s.find(sep);
    out.push_back(trim(s.substr(0, pos)));
    if (pos == std::string_view::npos) break;
    s = s.substr(pos + 1);
  }
  return out;
}

template <typename T>
T parse_integer(std::string_view s) {
  T value{};
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw InvalidArgument("malformed integer '" + std::string(s) + "'");
  }
  return value;
}

std::ifstream open(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot open " + path.string());
  return in;
}

}  // namespace

RationalSet read_set(std::istream& in, const std::string& source) {
  std::set<Rational> seen;
  for_each_line(in, source, [&](std::string_view text, std::size_t) {
    const Rational r = Rational::parse(text);
    if (!seen.insert(r).second) throw InvalidArgument("duplicate element " + r.to_string());
  });
  return RationalSet(std::vector<Rational>(seen.begin(), seen.end()));
}

RationalSet read_set_file(const std::filesystem::path& path) {
  auto in = open(path);
  return read_set(in, path.string());
}

void write_set(std::ostream& out, const RationalSet& A) {
  for (const Rational& a : A) out << a.to_string() << '\n';
}

LatticeSet read_lattice(std::istream& in, const std::string& source) {
  std::set<Point> seen;
  std::size_t dimension = 0;
  for_each_line(in, source, [&](std::string_view text, std::size_t) {
    Point p;
    for (auto f : fields(text, ',')) p.push_back(parse_integer<std::int64_t>(f));
    if (seen.empty()) {
      dimension = p.size();
    } else if (p.size() != dimension) {
      throw InvalidArgument("row has " + std::to_string(p.size()) + " coordinates, expected " +
                            std::to_string(dimension));
    }
    if (!seen.insert(std::move(p)).second) throw InvalidArgument("duplicate point");
  });
  return LatticeSet(dimension, std::vector<Point>(seen.begin(), seen.end()));
}

LatticeSet read_lattice_file(const std::filesystem::path& path) {
  auto in = open(path);
  return read_lattice(in, path.string());
}

void write_lattice(std::ostream& out, const LatticeSet& A) {
  for (const Point& p : A) {
    for (std::size_t i = 0; i < p.size(); ++i) out << (i ? "," : "") << p[i];
    out << '\n';
  }
}

GraphFile read_graph(std::istream& in, const std::string& source) {
  GraphFile g;
  bool header = false;
  for_each_line(in, source, [&](std::string_view text, std::size_t) {
    const auto f = fields(text, ' ');
    if (!header) {
      if (f.size() != 3) throw InvalidArgument("graph header must be `n |A| |B|`");
      g.dimension = parse_integer<std::size_t>(f[0]);
      g.a_size = parse_integer<std::size_t>(f[1]);
      g.b_size = parse_integer<std::size_t>(f[2]);
      header = true;
      return;
    }
    if (f.size() != 2) throw InvalidArgument("edge row must be `i j`");
    const auto i = parse_integer<std::uint32_t>(f[0]);
    const auto j = parse_integer<std::uint32_t>(f[1]);
    if (i >= g.a_size || j >= g.b_size) throw InvalidArgument("edge index out of range");
    g.edges.emplace_back(i, j);
  });
  if (!header) throw InvalidArgument(source + ": missing graph header");
  normalize_edges(g.edges);
  return g;
}

GraphFile read_graph_file(const std::filesystem::path& path) {
  auto in = open(path);
  return read_graph(in, path.string());
}

void write_graph(std::ostream& out, const GraphFile& g) {
  out << g.dimension << ' ' << g.a_size << ' ' << g.b_size << '\n';
  for (const auto& [i, j] : g.edges) out << i << ' ' << j << '\n';
}

std::vector<Line> read_lines(std::istream& in, const std::string& source) {
  std::vector<Line> lines;
  for_each_line(in, source, [&](std::string_view text, std::size_t) {
    const auto f = fields(text, ' ');
    if (f.size() != 3) throw InvalidArgument("line row must be `a b c`");
    Line l{Rational::parse(f[0]), Rational::parse(f[1]), Rational::parse(f[2])};
    classify(l);
    lines.push_back(std::move(l));
  });
  return lines;
}

std::vector<Line> read_lines_file(const std::filesystem::path& path) {
  auto in = open(path);
  return read_lines(in, path.string());
}

void write_lines(std::ostream& out, const std::vector<Line>& lines) {
  for (const Line& l : lines) out << l.a.to_string() << ' ' << l.b.to_string() << ' ' << l.c.to_string() << '\n';
}

}  // namespace sumprod
