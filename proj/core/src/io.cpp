#include "nilcomp/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "nilcomp/error.hpp"

namespace nilcomp::io {

namespace {

std::string trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return std::string(s);
}

// Non-empty lines with comments removed.
std::vector<std::string> content_lines(std::string_view text) {
  std::vector<std::string> out;
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (!line.empty()) out.push_back(line);
  }
  return out;
}

std::vector<std::string> tokens(std::string_view text) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : text) {
    if (std::isspace(static_cast<unsigned char>(c)) || c == ',' || c == '(' || c == ')' || c == '[' || c == ']') {
      if (!cur.empty()) out.push_back(std::move(cur));
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  if (!cur.empty()) out.push_back(std::move(cur));
  return out;
}

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : line) {
    if (c == sep) {
      out.push_back(trim(cur));
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  out.push_back(trim(cur));
  return out;
}

std::map<std::string, std::string> sections(std::string_view text) {
  std::map<std::string, std::string> out;
  std::string current;
  for (const auto& line : content_lines(text)) {
    if (line.front() == '[' && line.back() == ']' && line.find_first_of("0123456789") == std::string::npos) {
      current = trim(std::string_view(line).substr(1, line.size() - 2));
      out[current];
      continue;
    }
    out[current] += line + "\n";
  }
  return out;
}

const std::string& section(const std::map<std::string, std::string>& s, const std::string& name) {
  auto it = s.find(name);
  if (it == s.end()) fail(ErrorKind::Parse, "missing section [" + name + "]");
  return it->second;
}

// "key: value" prefix test.
std::optional<std::string> header(const std::string& line, const std::string& key) {
  if (line.rfind(key + ":", 0) != 0) return std::nullopt;
  return trim(std::string_view(line).substr(key.size() + 1));
}

std::vector<std::int64_t> int_list(std::string_view text) {
  std::vector<std::int64_t> out;
  for (const auto& t : tokens(text)) out.push_back(to_int64(parse_integer(t)));
  return out;
}

MultiIndex parse_index(const std::string& text) {
  MultiIndex t;
  for (const auto& tok : tokens(text)) {
    const Integer v = parse_integer(tok);
    if (v < 0) fail(ErrorKind::Parse, "negative multi-index entry in '" + text + "'");
    t.push_back(static_cast<unsigned>(to_int64(v)));
  }
  return t;
}

std::string render_index(const MultiIndex& t) {
  std::string s;
  for (std::size_t i = 0; i < t.size(); ++i) s += (i ? "," : "") + std::to_string(t[i]);
  return s.empty() ? "()" : s;
}

std::size_t square_root(std::size_t n, const std::string& what) {
  std::size_t r = 0;
  while (r * r < n) ++r;
  if (r * r != n || r == 0) fail(ErrorKind::Parse, what + " needs a square number of entries, got " + std::to_string(n));
  return r;
}

}  // namespace

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorKind::Parse, "cannot read " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

std::string format_double(double x) {
  if (std::abs(x) < 5e-16) x = 0.0;
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.15g", x);
  return buf;
}

FiniteAbelianGroup parse_group(std::string_view text) {
  std::string body;
  for (const auto& line : content_lines(text)) body += line + " ";
  body = trim(body);
  if (auto h = header(body, "group")) body = *h;
  if (body.empty() || body.front() != '[' || body.back() != ']')
    fail(ErrorKind::Parse, "group must be written as [d1,d2,...]");
  return FiniteAbelianGroup(int_list(body));
}

std::string render_group(const FiniteAbelianGroup& g) {
  std::string s = "[";
  for (std::size_t i = 0; i < g.moduli().size(); ++i) s += (i ? "," : "") + std::to_string(g.moduli()[i]);
  return s + "]";
}

ComplexTable parse_table(const FiniteAbelianGroup& group, std::string_view text) {
  std::vector<Complex> values(group.order());
  std::vector<bool> seen(group.order(), false);
  for (const auto& line : content_lines(text)) {
    if (header(line, "group")) continue;
    const auto parts = split(line, ';');
    if (parts.size() != 3) fail(ErrorKind::Parse, "table line needs 'coords ; re ; im': " + line);
    const std::size_t index = group.index_of(group.element(int_list(parts[0])));
    try {
      values[index] = Complex(std::stod(parts[1]), std::stod(parts[2]));
    } catch (const std::exception&) {
      fail(ErrorKind::Parse, "bad number in table line: " + line);
    }
    if (seen[index]) fail(ErrorKind::Parse, "duplicate table entry: " + line);
    seen[index] = true;
  }
  for (std::size_t i = 0; i < seen.size(); ++i)
    if (!seen[i]) {
      std::string c;
      for (auto v : group.element_at(i).coords) c += (c.empty() ? "" : ",") + std::to_string(v);
      fail(ErrorKind::Parse, "table has no value for element " + c);
    }
  return ComplexTable(group, std::move(values));
}

std::string render_table(const ComplexTable& t) {
  std::string out;
  for (std::size_t i = 0; i < t.size(); ++i) {
    std::string c;
    for (auto v : t.group().element_at(i).coords) c += (c.empty() ? "" : ",") + std::to_string(v);
    out += c + " ; " + format_double(t[i].real()) + " ; " + format_double(t[i].imag()) + "\n";
  }
  return out;
}

AbelianHom parse_hom(std::string_view text, const std::optional<FiniteAbelianGroup>& source,
                     const std::optional<FiniteAbelianGroup>& target) {
  std::optional<FiniteAbelianGroup> src = source, dst = target;
  std::vector<std::vector<std::int64_t>> rows;
  for (const auto& line : content_lines(text)) {
    if (auto h = header(line, "source")) {
      if (!src) src = parse_group(*h);
      continue;
    }
    if (auto h = header(line, "target")) {
      if (!dst) dst = parse_group(*h);
      continue;
    }
    rows.push_back(int_list(line));
  }
  if (!src || !dst) fail(ErrorKind::Parse, "hom needs source and target groups");
  return AbelianHom(*src, *dst, std::move(rows));
}

UnipotentMatrix parse_matrix(std::string_view text) {
  std::vector<Rational> entries;
  for (const auto& t : tokens(text)) entries.push_back(parse_rational(t));
  const std::size_t r = square_root(entries.size(), "matrix");
  return UnipotentMatrix::from_entries(r, std::move(entries));
}

std::string render_matrix(const UnipotentMatrix& g) { return to_string(g); }

FilteredLattice parse_lattice(std::string_view text) {
  const auto lines = content_lines(text);
  if (lines.empty()) fail(ErrorKind::Parse, "empty lattice description");
  const auto head = tokens(lines[0]);
  if (head.size() == 2 && head[0] == "lcs") {
    const auto r = static_cast<std::size_t>(to_int64(parse_integer(head[1])));
    std::vector<Integer> den;
    if (lines.size() > 1) {
      for (std::size_t i = 1; i < lines.size(); ++i)
        for (const auto& t : tokens(lines[i])) den.push_back(parse_integer(t));
    }
    return FilteredLattice::lower_central(r, std::move(den));
  }
  if (head.size() != 2) fail(ErrorKind::Parse, "lattice header must be 'dim degree' or 'lcs dim'");
  const auto r = static_cast<std::size_t>(to_int64(parse_integer(head[0])));
  const int k = static_cast<int>(to_int64(parse_integer(head[1])));
  std::vector<Integer> values;
  for (std::size_t i = 1; i < lines.size(); ++i)
    for (const auto& t : tokens(lines[i])) values.push_back(parse_integer(t));
  if (values.size() != r * r && values.size() != 2 * r * r)
    fail(ErrorKind::Parse, "lattice needs " + std::to_string(r * r) + " levels and optionally as many denominators");
  std::vector<int> levels;
  for (std::size_t i = 0; i < r * r; ++i) levels.push_back(static_cast<int>(to_int64(values[i])));
  std::vector<Integer> den(values.begin() + static_cast<std::ptrdiff_t>(r * r), values.end());
  return FilteredLattice(r, k, std::move(levels), std::move(den));
}

std::string render_lattice(const FilteredLattice& fl) {
  const std::size_t r = fl.dim();
  std::string out = std::to_string(r) + " " + std::to_string(fl.degree()) + "\n";
  for (std::size_t i = 0; i < r; ++i) {
    for (std::size_t j = 0; j < r; ++j) out += (j ? " " : "") + std::to_string(fl.level(i, j));
    out += "\n";
  }
  for (std::size_t i = 0; i < r; ++i) {
    for (std::size_t j = 0; j < r; ++j) out += (j ? " " : "") + to_string(fl.denominator(i, j));
    out += "\n";
  }
  return out;
}

PolyMap parse_polymap(std::string_view text) {
  const auto s = sections(text);
  const FilteredLattice fl = parse_lattice(section(s, "lattice"));
  std::optional<std::size_t> arity;
  std::map<MultiIndex, UnipotentMatrix> coeffs;
  for (const auto& line : content_lines(section(s, "map"))) {
    if (auto h = header(line, "arity")) {
      arity = static_cast<std::size_t>(to_int64(parse_integer(*h)));
      continue;
    }
    const auto parts = split(line, ';');
    if (parts.size() != 2) fail(ErrorKind::Parse, "map line needs 't ; matrix': " + line);
    MultiIndex t = parts[0] == "()" ? MultiIndex{} : parse_index(parts[0]);
    if (!arity) arity = t.size();
    if (!coeffs.emplace(std::move(t), parse_matrix(parts[1])).second)
      fail(ErrorKind::Parse, "duplicate coefficient: " + line);
  }
  if (!arity) fail(ErrorKind::Parse, "map has neither an arity line nor coefficients");
  return PolyMap(fl, *arity, coeffs);
}

std::string render_polymap(const PolyMap& pm) {
  std::string out = "[lattice]\n" + render_lattice(pm.ambient()) + "[map]\narity: " + std::to_string(pm.arity()) + "\n";
  for (std::size_t i = 0; i < pm.indices().size(); ++i) {
    if (i > 0 && pm.coefficients()[i].is_identity()) continue;
    out += render_index(pm.indices()[i]) + " ; " + render_matrix(pm.coefficients()[i]) + "\n";
  }
  return out;
}

AbelianPolyMap parse_abelian_polymap(std::string_view text) {
  std::size_t torus = 0, arity = 0;
  unsigned degree = 0;
  FiniteAbelianGroup finite;
  std::vector<std::pair<MultiIndex, std::pair<std::vector<Rational>, std::vector<std::int64_t>>>> raw;
  for (const auto& line : content_lines(text)) {
    if (auto h = header(line, "torus")) {
      torus = static_cast<std::size_t>(to_int64(parse_integer(*h)));
    } else if (auto h2 = header(line, "finite")) {
      finite = parse_group(*h2);
    } else if (auto h3 = header(line, "arity")) {
      arity = static_cast<std::size_t>(to_int64(parse_integer(*h3)));
    } else if (auto h4 = header(line, "degree")) {
      degree = static_cast<unsigned>(to_int64(parse_integer(*h4)));
    } else {
      const auto parts = split(line, ';');
      if (parts.size() != 3) fail(ErrorKind::Parse, "abelian map line needs 't ; torus ; finite': " + line);
      std::vector<Rational> tor;
      for (const auto& tok : tokens(parts[1])) tor.push_back(parse_rational(tok));
      raw.push_back({parts[0] == "()" ? MultiIndex{} : parse_index(parts[0]), {tor, int_list(parts[2])}});
    }
  }
  CALGroup group(torus, finite);
  std::map<MultiIndex, CALPoint> coeffs;
  for (auto& [t, v] : raw) coeffs.emplace(t, group.point(v.first, v.second));
  return AbelianPolyMap(group, arity, degree, coeffs);
}

std::string render_abelian_polymap(const AbelianPolyMap& m) {
  std::string out = "torus: " + std::to_string(m.target().torus_dim()) + "\nfinite: " +
                    render_group(m.target().finite()) + "\narity: " + std::to_string(m.arity()) +
                    "\ndegree: " + std::to_string(m.degree()) + "\n";
  for (std::size_t i = 0; i < m.indices().size(); ++i) {
    const auto& c = m.coefficients()[i];
    if (i > 0 && c == m.target().zero()) continue;
    std::string tor, fin;
    for (const auto& x : c.torus) tor += (tor.empty() ? "" : " ") + to_string(x);
    for (auto x : c.finite.coords) fin += (fin.empty() ? "" : " ") + std::to_string(x);
    out += render_index(m.indices()[i]) + " ; " + tor + " ; " + fin + "\n";
  }
  return out;
}

std::pair<FilteredLattice, CubeConfig> parse_cube(std::string_view text) {
  const auto s = sections(text);
  FilteredLattice fl = parse_lattice(section(s, "lattice"));
  std::vector<std::pair<std::string, UnipotentMatrix>> raw;
  for (const auto& line : content_lines(section(s, "cube"))) {
    const auto parts = split(line, ';');
    if (parts.size() != 2) fail(ErrorKind::Parse, "cube line needs 'vertex ; matrix': " + line);
    raw.emplace_back(parts[0], parse_matrix(parts[1]));
  }
  if (raw.empty()) fail(ErrorKind::Parse, "cube has no vertices");
  const auto n = static_cast<unsigned>(raw.front().first.size());
  if (n > max_cube_dimension) fail(ErrorKind::TooLarge, "cube dimension exceeds the cap");
  CubeConfig cube{n, std::vector<UnipotentMatrix>(std::size_t{1} << n, UnipotentMatrix::identity(fl.dim()))};
  std::vector<bool> seen(cube.values.size(), false);
  for (auto& [v, g] : raw) {
    const Vertex x = parse_vertex(v, n);
    if (seen[x]) fail(ErrorKind::Parse, "duplicate vertex " + v);
    seen[x] = true;
    cube.values[x] = std::move(g);
  }
  for (Vertex x = 0; x < seen.size(); ++x)
    if (!seen[x]) fail(ErrorKind::Parse, "cube has no value at vertex " + vertex_string(x, n));
  return {std::move(fl), std::move(cube)};
}

FibrationDatum parse_fibration(std::string_view text) {
  const auto s = sections(text);
  FilteredLattice y = parse_lattice(section(s, "Y"));
  FilteredLattice x = parse_lattice(section(s, "X"));
  const auto lines = content_lines(section(s, "Psi"));
  if (lines.size() == 1 && lines[0] == "identity") {
    if (!(x == y)) fail(ErrorKind::InvalidArgument, "identity fibration needs X = Y");
    return FibrationDatum::identity(y);
  }
  if (lines.size() == 1 && lines[0] == "project") return FibrationDatum::projection(y, x);
  RatMatrix psi(lines.size(), y.positions().size());
  for (std::size_t i = 0; i < lines.size(); ++i) {
    const auto row = tokens(lines[i]);
    if (row.size() != psi.cols())
      fail(ErrorKind::Parse, "Psi row " + std::to_string(i + 1) + " needs " + std::to_string(psi.cols()) + " entries");
    for (std::size_t j = 0; j < row.size(); ++j) psi(i, j) = parse_rational(row[j]);
  }
  return FibrationDatum(std::move(y), std::move(x), std::move(psi));
}

FrequencySpec parse_frequency(std::string_view text, const FilteredLattice& lattice) {
  const auto s = sections(text);
  auto it = s.find("frequencies");
  const std::string& body = it != s.end() ? it->second : section(s, "");
  std::vector<Integer> freq;
  for (const auto& t : tokens(body)) freq.push_back(parse_integer(t));
  return FrequencySpec(lattice, std::move(freq));
}

std::vector<UnipotentMatrix> parse_matrix_list(std::string_view text) {
  std::vector<UnipotentMatrix> out;
  for (const auto& line : content_lines(text)) out.push_back(parse_matrix(line));
  return out;
}

std::string render_report(const Report& report) {
  std::string out;
  for (const auto& [k, v] : report) out += k + ": " + v + "\n";
  return out;
}

}  // namespace nilcomp::io
