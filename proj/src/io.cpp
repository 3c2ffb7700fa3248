#include "sigflow/io.hpp"

#include <fstream>
#include <sstream>
#include <vector>

namespace sigflow {

namespace {

std::vector<std::string> tokens(const std::string& line) {
  std::istringstream in(line);
  std::vector<std::string> out;
  std::string t;
  while (in >> t) out.push_back(t);
  return out;
}

std::string strip_comment(const std::string& line) {
  auto pos = line.find('#');
  return pos == std::string::npos ? line : line.substr(0, pos);
}

long parse_int(const std::string& s, int line) {
  try {
    size_t used = 0;
    long v = std::stol(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw ParseError(line, "expected an integer, got '" + s + "'");
  }
}

Dir parse_dir(const std::string& s, int line) {
  if (s == "away") return Dir::Away;
  if (s == "toward") return Dir::Toward;
  throw ParseError(line, "expected away|toward, got '" + s + "'");
}

const char* dir_name(Dir d) { return d == Dir::Away ? "away" : "toward"; }

}  // namespace

SgFile parse_sg(std::string_view text) {
  SgFile out;
  std::istringstream in{std::string(text)};
  std::string raw;
  int lineno = 0;
  bool header = false, declared = false;
  int with_dirs = 0, without_dirs = 0;
  Orientation o;
  std::vector<VertexId> holes;
  while (std::getline(in, raw)) {
    ++lineno;
    auto t = tokens(strip_comment(raw));
    if (t.empty()) continue;
    if (!header) {
      if (t.size() != 2 || t[0] != "sg" || t[1] != "1") throw ParseError(lineno, "expected header 'sg 1'");
      header = true;
      continue;
    }
    if (t[0] == "v") {
      if (t.size() != 2 || declared) throw ParseError(lineno, "bad vertex declaration");
      long n = parse_int(t[1], lineno);
      if (n < 0) throw ParseError(lineno, "negative vertex count");
      out.graph = SignedGraph(static_cast<int>(n));
      declared = true;
    } else if (t[0] == "x") {
      if (t.size() != 2 || !declared) throw ParseError(lineno, "bad hole declaration");
      long v = parse_int(t[1], lineno);
      if (!out.graph.has_vertex(static_cast<int>(v))) throw ParseError(lineno, "hole outside vertex range");
      if (out.graph.num_edges() > 0) throw ParseError(lineno, "holes must precede edges");
      out.graph.remove_vertex(static_cast<int>(v));
    } else if (t[0] == "e") {
      if (!declared) throw ParseError(lineno, "edge before vertex declaration");
      if (t.size() != 5 && t.size() != 7) throw ParseError(lineno, "edge line needs 4 or 6 fields");
      long id = parse_int(t[1], lineno), u = parse_int(t[2], lineno), v = parse_int(t[3], lineno);
      Sign s;
      if (t[4] == "+")
        s = Sign::Positive;
      else if (t[4] == "-")
        s = Sign::Negative;
      else
        throw ParseError(lineno, "sign must be + or -");
      try {
        out.graph.add_edge_with_id(static_cast<int>(id), static_cast<int>(u), static_cast<int>(v), s);
      } catch (const ArgumentError& e) {
        throw ParseError(lineno, e.what());
      }
      if (t.size() == 7) {
        ++with_dirs;
        o.set(static_cast<int>(id), parse_dir(t[5], lineno), parse_dir(t[6], lineno));
      } else {
        ++without_dirs;
      }
    } else {
      throw ParseError(lineno, "unknown record '" + t[0] + "'");
    }
  }
  if (!header) throw ParseError(lineno, "missing header 'sg 1'");
  if (!declared) throw ParseError(lineno, "missing vertex declaration");
  if (with_dirs > 0 && without_dirs > 0) throw ParseError(0, "directions given on some edges only");
  if (with_dirs > 0) {
    o.check(out.graph);
    out.orientation = o;
  }
  return out;
}

std::string serialize_sg(const SignedGraph& g, const Orientation* o) {
  std::ostringstream s;
  s << "sg 1\n";
  s << "v " << g.vertex_bound() << "\n";
  for (VertexId v = 0; v < g.vertex_bound(); ++v)
    if (!g.has_vertex(v)) s << "x " << v << "\n";
  for (EdgeId e : g.edges()) {
    const EdgeRecord& r = g.edge(e);
    s << "e " << e << " " << r.u << " " << r.v << " " << (r.sign == Sign::Positive ? '+' : '-');
    if (o) s << " " << dir_name(o->at(e, 0)) << " " << dir_name(o->at(e, 1));
    s << "\n";
  }
  return s.str();
}

IntFlow parse_flow(std::string_view text) {
  IntFlow f;
  std::istringstream in{std::string(text)};
  std::string raw;
  int lineno = 0;
  std::vector<char> seen;
  while (std::getline(in, raw)) {
    ++lineno;
    auto t = tokens(strip_comment(raw));
    if (t.empty()) continue;
    if (t.size() != 2) throw ParseError(lineno, "flow line needs '<edge-id> <value>'");
    long e = parse_int(t[0], lineno), v = parse_int(t[1], lineno);
    if (e < 0) throw ParseError(lineno, "negative edge id");
    if (static_cast<long>(seen.size()) <= e) seen.resize(e + 1, 0);
    if (seen[e]) throw ParseError(lineno, "duplicate edge id");
    seen[e] = 1;
    f[static_cast<int>(e)] = static_cast<int>(v);
  }
  return f;
}

std::string serialize_flow(const SignedGraph& g, const IntFlow& f) {
  std::ostringstream s;
  for (EdgeId e : g.edges()) s << e << " " << f[e] << "\n";
  return s.str();
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ArgumentError("cannot read " + path);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ArgumentError("cannot write " + path);
  out << text;
}

std::uint64_t fnv1a64(std::string_view text) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

}  // namespace sigflow
