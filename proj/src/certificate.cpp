#include "sigflow/certificate.hpp"

#include <cstdio>
#include <map>
#include <set>
#include <sstream>

#include "sigflow/io.hpp"

namespace sigflow {

namespace {

std::string hex64(std::uint64_t x) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(x));
  return buf;
}

std::string input_hash(const SignedGraph& g, const Orientation& o) { return hex64(fnv1a64(serialize_sg(g, &o))); }

std::string uncontract_line(const ReductionStep& s) {
  if (s.kind != ReductionStep::Kind::Uncontract) return "reduce-split";
  const Uncontraction& u = s.uncontract;
  return "uncontract " + std::to_string(u.v) + " " + std::to_string(u.e) + " " + std::to_string(u.e2) + " " +
         std::to_string(u.new_vertex) + " " + std::to_string(u.new_edge);
}

void put_map(std::ostringstream& out, const char* tag, const SignedGraph& g, const IntFlow& f) {
  for (EdgeId e : g.edges()) out << tag << ' ' << e << ' ' << f[e] << '\n';
}

std::vector<std::string> split_lines(std::string_view text) {
  std::vector<std::string> out;
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    out.push_back(line);
  }
  return out;
}

std::vector<std::string> words(const std::string& line) {
  std::istringstream in(line);
  std::vector<std::string> out;
  std::string w;
  while (in >> w) out.push_back(w);
  return out;
}

bool same_oriented(const SignedGraph& a, const Orientation& oa, const SignedGraph& b, const Orientation& ob) {
  if (!(a == b)) return false;
  for (EdgeId e : a.edges())
    if (oa.at(e, 0) != ob.at(e, 0) || oa.at(e, 1) != ob.at(e, 1)) return false;
  return true;
}

bool same_values(const SignedGraph& g, const IntFlow& a, const IntFlow& b) {
  for (EdgeId e : g.edges())
    if (a[e] != b[e]) return false;
  return true;
}

struct RawPiece {
  int id = -1;
  std::string kind;
  int parent = -1;
  std::string graph;
  std::vector<std::string> body;
  SignedGraph g;
  Orientation o;
  IntFlow flow;
};

IntFlow read_values(const std::vector<std::string>& body, const std::string& tag) {
  IntFlow f;
  for (const std::string& line : body) {
    auto w = words(line);
    if (w.size() == 3 && w[0] == tag) f[std::stoi(w[1])] = std::stoi(w[2]);
  }
  return f;
}

void check(bool cond, const std::string& what) {
  if (!cond) throw InvariantViolation(what);
}

void replay_constructive(const RawPiece& p) {
  CycleList cl = parse_cycle_list(p.g, p.body);
  CycleListVerdict cv = validate_cycle_list(p.g, cl);
  check(cv.accepted, "cycle list rejected (" + cv.rule + "): " + cv.detail);

  const ParityGraph star = subdivide_for_parity(p.g, p.o, cl);
  ParityGraph pg = star;
  const std::vector<char> sw = normalize_cycle_signature(pg.g, pg.o, pg.cl);
  Z3Assignment phi;
  for (const std::string& line : p.body) {
    auto w = words(line);
    if (w.size() == 3 && w[0] == "phi") phi[std::stoi(w[1])] = Z3(std::stoi(w[2]));
  }
  PreflowAudit pa = audit_preflow(pg.g, pg.o, pg.cl, phi);
  check(pa.ok(), "preflow audit: " + pa.detail);

  const NormalizedPreflow np = normalize_preflow(pg.g, pg.o, phi);
  const AuxiliaryGraph aux = build_auxiliary(np.g, np.o, np.phi);
  std::vector<EdgeId> matching;
  std::set<EdgeId> used;
  for (const std::string& line : p.body) {
    auto w = words(line);
    if (w.size() != 3 || w[0] != "match") continue;
    VertexId u = std::stoi(w[1]), v = std::stoi(w[2]);
    check(aux.h.has_vertex(u) && aux.h.has_vertex(v), "match names an unknown vertex");
    EdgeId found = -1;
    for (EdgeId e : aux.h.incident(u))
      if (aux.h.edge(e).other(u) == v && !used.count(e)) {
        found = e;
        break;
      }
    check(found >= 0, "match " + w[1] + " " + w[2] + " is not an auxiliary edge");
    used.insert(found);
    matching.push_back(found);
  }
  check(is_perfect_matching(aux.h, matching), "recorded matching is not perfect");

  std::vector<Cycle> odd;
  std::vector<VertexId> xs;
  for (size_t i = 0; i < pg.cl.size(); ++i)
    if (pg.cl[i].kind == CycleKind::NegativeOrdinary && pg.designated[i] >= 0) {
      odd.push_back(pg.cl[i].cycle);
      xs.push_back(pg.designated[i]);
    }
  HypothesisReport hr = check_matching_hypotheses(aux, odd, xs);
  for (const auto& item : hr.items) check(item.holds, "matching hypothesis " + item.name + ": " + item.detail);

  const IntFlow psi = read_values(p.body, "psi");
  const IntFlow tau = read_values(p.body, "tau");
  const IntFlow fstar = read_values(p.body, "fstar");
  std::string why;
  check(check_int_preflow(np.g, np.o, np.phi, psi, &why), "psi: " + why);
  check(check_tau(np.g, np.o, pg, psi, tau, &why), "tau: " + why);
  for (EdgeId e : np.g.edges()) check(fstar[e] == 2 * psi[e] + tau[e], "fstar differs from 2psi+tau");
  FlowVerdict fv = verify_flow(np.g, np.o, fstar, 8);
  check(fv.accepted, "fstar: " + fv.message());

  std::vector<char> flags(star.g.vertex_bound(), 0);
  for (VertexId v : star.g.vertices()) flags[v] = static_cast<char>(sw[v] ^ np.switched[v]);
  IntFlow f = transport_flow(star.g, star.o, np.o, flags, fstar);
  SignedGraph gs = star.g;
  Orientation os = star.o;
  for (auto it = star.subdivisions.rbegin(); it != star.subdivisions.rend(); ++it)
    smooth_degree2_vertex(gs, os, f, it->x);
  check(gs == p.g, "smoothing does not restore the piece");
  check(same_values(p.g, transport_flow(p.g, p.o, os, {}, f), p.flow), "piece flow is not the smoothed fstar");
}

}  // namespace

std::string write_certificate(const SignedGraph& g, const Orientation& o, const SynthesisResult& r,
                              std::uint64_t seed) {
  std::ostringstream out;
  out << "cert 1\n";
  out << "input " << input_hash(g, o) << '\n';
  out << "seed " << seed << '\n';
  out << "route " << route_name(r.route) << '\n';
  out << "reduced " << (r.reduced ? 1 : 0) << '\n';
  for (const ReductionStep& s : r.reduction.steps) out << uncontract_line(s) << '\n';
  out << "pieces " << r.pieces.size() << '\n';
  for (const Piece& p : r.pieces) {
    out << "piece " << p.id << ' ' << piece_kind_name(p.kind) << ' ' << p.parent << '\n';
    out << "graph-begin\n" << serialize_sg(p.g, &p.o) << "graph-end\n";
    if (p.kind == PieceKind::Split) {
      out << "cut " << p.cut.cut[0] << ' ' << p.cut.cut[1] << ' ' << p.cut.cut[2] << " y";
      for (VertexId v : p.cut.y) out << ' ' << v;
      out << "\nchild " << p.child << '\n';
      for (EdgeId e = 0; e < p.x_flow.bound(); ++e)
        if (p.x_flow[e] != 0) out << "xflow " << e << ' ' << p.x_flow[e] << '\n';
    }
    if (p.kind == PieceKind::Constructive) {
      const ConstructiveTrace& t = p.trace;
      for (const std::string& line : serialize_cycle_list(t.cl)) out << line << '\n';
      for (EdgeId e : t.pg.g.edges()) out << "phi " << e << ' ' << t.phi[e].value() << '\n';
      for (EdgeId e : t.matching) out << "match " << t.aux.h.edge(e).u << ' ' << t.aux.h.edge(e).v << '\n';
      put_map(out, "psi", t.normalized.g, t.psi);
      put_map(out, "tau", t.normalized.g, t.tau);
      put_map(out, "fstar", t.normalized.g, t.f_star);
    }
    put_map(out, "flow", p.g, p.flow);
    out << "piece-end\n";
  }
  put_map(out, "result", g, r.flow);
  for (const StageAudit& a : r.audits)
    out << "audit " << a.name << ' ' << (a.ok ? "ok" : "fail") << (a.detail.empty() ? "" : " " + a.detail) << '\n';
  out << "end\n";
  return out.str();
}

std::string ReplayVerdict::first_failure() const {
  for (const StageAudit& s : stages)
    if (!s.ok) return s.name + ": " + s.detail;
  return "";
}

ReplayVerdict replay_certificate(const SignedGraph& g, const Orientation& o, std::string_view cert) {
  ReplayVerdict rv;
  auto stage = [&](const std::string& name, const std::function<void()>& body) {
    StageAudit a{name, true, ""};
    try {
      body();
    } catch (const std::exception& e) {
      a.ok = false;
      a.detail = e.what();
    }
    if (!a.ok) rv.ok = false;
    rv.stages.push_back(a);
    return a.ok;
  };

  const std::vector<std::string> lines = split_lines(cert);
  size_t i = 0;
  std::map<std::string, std::string> header;
  std::vector<std::string> reduce_lines;
  std::vector<RawPiece> pieces;
  IntFlow result;
  bool parsed = stage("parse", [&] {
    if (lines.empty() || lines[0] != "cert 1") throw ParseError(1, "expected 'cert 1'");
    for (i = 1; i < lines.size(); ++i) {
      auto w = words(lines[i]);
      if (w.empty()) continue;
      if (w[0] == "uncontract" || w[0] == "reduce-split") {
        reduce_lines.push_back(lines[i]);
      } else if (w[0] == "piece") {
        if (w.size() != 4) throw ParseError(static_cast<int>(i + 1), "piece line needs id, kind, parent");
        RawPiece p;
        p.id = std::stoi(w[1]);
        p.kind = w[2];
        p.parent = std::stoi(w[3]);
        if (p.id != static_cast<int>(pieces.size())) throw ParseError(static_cast<int>(i + 1), "pieces out of order");
        ++i;
        if (i >= lines.size() || lines[i] != "graph-begin") throw ParseError(static_cast<int>(i + 1), "expected graph-begin");
        for (++i; i < lines.size() && lines[i] != "graph-end"; ++i) p.graph += lines[i] + "\n";
        for (++i; i < lines.size() && lines[i] != "piece-end"; ++i) p.body.push_back(lines[i]);
        if (i >= lines.size()) throw ParseError(static_cast<int>(i), "unterminated piece");
        SgFile f = parse_sg(p.graph);
        if (!f.orientation) throw ParseError(static_cast<int>(i), "piece graph lacks an orientation");
        p.g = std::move(f.graph);
        p.o = std::move(*f.orientation);
        p.flow = read_values(p.body, "flow");
        pieces.push_back(std::move(p));
      } else if (w[0] == "result" && w.size() == 3) {
        result[std::stoi(w[1])] = std::stoi(w[2]);
      } else if (w.size() >= 2 && w[0] != "audit") {
        header[w[0]] = w[1];
      }
    }
    if (pieces.empty()) throw ParseError(0, "no pieces");
  });
  if (!parsed) return rv;
  rv.route = header["route"];
  rv.flow = result;

  stage("input-hash", [&] { check(header["input"] == input_hash(g, o), "input hash mismatch"); });

  const bool reduced = header["reduced"] == "1";
  stage("reduction", [&] {
    if (!reduced) {
      check(reduce_lines.empty(), "unreduced certificate lists reduction steps");
      check(same_oriented(pieces[0].g, pieces[0].o, g, o), "root piece is not the input");
      return;
    }
    CubicReduction red = uncontract_to_cubic(g);
    std::vector<std::string> expect;
    for (const ReductionStep& s : red.steps) expect.push_back(uncontract_line(s));
    check(expect == reduce_lines, "reduction steps differ");
    check(same_oriented(pieces[0].g, pieces[0].o, red.cubic, extend_orientation(o, red.steps)),
          "root piece is not the cubic reduction");
  });

  // Children are recorded after their parents, so walk backwards.
  for (int k = static_cast<int>(pieces.size()) - 1; k >= 0; --k) {
    const RawPiece& p = pieces[k];
    stage("piece " + std::to_string(k) + " " + p.kind, [&] {
      const int kk = p.kind == "oracle-6" ? 6 : 8;
      FlowVerdict fv = verify_flow(p.g, p.o, p.flow, kk);
      check(fv.accepted, "piece flow: " + fv.message());
      if (p.kind == "split") {
        ThreeCut cut;
        int child = -1;
        for (const std::string& line : p.body) {
          auto w = words(line);
          if (w.empty()) continue;
          if (w[0] == "cut") {
            check(w.size() >= 5 && w[4] == "y", "malformed cut line");
            for (int j = 0; j < 3; ++j) cut.cut[j] = std::stoi(w[1 + j]);
            for (size_t j = 5; j < w.size(); ++j) cut.y.push_back(std::stoi(w[j]));
          } else if (w[0] == "child" && w.size() == 2) {
            child = std::stoi(w[1]);
          }
        }
        check(child > k && child < static_cast<int>(pieces.size()) && pieces[child].parent == k, "bad child piece");
        std::vector<char> in_y(p.g.vertex_bound(), 0);
        for (VertexId v : cut.y) in_y[v] = 1;
        std::set<EdgeId> delta;
        for (EdgeId e : p.g.edges())
          if (in_y[p.g.edge(e).u] != in_y[p.g.edge(e).v]) delta.insert(e);
        check(delta == std::set<EdgeId>(cut.cut.begin(), cut.cut.end()), "cut is not the boundary of Y");
        SplitPieces sp = make_split(p.g, p.o, cut);
        check(same_oriented(pieces[child].g, pieces[child].o, sp.gy, sp.oy), "child piece is not the contraction");
        const IntFlow xf = read_values(p.body, "xflow");
        FlowVerdict xv = verify_flow(sp.gx, sp.ox, xf, 8);
        check(xv.accepted, "balanced side flow: " + xv.message());
        for (EdgeId c : cut.cut) check(xf[c] == pieces[child].flow[c], "sides disagree on cut edge " + std::to_string(c));
        check(same_values(p.g, merge_split(p.g, p.o, sp, pieces[child].flow, xf), p.flow), "merged flow differs");
      } else if (p.kind == "constructive") {
        replay_constructive(p);
      } else {
        check(p.kind == "oracle-6" || p.kind == "oracle-8", "unknown piece kind " + p.kind);
      }
    });
  }

  stage("result", [&] {
    const IntFlow expect = reduced ? pull_back(g, pieces[0].flow) : pieces[0].flow;
    check(same_values(g, expect, result), "result differs from the root piece flow");
    FlowVerdict fv = verify_flow(g, o, result, 8);
    check(fv.accepted, fv.message());
    Route route = Route::Constructive;
    for (const RawPiece& p : pieces) {
      if (p.kind == "oracle-8") route = Route::Oracle8;
      if (p.kind == "oracle-6" && route == Route::Constructive) route = Route::Oracle6;
    }
    check(route_name(route) == header["route"], "route label differs");
  });
  return rv;
}

std::string trace_text(const SynthesisResult& r) {
  std::ostringstream out;
  out << "route " << route_name(r.route) << '\n';
  for (const Piece& p : r.pieces) {
    out << "piece " << p.id << ' ' << piece_kind_name(p.kind) << '\n';
    if (p.kind != PieceKind::Constructive) continue;
    const ConstructiveTrace& t = p.trace;
    for (const std::string& line : t.csa_lines) out << line << '\n';
    for (const std::string& line : t.preflow_notes) out << "note " << line << '\n';
    for (const auto& item : t.hypotheses.items)
      out << "hypothesis " << item.name << ' ' << (item.holds ? "holds" : "fails") << '\n';
    for (EdgeId e : t.matching) out << "match " << t.aux.h.edge(e).u << ' ' << t.aux.h.edge(e).v << '\n';
    out << "lift " << (t.lift_from_matching ? "matching" : "search") << '\n';
    put_map(out, "psi", t.normalized.g, t.psi);
    put_map(out, "tau", t.normalized.g, t.tau);
  }
  for (EdgeId e = 0; e < r.flow.bound(); ++e)
    if (r.flow[e] != 0) out << "flow " << e << ' ' << r.flow[e] << '\n';
  return out.str();
}

}  // namespace sigflow
