#include "sigflow/pipeline.hpp"

#include <functional>

#include "sigflow/io.hpp"

namespace sigflow {

std::string route_name(Route r) {
  switch (r) {
    case Route::Constructive: return "constructive";
    case Route::Oracle6: return "oracle-6";
    case Route::Oracle8: return "oracle-8";
  }
  return "?";
}

std::string piece_kind_name(PieceKind k) {
  switch (k) {
    case PieceKind::Split: return "split";
    case PieceKind::Constructive: return "constructive";
    case PieceKind::Oracle6: return "oracle-6";
    case PieceKind::Oracle8: return "oracle-8";
  }
  return "?";
}

namespace {

void require(bool cond, const std::string& what) {
  if (!cond) throw InvariantViolation(what);
}

void designated_odd_cycles(const ParityGraph& pg, std::vector<Cycle>& cycles, std::vector<VertexId>& xs) {
  for (size_t i = 0; i < pg.cl.size(); ++i)
    if (pg.cl[i].kind == CycleKind::NegativeOrdinary && pg.designated[i] >= 0) {
      cycles.push_back(pg.cl[i].cycle);
      xs.push_back(pg.designated[i]);
    }
}

Piece oracle_piece(const SignedGraph& g, const Orientation& o, const SynthesisOptions& opts) {
  if (!opts.allow_fallback) throw Unsupported("instance needs the oracle fallback, which is disabled");
  Piece p;
  p.g = g;
  p.o = o;
  for (int k : {6, 8}) {
    OracleResult r = nz_kflow_exists(g, o, k, opts.budget);
    if (r.verdict == Verdict::Yes) {
      p.kind = k == 6 ? PieceKind::Oracle6 : PieceKind::Oracle8;
      p.flow = r.witness;
      return p;
    }
    if (r.verdict == Verdict::Unknown) throw Unsupported("oracle budget exhausted at k=" + std::to_string(k));
  }
  throw Unsupported("no nowhere-zero 8-flow exists");
}

// Rebuilds g through its text form so incidence order matches a parsed certificate.
std::pair<SignedGraph, Orientation> canonical_copy(const SignedGraph& g, const Orientation& o) {
  SgFile f = parse_sg(serialize_sg(g, &o));
  return {std::move(f.graph), std::move(*f.orientation)};
}

}  // namespace

ConstructiveTrace construct_flow(const SignedGraph& g, const Orientation& o, IntFlow& flow) {
  CsaTrace csa;
  CycleList cl = run_csa(g, &csa);
  ConstructiveTrace t = construct_from_list(g, o, cl, flow);
  t.csa_lines = std::move(csa.lines);
  return t;
}

ConstructiveTrace construct_from_list(const SignedGraph& g, const Orientation& o, const CycleList& cl, IntFlow& flow) {
  ConstructiveTrace t;
  t.cl = cl;
  CycleListVerdict cv = validate_cycle_list(g, t.cl);
  require(cv.accepted, "cycle list rejected (" + cv.rule + "): " + cv.detail);

  const ParityGraph star = subdivide_for_parity(g, o, t.cl);
  t.pg = star;
  const std::vector<char> sw = normalize_cycle_signature(t.pg.g, t.pg.o, t.pg.cl);
  Z3Preflow pf = build_preflow(t.pg.g, t.pg.o, t.pg.cl);
  t.phi = pf.phi;
  t.preflow_notes = std::move(pf.notes);
  PreflowAudit pa = audit_preflow(t.pg.g, t.pg.o, t.pg.cl, t.phi);
  require(pa.ok(), "preflow audit failed: " + pa.detail);

  t.normalized = normalize_preflow(t.pg.g, t.pg.o, t.phi);
  const NormalizedPreflow& np = t.normalized;
  t.aux = build_auxiliary(np.g, np.o, np.phi);
  std::vector<Cycle> odd;
  std::vector<VertexId> xs;
  designated_odd_cycles(t.pg, odd, xs);
  t.hypotheses = check_matching_hypotheses(t.aux, odd, xs);
  for (const auto& item : t.hypotheses.items)
    require(item.holds, "matching hypothesis '" + item.name + "' fails: " + item.detail);
  t.matching = maximum_matching(t.aux.h);
  require(is_perfect_matching(t.aux.h, t.matching), "auxiliary graph has no perfect matching");

  LiftResult lr = lift_to_integer(np.g, np.o, np.phi, t.aux, t.matching);
  t.psi = lr.psi;
  t.lift_from_matching = lr.from_matching;
  t.tau = build_tau(np.g, np.o, t.pg, t.psi);
  std::string why;
  require(check_tau(np.g, np.o, t.pg, t.psi, t.tau, &why), "tau check failed: " + why);
  t.f_star = assemble_flow(np.g, np.o, t.psi, t.tau);

  std::vector<char> flags(star.g.vertex_bound(), 0);
  for (VertexId v : star.g.vertices()) flags[v] = static_cast<char>(sw[v] ^ np.switched[v]);
  IntFlow f = transport_flow(star.g, star.o, np.o, flags, t.f_star);
  SignedGraph gs = star.g;
  Orientation os = star.o;
  for (auto it = star.subdivisions.rbegin(); it != star.subdivisions.rend(); ++it)
    smooth_degree2_vertex(gs, os, f, it->x);
  require(gs == g, "smoothing did not restore the input graph");
  flow = transport_flow(g, o, os, {}, f);
  FlowVerdict fv = verify_flow(g, o, flow, 8);
  require(fv.accepted, "constructed flow rejected: " + fv.message());
  return t;
}

SynthesisResult synthesize(const SignedGraph& g, const Orientation& o, const SynthesisOptions& opts) {
  o.check(g);
  if (g.num_edges() == 0) throw Unsupported("graph has no edges");
  if (!is_flow_admissible(g)) throw Unsupported("graph is not flow-admissible");
  SynthesisResult res;
  auto audit = [&](const std::string& name, bool ok, const std::string& detail = "") {
    res.audits.push_back({name, ok, detail});
  };

  const bool bal = balanced(g);
  const int conn = edge_connectivity(g);
  audit("flow-admissible", true);
  if (bal || conn < 3) {
    audit(bal ? "balanced" : "3-edge-connected", bal, bal ? "routed to oracle" : "connectivity " + std::to_string(conn));
    Piece p = oracle_piece(g, o, opts);
    res.route = p.kind == PieceKind::Oracle6 ? Route::Oracle6 : Route::Oracle8;
    res.flow = p.flow;
    res.pieces.push_back(std::move(p));
  } else {
    audit("3-edge-connected", true);
    res.reduced = true;
    res.reduction = uncontract_to_cubic(g);
    const Orientation oc = extend_orientation(o, res.reduction.steps);
    audit("cubic", is_cubic(res.reduction.cubic));

    std::function<int(const SignedGraph&, const Orientation&, int)> solve =
        [&](const SignedGraph& raw_g, const Orientation& raw_o, int parent) -> int {
      const auto [pg, po] = canonical_copy(raw_g, raw_o);
      const int id = static_cast<int>(res.pieces.size());
      res.pieces.emplace_back();
      res.pieces[id].id = id;
      res.pieces[id].parent = parent;
      res.pieces[id].g = pg;
      res.pieces[id].o = po;
      if (auto cut = find_balanced_3cut(pg)) {
        SplitPieces sp = make_split(pg, po, *cut);
        const int child = solve(sp.gy, sp.oy, id);
        const IntFlow phi_y = res.pieces[child].flow;
        std::array<int, 3> g3{phi_y[cut->cut[0]], phi_y[cut->cut[1]], phi_y[cut->cut[2]]};
        IntFlow phi_x = prescribed_boundary_flow(sp.gx, sp.ox, sp.record.x_vertex, g3, 8, opts.budget);
        Piece& p = res.pieces[id];
        p.kind = PieceKind::Split;
        p.cut = *cut;
        p.child = child;
        p.x_flow = phi_x;
        p.flow = merge_split(pg, po, sp, phi_y, phi_x);
      } else if (find_two_disjoint_negative_cycles(pg, true).status == SearchStatus::Found) {
        IntFlow f;
        ConstructiveTrace t = construct_flow(pg, po, f);
        res.pieces[id].kind = PieceKind::Constructive;
        res.pieces[id].trace = std::move(t);
        res.pieces[id].flow = std::move(f);
      } else {
        Piece p = oracle_piece(pg, po, opts);
        res.pieces[id].kind = p.kind;
        res.pieces[id].flow = std::move(p.flow);
      }
      FlowVerdict v = verify_flow(pg, po, res.pieces[id].flow, 8);
      require(v.accepted, "piece " + std::to_string(id) + " flow rejected: " + v.message());
      return id;
    };
    solve(res.reduction.cubic, oc, -1);
    res.flow = pull_back(g, res.pieces[0].flow);

    res.route = Route::Constructive;
    for (const Piece& p : res.pieces) {
      if (p.kind == PieceKind::Oracle8) res.route = Route::Oracle8;
      if (p.kind == PieceKind::Oracle6 && res.route == Route::Constructive) res.route = Route::Oracle6;
    }
  }
  FlowVerdict v = verify_flow(g, o, res.flow, 8);
  audit("verify-8", v.accepted, v.accepted ? "" : v.message());
  require(v.accepted, "final flow rejected: " + v.message());
  return res;
}

}  // namespace sigflow
