#include "sigflow/reduce.hpp"

#include <algorithm>

namespace sigflow {

CubicReduction uncontract_to_cubic(const SignedGraph& g) {
  for (VertexId v : g.vertices())
    if (g.degree(v) < 3) throw ContractViolation("vertex " + std::to_string(v) + " has degree below 3");
  if (edge_connectivity(g) < 3) throw ContractViolation("graph is not 3-edge-connected");
  if (negativeness_at_most(g, 1)) throw ContractViolation("graph is not 2-unbalanced");
  CubicReduction out{g, {}};
  SignedGraph& h = out.cubic;
  while (true) {
    VertexId v = -1;
    for (VertexId x : h.vertices())
      if (h.degree(x) >= 4) {
        v = x;
        break;
      }
    if (v < 0) break;
    std::vector<EdgeId> inc = h.incident(v);
    std::sort(inc.begin(), inc.end());
    const EdgeId e = inc.front();
    bool done = false;
    for (EdgeId e2 : inc) {
      if (e2 == e) continue;
      SignedGraph trial = h;
      Uncontraction u = uncontract_at(trial, v, e, e2);
      if (edge_connectivity(trial) >= 3 && !negativeness_at_most(trial, 1)) {
        h = std::move(trial);
        ReductionStep step;
        step.kind = ReductionStep::Kind::Uncontract;
        step.uncontract = u;
        out.steps.push_back(step);
        done = true;
        break;
      }
    }
    if (!done) throw InvariantViolation("no valid uncontraction at vertex " + std::to_string(v));
  }
  return out;
}

Orientation extend_orientation(const Orientation& o, const std::vector<ReductionStep>& steps) {
  Orientation out = o;
  for (const ReductionStep& s : steps)
    if (s.kind == ReductionStep::Kind::Uncontract) out.set(s.uncontract.new_edge, Dir::Away, Dir::Toward);
  return out;
}

IntFlow pull_back(const SignedGraph& original, const IntFlow& cubic_flow) {
  IntFlow f(original.edge_bound(), 0);
  for (EdgeId e : original.edges()) f[e] = cubic_flow[e];
  return f;
}

std::optional<ThreeCut> find_balanced_3cut(const SignedGraph& g) {
  std::vector<EdgeId> es;
  for (EdgeId e : g.edges())
    if (!g.edge(e).is_loop()) es.push_back(e);
  const int m = static_cast<int>(es.size());
  std::vector<char> emask(g.edge_bound(), 0), vmask(g.vertex_bound(), 0);
  std::optional<ThreeCut> best;
  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j)
      for (int k = j + 1; k < m; ++k) {
        const std::array<EdgeId, 3> s{es[i], es[j], es[k]};
        for (EdgeId e : s) emask[e] = 1;
        auto comps = components(g, Mask{nullptr, &emask});
        for (EdgeId e : s) emask[e] = 0;
        if (comps.size() != 2 || comps[0].size() < 2 || comps[1].size() < 2) continue;
        std::vector<char> side(g.vertex_bound(), 0);
        for (VertexId v : comps[0]) side[v] = 1;
        bool crossing = true;
        for (EdgeId e : s)
          if (side[g.edge(e).u] == side[g.edge(e).v]) crossing = false;
        if (!crossing) continue;
        for (const auto& cand : comps) {
          if (best && cand.size() >= best->y.size()) continue;
          std::fill(vmask.begin(), vmask.end(), 1);
          for (VertexId v : cand) vmask[v] = 0;
          if (!balanced(g, Mask{&vmask, nullptr})) continue;
          best = ThreeCut{cand, s};
        }
      }
  return best;
}

IntFlow prescribed_boundary_flow(const SignedGraph& g, const Orientation& o, VertexId v,
                                 const std::array<int, 3>& g3, int k, const SearchBudget& budget) {
  if (!g.has_vertex(v)) throw ArgumentError("unknown vertex " + std::to_string(v));
  if (k < 6) throw ContractViolation("k must be at least 6");
  if (g3[0] + g3[1] + g3[2] != 0) throw ContractViolation("prescribed values do not sum to zero");
  for (int x : g3)
    if (x == 0 || std::abs(x) > k - 1) throw ContractViolation("prescribed value out of range");
  std::vector<EdgeId> inc = g.incident(v);
  std::sort(inc.begin(), inc.end());
  if (inc.size() != 3) throw ContractViolation("vertex must carry exactly three edges");
  for (EdgeId e : inc) {
    if (g.edge(e).is_loop()) throw ContractViolation("loop at the prescribed vertex");
    if (o.at_vertex(g, e, v) != Dir::Away) throw ContractViolation("edges at the prescribed vertex must point away");
  }
  for (EdgeId e : g.edges()) {
    const EdgeRecord& r = g.edge(e);
    if (!r.is_loop() && r.sign == Sign::Negative) throw ContractViolation("negative non-loop edge");
  }
  if (edge_connectivity(g) < 2) throw ContractViolation("graph is not 2-edge-connected");
  std::vector<std::pair<EdgeId, int>> fixed;
  for (int i = 0; i < 3; ++i) fixed.push_back({inc[i], g3[i]});
  OracleResult r = search_flow_with_fixed(g, o, k, fixed, budget);
  if (r.verdict != Verdict::Yes) throw InvariantViolation("prescribed-boundary search found no flow");
  FlowVerdict fv = verify_flow(g, o, r.witness, k);
  if (!fv.accepted) throw InvariantViolation("prescribed-boundary witness rejected: " + fv.message());
  return r.witness;
}

SplitPieces make_split(const SignedGraph& g, const Orientation& o, const ThreeCut& cut) {
  if (cut.y.size() < 2) throw ContractViolation("balanced side needs at least two vertices");
  SplitPieces p;
  p.record.cut = cut;
  SignedGraph gw = g;
  Orientation ow = o;
  std::vector<char> in_y(g.vertex_bound(), 0), flags(g.vertex_bound(), 0);
  for (VertexId v : cut.y) in_y[v] = 1;
  std::vector<char> not_y(g.vertex_bound(), 1);
  for (VertexId v : cut.y) not_y[v] = 0;
  BalanceCertificate bc = is_balanced(g, Mask{&not_y, nullptr});
  if (!bc.balanced) throw ContractViolation("side Y is not balanced");
  auto do_switch = [&](VertexId v) {
    switch_at_vertex(gw, ow, v);
    flags[v] ^= 1;
  };
  for (VertexId v : bc.switching_set) do_switch(v);
  for (EdgeId c : cut.cut) {
    const EdgeRecord& r = gw.edge(c);
    VertexId xe = in_y[r.u] ? r.v : r.u;
    if (r.sign == Sign::Negative) do_switch(xe);
  }
  for (EdgeId c : cut.cut) {
    const EdgeRecord& r = gw.edge(c);
    if (r.sign != Sign::Positive) throw InvariantViolation("cut edge still negative after switching");
    VertexId xe = in_y[r.u] ? r.v : r.u;
    if (ow.at_vertex(gw, c, xe) != Dir::Away) {
      ow.set(c, flip(ow.at(c, 0)), flip(ow.at(c, 1)));
      p.record.reversed.push_back(c);
    }
  }
  for (VertexId v : g.vertices())
    if (flags[v]) p.record.switching.push_back(v);

  const VertexId yv = g.vertex_bound(), xv = g.vertex_bound() + 1;
  p.record.y_vertex = yv;
  p.record.x_vertex = xv;

  p.gy = gw;
  p.gy.add_vertex_with_id(yv);
  for (EdgeId c : cut.cut) {
    const EdgeRecord& r = p.gy.edge(c);
    p.gy.move_end(c, in_y[r.u] ? 0 : 1, yv);
  }
  for (VertexId v : cut.y) p.gy.remove_vertex(v);
  p.oy = ow;

  p.gx = gw;
  p.gx.add_vertex_with_id(xv);
  for (EdgeId c : cut.cut) {
    const EdgeRecord& r = p.gx.edge(c);
    p.gx.move_end(c, in_y[r.u] ? 1 : 0, xv);
  }
  for (VertexId v : g.vertices())
    if (!in_y[v]) p.gx.remove_vertex(v);
  p.ox = ow;

  p.switched = std::move(gw);
  p.switched_orientation = std::move(ow);
  p.switched_flags = std::move(flags);
  return p;
}

IntFlow merge_split(const SignedGraph& g, const Orientation& o, const SplitPieces& p, const IntFlow& phi_y,
                    const IntFlow& phi_x) {
  std::vector<char> in_y(g.vertex_bound(), 0);
  for (VertexId v : p.record.cut.y) in_y[v] = 1;
  IntFlow combined(g.edge_bound(), 0);
  for (EdgeId e : g.edges()) {
    const EdgeRecord& r = g.edge(e);
    combined[e] = in_y[r.u] && in_y[r.v] ? phi_x[e] : phi_y[e];
  }
  for (EdgeId c : p.record.cut.cut)
    if (phi_x[c] != phi_y[c]) throw InvariantViolation("sub-flows disagree on cut edge " + std::to_string(c));
  return transport_flow(g, o, p.switched_orientation, p.switched_flags, combined);
}

IntFlow split_and_merge(const SignedGraph& g, const Orientation& o, const ThreeCut& cut,
                        const InnerSolver& solve_inner, const OuterSolver& solve_outer) {
  SplitPieces p = make_split(g, o, cut);
  IntFlow phi_y = solve_inner(p.gy, p.oy);
  std::array<int, 3> g3{phi_y[cut.cut[0]], phi_y[cut.cut[1]], phi_y[cut.cut[2]]};
  IntFlow phi_x = solve_outer ? solve_outer(p.gx, p.ox, p.record.x_vertex, g3)
                              : prescribed_boundary_flow(p.gx, p.ox, p.record.x_vertex, g3, 8);
  IntFlow f = merge_split(g, o, p, phi_y, phi_x);
  FlowVerdict v = verify_flow(g, o, f, 8);
  if (!v.accepted) throw InvariantViolation("merged flow rejected: " + v.message());
  return f;
}

}  // namespace sigflow
