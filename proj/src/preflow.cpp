#include "sigflow/preflow.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace sigflow {

namespace {

Z3 dir_z3(Dir d) { return Z3(to_int(d)); }

// End indices of cycle edge k at its start vertex (vertices[k]) and finish vertex (vertices[k+1]).
std::pair<int, int> walk_ends(const SignedGraph& g, const Cycle& c, int k) {
  const EdgeRecord& r = g.edge(c.edges[k]);
  if (r.is_loop()) return {0, 1};
  return r.u == c.vertices[k] ? std::pair{0, 1} : std::pair{1, 0};
}

std::vector<int> owner_table(const SignedGraph& g, const CycleList& cl) {
  std::vector<int> owner(g.vertex_bound(), -1);
  for (int i = 0; i < static_cast<int>(cl.size()); ++i)
    for (VertexId v : cl[i].cycle.vertices) owner[v] = i;
  return owner;
}

std::string rec_name(int k) { return "record " + std::to_string(k); }

}  // namespace

ParityGraph subdivide_for_parity(const SignedGraph& g, const Orientation& o, const CycleList& cl) {
  ParityGraph p{g, o, cl, std::vector<VertexId>(cl.size(), -1), {}};
  for (size_t i = 0; i < p.cl.size(); ++i) {
    CycleRecord& r = p.cl[i];
    const bool even_ordinary = r.kind == CycleKind::NegativeOrdinary && r.cycle.length() % 2 == 0;
    if (r.kind != CycleKind::NegativeSpecial && !even_ordinary) continue;
    Cycle& c = r.cycle;
    const int k = static_cast<int>(std::min_element(c.edges.begin(), c.edges.end()) - c.edges.begin());
    const EdgeId e = c.edges[k];
    const VertexId old_u = p.g.edge(e).u;
    const bool start_is_u = c.vertices[k] == old_u;
    Subdivision s = subdivide_edge(p.g, p.o, e);
    // e1 = old_u..x, e2 = x..old_v
    c.vertices.insert(c.vertices.begin() + k + 1, s.x);
    if (start_is_u) {
      c.edges[k] = s.e1;
      c.edges.insert(c.edges.begin() + k + 1, s.e2);
    } else {
      c.edges[k] = s.e2;
      c.edges.insert(c.edges.begin() + k + 1, s.e1);
    }
    c.sign = product_sign(p.g, c.edges);
    if (!is_valid_cycle(p.g, c)) throw InvariantViolation("subdivided cycle is malformed in " + rec_name(static_cast<int>(i)));
    p.designated[i] = s.x;
    p.subdivisions.push_back(s);
  }
  return p;
}

std::vector<char> normalize_cycle_signature(SignedGraph& g, Orientation& o, CycleList& cl) {
  std::vector<char> flags(g.vertex_bound(), 0);
  auto sw = [&](VertexId v) {
    switch_at_vertex(g, o, v);
    flags[v] ^= 1;
  };
  for (size_t i = 0; i < cl.size(); ++i) {
    CycleRecord& r = cl[i];
    const Cycle& c = r.cycle;
    if (r.kind == CycleKind::Positive || r.kind == CycleKind::NegativeOrdinary) {
      if (c.is_vertex()) continue;
      const Sign want = r.kind == CycleKind::Positive ? Sign::Positive : Sign::Negative;
      const int L = c.length();
      for (int k = 0; k + 1 < L; ++k)
        if (g.edge(c.edges[k]).sign != want) sw(c.vertices[k + 1]);
      if (g.edge(c.edges[L - 1]).sign != want)
        throw InvariantViolation("cannot normalize the signature of " + rec_name(static_cast<int>(i)));
    } else if (r.kind == CycleKind::Fish) {
      auto cert = recognize_fish(g.induced(c.vertices));
      if (!cert) throw InvariantViolation(rec_name(static_cast<int>(i)) + " is no longer a fish");
      for (VertexId v : cert->switching) sw(v);
      auto after = recognize_fish(g.induced(c.vertices));
      if (!after) throw InvariantViolation(rec_name(static_cast<int>(i)) + " lost its fish shape");
      int negatives = 0;
      for (EdgeId e : c.edges)
        if (g.edge(e).sign == Sign::Negative) ++negatives;
      if (negatives != 1 || g.edge(after->path_edges[0]).sign != Sign::Negative)
        throw InvariantViolation("fish normalization failed in " + rec_name(static_cast<int>(i)));
      r.fish = after;
    }
  }
  return flags;
}

std::optional<std::vector<Z3>> solve_cycle_boundary(const SignedGraph& g, const Orientation& o, const Cycle& c,
                                                    const std::vector<Z3>& b) {
  if (b.size() != c.vertices.size()) throw ArgumentError("boundary vector does not match the cycle");
  const int L = c.length();
  if (L == 0) {
    if (!b[0].zero()) return std::nullopt;
    return std::vector<Z3>{};
  }
  std::vector<Z3> ds(L), df(L);
  for (int k = 0; k < L; ++k) {
    auto [s, f] = walk_ends(g, c, k);
    ds[k] = dir_z3(o.at(c.edges[k], s));
    df[k] = dir_z3(o.at(c.edges[k], f));
  }
  std::optional<std::vector<Z3>> best;
  int best_zeros = 0;
  for (int t = 0; t < 3; ++t) {
    std::vector<Z3> tau(L);
    tau[0] = Z3(t);
    for (int k = 0; k + 1 < L; ++k) tau[k + 1] = ds[k + 1] * (b[k + 1] - df[k] * tau[k]);
    if (df[L - 1] * tau[L - 1] + ds[0] * tau[0] != b[0]) continue;
    int zeros = static_cast<int>(std::count_if(tau.begin(), tau.end(), [](Z3 z) { return z.zero(); }));
    if (!best || zeros < best_zeros) {
      best = tau;
      best_zeros = zeros;
    }
  }
  return best;
}

CycleContext cycle_context(const SignedGraph& g, const CycleList& cl, int k) {
  if (k < 0 || k >= static_cast<int>(cl.size())) throw ArgumentError("record index out of range");
  std::vector<int> owner = owner_table(g, cl);
  CycleContext ctx;
  for (VertexId v : g.vertices()) {
    if (owner[v] > k) ctx.up.push_back(v);
    if (owner[v] >= 0 && owner[v] < k) ctx.down.push_back(v);
  }
  std::set<EdgeId> own(cl[k].cycle.edges.begin(), cl[k].cycle.edges.end());
  for (EdgeId e : g.edges()) {
    const EdgeRecord& r = g.edge(e);
    const int a = owner[r.u], b = owner[r.v];
    if (a != k && b != k) continue;
    const int other = a == k ? b : a;
    if (other == k) {
      if (!own.count(e)) ctx.chords.push_back(e);
    } else if (other > k) {
      ctx.e_edges.push_back(e);
    } else {
      ctx.f_edges.push_back(e);
    }
  }
  return ctx;
}

Z3Preflow build_preflow(const SignedGraph& g, const Orientation& o, const CycleList& cl) {
  Z3Preflow out;
  Z3Assignment& phi = out.phi;
  phi = Z3Assignment(g.edge_bound());
  std::vector<char> assigned(g.edge_bound(), 0);
  std::vector<int> owner = owner_table(g, cl);
  const int t = static_cast<int>(cl.size());

  auto contrib = [&](EdgeId e, VertexId v, Z3 val) { return dir_z3(o.at_vertex(g, e, v)) * val; };
  auto set_edge = [&](EdgeId e, Z3 val) {
    phi[e] = val;
    assigned[e] = 1;
  };
  // Value on e whose contribution at v is c.
  auto value_for = [&](EdgeId e, VertexId v, Z3 c) { return dir_z3(o.at_vertex(g, e, v)) * c; };
  auto partial = [&](VertexId v) { return boundary_at(g, o, phi, v); };
  auto end_in = [&](EdgeId e, int k) {
    const EdgeRecord& r = g.edge(e);
    return owner[r.u] == k ? r.u : r.v;
  };

  for (int k = t - 1; k >= 0; --k) {
    const CycleRecord& rec = cl[k];
    const Cycle& c = rec.cycle;
    const CycleContext ctx = cycle_context(g, cl, k);
    const std::string at = rec_name(k);

    switch (rec.kind) {
      case CycleKind::Fish: {
        if (!rec.fish) throw InvariantViolation(at + ": fish record without certificate");
        if (!ctx.e_edges.empty()) throw InvariantViolation(at + ": fish is not last");
        const FishCertificate& f = *rec.fish;
        // Parity system over s_e = ±1: equal contributions at a, b and at the degree-2 fish vertices,
        // opposite contributions at r and s (whose third edge is the distinguished one).
        std::map<EdgeId, std::vector<std::pair<EdgeId, int>>> adj;
        std::set<EdgeId> fish_edges(c.edges.begin(), c.edges.end());
        fish_edges.erase(f.distinguished);
        std::set<VertexId> fv(c.vertices.begin(), c.vertices.end());
        for (VertexId v : c.vertices) {
          std::vector<EdgeId> es;
          for (EdgeId e : g.incident(v))
            if (fish_edges.count(e)) es.push_back(e);
          const bool opposite = v == f.r || v == f.s;
          for (size_t i = 0; i + 1 < es.size(); ++i) {
            int rel = to_int(o.at_vertex(g, es[i], v)) * to_int(o.at_vertex(g, es[i + 1], v)) * (opposite ? -1 : 1);
            int parity = rel == 1 ? 0 : 1;
            adj[es[i]].push_back({es[i + 1], parity});
            adj[es[i + 1]].push_back({es[i], parity});
          }
        }
        std::map<EdgeId, int> x;
        for (EdgeId root : fish_edges) {
          if (x.count(root)) continue;
          x[root] = 0;
          std::vector<EdgeId> queue{root};
          for (size_t i = 0; i < queue.size(); ++i)
            for (auto [nb, par] : adj[queue[i]]) {
              int want = x[queue[i]] ^ par;
              auto it = x.find(nb);
              if (it == x.end()) {
                x[nb] = want;
                queue.push_back(nb);
              } else if (it->second != want) {
                throw InvariantViolation(at + ": fish parity system is inconsistent");
              }
            }
        }
        for (EdgeId e : fish_edges) set_edge(e, Z3(x[e] ? -1 : 1));
        set_edge(f.distinguished, Z3(0));
        for (EdgeId e : ctx.f_edges) {
          VertexId v = end_in(e, k);
          Z3 p = partial(v);
          if (p.zero()) throw InvariantViolation(at + ": fish vertex " + std::to_string(v) + " has zero partial boundary");
          set_edge(e, value_for(e, v, Z3(0) - p));
        }
        break;
      }

      case CycleKind::NegativeOrdinary: {
        if (!ctx.chords.empty()) throw InvariantViolation(at + ": ordinary cycle has a chord");
        if (ctx.e_edges.size() > 1) throw InvariantViolation(at + ": ordinary cycle has several forward edges");
        Z3 cval(1);
        if (!ctx.e_edges.empty()) {
          EdgeId e = ctx.e_edges[0];
          cval = contrib(e, end_in(e, k), phi[e]);
          if (cval.zero()) throw InvariantViolation(at + ": forward edge carries zero");
        }
        for (EdgeId e : c.edges) {
          if (g.edge(e).sign != Sign::Negative) throw InvariantViolation(at + ": cycle edge is not negative");
          set_edge(e, dir_z3(o.at(e, 0)) * cval);
        }
        for (EdgeId e : ctx.f_edges) {
          VertexId v = end_in(e, k);
          set_edge(e, value_for(e, v, Z3(0) - partial(v)));
        }
        break;
      }

      case CycleKind::NegativeSpecial: {
        for (EdgeId e : ctx.chords) set_edge(e, Z3(1));
        for (EdgeId e : ctx.f_edges) set_edge(e, Z3(1));
        std::vector<Z3> b;
        for (VertexId v : c.vertices) {
          Z3 target = g.degree(v) == 2 ? Z3(1) : Z3(0);
          b.push_back(target - partial(v));
        }
        auto tau = solve_cycle_boundary(g, o, c, b);
        if (!tau) throw InvariantViolation(at + ": negative cycle boundary unsolvable");
        for (int i = 0; i < c.length(); ++i) set_edge(c.edges[i], (*tau)[i]);
        break;
      }

      case CycleKind::Positive: {
        for (EdgeId e : ctx.chords) set_edge(e, Z3(1));
        const int nf = static_cast<int>(ctx.f_edges.size());
        if (nf == 0) throw InvariantViolation(at + ": positive record without back edges");
        Z3 s(0);
        for (VertexId v : c.vertices) s += partial(v);
        if (nf == 1 && s.zero()) {
          if (c.is_vertex()) throw InvariantViolation(at + ": single vertex with one back edge");
          std::vector<VertexId> keep = ctx.up;
          keep.insert(keep.end(), c.vertices.begin(), c.vertices.end());
          const SignedGraph hp = g.induced(keep);
          BlockCutTree bt = block_cut_tree(hp);
          std::set<EdgeId> bridges;
          for (const auto& blk : bt.blocks)
            if (blk.size() == 1 && !hp.edge(blk[0]).is_loop()) bridges.insert(blk[0]);
          VertexId y = -1;
          EdgeId ey = -1;
          for (VertexId v : c.vertices) {
            for (EdgeId e : ctx.e_edges)
              if (end_in(e, k) == v && bridges.count(e)) {
                y = v;
                ey = e;
                break;
              }
            if (y >= 0) break;
          }
          if (y < 0) throw InvariantViolation(at + ": one back edge, zero sum and no cut edge");
          std::vector<char> no_y(g.vertex_bound(), 0);
          no_y[y] = 1;
          const VertexId start = hp.edge(ey).other(y);
          std::vector<char> in_h(g.vertex_bound(), 0);
          for (const auto& comp : components(hp, Mask{&no_y, nullptr}))
            if (std::binary_search(comp.begin(), comp.end(), start))
              for (VertexId v : comp) in_h[v] = 1;
          int negated = 0;
          for (EdgeId e : g.edges()) {
            if (!assigned[e]) continue;
            const EdgeRecord& r = g.edge(e);
            if (in_h[r.u] || in_h[r.v]) {
              phi[e] = Z3(0) - phi[e];
              ++negated;
            }
          }
          out.notes.push_back("negate " + std::to_string(k) + " y=" + std::to_string(y) + " edge=" + std::to_string(ey) +
                              " count=" + std::to_string(negated));
          s = Z3(0);
          for (VertexId v : c.vertices) s += partial(v);
          if (s.zero()) throw InvariantViolation(at + ": negation left the boundary sum at zero");
        }
        // Contributions ±1 on the back edges summing to -s.
        std::vector<Z3> cf(nf, Z3(1));
        if (nf == 1) {
          cf[0] = Z3(0) - s;
        } else {
          int flips = (((-s.value() - nf) % 3) + 6) % 3;
          for (int i = 0; i < flips; ++i) cf[i] = Z3(-1);
        }
        for (int i = 0; i < nf; ++i) {
          EdgeId e = ctx.f_edges[i];
          set_edge(e, value_for(e, end_in(e, k), cf[i]));
        }
        if (c.is_vertex()) {
          if (!partial(c.vertices[0]).zero()) throw InvariantViolation(at + ": vertex boundary not cleared");
          break;
        }
        std::vector<Z3> b;
        for (VertexId v : c.vertices) b.push_back(Z3(0) - partial(v));
        auto tau = solve_cycle_boundary(g, o, c, b);
        if (!tau) throw InvariantViolation(at + ": positive cycle boundary unsolvable");
        for (int i = 0; i < c.length(); ++i) set_edge(c.edges[i], (*tau)[i]);
        break;
      }
    }
  }
  for (EdgeId e : g.edges())
    if (!assigned[e]) throw InvariantViolation("edge " + std::to_string(e) + " left unassigned");
  PreflowAudit a = audit_preflow(g, o, cl, phi);
  if (!a.ok()) throw InvariantViolation("preflow audit failed: " + a.detail);
  return out;
}

PreflowAudit audit_preflow(const SignedGraph& g, const Orientation& o, const CycleList& cl, const Z3Assignment& phi) {
  PreflowAudit a;
  for (VertexId v : g.vertices()) {
    const int d = g.degree(v);
    const bool nonzero = !boundary_at(g, o, phi, v).zero();
    if (nonzero != (d == 1 || d == 2)) {
      a.boundary_law = false;
      a.detail = "boundary law fails at vertex " + std::to_string(v);
      return a;
    }
  }
  std::vector<char> touched(g.vertex_bound(), 0);
  for (EdgeId e : g.edges()) {
    if (!phi[e].zero()) continue;
    const EdgeRecord& r = g.edge(e);
    if (touched[r.u] || touched[r.v]) {
      a.zero_matching = false;
      a.detail = "zero edges meet at edge " + std::to_string(e);
      return a;
    }
    touched[r.u] = touched[r.v] = 1;
  }
  std::set<EdgeId> allowed;
  for (const CycleRecord& r : cl) {
    if (r.kind == CycleKind::Positive || r.kind == CycleKind::NegativeSpecial)
      allowed.insert(r.cycle.edges.begin(), r.cycle.edges.end());
    if (r.kind == CycleKind::Fish && r.fish) allowed.insert(r.fish->distinguished);
  }
  for (EdgeId e : g.edges())
    if (phi[e].zero() && !allowed.count(e)) {
      a.zero_placement = false;
      a.detail = "zero on edge " + std::to_string(e) + " outside positive, special and distinguished edges";
      return a;
    }
  return a;
}

}  // namespace sigflow
