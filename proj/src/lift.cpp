#include "sigflow/lift.hpp"

#include <algorithm>
#include <array>
#include <functional>
#include <map>
#include <queue>
#include <set>

namespace sigflow {

namespace {

// Edmonds' algorithm with explicit blossom contraction via base labels.
class Blossom {
 public:
  Blossom(int n, const std::vector<std::pair<int, int>>& edges) : n_(n), adj_(n), match_(n, -1) {
    for (auto [a, b] : edges) {
      if (a == b) continue;
      adj_[a].push_back(b);
      adj_[b].push_back(a);
    }
  }

  std::vector<int> run() {
    for (int v = 0; v < n_; ++v) {
      if (match_[v] != -1) continue;
      int u = augmenting_path(v);
      while (u != -1) {
        int pv = parent_[u], ppv = match_[pv];
        match_[u] = pv;
        match_[pv] = u;
        u = ppv;
      }
    }
    return match_;
  }

 private:
  int lca(int a, int b) {
    std::vector<char> seen(n_, 0);
    while (true) {
      a = base_[a];
      seen[a] = 1;
      if (match_[a] == -1) break;
      a = parent_[match_[a]];
    }
    while (true) {
      b = base_[b];
      if (seen[b]) return b;
      b = parent_[match_[b]];
    }
  }

  void mark_path(int v, int b, int child) {
    while (base_[v] != b) {
      in_blossom_[base_[v]] = in_blossom_[base_[match_[v]]] = 1;
      parent_[v] = child;
      child = match_[v];
      v = parent_[match_[v]];
    }
  }

  int augmenting_path(int root) {
    used_.assign(n_, 0);
    parent_.assign(n_, -1);
    base_.resize(n_);
    for (int i = 0; i < n_; ++i) base_[i] = i;
    used_[root] = 1;
    std::queue<int> q;
    q.push(root);
    while (!q.empty()) {
      int v = q.front();
      q.pop();
      for (int to : adj_[v]) {
        if (base_[v] == base_[to] || match_[v] == to) continue;
        if (to == root || (match_[to] != -1 && parent_[match_[to]] != -1)) {
          int cur = lca(v, to);
          in_blossom_.assign(n_, 0);
          mark_path(v, cur, to);
          mark_path(to, cur, v);
          for (int i = 0; i < n_; ++i)
            if (in_blossom_[base_[i]]) {
              base_[i] = cur;
              if (!used_[i]) {
                used_[i] = 1;
                q.push(i);
              }
            }
        } else if (parent_[to] == -1) {
          parent_[to] = v;
          if (match_[to] == -1) return to;
          used_[match_[to]] = 1;
          q.push(match_[to]);
        }
      }
    }
    return -1;
  }

  int n_;
  std::vector<std::vector<int>> adj_;
  std::vector<int> match_, parent_, base_;
  std::vector<char> used_, in_blossom_;
};

std::pair<int, int> walk_ends(const SignedGraph& g, const Cycle& c, int k) {
  const EdgeRecord& r = g.edge(c.edges[k]);
  if (r.is_loop()) return {0, 1};
  return r.u == c.vertices[k] ? std::pair{0, 1} : std::pair{1, 0};
}

Cycle rotate_to(const Cycle& c, VertexId x) {
  const int L = c.length();
  const int j = static_cast<int>(std::find(c.vertices.begin(), c.vertices.end(), x) - c.vertices.begin());
  if (j == static_cast<int>(c.vertices.size())) throw InvariantViolation("designated vertex not on its cycle");
  Cycle r;
  r.sign = c.sign;
  for (int i = 0; i < L; ++i) {
    r.vertices.push_back(c.vertices[(j + i) % L]);
    r.edges.push_back(c.edges[(j + i) % L]);
  }
  return r;
}

// ±1 values along c with zero boundary at every vertex except the first, where it equals `target`.
bool unit_walk(const SignedGraph& g, const Orientation& o, const Cycle& c, int target, IntFlow& tau) {
  const int L = c.length();
  std::vector<int> ds(L), df(L);
  for (int k = 0; k < L; ++k) {
    auto [s, f] = walk_ends(g, c, k);
    ds[k] = to_int(o.at(c.edges[k], s));
    df[k] = to_int(o.at(c.edges[k], f));
  }
  for (int t : {1, -1}) {
    std::vector<int> v(L);
    v[0] = t;
    for (int k = 0; k + 1 < L; ++k) v[k + 1] = -df[k] * ds[k + 1] * v[k];
    if (ds[0] * v[0] + df[L - 1] * v[L - 1] != target) continue;
    for (int k = 0; k < L; ++k) tau[c.edges[k]] = v[k];
    return true;
  }
  return false;
}

}  // namespace

std::vector<int> maximum_matching(int n, const std::vector<std::pair<int, int>>& edges) {
  for (auto [a, b] : edges)
    if (a < 0 || b < 0 || a >= n || b >= n) throw ArgumentError("edge endpoint out of range");
  return Blossom(n, edges).run();
}

std::vector<EdgeId> maximum_matching(const SignedGraph& h) {
  std::vector<VertexId> vs = h.vertices();
  std::vector<int> idx(h.vertex_bound(), -1);
  for (int i = 0; i < static_cast<int>(vs.size()); ++i) idx[vs[i]] = i;
  std::vector<std::pair<int, int>> es;
  for (EdgeId e : h.edges()) es.push_back({idx[h.edge(e).u], idx[h.edge(e).v]});
  std::vector<int> mate = maximum_matching(static_cast<int>(vs.size()), es);
  std::vector<EdgeId> out;
  std::set<std::pair<int, int>> taken;
  for (EdgeId e : h.edges()) {
    int a = idx[h.edge(e).u], b = idx[h.edge(e).v];
    if (a == b || mate[a] != b) continue;
    if (taken.insert({std::min(a, b), std::max(a, b)}).second) out.push_back(e);
  }
  return out;
}

bool is_perfect_matching(const SignedGraph& h, const std::vector<EdgeId>& m) {
  std::vector<int> hit(h.vertex_bound(), 0);
  for (EdgeId e : m) {
    if (!h.has_edge(e) || h.edge(e).is_loop()) return false;
    ++hit[h.edge(e).u];
    ++hit[h.edge(e).v];
  }
  for (VertexId v : h.vertices())
    if (hit[v] != 1) return false;
  return true;
}

NormalizedPreflow normalize_preflow(const SignedGraph& g, const Orientation& o, const Z3Assignment& phi) {
  NormalizedPreflow n{g, o, phi, std::vector<char>(g.vertex_bound(), 0), {}};
  for (EdgeId e : g.edges()) {
    if (!phi[e].zero()) continue;
    if (n.g.edge(e).sign == Sign::Negative) {
      VertexId u = n.g.edge(e).u;
      switch_at_vertex(n.g, n.o, u);
      n.switched[u] ^= 1;
    }
  }
  for (EdgeId e : g.edges())
    if (n.phi[e].value() == 2) {
      reverse_edge(n.o, n.phi, e);
      n.reversed.push_back(e);
    }
  return n;
}

AuxiliaryGraph build_auxiliary(const SignedGraph& g, const Orientation& o, const Z3Assignment& phi) {
  std::vector<char> touched(g.vertex_bound(), 0);
  for (EdgeId e : g.edges()) {
    const EdgeRecord& r = g.edge(e);
    if (r.is_loop()) throw ContractViolation("auxiliary graph needs a loopless graph");
    if (phi[e].value() > 1) throw ContractViolation("preflow is not normalized to {0, 1}");
    if (!phi[e].zero()) continue;
    if (r.sign != Sign::Positive) throw ContractViolation("zero edge " + std::to_string(e) + " is negative");
    if (touched[r.u] || touched[r.v]) throw ContractViolation("zero edges do not form a matching");
    touched[r.u] = touched[r.v] = 1;
  }
  for (VertexId v : g.vertices())
    if (g.degree(v) < 2 || g.degree(v) > 3) throw ContractViolation("vertex degrees must be 2 or 3");

  AuxiliaryGraph aux;
  aux.h = g;
  for (EdgeId e : g.edges()) aux.h.set_sign(e, Sign::Positive);
  // The helper edge at a degree-2 vertex carries 1 and points so as to cancel the boundary there.
  std::vector<Dir> helper_dir(g.vertex_bound(), Dir::Away);
  for (VertexId v : g.vertices())
    if (g.degree(v) == 2) {
      aux.helper_ends.push_back(v);
      helper_dir[v] = boundary_at(g, o, phi, v).value() == 1 ? Dir::Toward : Dir::Away;
    }

  // Split requests: subdivision vertex per (edge, end); helper edges are split in place.
  std::map<EdgeId, std::array<VertexId, 2>> split;
  auto classify = [&](VertexId x, EdgeId zero, EdgeId& away, EdgeId& toward) {
    away = toward = -2;
    for (EdgeId f : g.incident(x)) {
      if (f == zero) continue;
      (o.at_vertex(g, f, x) == Dir::Away ? away : toward) = f;
    }
    if (g.degree(x) == 2) (helper_dir[x] == Dir::Away ? away : toward) = -1;
    if (away == -2 || toward == -2)
      throw ContractViolation("edges at vertex " + std::to_string(x) + " do not alternate around a zero edge");
  };
  for (EdgeId e : g.edges()) {
    if (!phi[e].zero()) continue;
    Gadget gd;
    gd.zero_edge = e;
    const EdgeRecord& r = g.edge(e);
    const int tail_end = o.at(e, 0) == Dir::Away ? 0 : 1;
    gd.tail = r.end(tail_end);
    gd.head = r.end(1 - tail_end);
    classify(gd.tail, e, gd.h1, gd.h2);
    classify(gd.head, e, gd.h1p, gd.h2p);
    gd.s1 = aux.h.add_vertex();
    gd.s2 = aux.h.add_vertex();
    if (gd.h1 >= 0) {
      auto& sp = split.try_emplace(gd.h1, std::array<VertexId, 2>{-1, -1}).first->second;
      sp[g.edge(gd.h1).end_index(gd.tail)] = gd.s1;
    }
    if (gd.h2p >= 0) {
      auto& sp = split.try_emplace(gd.h2p, std::array<VertexId, 2>{-1, -1}).first->second;
      sp[g.edge(gd.h2p).end_index(gd.head)] = gd.s2;
    }
    aux.gadgets.push_back(gd);
  }

  aux.mu_segment.assign(g.edge_bound(), -1);
  for (EdgeId e : g.edges())
    if (!phi[e].zero()) aux.mu_segment[e] = e;
  for (auto& [e, sp] : split) {
    const EdgeRecord r = g.edge(e);
    aux.h.remove_edge(e);
    std::vector<VertexId> chain{r.u};
    if (sp[0] >= 0) chain.push_back(sp[0]);
    if (sp[1] >= 0) chain.push_back(sp[1]);
    chain.push_back(r.v);
    std::vector<EdgeId> segs;
    for (size_t i = 0; i + 1 < chain.size(); ++i) segs.push_back(aux.h.add_edge(chain[i], chain[i + 1], Sign::Positive));
    // μ is read off the segment away from every end at which the edge was split.
    if (sp[0] >= 0 && sp[1] >= 0)
      aux.mu_segment[e] = segs[1];
    else if (sp[0] >= 0)
      aux.mu_segment[e] = segs[1];
    else
      aux.mu_segment[e] = segs[0];
  }
  for (Gadget& gd : aux.gadgets) {
    if (gd.h1 < 0) aux.h.add_edge(gd.tail, gd.s1, Sign::Positive);
    if (gd.h2p < 0) aux.h.add_edge(gd.head, gd.s2, Sign::Positive);
    gd.link = aux.h.add_edge(gd.s1, gd.s2, Sign::Positive);
  }
  return aux;
}

bool HypothesisReport::all() const {
  return std::all_of(items.begin(), items.end(), [](const Item& i) { return i.holds; });
}

HypothesisReport check_matching_hypotheses(const AuxiliaryGraph& aux, const std::vector<Cycle>& odd_cycles,
                                           const std::vector<VertexId>& designated) {
  const SignedGraph& h = aux.h;
  HypothesisReport rep;
  auto add = [&](const std::string& name, bool holds, const std::string& detail) {
    rep.items.push_back({name, holds, detail});
  };
  if (odd_cycles.size() != designated.size()) throw ArgumentError("cycles and designated vertices differ in count");

  bool shape = is_connected(h);
  std::string why = shape ? "" : "disconnected";
  std::vector<VertexId> v2;
  for (VertexId v : h.vertices()) {
    int d = h.degree(v);
    if (d < 2 || d > 3) {
      shape = false;
      why = "vertex " + std::to_string(v) + " has degree " + std::to_string(d);
    }
    if (d == 2) v2.push_back(v);
  }
  add("shape", shape, why);
  add("even-degree-2", v2.size() % 2 == 0, std::to_string(v2.size()) + " vertices of degree 2");

  bool odd_ok = true;
  std::string odd_why;
  std::vector<char> seen(h.vertex_bound(), 0);
  for (size_t i = 0; i < odd_cycles.size(); ++i) {
    Cycle c = odd_cycles[i];
    c.sign = Sign::Positive;
    const std::string at = "cycle " + std::to_string(i);
    if (!is_valid_cycle(h, c)) {
      odd_ok = false;
      odd_why = at + " is not a cycle of the auxiliary graph";
      break;
    }
    if (c.length() % 2 == 0) {
      odd_ok = false;
      odd_why = at + " has even length";
      break;
    }
    if (std::find(c.vertices.begin(), c.vertices.end(), designated[i]) == c.vertices.end()) {
      odd_ok = false;
      odd_why = at + " misses its designated vertex";
      break;
    }
    for (VertexId v : c.vertices) {
      if (seen[v]) {
        odd_ok = false;
        odd_why = at + " meets an earlier cycle";
      }
      seen[v] = 1;
    }
    if (!odd_ok) break;
  }
  add("odd-disjoint", odd_ok, odd_why);

  const size_t keep = odd_cycles.size() > 2 ? odd_cycles.size() - 2 : 0;
  std::set<VertexId> covered(designated.begin(), designated.begin() + static_cast<long>(keep));
  int uncovered = 0;
  for (VertexId v : v2)
    if (!covered.count(v)) ++uncovered;
  add("few-uncovered", uncovered < 6, std::to_string(uncovered) + " uncovered vertices of degree 2");

  std::vector<Cycle> n_cycles(odd_cycles.begin(), odd_cycles.begin() + static_cast<long>(keep));
  auto sv = odd_ok ? find_straddle_violation(h, n_cycles) : std::nullopt;
  const bool three = !(sv && sv->second < 0);
  const bool four = !(sv && sv->second >= 0);
  std::string cut_detail;
  if (sv) {
    cut_detail = "cut";
    for (EdgeId e : sv->cut) cut_detail += " " + std::to_string(e);
  }
  add("straddle-3", three, three ? "" : cut_detail);
  // A 3-cut violation stops the scan before 4-cuts are examined.
  add("straddle-4", four, four ? (three ? "" : "not examined") : cut_detail);
  return rep;
}

bool check_int_preflow(const SignedGraph& g, const Orientation& o, const Z3Assignment& phi, const IntFlow& psi,
                       std::string* why) {
  auto bad = [&](const std::string& s) {
    if (why) *why = s;
    return false;
  };
  for (EdgeId e : g.edges()) {
    if (std::abs(psi[e]) > 3) return bad("edge " + std::to_string(e) + " exceeds 3 in absolute value");
    if (Z3(psi[e]) != phi[e]) return bad("edge " + std::to_string(e) + " disagrees with the preflow mod 3");
  }
  for (VertexId v : g.vertices()) {
    int b = boundary_at(g, o, psi, v);
    int d = g.degree(v);
    if (d == 3 && b != 0) return bad("nonzero boundary at degree-3 vertex " + std::to_string(v));
    if (d == 2 && std::abs(b) != 1) return bad("boundary at degree-2 vertex " + std::to_string(v) + " is not ±1");
  }
  return true;
}

LiftResult lift_to_integer(const SignedGraph& g, const Orientation& o, const Z3Assignment& phi,
                           const AuxiliaryGraph& aux, const std::vector<EdgeId>& matching) {
  if (!is_perfect_matching(aux.h, matching)) throw ContractViolation("matching is not perfect");
  std::vector<char> matched(aux.h.edge_bound(), 0);
  for (EdgeId e : matching) matched[e] = 1;
  auto mu = [&](EdgeId h) { return h < 0 ? 0 : static_cast<int>(matched[aux.mu_segment[h]]); };

  LiftResult res;
  res.psi = IntFlow(g.edge_bound(), 0);
  for (EdgeId e : g.edges())
    if (!phi[e].zero()) res.psi[e] = phi[e].value() - 3 * mu(e);
  bool consistent = true;
  for (const Gadget& gd : aux.gadgets) {
    int at_tail = mu(gd.h1) - mu(gd.h2);
    int at_head = mu(gd.h2p) - mu(gd.h1p);
    if (at_tail != at_head) consistent = false;
    res.psi[gd.zero_edge] = 3 * at_tail;
  }
  if (consistent && check_int_preflow(g, o, phi, res.psi)) return res;

  // Fallback: exhaustive search over the lift classes.
  res.from_matching = false;
  std::vector<EdgeId> order;
  std::vector<char> placed(g.edge_bound(), 0);
  for (VertexId v : g.vertices())
    for (EdgeId e : g.incident(v))
      if (!placed[e]) {
        placed[e] = 1;
        order.push_back(e);
      }
  std::vector<int> remaining(g.vertex_bound(), 0);
  for (VertexId v : g.vertices()) remaining[v] = static_cast<int>(g.incident(v).size());
  IntFlow psi(g.edge_bound(), 0);
  long long nodes = 0;
  auto vertex_ok = [&](VertexId v) {
    int b = boundary_at(g, o, psi, v);
    return g.degree(v) == 3 ? b == 0 : std::abs(b) == 1;
  };
  std::function<bool(size_t)> rec = [&](size_t i) -> bool {
    if (++nodes > 5'000'000) return false;
    if (i == order.size()) return true;
    EdgeId e = order[i];
    const EdgeRecord& r = g.edge(e);
    std::vector<int> cand = phi[e].zero() ? std::vector<int>{0, 3, -3}
                            : phi[e].value() == 1 ? std::vector<int>{1, -2} : std::vector<int>{-1, 2};
    for (int val : cand) {
      psi[e] = val;
      --remaining[r.u];
      if (!r.is_loop()) --remaining[r.v];
      bool ok = (remaining[r.u] > 0 || vertex_ok(r.u)) && (remaining[r.v] > 0 || vertex_ok(r.v));
      if (ok && rec(i + 1)) return true;
      ++remaining[r.u];
      if (!r.is_loop()) ++remaining[r.v];
    }
    psi[e] = 0;
    return false;
  };
  if (!rec(0)) throw InvariantViolation("integer lift not found");
  res.psi = psi;
  return res;
}

IntFlow build_tau(const SignedGraph& g, const Orientation& o, const ParityGraph& pg, const IntFlow& psi) {
  IntFlow tau(g.edge_bound(), 0);
  for (size_t i = 0; i < pg.cl.size(); ++i) {
    const CycleRecord& r = pg.cl[i];
    const std::string at = "record " + std::to_string(i);
    if (r.kind == CycleKind::Positive) {
      if (r.cycle.is_vertex()) continue;
      if (!unit_walk(g, o, r.cycle, 0, tau)) throw InvariantViolation(at + ": positive cycle admits no ±1 circulation");
    } else if (r.kind == CycleKind::Fish) {
      if (!r.fish) throw InvariantViolation(at + ": fish without certificate");
      if (!unit_walk(g, o, r.fish->tau_cycle, 0, tau))
        throw InvariantViolation(at + ": fish cycle admits no ±1 circulation");
    } else if (pg.designated[i] >= 0) {
      const VertexId x = pg.designated[i];
      Cycle c = rotate_to(r.cycle, x);
      const int target = -2 * boundary_at(g, o, psi, x);
      if (!unit_walk(g, o, c, target, tau)) throw InvariantViolation(at + ": prescribed ±1 values unsolvable");
    }
  }
  return tau;
}

bool check_tau(const SignedGraph& g, const Orientation& o, const ParityGraph& pg, const IntFlow& psi,
               const IntFlow& tau, std::string* why) {
  auto bad = [&](const std::string& s) {
    if (why) *why = s;
    return false;
  };
  std::set<EdgeId> support;
  std::map<VertexId, int> target;
  for (size_t i = 0; i < pg.cl.size(); ++i) {
    const CycleRecord& r = pg.cl[i];
    if (r.kind == CycleKind::Positive) support.insert(r.cycle.edges.begin(), r.cycle.edges.end());
    if (r.kind == CycleKind::Fish && r.fish) support.insert(r.fish->tau_cycle.edges.begin(), r.fish->tau_cycle.edges.end());
    if (r.is_negative_kind() && pg.designated[i] >= 0) {
      support.insert(r.cycle.edges.begin(), r.cycle.edges.end());
      target[pg.designated[i]] = -2 * boundary_at(g, o, psi, pg.designated[i]);
    }
  }
  for (EdgeId e : g.edges()) {
    if (std::abs(tau[e]) > 1) return bad("tau exceeds 1 on edge " + std::to_string(e));
    if ((tau[e] != 0) != (support.count(e) > 0)) return bad("tau support differs at edge " + std::to_string(e));
  }
  for (VertexId v : g.vertices()) {
    int b = boundary_at(g, o, tau, v);
    auto it = target.find(v);
    int want = it == target.end() ? 0 : it->second;
    if (b != want) return bad("tau boundary wrong at vertex " + std::to_string(v));
  }
  return true;
}

IntFlow assemble_flow(const SignedGraph& g, const Orientation& o, const IntFlow& psi, const IntFlow& tau) {
  IntFlow f(g.edge_bound(), 0);
  for (EdgeId e : g.edges()) f[e] = 2 * psi[e] + tau[e];
  FlowVerdict v = verify_flow(g, o, f, 8);
  if (!v.accepted) throw InvariantViolation("2ψ+τ is not a nowhere-zero 8-flow: " + v.message());
  return f;
}

}  // namespace sigflow
