#include "sigflow/structure.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace sigflow {

bool BlockCutTree::is_cut(VertexId v) const {
  return std::binary_search(cut_vertices.begin(), cut_vertices.end(), v);
}

int BlockCutTree::cut_count(int block) const {
  int c = 0;
  for (VertexId v : block_vertices[block])
    if (is_cut(v)) ++c;
  return c;
}

std::vector<int> BlockCutTree::leaf_blocks() const {
  std::vector<int> out;
  for (int b = 0; b < static_cast<int>(blocks.size()); ++b)
    if (cut_count(b) <= 1) out.push_back(b);
  std::sort(out.begin(), out.end(), [&](int x, int y) {
    return block_vertices[x].front() != block_vertices[y].front()
               ? block_vertices[x].front() < block_vertices[y].front()
               : block_vertices[x] < block_vertices[y];
  });
  return out;
}

namespace {

struct Tarjan {
  const SignedGraph& g;
  const Mask& mask;
  std::vector<int> disc, low;
  std::vector<EdgeId> stack;
  int timer = 0;
  BlockCutTree* out;

  void emit(std::vector<EdgeId> edges) {
    std::set<VertexId> vs;
    for (EdgeId e : edges) {
      vs.insert(g.edge(e).u);
      vs.insert(g.edge(e).v);
    }
    std::sort(edges.begin(), edges.end());
    out->blocks.push_back(std::move(edges));
    out->block_vertices.emplace_back(vs.begin(), vs.end());
  }

  void dfs(VertexId v, EdgeId parent_edge) {
    disc[v] = low[v] = ++timer;
    for (EdgeId e : g.incident(v)) {
      if (mask.edge_out(e) || e == parent_edge) continue;
      const EdgeRecord& r = g.edge(e);
      if (r.is_loop()) {
        emit({e});
        continue;
      }
      VertexId w = r.other(v);
      if (mask.vertex_out(w)) continue;
      if (disc[w] == 0) {
        stack.push_back(e);
        dfs(w, e);
        low[v] = std::min(low[v], low[w]);
        if (low[w] >= disc[v]) {
          std::vector<EdgeId> block;
          while (true) {
            EdgeId top = stack.back();
            stack.pop_back();
            block.push_back(top);
            if (top == e) break;
          }
          emit(std::move(block));
        }
      } else if (disc[w] < disc[v]) {
        stack.push_back(e);
        low[v] = std::min(low[v], disc[w]);
      }
    }
  }
};

// Sign-propagation balance test restricted to an edge list.
bool edge_set_balanced(const SignedGraph& g, const std::vector<EdgeId>& edges, std::vector<std::int8_t>& sigma) {
  std::vector<std::vector<std::pair<VertexId, EdgeId>>> local;
  std::map<VertexId, int> idx;
  auto index = [&](VertexId v) {
    auto it = idx.find(v);
    if (it != idx.end()) return it->second;
    int i = static_cast<int>(local.size());
    idx[v] = i;
    local.emplace_back();
    return i;
  };
  for (EdgeId e : edges) {
    const EdgeRecord& r = g.edge(e);
    if (r.is_loop()) {
      if (r.sign == Sign::Negative) return false;
      continue;
    }
    int a = index(r.u), b = index(r.v);
    local[a].push_back({b, e});
    local[b].push_back({a, e});
  }
  sigma.assign(local.size(), 0);
  std::vector<int> queue;
  for (int s = 0; s < static_cast<int>(local.size()); ++s) {
    if (sigma[s]) continue;
    sigma[s] = 1;
    queue.assign(1, s);
    for (size_t qi = 0; qi < queue.size(); ++qi) {
      int x = queue[qi];
      for (auto [y, e] : local[x]) {
        std::int8_t want = static_cast<std::int8_t>(sigma[x] * to_int(g.edge(e).sign));
        if (!sigma[y]) {
          sigma[y] = want;
          queue.push_back(y);
        } else if (sigma[y] != want) {
          return false;
        }
      }
    }
  }
  return true;
}

std::vector<char> vertex_flags(const SignedGraph& g, const std::vector<VertexId>& vs) {
  std::vector<char> f(g.vertex_bound(), 0);
  for (VertexId v : vs) f[v] = 1;
  return f;
}

}  // namespace

BlockCutTree block_cut_tree(const SignedGraph& g, const Mask& mask) {
  BlockCutTree out;
  Tarjan t{g, mask, std::vector<int>(g.vertex_bound(), 0), std::vector<int>(g.vertex_bound(), 0), {}, 0, &out};
  for (VertexId v : g.vertices()) {
    if (mask.vertex_out(v) || t.disc[v] != 0) continue;
    size_t before = out.blocks.size();
    t.dfs(v, -1);
    bool has_block = false;
    for (size_t b = before; b < out.blocks.size(); ++b)
      if (std::binary_search(out.block_vertices[b].begin(), out.block_vertices[b].end(), v)) has_block = true;
    if (!has_block) {
      out.blocks.emplace_back();
      out.block_vertices.push_back({v});
    }
  }
  std::map<VertexId, int> count;
  for (const auto& bv : out.block_vertices)
    for (VertexId v : bv) ++count[v];
  for (auto [v, c] : count)
    if (c >= 2) out.cut_vertices.push_back(v);
  for (int b = 0; b < static_cast<int>(out.blocks.size()); ++b)
    for (VertexId v : out.block_vertices[b])
      if (count[v] >= 2) out.tree_edges.push_back({b, v});
  return out;
}

SearchStatus for_each_cycle(const SignedGraph& g, const CycleSearchOptions& opts,
                            const std::function<bool(const Cycle&)>& visit) {
  const int nb = g.vertex_bound();
  std::vector<char> on_path(nb, 0);
  std::vector<VertexId> pv;
  std::vector<EdgeId> pe;
  long long nodes = 0;
  bool stop = false, unknown = false;
  VertexId s = -1;
  int cost = 0;
  auto vcost = [&](VertexId v) { return opts.cost ? (*opts.cost)[v] : 1; };

  std::function<void(VertexId)> dfs = [&](VertexId x) {
    if (opts.node_limit >= 0 && ++nodes > opts.node_limit) {
      unknown = true;
      return;
    }
    for (EdgeId e : g.incident(x)) {
      if (stop || unknown) return;
      if (opts.mask.edge_out(e)) continue;
      const EdgeRecord& r = g.edge(e);
      if (r.is_loop()) continue;
      VertexId y = r.other(x);
      if (y == s) {
        if (!pe.empty() && pe.front() < e) {
          Cycle c;
          c.vertices = pv;
          c.edges = pe;
          c.edges.push_back(e);
          c.sign = product_sign(g, c.edges);
          if (visit(c)) stop = true;
        }
        continue;
      }
      if (y < s || on_path[y] || opts.mask.vertex_out(y)) continue;
      if (cost + vcost(y) > opts.max_cost) continue;
      on_path[y] = 1;
      pv.push_back(y);
      pe.push_back(e);
      cost += vcost(y);
      if (!opts.prune || !opts.prune(on_path, pe)) dfs(y);
      cost -= vcost(y);
      pe.pop_back();
      pv.pop_back();
      on_path[y] = 0;
    }
  };

  for (VertexId v : g.vertices()) {
    if (opts.mask.vertex_out(v)) continue;
    if (vcost(v) > opts.max_cost) continue;
    s = v;
    for (EdgeId e : g.incident(v)) {
      if (opts.mask.edge_out(e) || !g.edge(e).is_loop()) continue;
      if (opts.prune) {
        std::vector<char> only(nb, 0);
        only[v] = 1;
        if (opts.prune(only, {e})) continue;
      }
      Cycle c{{v}, {e}, g.edge(e).sign};
      if (visit(c)) return SearchStatus::Found;
    }
    on_path[v] = 1;
    pv.assign(1, v);
    pe.clear();
    cost = vcost(v);
    if (!opts.prune || !opts.prune(on_path, pe)) dfs(v);
    on_path[v] = 0;
    if (stop) return SearchStatus::Found;
    if (unknown) return SearchStatus::Unknown;
  }
  return SearchStatus::None;
}

bool cycle_order_less(const Cycle& a, const Cycle& b) {
  if (a.length() != b.length()) return a.length() < b.length();
  std::vector<EdgeId> x = a.edges, y = b.edges;
  std::sort(x.begin(), x.end());
  std::sort(y.begin(), y.end());
  if (x != y) return x < y;
  return a.vertices < b.vertices;
}

RankedCycle best_cycle(const SignedGraph& g, const CycleSearchOptions& opts,
                       const std::function<bool(const Cycle&)>& accept) {
  RankedCycle out;
  int total = 0;
  for (VertexId v : g.vertices())
    if (!opts.mask.vertex_out(v)) total += opts.cost ? (*opts.cost)[v] : 1;
  auto vcost = [&](VertexId v) { return opts.cost ? (*opts.cost)[v] : 1; };
  long long budget = opts.node_limit;
  for (int level = 0; level <= std::min(total, opts.max_cost); ++level) {
    CycleSearchOptions o = opts;
    o.max_cost = level;
    if (budget >= 0) o.node_limit = budget;
    std::vector<Cycle> found;
    SearchStatus st = for_each_cycle(g, o, [&](const Cycle& c) {
      int sum = 0;
      for (VertexId v : c.vertices) sum += vcost(v);
      if (sum == level && accept(c)) found.push_back(c);
      return false;
    });
    if (st == SearchStatus::Unknown) {
      out.status = SearchStatus::Unknown;
      return out;
    }
    if (!found.empty()) {
      out.status = SearchStatus::Found;
      out.cycle = *std::min_element(found.begin(), found.end(), cycle_order_less);
      return out;
    }
  }
  return out;
}

CycleEnumeration enumerate_cycles(const SignedGraph& g, int limit) {
  CycleEnumeration out;
  for_each_cycle(g, {}, [&](const Cycle& c) {
    if (static_cast<int>(out.cycles.size()) >= limit) {
      out.truncated = true;
      return true;
    }
    out.cycles.push_back(c);
    return false;
  });
  std::sort(out.cycles.begin(), out.cycles.end(), cycle_order_less);
  return out;
}

std::optional<Cycle> find_negative_cycle(const SignedGraph& g) {
  BalanceCertificate c = is_balanced(g);
  if (c.balanced) return std::nullopt;
  return c.negative_cycle;
}

bool has_unbalanced_theta(const SignedGraph& g, const Mask& mask) {
  BlockCutTree t = block_cut_tree(g, mask);
  std::vector<std::int8_t> scratch;
  for (int b = 0; b < static_cast<int>(t.blocks.size()); ++b) {
    if (t.blocks[b].size() < 2 || t.is_single_cycle(b)) continue;
    if (!edge_set_balanced(g, t.blocks[b], scratch)) return true;
  }
  return false;
}

std::optional<ThetaSubgraph> find_unbalanced_theta(const SignedGraph& g) {
  BlockCutTree t = block_cut_tree(g);
  std::vector<std::int8_t> scratch;
  for (int b = 0; b < static_cast<int>(t.blocks.size()); ++b) {
    if (t.blocks[b].size() < 2 || t.is_single_cycle(b)) continue;
    if (edge_set_balanced(g, t.blocks[b], scratch)) continue;
    // Induced on the block, minus loops (each loop is its own block).
    SignedGraph h = g.induced(t.block_vertices[b]);
    for (EdgeId e : h.edges())
      if (h.edge(e).is_loop()) h.remove_edge(e);
    Cycle c = is_balanced(h).negative_cycle;
    std::vector<char> on_c = vertex_flags(g, c.vertices);
    std::set<EdgeId> c_edges(c.edges.begin(), c.edges.end());
    // An ear: a chord, or a path leaving C and returning to another vertex of C.
    for (size_t i = 0; i < c.vertices.size(); ++i) {
      VertexId x = c.vertices[i];
      for (EdgeId e : h.incident(x)) {
        if (c_edges.count(e) || h.edge(e).is_loop()) continue;
        VertexId y = h.edge(e).other(x);
        std::vector<VertexId> qv;
        std::vector<EdgeId> qe;
        if (on_c[y]) {
          qv = {x, y};
          qe = {e};
        } else {
          std::map<VertexId, EdgeId> parent{{y, e}};
          std::vector<VertexId> queue{y};
          VertexId hit = -1;
          for (size_t qi = 0; qi < queue.size() && hit < 0; ++qi) {
            VertexId z = queue[qi];
            for (EdgeId f : h.incident(z)) {
              if (f == parent[z] || h.edge(f).is_loop()) continue;
              VertexId w = h.edge(f).other(z);
              if (w == x) continue;
              if (on_c[w]) {
                hit = w;
                parent[w] = f;
                qv = {w};
                qe = {f};
                VertexId cur = z;
                while (true) {
                  qv.push_back(cur);
                  qe.push_back(parent[cur]);
                  if (cur == y) break;
                  cur = h.edge(parent[cur]).other(cur);
                }
                qv.push_back(x);
                break;
              }
              if (!parent.count(w)) {
                parent[w] = f;
                queue.push_back(w);
              }
            }
          }
          if (hit < 0) continue;
          std::reverse(qv.begin(), qv.end());
          std::reverse(qe.begin(), qe.end());
        }
        // qv runs x .. other C vertex.
        VertexId end = qv.back();
        ThetaSubgraph th;
        th.a = x;
        th.b = end;
        th.paths[0] = qv;
        th.path_edges[0] = qe;
        int L = c.length();
        size_t j = std::find(c.vertices.begin(), c.vertices.end(), end) - c.vertices.begin();
        // forward arc i -> j
        {
          std::vector<VertexId> pv{x};
          std::vector<EdgeId> pe;
          for (size_t k = i; k != j; k = (k + 1) % L) {
            pe.push_back(c.edges[k]);
            pv.push_back(c.vertices[(k + 1) % L]);
          }
          th.paths[1] = pv;
          th.path_edges[1] = pe;
        }
        {
          std::vector<VertexId> pv{x};
          std::vector<EdgeId> pe;
          for (size_t k = i; k != j; k = (k + L - 1) % L) {
            pe.push_back(c.edges[(k + L - 1) % L]);
            pv.push_back(c.vertices[(k + L - 1) % L]);
          }
          th.paths[2] = pv;
          th.path_edges[2] = pe;
        }
        return th;
      }
    }
    throw InvariantViolation("unbalanced non-cycle block without an ear");
  }
  return std::nullopt;
}

CyclePair find_two_disjoint_negative_cycles(const SignedGraph& g, bool vertex_disjoint, long long node_limit) {
  CyclePair out;
  CycleSearchOptions opts;
  opts.node_limit = node_limit;
  std::vector<char> emask(g.edge_bound(), 0);
  auto remainder_unbalanced = [&](const std::vector<char>& on_path, const std::vector<EdgeId>& pe) {
    if (vertex_disjoint) return !balanced(g, Mask{&on_path, nullptr});
    for (EdgeId e : pe) emask[e] = 1;
    bool r = !balanced(g, Mask{nullptr, &emask});
    for (EdgeId e : pe) emask[e] = 0;
    return r;
  };
  opts.prune = [&](const std::vector<char>& on_path, const std::vector<EdgeId>& pe) {
    return !remainder_unbalanced(on_path, pe);
  };
  RankedCycle first = best_cycle(g, opts, [&](const Cycle& c) { return c.sign == Sign::Negative; });
  out.status = first.status;
  if (first.status != SearchStatus::Found) return out;
  out.first = first.cycle;
  std::vector<char> vm = vertex_flags(g, first.cycle.vertices);
  for (EdgeId e : first.cycle.edges) emask[e] = 1;
  BalanceCertificate rest = vertex_disjoint ? is_balanced(g, Mask{&vm, nullptr}) : is_balanced(g, Mask{nullptr, &emask});
  if (rest.balanced) throw InvariantViolation("second negative cycle vanished");
  out.second = rest.negative_cycle;
  return out;
}

std::vector<int> degree_table(const SignedGraph& g, const Mask& mask) {
  std::vector<int> deg(g.vertex_bound(), 0);
  for (EdgeId e : g.edges()) {
    if (mask.edge_out(e)) continue;
    const EdgeRecord& r = g.edge(e);
    if (mask.vertex_out(r.u) || mask.vertex_out(r.v)) continue;
    deg[r.u] += 1;
    deg[r.v] += 1;
  }
  return deg;
}

bool is_good_cycle(const Cycle& c, const std::vector<int>& deg) {
  if (c.is_vertex()) return deg[c.vertices[0]] <= 1;
  if (c.sign != Sign::Positive) return false;
  int two = 0;
  for (VertexId v : c.vertices)
    if (deg[v] == 2) ++two;
  return two >= 2;
}

bool is_usable_cycle(const Cycle& c, const std::vector<int>& deg) {
  if (is_good_cycle(c, deg)) return true;
  if (c.is_vertex() || c.sign != Sign::Negative) return false;
  int other = 0;
  for (VertexId v : c.vertices)
    if (deg[v] != 2) ++other;
  return other <= 1;
}

namespace {

bool is_negative_cycle_graph(const SignedGraph& g) {
  if (g.num_vertices() == 0 || !is_connected(g)) return false;
  for (VertexId v : g.vertices())
    if (g.degree(v) != 2) return false;
  return product_sign(g, g.edges()) == Sign::Negative;
}

GoodCycleResult ranked_search(const SignedGraph& g, bool usable) {
  GoodCycleResult out;
  std::vector<int> deg = degree_table(g);
  for (VertexId v : g.vertices()) {
    if (deg[v] <= 1) {
      out.kind = GoodCycleResult::Kind::Found;
      out.cycle = Cycle{{v}, {}, Sign::Positive};
      return out;
    }
  }
  if (!usable && is_negative_cycle_graph(g)) {
    out.kind = GoodCycleResult::Kind::IsNegativeCycle;
    out.cycle = cycle_from_edges(g, g.edges());
    return out;
  }
  std::vector<int> cost(g.vertex_bound(), 0);
  for (VertexId v : g.vertices()) cost[v] = deg[v] >= 3 ? 1 : 0;
  CycleSearchOptions opts;
  opts.cost = &cost;
  RankedCycle r = best_cycle(g, opts, [&](const Cycle& c) {
    return usable ? is_usable_cycle(c, deg) : is_good_cycle(c, deg);
  });
  if (r.status == SearchStatus::Found) {
    out.kind = GoodCycleResult::Kind::Found;
    out.cycle = r.cycle;
  }
  return out;
}

}  // namespace

GoodCycleResult find_good_cycle(const SignedGraph& g) { return ranked_search(g, false); }
GoodCycleResult find_usable_cycle(const SignedGraph& g) { return ranked_search(g, true); }

std::optional<GoodThetaPair> find_good_theta_pair(const SignedGraph& g) {
  std::vector<int> deg = degree_table(g);
  CycleEnumeration all = enumerate_cycles(g, 200000);
  std::optional<GoodThetaPair> best;
  for (const Cycle& d : all.cycles) {
    if (d.sign != Sign::Negative) continue;
    std::vector<char> on_d = vertex_flags(g, d.vertices);
    std::vector<char> used(g.vertex_bound(), 0);
    std::vector<VertexId> qv;
    std::vector<EdgeId> qe;
    std::function<void(VertexId)> walk = [&](VertexId x) {
      for (EdgeId e : g.incident(x)) {
        const EdgeRecord& r = g.edge(e);
        if (r.is_loop() || (!qe.empty() && e == qe.back())) continue;
        VertexId y = r.other(x);
        if (on_d[y]) {
          if (y == qv.front() || qv.size() < 2) continue;
          int two = 0;
          for (size_t i = 1; i < qv.size(); ++i)
            if (deg[qv[i]] == 2) ++two;
          if (two < 2) continue;
          int len = static_cast<int>(qe.size()) + 1;
          if (!best || len > static_cast<int>(best->q_edges.size())) {
            GoodThetaPair p{d, qv, qe};
            p.q_vertices.push_back(y);
            p.q_edges.push_back(e);
            best = p;
          }
          continue;
        }
        if (used[y]) continue;
        used[y] = 1;
        qv.push_back(y);
        qe.push_back(e);
        walk(y);
        qe.pop_back();
        qv.pop_back();
        used[y] = 0;
      }
    };
    for (VertexId c : d.vertices) {
      qv.assign(1, c);
      qe.clear();
      walk(c);
    }
  }
  return best;
}

bool is_fragile(const SignedGraph& g) {
  if (!has_unbalanced_theta(g)) return false;
  std::vector<int> deg = degree_table(g);
  for (VertexId v : g.vertices()) {
    if (deg[v] > 1) continue;
    std::vector<char> m(g.vertex_bound(), 0);
    m[v] = 1;
    if (has_unbalanced_theta(g, Mask{&m, nullptr})) return false;
  }
  CycleSearchOptions opts;
  opts.prune = [&](const std::vector<char>& on_path, const std::vector<EdgeId>&) {
    return !has_unbalanced_theta(g, Mask{&on_path, nullptr});
  };
  SearchStatus st = for_each_cycle(g, opts, [&](const Cycle& c) { return is_good_cycle(c, deg); });
  return st == SearchStatus::None;
}

std::optional<FishCertificate> recognize_fish(const SignedGraph& g) {
  std::vector<VertexId> branch;
  for (VertexId v : g.vertices()) {
    int d = g.degree(v);
    if (d == 3)
      branch.push_back(v);
    else if (d != 2)
      return std::nullopt;
  }
  if (branch.size() != 4 || !is_connected(g)) return std::nullopt;
  for (EdgeId e : g.edges())
    if (g.edge(e).is_loop()) return std::nullopt;

  struct Chain {
    VertexId from, to;
    std::vector<VertexId> vs;
    std::vector<EdgeId> es;
  };
  std::vector<Chain> chains;
  std::set<EdgeId> seen;
  for (VertexId b : branch) {
    for (EdgeId e0 : g.incident(b)) {
      if (seen.count(e0)) continue;
      Chain ch{b, -1, {b}, {}};
      VertexId x = b;
      EdgeId e = e0;
      while (true) {
        ch.es.push_back(e);
        seen.insert(e);
        x = g.edge(e).other(x);
        ch.vs.push_back(x);
        if (g.degree(x) == 3) break;
        const auto& inc = g.incident(x);
        e = inc[0] == e ? inc[1] : inc[0];
      }
      ch.to = x;
      chains.push_back(ch);
    }
  }
  if (chains.size() != 6) return std::nullopt;

  std::vector<int> perm{0, 1, 2, 3};
  do {
    VertexId a = branch[perm[0]], b = branch[perm[1]], r = branch[perm[2]], s = branch[perm[3]];
    auto joins = [](const Chain& c, VertexId x, VertexId y) {
      return (c.from == x && c.to == y) || (c.from == y && c.to == x);
    };
    std::vector<int> ab2, ar1, sb1, rs1, rsP;
    for (int i = 0; i < 6; ++i) {
      const Chain& c = chains[i];
      int len = static_cast<int>(c.es.size());
      if (joins(c, a, b) && len == 2) ab2.push_back(i);
      else if (joins(c, a, r) && len == 1) ar1.push_back(i);
      else if (joins(c, s, b) && len == 1) sb1.push_back(i);
      else if (joins(c, r, s) && len == 1) rs1.push_back(i);
      else if (joins(c, r, s) && len >= 3 && len % 2 == 1) rsP.push_back(i);
    }
    if (ab2.size() != 2 || ar1.size() != 1 || sb1.size() != 1 || rs1.size() != 1 || rsP.size() != 1) continue;
    FishCertificate f;
    f.a = a;
    f.b = b;
    f.r = r;
    f.s = s;
    f.p = chains[ab2[0]].vs[1];
    f.q = chains[ab2[1]].vs[1];
    if (f.p > f.q) std::swap(f.p, f.q);
    f.distinguished = chains[rs1[0]].es[0];
    const Chain& P = chains[rsP[0]];
    f.path = P.vs;
    f.path_edges = P.es;
    if (P.from != r) {
      std::reverse(f.path.begin(), f.path.end());
      std::reverse(f.path_edges.begin(), f.path_edges.end());
    }
    for (int i : {ab2[0], ab2[1], ar1[0], sb1[0], rs1[0]})
      for (EdgeId e : chains[i].es) f.theta_edges.push_back(e);
    std::sort(f.theta_edges.begin(), f.theta_edges.end());
    std::vector<VertexId> hv{a, b, r, s, f.p, f.q};
    std::sort(hv.begin(), hv.end());
    SignedGraph h = g.induced(hv);
    BalanceCertificate hc = is_balanced(h);
    if (!hc.balanced || balanced(g)) return std::nullopt;
    // Switch H positive, then push the negativity of P onto its first edge.
    std::vector<char> sw(g.vertex_bound(), 0);
    for (VertexId v : hc.switching_set) sw[v] = 1;
    auto cur_sign = [&](EdgeId e) {
      const EdgeRecord& rr = g.edge(e);
      Sign sg = rr.sign;
      if (sw[rr.u]) sg = flip(sg);
      if (sw[rr.v]) sg = flip(sg);
      return sg;
    };
    for (size_t i = f.path.size() - 2; i >= 1; --i)
      if (cur_sign(f.path_edges[i]) == Sign::Negative) sw[f.path[i]] ^= 1;
    for (VertexId v : g.vertices())
      if (sw[v]) f.switching.push_back(v);
    // Positive cycle r s b p a.
    auto edge_between = [&](VertexId x, VertexId y) {
      for (EdgeId e : g.incident(x))
        if (g.edge(e).other(x) == y && std::binary_search(f.theta_edges.begin(), f.theta_edges.end(), e)) return e;
      return EdgeId{-1};
    };
    f.tau_cycle.vertices = {r, s, b, f.p, a};
    f.tau_cycle.edges = {f.distinguished, edge_between(s, b), edge_between(b, f.p), edge_between(f.p, a),
                         edge_between(a, r)};
    f.tau_cycle.sign = product_sign(g, f.tau_cycle.edges);
    return f;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return std::nullopt;
}

bool check_wm_partition(const SignedGraph& g, const WMPartition& p, VertexId x1, VertexId x2, VertexId x3) {
  if (static_cast<int>(p.part.size()) < g.vertex_bound()) return false;
  for (VertexId v : g.vertices())
    if (p.part[v] < 0 || p.part[v] > 4) return false;
  if (p.part[x1] != 2 || p.part[x2] != 3 || p.part[x3] != 4) return false;
  int count[5][5] = {};
  for (EdgeId e : g.edges()) {
    const EdgeRecord& r = g.edge(e);
    int a = p.part[r.u], b = p.part[r.v];
    if (a == b) continue;
    ++count[std::min(a, b)][std::max(a, b)];
  }
  if (count[0][1] != 0) return false;
  for (int i = 2; i < 5; ++i)
    for (int j = i + 1; j < 5; ++j)
      if (count[i][j] != 0) return false;
  for (int i = 2; i < 5; ++i)
    for (int j = 0; j < 2; ++j)
      if (count[j][i] != 1) return false;
  return true;
}

std::variant<Cycle, WMPartition> cycle_through_three_vertices(const SignedGraph& g, VertexId x1, VertexId x2,
                                                               VertexId x3) {
  for (VertexId x : {x1, x2, x3})
    if (!g.has_vertex(x)) throw ArgumentError("unknown vertex " + std::to_string(x));
  if (x1 == x2 || x2 == x3 || x1 == x3) throw ArgumentError("vertices must be distinct");
  if (max_degree(g) > 3) throw ArgumentError("graph is not subcubic");
  BlockCutTree t = block_cut_tree(g);
  if (t.blocks.size() != 1 || static_cast<int>(t.block_vertices[0].size()) != g.num_vertices() ||
      g.num_vertices() < 3)
    throw ArgumentError("graph is not 2-connected");

  RankedCycle rc = best_cycle(g, {}, [&](const Cycle& c) {
    int hits = 0;
    for (VertexId v : c.vertices)
      if (v == x1 || v == x2 || v == x3) ++hits;
    return hits == 3;
  });
  if (rc.status == SearchStatus::Found) return rc.cycle;

  // Partition search in BFS order from x1.
  std::vector<VertexId> order{x1};
  std::vector<char> seen(g.vertex_bound(), 0);
  seen[x1] = 1;
  for (size_t i = 0; i < order.size(); ++i)
    for (EdgeId e : g.incident(order[i])) {
      VertexId y = g.edge(e).other(order[i]);
      if (!seen[y]) {
        seen[y] = 1;
        order.push_back(y);
      }
    }
  WMPartition p;
  p.part.assign(g.vertex_bound(), -1);
  int count[5][5] = {};
  auto allowed = [](int a, int b) {
    if (a == b) return true;
    if (a > b) std::swap(a, b);
    if (a == 0 && b == 1) return false;
    if (a >= 2) return false;
    return true;
  };
  std::function<bool(size_t)> place = [&](size_t i) -> bool {
    if (i == order.size()) return check_wm_partition(g, p, x1, x2, x3);
    VertexId v = order[i];
    int fixed = v == x1 ? 2 : v == x2 ? 3 : v == x3 ? 4 : -1;
    for (int lab = 0; lab < 5; ++lab) {
      if (fixed >= 0 && lab != fixed) continue;
      bool ok = true;
      std::vector<std::pair<int, int>> bumped;
      for (EdgeId e : g.incident(v)) {
        VertexId y = g.edge(e).other(v);
        if (y == v || p.part[y] < 0) continue;
        int other = p.part[y];
        if (!allowed(lab, other)) {
          ok = false;
          break;
        }
        if (lab != other) {
          int a = std::min(lab, other), b = std::max(lab, other);
          if (++count[a][b] > 1) ok = false;
          bumped.push_back({a, b});
          if (!ok) break;
        }
      }
      if (ok) {
        p.part[v] = lab;
        if (place(i + 1)) return true;
        p.part[v] = -1;
      }
      for (auto [a, b] : bumped) --count[a][b];
    }
    return false;
  };
  if (place(0)) return p;
  throw InvariantViolation("neither a cycle nor a partition through the three vertices");
}

bool is_well_behaved(const SignedGraph& g) {
  std::vector<VertexId> vs = g.vertices();
  const int n = static_cast<int>(vs.size());
  if (n > 16) throw ArgumentError("is_well_behaved refuses graphs above 16 vertices");
  std::vector<int> idx(g.vertex_bound(), -1);
  for (int i = 0; i < n; ++i) idx[vs[i]] = i;
  std::vector<int> deg(n);
  for (int i = 0; i < n; ++i) deg[i] = g.degree(vs[i]);
  std::vector<EdgeId> es = g.edges();
  std::vector<char> vmask(g.vertex_bound(), 0);
  for (std::uint32_t X = 1; X < (1U << n); ++X) {
    int d = 0, def = 0, size = 0;
    for (int i = 0; i < n; ++i)
      if (X >> i & 1U) {
        def += 3 - deg[i];
        ++size;
      }
    for (EdgeId e : es) {
      const EdgeRecord& r = g.edge(e);
      bool a = X >> idx[r.u] & 1U, b = X >> idx[r.v] & 1U;
      if (a != b) ++d;
    }
    if (d + def < 3) return false;
    if (size >= 2 && d + def < 4) {
      for (int i = 0; i < n; ++i) vmask[vs[i]] = !(X >> i & 1U);
      if (balanced(g, Mask{&vmask, nullptr})) return false;
    }
  }
  return true;
}

bool is_valid_cycle(const SignedGraph& g, const Cycle& c) {
  if (c.vertices.empty()) return false;
  for (VertexId v : c.vertices)
    if (!g.has_vertex(v)) return false;
  std::set<VertexId> vs(c.vertices.begin(), c.vertices.end());
  if (vs.size() != c.vertices.size()) return false;
  if (c.is_vertex()) return c.vertices.size() == 1;
  if (c.edges.size() != c.vertices.size()) return false;
  std::set<EdgeId> es(c.edges.begin(), c.edges.end());
  if (es.size() != c.edges.size()) return false;
  const size_t L = c.edges.size();
  for (size_t i = 0; i < L; ++i) {
    if (!g.has_edge(c.edges[i])) return false;
    const EdgeRecord& r = g.edge(c.edges[i]);
    VertexId x = c.vertices[i], y = c.vertices[(i + 1) % L];
    if (!((r.u == x && r.v == y) || (r.u == y && r.v == x))) return false;
  }
  return product_sign(g, c.edges) == c.sign;
}

std::vector<Cycle> negative_cycles_without_theta(const SignedGraph& g, const Mask& mask) {
  std::vector<Cycle> out;
  BlockCutTree t = block_cut_tree(g, mask);
  for (int b = 0; b < static_cast<int>(t.blocks.size()); ++b) {
    if (!t.is_single_cycle(b)) continue;
    if (product_sign(g, t.blocks[b]) == Sign::Negative) out.push_back(cycle_from_edges(g, t.blocks[b]));
  }
  std::sort(out.begin(), out.end(), cycle_order_less);
  return out;
}

Cycle cycle_from_edges(const SignedGraph& g, const std::vector<EdgeId>& edges) {
  Cycle c;
  if (edges.empty()) return c;
  std::map<VertexId, std::vector<EdgeId>> at;
  for (EdgeId e : edges) {
    const EdgeRecord& r = g.edge(e);
    at[r.u].push_back(e);
    if (!r.is_loop()) at[r.v].push_back(e);
  }
  VertexId start = at.begin()->first;
  if (edges.size() == 1) {
    c.vertices = {start};
    c.edges = edges;
    c.sign = g.edge(edges[0]).sign;
    return c;
  }
  std::set<EdgeId> used;
  VertexId x = start;
  EdgeId first = *std::min_element(at[start].begin(), at[start].end());
  EdgeId e = first;
  while (true) {
    c.vertices.push_back(x);
    c.edges.push_back(e);
    used.insert(e);
    x = g.edge(e).other(x);
    if (x == start) break;
    EdgeId next = -1;
    for (EdgeId f : at[x])
      if (!used.count(f)) next = f;
    if (next < 0) throw ArgumentError("edge set is not a cycle");
    e = next;
  }
  if (c.edges.size() != edges.size()) throw ArgumentError("edge set is not a single cycle");
  c.sign = product_sign(g, c.edges);
  return c;
}

}  // namespace sigflow
