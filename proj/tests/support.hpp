#pragma once

// Independent brute-force helpers for tests. Nothing here calls into the library's algorithms;
// only the graph container and its accessors are shared.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <vector>

#include "sigflow/sigraph.hpp"

namespace testsupport {

using namespace sigflow;

inline int raw_boundary(const SignedGraph& g, const Orientation& o, const IntFlow& f, VertexId v) {
  int acc = 0;
  for (EdgeId e : g.edges()) {
    const EdgeRecord& r = g.edge(e);
    if (r.u == v) acc += to_int(o.at(e, 0)) * f[e];
    if (r.v == v) acc += to_int(o.at(e, 1)) * f[e];
  }
  return acc;
}

inline bool raw_is_nz_flow(const SignedGraph& g, const Orientation& o, const IntFlow& f, int k) {
  for (EdgeId e : g.edges())
    if (f[e] == 0 || std::abs(f[e]) >= k) return false;
  for (VertexId v : g.vertices())
    if (raw_boundary(g, o, f, v) != 0) return false;
  return true;
}

// Balanced iff vertices admit ±1 labels with sign(uv) = label(u)·label(v) on every edge.
inline bool raw_balanced(const SignedGraph& g, const std::vector<EdgeId>& edges) {
  std::map<VertexId, int> label;
  std::map<VertexId, std::vector<EdgeId>> adj;
  for (EdgeId e : edges) {
    adj[g.edge(e).u].push_back(e);
    adj[g.edge(e).v].push_back(e);
  }
  for (auto& [start, _] : adj) {
    if (label.count(start)) continue;
    label[start] = 1;
    std::vector<VertexId> stack{start};
    while (!stack.empty()) {
      VertexId x = stack.back();
      stack.pop_back();
      for (EdgeId e : adj[x]) {
        const EdgeRecord& r = g.edge(e);
        if (r.is_loop()) {
          if (r.sign == Sign::Negative) return false;
          continue;
        }
        VertexId y = r.other(x);
        int want = label[x] * to_int(r.sign);
        auto it = label.find(y);
        if (it == label.end()) {
          label[y] = want;
          stack.push_back(y);
        } else if (it->second != want) {
          return false;
        }
      }
    }
  }
  return true;
}

// All simple cycles as sorted edge sets (loops included, parallel pairs included).
inline std::vector<std::vector<EdgeId>> raw_cycles(const SignedGraph& g) {
  std::set<std::vector<EdgeId>> found;
  std::vector<EdgeId> path;
  std::vector<char> on(g.vertex_bound(), 0);
  std::function<void(VertexId, VertexId)> dfs = [&](VertexId start, VertexId x) {
    for (EdgeId e : g.incident(x)) {
      const EdgeRecord& r = g.edge(e);
      if (std::find(path.begin(), path.end(), e) != path.end()) continue;
      VertexId y = r.other(x);
      if (y < start) continue;
      if (y == start) {
        std::vector<EdgeId> c = path;
        c.push_back(e);
        std::sort(c.begin(), c.end());
        found.insert(c);
        continue;
      }
      if (on[y]) continue;
      on[y] = 1;
      path.push_back(e);
      dfs(start, y);
      path.pop_back();
      on[y] = 0;
    }
  };
  for (VertexId s : g.vertices()) {
    on[s] = 1;
    dfs(s, s);
    on[s] = 0;
  }
  return {found.begin(), found.end()};
}

inline bool raw_negative(const SignedGraph& g, const std::vector<EdgeId>& c) {
  int neg = 0;
  for (EdgeId e : c) neg += g.edge(e).sign == Sign::Negative;
  return neg % 2 == 1;
}

// Two cycles whose common part is a nonempty path form a theta; it is unbalanced iff one of
// its three cycles is negative, so scanning pairs with a negative first member suffices.
inline bool raw_has_unbalanced_theta(const SignedGraph& g) {
  auto cycles = raw_cycles(g);
  std::vector<std::set<VertexId>> verts;
  for (auto& c : cycles) {
    std::set<VertexId> s;
    for (EdgeId e : c) {
      s.insert(g.edge(e).u);
      s.insert(g.edge(e).v);
    }
    verts.push_back(s);
  }
  for (size_t i = 0; i < cycles.size(); ++i) {
    if (!raw_negative(g, cycles[i])) continue;
    for (size_t j = 0; j < cycles.size(); ++j) {
      if (i == j) continue;
      std::vector<EdgeId> common;
      std::set_intersection(cycles[i].begin(), cycles[i].end(), cycles[j].begin(), cycles[j].end(),
                            std::back_inserter(common));
      if (common.empty() || common.size() == cycles[j].size()) continue;
      // Shared vertices must be exactly the vertices of the shared edges, and those edges a path.
      std::set<VertexId> shared_v;
      std::set_intersection(verts[i].begin(), verts[i].end(), verts[j].begin(), verts[j].end(),
                            std::inserter(shared_v, shared_v.begin()));
      std::map<VertexId, int> deg;
      for (EdgeId e : common) {
        ++deg[g.edge(e).u];
        ++deg[g.edge(e).v];
      }
      if (deg.size() != shared_v.size() || common.size() + 1 != deg.size()) continue;
      int ends = 0;
      bool ok = true;
      for (auto& [v, d] : deg) {
        if (d == 1) ++ends;
        if (d > 2) ok = false;
      }
      if (ok && ends == 2) return true;
    }
  }
  return false;
}

// Maximum matching size by subset DP.
inline int raw_matching_size(int n, const std::vector<std::pair<int, int>>& edges) {
  std::vector<std::uint32_t> nb(n, 0);
  for (auto [a, b] : edges)
    if (a != b) {
      nb[a] |= 1U << b;
      nb[b] |= 1U << a;
    }
  std::vector<signed char> best(1U << n, 0);
  for (std::uint32_t mask = 1; mask < (1U << n); ++mask) {
    int v = __builtin_ctz(mask);
    std::uint32_t rest = mask & ~(1U << v);
    int b = best[rest];
    for (std::uint32_t cand = nb[v] & rest; cand; cand &= cand - 1) {
      int u = __builtin_ctz(cand);
      b = std::max(b, 1 + best[rest & ~(1U << u)]);
    }
    best[mask] = static_cast<signed char>(b);
  }
  return best[(1U << n) - 1];
}

inline SignedGraph random_multigraph(std::mt19937_64& rng, int n, int m, bool loops) {
  SignedGraph g(n);
  std::uniform_int_distribution<int> pick(0, n - 1), coin(0, 1);
  for (int i = 0; i < m; ++i) {
    int a = pick(rng), b = pick(rng);
    if (a == b && !loops) continue;
    g.add_edge(a, b, coin(rng) ? Sign::Negative : Sign::Positive);
  }
  return g;
}

inline Orientation random_orientation(const SignedGraph& g, std::mt19937_64& rng) {
  Orientation o = Orientation::canonical(g);
  std::uniform_int_distribution<int> coin(0, 1);
  for (EdgeId e : g.edges())
    if (coin(rng)) o.set(e, flip(o.at(e, 0)), flip(o.at(e, 1)));
  return o;
}

// Merges v into u along edge e (after switching at v so e is positive); drops e.
inline SignedGraph contract_edge(const SignedGraph& g0, EdgeId e) {
  SignedGraph g = g0;
  Orientation o = Orientation::canonical(g);
  const EdgeRecord r = g.edge(e);
  if (r.sign == Sign::Negative) switch_at_vertex(g, o, r.v);
  g.remove_edge(e);
  std::vector<EdgeId> inc = g.incident(r.v);
  for (EdgeId f : inc) {
    const EdgeRecord& fr = g.edge(f);
    if (fr.u == r.v) g.move_end(f, 0, r.u);
    if (g.edge(f).v == r.v) g.move_end(f, 1, r.u);
  }
  g.remove_vertex(r.v);
  return g;
}

}  // namespace testsupport
