#pragma once

// Isomorphism-free enumeration of small graphs for the exhaustive checks.

#include <algorithm>
#include <cstdint>
#include <map>
#include <set>
#include <utility>
#include <vector>

namespace enumerate {

// Symmetric multiplicity matrix; the diagonal counts loops.
using Matrix = std::vector<std::vector<int>>;
using Code = std::vector<int>;

namespace detail {

using Adjacency = std::vector<std::vector<std::pair<int, int>>>;  // (neighbour, multiplicity)

inline std::vector<int> refine(const Adjacency& nbr, std::vector<int> color) {
  const int n = static_cast<int>(nbr.size());
  int classes = -1;
  std::vector<std::vector<int>> sig(n);
  while (true) {
    for (int v = 0; v < n; ++v) {
      sig[v].clear();
      for (auto [u, m] : nbr[v]) sig[v].push_back(color[u] * 64 + m);
      std::sort(sig[v].begin(), sig[v].end());
      sig[v].insert(sig[v].begin(), color[v]);
    }
    std::vector<std::vector<int>> distinct(sig);
    std::sort(distinct.begin(), distinct.end());
    distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
    for (int v = 0; v < n; ++v)
      color[v] = static_cast<int>(std::lower_bound(distinct.begin(), distinct.end(), sig[v]) - distinct.begin());
    if (static_cast<int>(distinct.size()) == classes) return color;
    classes = static_cast<int>(distinct.size());
  }
}

inline void search(const Matrix& a, const Adjacency& nbr, std::vector<int> color, Code& best) {
  const int n = static_cast<int>(a.size());
  color = refine(nbr, color);
  std::vector<int> size(n, 0);
  for (int c : color) ++size[c];
  int split = -1;
  for (int c = 0; c < n && split < 0; ++c)
    if (size[c] > 1) split = c;
  if (split < 0) {
    std::vector<int> at(n);
    for (int v = 0; v < n; ++v) at[color[v]] = v;
    Code code;
    code.reserve(n * (n + 1) / 2);
    for (int i = 0; i < n; ++i)
      for (int j = i; j < n; ++j) code.push_back(a[at[i]][at[j]]);
    if (best.empty() || code < best) best = code;
    return;
  }
  for (int v = 0; v < n; ++v) {
    if (color[v] != split) continue;
    std::vector<int> next(color);
    for (int u = 0; u < n; ++u)
      if (color[u] > split || (color[u] == split && u != v)) ++next[u];
    search(a, nbr, next, best);
  }
}

}  // namespace detail

inline Code canonical_code(const Matrix& a) {
  const int n = static_cast<int>(a.size());
  detail::Adjacency nbr(n);
  for (int v = 0; v < n; ++v)
    for (int u = 0; u < n; ++u)
      if (a[v][u] > 0) nbr[v].push_back({u, a[v][u]});
  Code best;
  detail::search(a, nbr, std::vector<int>(n, 0), best);
  best.insert(best.begin(), static_cast<int>(a.size()));
  return best;
}

inline bool connected(const Matrix& a) {
  const int n = static_cast<int>(a.size());
  if (n == 0) return false;
  std::vector<char> seen(n, 0);
  std::vector<int> stack{0};
  seen[0] = 1;
  int count = 1;
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    for (int u = 0; u < n; ++u)
      if (a[v][u] > 0 && !seen[u]) {
        seen[u] = 1;
        ++count;
        stack.push_back(u);
      }
  }
  return count == n;
}

inline std::vector<std::pair<int, int>> edge_list(const Matrix& a) {
  std::vector<std::pair<int, int>> es;
  for (int i = 0; i < static_cast<int>(a.size()); ++i)
    for (int j = i; j < static_cast<int>(a.size()); ++j)
      for (int k = 0; k < a[i][j]; ++k) es.push_back({i, j});
  return es;
}

// All simple graphs on exactly n vertices, one per isomorphism class.
inline std::vector<Matrix> simple_graphs(int n) {
  std::vector<Matrix> layer{Matrix{}};
  for (int k = 1; k <= n; ++k) {
    std::map<Code, Matrix> next;
    for (const Matrix& g : layer)
      for (std::uint32_t nb = 0; nb < (1U << (k - 1)); ++nb) {
        Matrix h(k, std::vector<int>(k, 0));
        for (int i = 0; i < k - 1; ++i)
          for (int j = 0; j < k - 1; ++j) h[i][j] = g[i][j];
        for (int i = 0; i < k - 1; ++i) h[i][k - 1] = h[k - 1][i] = (nb >> i) & 1U;
        next.emplace(canonical_code(h), h);
      }
    layer.clear();
    for (auto& [code, g] : next) layer.push_back(g);
  }
  return layer;
}

// Connected multigraphs on n vertices with at most `mult` parallel edges per pair and at most
// `loops` loops per vertex, one per isomorphism class.
inline std::vector<Matrix> multigraphs(int n, int mult, int loops) {
  std::vector<std::pair<int, int>> slots;
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) slots.push_back({i, j});
  std::map<Code, Matrix> out;
  Matrix a(n, std::vector<int>(n, 0));
  auto rec = [&](auto&& self, size_t k) -> void {
    if (k == slots.size()) {
      if (connected(a)) out.emplace(canonical_code(a), a);
      return;
    }
    auto [i, j] = slots[k];
    const int top = i == j ? loops : mult;
    for (int c = 0; c <= top; ++c) {
      a[i][j] = a[j][i] = c;
      self(self, k + 1);
    }
    a[i][j] = a[j][i] = 0;
  };
  rec(rec, 0);
  std::vector<Matrix> v;
  for (auto& [code, g] : out) v.push_back(g);
  return v;
}

// All connected simple cubic graphs on n vertices. Double-edge switches connect the class of
// connected simple d-regular graphs on a fixed vertex set, so the closure from one seed is complete.
inline std::vector<Matrix> cubic_graphs(int n) {
  Matrix seed(n, std::vector<int>(n, 0));
  if (n == 4) {
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) seed[i][j] = i != j;
  } else {
    const int h = n / 2;
    for (int i = 0; i < h; ++i) {
      seed[i][(i + 1) % h] = seed[(i + 1) % h][i] = 1;
      seed[h + i][h + (i + 1) % h] = seed[h + (i + 1) % h][h + i] = 1;
      seed[i][h + i] = seed[h + i][i] = 1;
    }
  }
  std::map<Code, Matrix> seen{{canonical_code(seed), seed}};
  std::vector<Matrix> queue{seed};
  while (!queue.empty()) {
    Matrix g = queue.back();
    queue.pop_back();
    std::vector<std::pair<int, int>> es;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j)
        if (g[i][j]) es.push_back({i, j});
    for (size_t x = 0; x < es.size(); ++x)
      for (size_t y = x + 1; y < es.size(); ++y) {
        auto [a, b] = es[x];
        auto [c, d] = es[y];
        if (a == c || a == d || b == c || b == d) continue;
        for (int way = 0; way < 2; ++way) {
          const int p = a, q = way ? d : c, r = b, s = way ? c : d;
          if (g[p][q] || g[r][s]) continue;
          Matrix h = g;
          h[a][b] = h[b][a] = h[c][d] = h[d][c] = 0;
          h[p][q] = h[q][p] = h[r][s] = h[s][r] = 1;
          if (!connected(h)) continue;
          if (seen.emplace(canonical_code(h), h).second) queue.push_back(h);
        }
      }
  }
  std::vector<Matrix> v;
  for (auto& [code, g] : seen) v.push_back(g);
  return v;
}

}  // namespace enumerate
