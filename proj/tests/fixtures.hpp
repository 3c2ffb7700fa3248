#pragma once

#include "sigflow/oracle.hpp"
#include "sigflow/reduce.hpp"
#include "sigflow/select.hpp"
#include "sigflow/structure.hpp"

namespace fixtures {

using namespace sigflow;

// Cubic 18-vertex graph: negative 6-cycle on 0..5, negative 4-cycle on 6..9, and fish(0)
// shifted to 10..17 whose degree-2 vertices (14..17) take the remaining attachments.
inline SignedGraph fish_ending_graph() {
  SignedGraph g(18);
  for (int i = 0; i < 6; ++i) g.add_edge(i, (i + 1) % 6, i == 0 ? Sign::Negative : Sign::Positive);
  for (int i = 0; i < 4; ++i) g.add_edge(6 + i, 6 + (i + 1) % 4, i == 0 ? Sign::Negative : Sign::Positive);
  SignedGraph f = fish_instance(0);
  for (EdgeId e : f.edges()) g.add_edge(10 + f.edge(e).u, 10 + f.edge(e).v, f.edge(e).sign);
  const std::pair<int, int> links[] = {{6, 0}, {7, 2}, {8, 4}, {9, 14}, {1, 15}, {3, 16}, {5, 17}};
  for (auto [a, b] : links) g.add_edge(a, b, Sign::Positive);
  return g;
}

// Generated instance with two disjoint negative cycles and no balanced nontrivial 3-cut,
// i.e. the shape the pipeline hands to run_csa.
inline SignedGraph reduced_instance(int n, std::uint64_t seed) {
  for (std::uint64_t s = seed;; s += 1000003) {
    SignedGraph g = generate_cubic_3ec_signed(n, s, true);
    if (!find_balanced_3cut(g)) return g;
  }
}

inline Cycle ring(const SignedGraph& g, int first, int len) {
  Cycle c;
  for (int i = 0; i < len; ++i) {
    c.vertices.push_back(first + i);
    for (EdgeId e : g.incident(first + i))
      if (g.edge(e).other(first + i) == first + (i + 1) % len) {
        c.edges.push_back(e);
        break;
      }
  }
  c.sign = product_sign(g, c.edges);
  return c;
}

// Special 6-cycle, even ordinary 4-cycle, then the fish; the single even ordinary cycle makes k odd.
inline CycleList fish_ending_list(const SignedGraph& g) {
  CycleList cl;
  cl.push_back({ring(g, 0, 6), CycleKind::NegativeSpecial, StepTag::Preprocess2, std::nullopt});
  cl.push_back({ring(g, 6, 4), CycleKind::NegativeOrdinary, StepTag::Step4, std::nullopt});
  std::vector<VertexId> fv;
  for (int v = 10; v < 18; ++v) fv.push_back(v);
  SignedGraph fg = g.induced(fv);
  CycleRecord fish;
  fish.kind = CycleKind::Fish;
  fish.tag = StepTag::Step8aFish;
  fish.cycle.vertices = fv;
  fish.cycle.edges = fg.edges();
  fish.cycle.sign = product_sign(g, fish.cycle.edges);
  fish.fish = recognize_fish(fg);
  cl.push_back(fish);
  return cl;
}

}  // namespace fixtures
