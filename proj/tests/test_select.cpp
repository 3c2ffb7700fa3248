#include <doctest.h>

#include "fixtures.hpp"
#include "sigflow/oracle.hpp"
#include "sigflow/select.hpp"
#include "support.hpp"

using namespace sigflow;
using namespace testsupport;

namespace {

bool raw_is_cut(const SignedGraph& g, const std::vector<EdgeId>& s) {
  std::vector<VertexId> vs = g.vertices();
  const int n = static_cast<int>(vs.size());
  std::set<EdgeId> want(s.begin(), s.end());
  for (int mask = 1; mask < (1 << n) - 1; ++mask) {
    std::vector<char> in(g.vertex_bound(), 0);
    for (int i = 0; i < n; ++i)
      if (mask >> i & 1) in[vs[i]] = 1;
    std::set<EdgeId> delta;
    for (EdgeId e : g.edges())
      if (in[g.edge(e).u] != in[g.edge(e).v]) delta.insert(e);
    if (delta == want) return true;
  }
  return false;
}

}  // namespace

TEST_CASE("run_csa output partitions V and passes the validator") {
  for (std::uint64_t s = 0; s < 60; ++s) {
    SignedGraph g = fixtures::reduced_instance(8 + 2 * static_cast<int>(s % 7), 3000 + s);
    CycleList cl = run_csa(g);
    REQUIRE_FALSE(cl.empty());
    CHECK(cl.front().kind == CycleKind::NegativeSpecial);
    std::vector<int> hit(g.vertex_bound(), 0);
    for (const CycleRecord& r : cl)
      for (VertexId v : r.cycle.vertices) ++hit[v];
    for (VertexId v : g.vertices()) CHECK(hit[v] == 1);
    CycleListVerdict v = validate_cycle_list(g, cl);
    CHECK_MESSAGE(v.accepted, v.rule << ": " << v.detail);
  }
}

TEST_CASE("validator rejects damaged lists") {
  for (std::uint64_t s = 0; s < 30; ++s) {
    SignedGraph g = fixtures::reduced_instance(12, 4000 + s);
    CycleList cl = run_csa(g);
    CycleList dropped(cl.begin(), cl.end() - 1);
    CHECK_FALSE(validate_cycle_list(g, dropped).accepted);
    CycleList relabeled = cl;
    relabeled.front().kind = CycleKind::Positive;
    CHECK_FALSE(validate_cycle_list(g, relabeled).accepted);
    if (cl.size() >= 2) {
      CycleList dup = cl;
      dup.push_back(cl.back());
      CHECK_FALSE(validate_cycle_list(g, dup).accepted);
    }
  }
}

TEST_CASE("cycle list text round trip") {
  SignedGraph g = fixtures::fish_ending_graph();
  CycleList cl = fixtures::fish_ending_list(g);
  CycleList back = parse_cycle_list(g, serialize_cycle_list(cl));
  REQUIRE(back.size() == cl.size());
  for (size_t i = 0; i < cl.size(); ++i) {
    CHECK(back[i].cycle == cl[i].cycle);
    CHECK(back[i].kind == cl[i].kind);
    CHECK(back[i].tag == cl[i].tag);
    CHECK(back[i].fish.has_value() == cl[i].fish.has_value());
  }
  CHECK_THROWS_AS(parse_cycle_list(g, {"cycle 0 wobbly 1 2 3"}), ParseError);
}

TEST_CASE("hand-built list ending in a fish is accepted") {
  SignedGraph g = fixtures::fish_ending_graph();
  CycleList cl = fixtures::fish_ending_list(g);
  REQUIRE(cl.back().fish);
  CycleListVerdict v = validate_cycle_list(g, cl);
  CHECK_MESSAGE(v.accepted, v.rule << ": " << v.detail);
  // Moving the fish forward breaks the fish-last rule.
  CycleList moved{cl[0], cl[2], cl[1]};
  CHECK_FALSE(validate_cycle_list(g, moved).accepted);
}

TEST_CASE("edge cut test agrees with subset scan") {
  std::mt19937_64 rng(71);
  for (int t = 0; t < 200; ++t) {
    SignedGraph g = random_multigraph(rng, 6, 9, false);
    std::vector<EdgeId> s;
    for (EdgeId e : g.edges())
      if (rng() % 3 == 0) s.push_back(e);
    if (s.empty()) continue;
    std::vector<char> side;
    bool cut = edge_set_is_cut(g, s, &side);
    CHECK(cut == raw_is_cut(g, s));
    if (cut)
      for (EdgeId e : s) CHECK(side[g.edge(e).u] != side[g.edge(e).v]);
  }
}

TEST_CASE("straddle violations are found by direct construction") {
  // Two triangles joined by a perfect matching: the 3-edge matching cut is straddled by
  // no triangle, but a 6-cycle using two matching edges does straddle it.
  SignedGraph g = named_instance("prism-neg");
  std::vector<EdgeId> matching;
  for (EdgeId e : g.edges())
    if ((g.edge(e).u < 3) != (g.edge(e).v < 3)) matching.push_back(e);
  REQUIRE(matching.size() == 3);
  std::vector<char> side;
  REQUIRE(edge_set_is_cut(g, matching, &side));
  for (const Cycle& c : enumerate_cycles(g, 100).cycles) {
    bool crosses = false;
    for (EdgeId e : c.edges) crosses = crosses || std::find(matching.begin(), matching.end(), e) != matching.end();
    bool in0 = false, in1 = false;
    for (EdgeId e : c.edges) {
      const EdgeRecord& r = g.edge(e);
      if (side[r.u] == side[r.v]) (side[r.u] ? in1 : in0) = true;
    }
    CHECK(cycle_straddles(g, c, side) == (in0 && in1));
    if (!crosses) CHECK_FALSE(cycle_straddles(g, c, side));
  }
}
