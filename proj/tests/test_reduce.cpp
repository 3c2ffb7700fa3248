#include <doctest.h>

#include "sigflow/oracle.hpp"
#include "sigflow/reduce.hpp"
#include "support.hpp"

using namespace sigflow;
using namespace testsupport;

namespace {

SignedGraph contracted_instance(std::uint64_t seed, int n, int contractions) {
  std::mt19937_64 rng(seed);
  SignedGraph g = generate_cubic_3ec_signed(n, seed, true);
  for (int i = 0; i < contractions; ++i) {
    std::vector<EdgeId> ok;
    for (EdgeId e : g.edges()) {
      const EdgeRecord& r = g.edge(e);
      if (r.is_loop() || g.degree(r.u) + g.degree(r.v) - 2 > 6) continue;
      int parallel = 0;
      for (EdgeId f : g.incident(r.u)) parallel += g.edge(f).other(r.u) == r.v;
      if (parallel == 1) ok.push_back(e);
    }
    if (ok.empty()) break;
    g = contract_edge(g, ok[rng() % ok.size()]);
  }
  return g;
}

// Balanced sides Y with |δ(Y)| = 3 and both sides of size ≥ 2, by subset scan.
bool raw_has_balanced_3cut(const SignedGraph& g) {
  std::vector<VertexId> vs = g.vertices();
  const int n = static_cast<int>(vs.size());
  for (int mask = 1; mask < (1 << n) - 1; ++mask) {
    int size = __builtin_popcount(mask);
    if (size < 2 || n - size < 2) continue;
    std::vector<char> in(g.vertex_bound(), 0);
    for (int i = 0; i < n; ++i)
      if (mask >> i & 1) in[vs[i]] = 1;
    int cut = 0;
    std::vector<EdgeId> inside;
    for (EdgeId e : g.edges()) {
      const EdgeRecord& r = g.edge(e);
      if (in[r.u] != in[r.v]) ++cut;
      else if (in[r.u]) inside.push_back(e);
    }
    if (cut == 3 && raw_balanced(g, inside)) return true;
  }
  return false;
}

}  // namespace

TEST_CASE("uncontraction yields a cubic graph and flows pull back") {
  for (std::uint64_t s = 0; s < 25; ++s) {
    SignedGraph g = contracted_instance(s, 10, 4);
    if (max_degree(g) <= 3) continue;
    Orientation o = Orientation::canonical(g);
    CubicReduction red = uncontract_to_cubic(g);
    CHECK(is_cubic(red.cubic));
    CHECK(edge_connectivity(red.cubic) >= 3);
    CHECK(red.cubic.num_edges() - g.num_edges() == static_cast<int>(red.steps.size()));
    Orientation oc = extend_orientation(o, red.steps);
    CHECK_NOTHROW(oc.check(red.cubic));
    OracleResult r = nz_kflow_exists(red.cubic, oc, 8);
    REQUIRE(r.verdict == Verdict::Yes);
    IntFlow f = pull_back(g, r.witness);
    CHECK(raw_is_nz_flow(g, o, f, 8));
  }
}

TEST_CASE("balanced 3-cut detection matches subset scan") {
  int found = 0;
  for (std::uint64_t s = 0; s < 60; ++s) {
    SignedGraph g = generate_cubic_3ec_signed(10, 40 + s, s % 2 == 0);
    auto cut = find_balanced_3cut(g);
    CHECK(cut.has_value() == raw_has_balanced_3cut(g));
    if (!cut) continue;
    ++found;
    std::vector<char> in(g.vertex_bound(), 0);
    for (VertexId v : cut->y) in[v] = 1;
    std::vector<EdgeId> delta, inside;
    for (EdgeId e : g.edges()) {
      if (in[g.edge(e).u] != in[g.edge(e).v]) delta.push_back(e);
      else if (in[g.edge(e).u]) inside.push_back(e);
    }
    CHECK(delta == std::vector<EdgeId>(cut->cut.begin(), cut->cut.end()));
    CHECK(raw_balanced(g, inside));
  }
  CHECK(found > 0);
}

TEST_CASE("split and merge combines sub-flows") {
  int merged = 0;
  for (std::uint64_t s = 0; s < 40 && merged < 10; ++s) {
    SignedGraph g = generate_cubic_3ec_signed(12, 200 + s, true);
    auto cut = find_balanced_3cut(g);
    if (!cut) continue;
    Orientation o = Orientation::canonical(g);
    IntFlow f = split_and_merge(
        g, o, *cut,
        [](const SignedGraph& h, const Orientation& oh) {
          OracleResult r = nz_kflow_exists(h, oh, 8);
          REQUIRE(r.verdict == Verdict::Yes);
          return r.witness;
        },
        nullptr);
    CHECK(raw_is_nz_flow(g, o, f, 8));
    ++merged;
  }
  CHECK(merged > 0);
}

TEST_CASE("prescribed boundary flow honours the prescription") {
  SignedGraph g = named_instance("k4");
  Orientation o = Orientation::canonical(g);
  for (EdgeId e : g.incident(0))
    if (o.at_vertex(g, e, 0) != Dir::Away) o.set(e, flip(o.at(e, 0)), flip(o.at(e, 1)));
  std::vector<EdgeId> inc = g.incident(0);
  std::sort(inc.begin(), inc.end());
  IntFlow f = prescribed_boundary_flow(g, o, 0, {1, 2, -3}, 8);
  CHECK(f[inc[0]] == 1);
  CHECK(f[inc[1]] == 2);
  CHECK(f[inc[2]] == -3);
  CHECK(raw_is_nz_flow(g, o, f, 8));
}
