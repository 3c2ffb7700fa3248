#include <doctest.h>

#include "sigflow/io.hpp"
#include "sigflow/oracle.hpp"
#include "sigflow/structure.hpp"
#include "support.hpp"

using namespace sigflow;
using namespace testsupport;

namespace {

SignedGraph handcuff() {
  SignedGraph g(2);
  g.add_edge(0, 0, Sign::Negative);
  g.add_edge(0, 1, Sign::Positive);
  g.add_edge(1, 1, Sign::Negative);
  return g;
}

// Exhaustive over values without pruning; tiny graphs only.
bool raw_flow_exists(const SignedGraph& g, const Orientation& o, int k) {
  std::vector<EdgeId> es = g.edges();
  IntFlow f;
  std::function<bool(size_t)> rec = [&](size_t i) {
    if (i == es.size()) return raw_is_nz_flow(g, o, f, k);
    for (int v = -(k - 1); v <= k - 1; ++v) {
      if (v == 0) continue;
      f[es[i]] = v;
      if (rec(i + 1)) return true;
    }
    return false;
  };
  return rec(0);
}

}  // namespace

TEST_CASE("small oracle facts") {
  SignedGraph cyc(3);
  for (int i = 0; i < 3; ++i) cyc.add_edge(i, (i + 1) % 3, Sign::Positive);
  CHECK(nz_kflow_exists(cyc, Orientation::canonical(cyc), 2).verdict == Verdict::Yes);

  SignedGraph loop(1);
  loop.add_edge(0, 0, Sign::Negative);
  for (int k = 2; k <= 6; ++k) CHECK(nz_kflow_exists(loop, Orientation::canonical(loop), k).verdict == Verdict::No);

  SignedGraph h = handcuff();
  Orientation o = Orientation::canonical(h);
  OracleResult r = nz_kflow_exists(h, o, 3);
  REQUIRE(r.verdict == Verdict::Yes);
  CHECK(std::abs(r.witness[1]) == 2);
  CHECK(raw_is_nz_flow(h, o, r.witness, 3));
  CHECK(nz_kflow_exists(h, o, 2).verdict == Verdict::No);
}

TEST_CASE("oracle agrees with unpruned enumeration") {
  std::mt19937_64 rng(23);
  int yes = 0;
  for (int t = 0; t < 120; ++t) {
    SignedGraph g = random_multigraph(rng, 4, 6, true);
    if (g.num_edges() > 6) continue;
    Orientation o = random_orientation(g, rng);
    for (int k : {2, 3, 4}) {
      OracleResult r = nz_kflow_exists(g, o, k);
      REQUIRE(r.verdict != Verdict::Unknown);
      CHECK((r.verdict == Verdict::Yes) == raw_flow_exists(g, o, k));
      if (r.verdict == Verdict::Yes) {
        ++yes;
        CHECK(raw_is_nz_flow(g, o, r.witness, k));
      }
    }
  }
  CHECK(yes > 0);
}

TEST_CASE("oracle verdicts are monotone in k and switching invariant") {
  std::mt19937_64 rng(29);
  for (int t = 0; t < 40; ++t) {
    SignedGraph g = generate_cubic_3ec_signed(8, 500 + t, false);
    Orientation o = Orientation::canonical(g);
    bool prev = false;
    for (int k = 2; k <= 7; ++k) {
      bool now = nz_kflow_exists(g, o, k).verdict == Verdict::Yes;
      if (prev) CHECK(now);
      prev = now;
    }
    SignedGraph g2 = g;
    Orientation o2 = o;
    switch_at_vertex(g2, o2, static_cast<VertexId>(rng() % 8));
    for (int k : {3, 4, 5})
      CHECK(nz_kflow_exists(g, o, k).verdict == nz_kflow_exists(g2, o2, k).verdict);
  }
}

TEST_CASE("parallel root split gives the same verdicts") {
  for (int t = 0; t < 20; ++t) {
    SignedGraph g = generate_cubic_3ec_signed(10, 900 + t, true);
    Orientation o = Orientation::canonical(g);
    SearchBudget par;
    par.jobs = 4;
    for (int k : {3, 4}) {
      OracleResult a = nz_kflow_exists(g, o, k), b = nz_kflow_exists(g, o, k, par);
      CHECK(a.verdict == b.verdict);
      if (b.verdict == Verdict::Yes) CHECK(raw_is_nz_flow(g, o, b.witness, k));
    }
  }
}

TEST_CASE("exhausted budget reports unknown") {
  SignedGraph g = generate_cubic_3ec_signed(20, 4, true);
  SearchBudget tiny;
  tiny.node_limit = 5;
  CHECK(nz_kflow_exists(g, Orientation::canonical(g), 3, tiny).verdict == Verdict::Unknown);
}

TEST_CASE("brute admissibility matches the two-unbalanced characterization") {
  std::mt19937_64 rng(31);
  int checked = 0;
  for (int t = 0; t < 400 && checked < 60; ++t) {
    SignedGraph g = random_multigraph(rng, 5, 8, false);
    if (!is_connected(g) || edge_connectivity(g) < 2 || balanced(g)) continue;
    auto adm = brute_flow_admissible(g);
    REQUIRE(adm.has_value());
    CHECK(*adm == !negativeness_at_most(g, 1));
    CHECK(*adm == is_flow_admissible(g));
    ++checked;
  }
  CHECK(checked >= 30);
  CHECK_FALSE(*brute_flow_admissible(fish_instance(0)));
  SignedGraph loop(1);
  loop.add_edge(0, 0, Sign::Negative);
  CHECK_FALSE(*brute_flow_admissible(loop));
  CHECK(*brute_flow_admissible(handcuff()));
}

TEST_CASE("named instances") {
  SignedGraph f0 = named_instance("fish(0)");
  CHECK(f0.num_vertices() == 8);
  CHECK(f0.num_edges() == 10);
  int deg3 = 0;
  for (VertexId v : f0.vertices()) deg3 += f0.degree(v) == 3;
  CHECK(deg3 == 4);
  for (int m = 0; m < 4; ++m) CHECK(fish_instance(m).num_vertices() == 8 + 2 * m);

  CHECK(balanced(named_instance("petersen:0")));
  SignedGraph prism = named_instance("prism-neg");
  CyclePair cp = find_two_disjoint_negative_cycles(prism, true);
  REQUIRE(cp.status == SearchStatus::Found);
  CHECK(cp.first.vertices.size() + cp.second.vertices.size() == 6);
  CHECK_THROWS_AS(named_instance("dodecahedron"), ArgumentError);
}

TEST_CASE("generator contract") {
  for (int n : {4, 6, 10, 16}) {
    for (std::uint64_t s = 0; s < 5; ++s) {
      SignedGraph g = generate_cubic_3ec_signed(n, s, false);
      CHECK(g.num_vertices() == n);
      CHECK(is_cubic(g));
      CHECK(edge_connectivity(g) >= 3);
      CHECK(serialize_sg(g) == serialize_sg(generate_cubic_3ec_signed(n, s, false)));
    }
  }
  for (std::uint64_t s = 0; s < 20; ++s) {
    SignedGraph g = generate_cubic_3ec_signed(12, s, true);
    CHECK(find_two_disjoint_negative_cycles(g, true).status == SearchStatus::Found);
    CHECK(is_flow_admissible(g));
  }
  CHECK_THROWS(generate_cubic_3ec_signed(5, 1, false));
}
