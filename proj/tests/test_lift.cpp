#include <doctest.h>

#include "fixtures.hpp"
#include "sigflow/lift.hpp"
#include "sigflow/pipeline.hpp"
#include "support.hpp"

using namespace sigflow;
using namespace testsupport;

TEST_CASE("blossom matching size equals subset DP") {
  std::mt19937_64 rng(97);
  for (int t = 0; t < 500; ++t) {
    const int n = 1 + static_cast<int>(rng() % 12);
    const int m = static_cast<int>(rng() % (3 * n + 1));
    std::vector<std::pair<int, int>> es;
    for (int i = 0; i < m; ++i) es.push_back({static_cast<int>(rng() % n), static_cast<int>(rng() % n)});
    std::vector<int> mate = maximum_matching(n, es);
    int size = 0;
    for (int v = 0; v < n; ++v) {
      if (mate[v] < 0) continue;
      CHECK(mate[mate[v]] == v);
      bool edge = false;
      for (auto [a, b] : es) edge = edge || (a == v && b == mate[v]) || (b == v && a == mate[v]);
      CHECK(edge);
      if (mate[v] > v) ++size;
    }
    CHECK(size == raw_matching_size(n, es));
  }
}

TEST_CASE("matching on standard graphs") {
  SignedGraph even(6), odd(5);
  for (int i = 0; i < 6; ++i) even.add_edge(i, (i + 1) % 6, Sign::Positive);
  for (int i = 0; i < 5; ++i) odd.add_edge(i, (i + 1) % 5, Sign::Positive);
  CHECK(is_perfect_matching(even, maximum_matching(even)));
  CHECK(maximum_matching(odd).size() == 2);
  SignedGraph p = petersen(0);
  CHECK(is_perfect_matching(p, maximum_matching(p)));
}

TEST_CASE("auxiliary graph bookkeeping") {
  for (std::uint64_t s = 0; s < 40; ++s) {
    SignedGraph g = fixtures::reduced_instance(10 + 2 * static_cast<int>(s % 5), 7000 + s);
    Orientation o = Orientation::canonical(g);
    CycleList cl = run_csa(g);
    ParityGraph pg = subdivide_for_parity(g, o, cl);
    normalize_cycle_signature(pg.g, pg.o, pg.cl);
    Z3Preflow pf = build_preflow(pg.g, pg.o, pg.cl);
    NormalizedPreflow np = normalize_preflow(pg.g, pg.o, pf.phi);
    int zeros = 0;
    for (EdgeId e : np.g.edges()) {
      CHECK(np.phi[e].value() <= 1);
      if (np.phi[e].zero()) {
        ++zeros;
        CHECK(np.g.edge(e).sign == Sign::Positive);
      }
    }
    AuxiliaryGraph aux = build_auxiliary(np.g, np.o, np.phi);
    CHECK(static_cast<int>(aux.gadgets.size()) == zeros);
    CHECK(aux.h.num_vertices() == np.g.num_vertices() + 2 * zeros);
    for (EdgeId e : aux.h.edges()) CHECK(aux.h.edge(e).sign == Sign::Positive);
    // Edges of ordinary cycles are never split.
    for (const CycleRecord& r : pg.cl)
      if (r.kind == CycleKind::NegativeOrdinary)
        for (EdgeId e : r.cycle.edges) CHECK(aux.mu_segment[e] == e);
  }
}

TEST_CASE("zero matching and no degree-2 vertices leaves the graph unchanged") {
  // K3,3 is bipartite and cubic, so it has a nowhere-zero 3-flow.
  SignedGraph g(6);
  for (int a = 0; a < 3; ++a)
    for (int b = 3; b < 6; ++b) g.add_edge(a, b, Sign::Positive);
  Orientation o = Orientation::canonical(g);
  OracleResult r = nz_kflow_exists(g, o, 3);
  REQUIRE(r.verdict == Verdict::Yes);
  Z3Assignment phi;
  for (EdgeId e : g.edges()) phi[e] = Z3(r.witness[e]);
  NormalizedPreflow np = normalize_preflow(g, o, phi);
  AuxiliaryGraph aux = build_auxiliary(np.g, np.o, np.phi);
  CHECK(aux.h.num_vertices() == 6);
  CHECK(aux.h.num_edges() == 9);
  CHECK(aux.gadgets.empty());
}

TEST_CASE("hypothesis report names failures") {
  SignedGraph g(5);
  Cycle c;
  for (int i = 0; i < 5; ++i) {
    c.vertices.push_back(i);
    c.edges.push_back(g.add_edge(i, (i + 1) % 5, Sign::Positive));
  }
  AuxiliaryGraph aux;
  aux.h = g;
  HypothesisReport rep = check_matching_hypotheses(aux, {}, {});
  CHECK_FALSE(rep.all());
  bool named = false;
  for (auto& i : rep.items) named = named || (i.name == "even-degree-2" && !i.holds);
  CHECK(named);
}

TEST_CASE("tau and assembly on pipeline instances") {
  for (std::uint64_t s = 0; s < 30; ++s) {
    SignedGraph g = fixtures::reduced_instance(12, 8000 + s);
    IntFlow flow;
    ConstructiveTrace t = construct_flow(g, Orientation::canonical(g), flow);
    const NormalizedPreflow& np = t.normalized;
    for (EdgeId e : np.g.edges()) {
      CHECK(std::abs(t.psi[e]) <= 3);
      CHECK(Z3(t.psi[e]) == np.phi[e]);
      CHECK(std::abs(t.tau[e]) <= 1);
      CHECK(t.f_star[e] == 2 * t.psi[e] + t.tau[e]);
      if (t.psi[e] == 0) CHECK(t.tau[e] != 0);
    }
    for (VertexId v : np.g.vertices()) {
      const int bp = raw_boundary(np.g, np.o, t.psi, v);
      if (np.g.degree(v) == 3) CHECK(bp == 0);
      else CHECK(std::abs(bp) == 1);
    }
    CHECK(raw_is_nz_flow(np.g, np.o, t.f_star, 8));
    CHECK(t.lift_from_matching);
  }
}

TEST_CASE("fish-ending list assembles to an 8-flow") {
  SignedGraph g = fixtures::fish_ending_graph();
  Orientation o = Orientation::canonical(g);
  IntFlow flow;
  ConstructiveTrace t = construct_from_list(g, o, fixtures::fish_ending_list(g), flow);
  CHECK(raw_is_nz_flow(g, o, flow, 8));
  const CycleRecord& fish = t.pg.cl.back();
  REQUIRE(fish.fish);
  for (EdgeId e : t.normalized.g.edges()) {
    const bool on_tau = std::find(fish.fish->tau_cycle.edges.begin(), fish.fish->tau_cycle.edges.end(), e) !=
                        fish.fish->tau_cycle.edges.end();
    const bool in_fish = std::find(fish.cycle.edges.begin(), fish.cycle.edges.end(), e) != fish.cycle.edges.end();
    if (in_fish) CHECK((t.tau[e] != 0) == on_tau);
  }
}

TEST_CASE("assemble_flow rejects a zero") {
  SignedGraph g(2);
  for (int i = 0; i < 3; ++i) g.add_edge(0, 1, Sign::Positive);
  Orientation o = Orientation::canonical(g);
  IntFlow psi, tau;
  psi[0] = 1;
  psi[1] = -1;
  CHECK_THROWS_AS(assemble_flow(g, o, psi, tau), InvariantViolation);
}
