#include <doctest.h>

#include "sigflow/io.hpp"
#include "sigflow/oracle.hpp"
#include "sigflow/sigraph.hpp"
#include "support.hpp"

using namespace sigflow;
using namespace testsupport;

TEST_CASE("canonical orientation respects signs") {
  SignedGraph g(3);
  EdgeId a = g.add_edge(0, 1, Sign::Positive);
  EdgeId b = g.add_edge(1, 2, Sign::Negative);
  EdgeId loop = g.add_edge(2, 2, Sign::Negative);
  Orientation o = Orientation::canonical(g);
  CHECK(o.at(a, 0) != o.at(a, 1));
  CHECK(o.at(b, 0) == o.at(b, 1));
  CHECK(o.at(loop, 0) == o.at(loop, 1));
  CHECK_NOTHROW(o.check(g));
  o.set(a, Dir::Away, Dir::Away);
  CHECK_THROWS_AS(o.check(g), ConsistencyError);
}

TEST_CASE("negative loop counts twice in the boundary") {
  SignedGraph g(1);
  EdgeId e = g.add_edge(0, 0, Sign::Negative);
  Orientation o = Orientation::canonical(g);
  IntFlow f;
  f[e] = 3;
  CHECK(boundary_at(g, o, f, 0) == 6);
  CHECK(raw_boundary(g, o, f, 0) == 6);
}

TEST_CASE("boundary matches a direct recomputation on random inputs") {
  std::mt19937_64 rng(11);
  for (int t = 0; t < 200; ++t) {
    SignedGraph g = random_multigraph(rng, 6, 10, true);
    Orientation o = random_orientation(g, rng);
    IntFlow f;
    for (EdgeId e : g.edges()) f[e] = static_cast<int>(rng() % 11) - 5;
    for (VertexId v : g.vertices()) CHECK(boundary_at(g, o, f, v) == raw_boundary(g, o, f, v));
  }
}

TEST_CASE("switching and reversal preserve flows") {
  std::mt19937_64 rng(5);
  for (int t = 0; t < 50; ++t) {
    SignedGraph g = generate_cubic_3ec_signed(8, 100 + t, false);
    Orientation o = random_orientation(g, rng);
    OracleResult r = nz_kflow_exists(g, o, 6);
    REQUIRE(r.verdict != Verdict::Unknown);
    if (r.verdict != Verdict::Yes) continue;
    SignedGraph g2 = g;
    Orientation o2 = o;
    VertexId v = static_cast<VertexId>(rng() % 8);
    switch_at_vertex(g2, o2, v);
    CHECK_NOTHROW(o2.check(g2));
    CHECK(verify_flow(g2, o2, r.witness, 6).accepted);
    IntFlow f = r.witness;
    reverse_edge(o2, f, 0);
    CHECK(verify_flow(g2, o2, f, 6).accepted);
    CHECK(f[0] == -r.witness[0]);
    std::vector<char> sw(8, 0);
    sw[v] = 1;
    IntFlow back = transport_flow(g, o, o2, sw, f);
    CHECK(raw_is_nz_flow(g, o, back, 6));
  }
}

TEST_CASE("verify_flow names the failing clause") {
  SignedGraph g(2);
  for (int i = 0; i < 3; ++i) g.add_edge(0, 1, Sign::Positive);
  Orientation o = Orientation::canonical(g);
  IntFlow f;
  f[0] = 1;
  f[1] = 1;
  f[2] = -2;
  CHECK(verify_flow(g, o, f, 3).accepted);
  f[2] = 0;
  FlowVerdict v = verify_flow(g, o, f, 3);
  CHECK_FALSE(v.accepted);
  f[0] = 2;
  f[1] = 2;
  f[2] = -4;
  v = verify_flow(g, o, f, 4);
  CHECK(v.clause == FlowVerdict::Clause::Range);
  CHECK(v.edge == 2);
}

TEST_CASE("balance agrees with a label propagation check") {
  std::mt19937_64 rng(17);
  for (int t = 0; t < 300; ++t) {
    SignedGraph g = random_multigraph(rng, 5, 7, true);
    CHECK(balanced(g) == raw_balanced(g, g.edges()));
    BalanceCertificate c = is_balanced(g);
    if (c.balanced) {
      SignedGraph h = g;
      Orientation o = Orientation::canonical(h);
      for (VertexId v : c.switching_set) switch_at_vertex(h, o, v);
      for (EdgeId e : h.edges())
        if (!h.edge(e).is_loop()) CHECK(h.edge(e).sign == Sign::Positive);
    } else {
      CHECK(raw_negative(g, c.negative_cycle.edges));
    }
  }
}

TEST_CASE("subdivide then smooth restores graph, orientation and flow") {
  SignedGraph g = generate_cubic_3ec_signed(10, 3, true);
  Orientation o = Orientation::canonical(g);
  OracleResult r = nz_kflow_exists(g, o, 8);
  REQUIRE(r.verdict == Verdict::Yes);
  for (EdgeId e : g.edges()) {
    SignedGraph h = g;
    Orientation oh = o;
    Subdivision s = subdivide_edge(h, oh, e);
    CHECK(h.degree(s.x) == 2);
    CHECK(h.edge(s.e2).sign == Sign::Positive);
    IntFlow f = r.witness;
    f[s.e2] = oh.at_vertex(h, s.e2, s.x) == oh.at_vertex(h, s.e1, s.x) ? -f[e] : f[e];
    CHECK(raw_is_nz_flow(h, oh, f, 8));
    smooth_degree2_vertex(h, oh, f, s.x);
    CHECK(h == g);
    CHECK(verify_flow(g, oh, f, 8).accepted);
  }
}

TEST_CASE("edge connectivity of small known graphs") {
  CHECK(edge_connectivity(named_instance("k4")) == 3);
  CHECK(edge_connectivity(named_instance("triple-edge")) == 3);
  CHECK(edge_connectivity(fish_instance(0)) == 2);
}

TEST_CASE("sg text round trip and parse errors") {
  SignedGraph g = generate_cubic_3ec_signed(12, 9, true);
  Orientation o = Orientation::canonical(g);
  const std::string text = serialize_sg(g, &o);
  SgFile f = parse_sg(text);
  CHECK(f.graph == g);
  REQUIRE(f.orientation);
  CHECK(serialize_sg(f.graph, &*f.orientation) == text);
  CHECK_THROWS_AS(parse_sg("sg 1\nv 2\ne 0 0 5 +\n"), ParseError);
  CHECK_THROWS_AS(parse_sg("sg 2\n"), ParseError);
  CHECK_THROWS_AS(parse_sg("sg 1\nv 2\ne 0 0 1 - away toward\n"), ConsistencyError);
}

TEST_CASE("flow text round trip") {
  SignedGraph g = named_instance("k4");
  IntFlow f;
  for (EdgeId e : g.edges()) f[e] = e - 3;
  IntFlow back = parse_flow(serialize_flow(g, f));
  for (EdgeId e : g.edges()) CHECK(back[e] == f[e]);
  CHECK_THROWS_AS(parse_flow("0 1\n0 2\n"), ParseError);
}
