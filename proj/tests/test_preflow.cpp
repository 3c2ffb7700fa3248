#include <doctest.h>

#include "fixtures.hpp"
#include "sigflow/oracle.hpp"
#include "sigflow/preflow.hpp"
#include "support.hpp"

using namespace sigflow;
using namespace testsupport;

namespace {

struct CycleGraph {
  SignedGraph g;
  Cycle c;
};

CycleGraph make_cycle(int len, Sign s) {
  CycleGraph cg{SignedGraph(len), {}};
  for (int i = 0; i < len; ++i) {
    cg.c.vertices.push_back(i);
    cg.c.edges.push_back(cg.g.add_edge(i, (i + 1) % len, i == len - 1 ? s : Sign::Positive));
  }
  cg.c.sign = s;
  return cg;
}

int raw_z3_boundary(const SignedGraph& g, const Orientation& o, const std::vector<EdgeId>& es,
                    const std::vector<Z3>& vals, VertexId v) {
  int acc = 0;
  for (size_t i = 0; i < es.size(); ++i) {
    const EdgeRecord& r = g.edge(es[i]);
    if (r.u == v) acc += to_int(o.at(es[i], 0)) * vals[i].value();
    if (r.v == v) acc += to_int(o.at(es[i], 1)) * vals[i].value();
  }
  return ((acc % 3) + 3) % 3;
}

}  // namespace

TEST_CASE("cycle boundary solver is exact on short cycles") {
  std::mt19937_64 rng(83);
  for (int len = 2; len <= 6; ++len)
    for (Sign s : {Sign::Positive, Sign::Negative}) {
      CycleGraph cg = make_cycle(len, s);
      Orientation o = random_orientation(cg.g, rng);
      int count = 1;
      for (int i = 0; i < len; ++i) count *= 3;
      for (int code = 0; code < count; ++code) {
        std::vector<Z3> b(len);
        int sum = 0;
        for (int i = 0, x = code; i < len; ++i, x /= 3) {
          b[i] = Z3(x % 3);
          sum += x % 3;
        }
        auto sol = solve_cycle_boundary(cg.g, o, cg.c, b);
        // A positive cycle's boundary sums to zero; a negative one can realise anything.
        CHECK(sol.has_value() == (s == Sign::Negative || sum % 3 == 0));
        if (!sol) continue;
        for (int i = 0; i < len; ++i) CHECK(raw_z3_boundary(cg.g, o, cg.c.edges, *sol, i) == b[i].value());
      }
    }
}

TEST_CASE("parity subdivision and signature normalization") {
  for (std::uint64_t s = 0; s < 40; ++s) {
    SignedGraph g = fixtures::reduced_instance(12, 5000 + s);
    Orientation o = Orientation::canonical(g);
    CycleList cl = run_csa(g);
    ParityGraph pg = subdivide_for_parity(g, o, cl);
    for (size_t i = 0; i < cl.size(); ++i) {
      const bool wants = cl[i].kind == CycleKind::NegativeSpecial ||
                         (cl[i].kind == CycleKind::NegativeOrdinary && cl[i].cycle.length() % 2 == 0);
      CHECK((pg.designated[i] >= 0) == wants);
      if (pg.designated[i] >= 0) {
        CHECK(pg.g.degree(pg.designated[i]) == 2);
        CHECK(pg.cl[i].cycle.length() == cl[i].cycle.length() + 1);
      }
    }
    normalize_cycle_signature(pg.g, pg.o, pg.cl);
    CHECK_NOTHROW(pg.o.check(pg.g));
    for (const CycleRecord& r : pg.cl) {
      int neg = 0;
      for (EdgeId e : r.cycle.edges) neg += pg.g.edge(e).sign == Sign::Negative;
      if (r.kind == CycleKind::Positive) CHECK(neg == 0);
      if (r.kind == CycleKind::NegativeOrdinary) CHECK(neg == r.cycle.length());
    }
  }
}

TEST_CASE("preflow law on pipeline lists") {
  for (std::uint64_t s = 0; s < 60; ++s) {
    SignedGraph g = fixtures::reduced_instance(6 + 2 * static_cast<int>(s % 9), 6000 + s);
    Orientation o = Orientation::canonical(g);
    CycleList cl = run_csa(g);
    ParityGraph pg = subdivide_for_parity(g, o, cl);
    normalize_cycle_signature(pg.g, pg.o, pg.cl);
    Z3Preflow pf = build_preflow(pg.g, pg.o, pg.cl);
    PreflowAudit a = audit_preflow(pg.g, pg.o, pg.cl, pf.phi);
    CHECK_MESSAGE(a.ok(), a.detail);
    // Recheck the boundary law independently.
    std::vector<EdgeId> es = pg.g.edges();
    std::vector<Z3> vals;
    for (EdgeId e : es) vals.push_back(pf.phi[e]);
    for (VertexId v : pg.g.vertices()) {
      const bool low = pg.g.degree(v) <= 2;
      CHECK((raw_z3_boundary(pg.g, pg.o, es, vals, v) != 0) == low);
    }
  }
}

TEST_CASE("fish preflow puts the only zero on the distinguished edge") {
  SignedGraph g = fixtures::fish_ending_graph();
  Orientation o = Orientation::canonical(g);
  CycleList cl = fixtures::fish_ending_list(g);
  ParityGraph pg = subdivide_for_parity(g, o, cl);
  normalize_cycle_signature(pg.g, pg.o, pg.cl);
  Z3Preflow pf = build_preflow(pg.g, pg.o, pg.cl);
  CHECK(audit_preflow(pg.g, pg.o, pg.cl, pf.phi).ok());
  const CycleRecord& fish = pg.cl.back();
  REQUIRE(fish.fish);
  for (EdgeId e : fish.cycle.edges) CHECK(pf.phi[e].zero() == (e == fish.fish->distinguished));
}

TEST_CASE("cycle context splits neighbours by list position") {
  SignedGraph g = fixtures::fish_ending_graph();
  CycleList cl = fixtures::fish_ending_list(g);
  CycleContext ctx = cycle_context(g, cl, 1);
  CHECK(ctx.e_edges.size() == 1);
  CHECK(ctx.f_edges.size() == 3);
  CHECK(ctx.chords.empty());
}
