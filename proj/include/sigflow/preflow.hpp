#pragma once

#include <optional>
#include <string>
#include <vector>

#include "sigflow/select.hpp"
#include "sigflow/sigraph.hpp"

namespace sigflow {

// g* with its cycle list. designated[i] is the subdivision vertex of record i, or -1.
struct ParityGraph {
  SignedGraph g;
  Orientation o;
  CycleList cl;
  std::vector<VertexId> designated;
  std::vector<Subdivision> subdivisions;
};

// Subdivides the lowest-id edge of every special and every even-length ordinary record.
ParityGraph subdivide_for_parity(const SignedGraph& g, const Orientation& o, const CycleList& cl);

// Switches within each record so positive cycles are all positive, ordinary cycles all negative,
// and a fish carries one negative edge. Returns per-vertex switch flags.
std::vector<char> normalize_cycle_signature(SignedGraph& g, Orientation& o, CycleList& cl);

// τ on the cycle edges (aligned with c.edges) whose boundary restricted to the cycle is b
// (aligned with c.vertices). Among several solutions the one with fewest zeros is returned.
std::optional<std::vector<Z3>> solve_cycle_boundary(const SignedGraph& g, const Orientation& o, const Cycle& c,
                                                    const std::vector<Z3>& b);

struct CycleContext {
  std::vector<VertexId> up;      // U_k
  std::vector<VertexId> down;    // D_k
  std::vector<EdgeId> e_edges;   // to U_k
  std::vector<EdgeId> f_edges;   // to D_k
  std::vector<EdgeId> chords;
};
CycleContext cycle_context(const SignedGraph& g, const CycleList& cl, int k);

struct Z3Preflow {
  Z3Assignment phi;
  std::vector<std::string> notes;
};

Z3Preflow build_preflow(const SignedGraph& g, const Orientation& o, const CycleList& cl);

struct PreflowAudit {
  bool boundary_law = true;
  bool zero_matching = true;
  bool zero_placement = true;
  std::string detail;
  bool ok() const { return boundary_law && zero_matching && zero_placement; }
};
PreflowAudit audit_preflow(const SignedGraph& g, const Orientation& o, const CycleList& cl, const Z3Assignment& phi);

}  // namespace sigflow
