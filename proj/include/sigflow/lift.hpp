#pragma once

#include <string>
#include <utility>
#include <vector>

#include "sigflow/preflow.hpp"
#include "sigflow/sigraph.hpp"

namespace sigflow {

// Maximum-cardinality matching on a general graph (Edmonds' blossom algorithm).
// Input: n vertices and an edge list; returns mate[v] (-1 if unmatched).
std::vector<int> maximum_matching(int n, const std::vector<std::pair<int, int>>& edges);
// Convenience wrapper on a graph; returns matched edge ids (lowest id among parallels).
std::vector<EdgeId> maximum_matching(const SignedGraph& h);
bool is_perfect_matching(const SignedGraph& h, const std::vector<EdgeId>& m);

// φ moved to {0, 1} on positive zero edges, by switching one end of each negative zero edge
// and reversing edges that carry 2.
struct NormalizedPreflow {
  SignedGraph g;
  Orientation o;
  Z3Assignment phi;
  std::vector<char> switched;
  std::vector<EdgeId> reversed;
};
NormalizedPreflow normalize_preflow(const SignedGraph& g, const Orientation& o, const Z3Assignment& phi);

struct Gadget {
  EdgeId zero_edge = -1;
  VertexId tail = -1;  // end where the zero edge points away
  VertexId head = -1;
  EdgeId h1 = -1;      // away at tail; -1 means the helper edge to w
  EdgeId h2 = -1;      // toward at tail
  EdgeId h1p = -1;     // away at head
  EdgeId h2p = -1;     // toward at head; -1 means the helper edge to w
  VertexId s1 = -1;    // subdivision vertex on h1 next to tail
  VertexId s2 = -1;    // subdivision vertex on h2p next to head
  EdgeId link = -1;    // s1-s2
};

struct AuxiliaryGraph {
  SignedGraph h;                  // every edge positive; original vertices and unsplit edges keep ids
  std::vector<EdgeId> mu_segment; // by g* edge id: the auxiliary edge whose matching decides μ (-1: zero edge)
  std::vector<Gadget> gadgets;
  std::vector<VertexId> helper_ends;  // degree-2 vertices of g* that received a helper edge to w
};

AuxiliaryGraph build_auxiliary(const SignedGraph& g, const Orientation& o, const Z3Assignment& phi);

struct HypothesisReport {
  struct Item {
    std::string name;
    bool holds = true;
    std::string detail;
  };
  std::vector<Item> items;
  bool all() const;
};
// `odd_cycles` are the designated odd cycles of g* (surviving unchanged in the auxiliary graph),
// `designated` their degree-2 vertices, in list order.
HypothesisReport check_matching_hypotheses(const AuxiliaryGraph& aux, const std::vector<Cycle>& odd_cycles,
                                           const std::vector<VertexId>& designated);

// Integer lift guided by a perfect matching of the auxiliary graph; falls back to a bounded search.
struct LiftResult {
  IntFlow psi;
  bool from_matching = true;
};
LiftResult lift_to_integer(const SignedGraph& g, const Orientation& o, const Z3Assignment& phi,
                           const AuxiliaryGraph& aux, const std::vector<EdgeId>& matching);
// ψ ≡ φ (mod 3), |ψ| ≤ 3, ∂ψ = 0 at degree 3, ∂ψ = ±1 at degree 2.
bool check_int_preflow(const SignedGraph& g, const Orientation& o, const Z3Assignment& phi, const IntFlow& psi,
                       std::string* why = nullptr);

IntFlow build_tau(const SignedGraph& g, const Orientation& o, const ParityGraph& pg, const IntFlow& psi);
bool check_tau(const SignedGraph& g, const Orientation& o, const ParityGraph& pg, const IntFlow& psi,
               const IntFlow& tau, std::string* why = nullptr);

// f* = 2ψ + τ, checked to be a nowhere-zero 8-flow on (g, o).
IntFlow assemble_flow(const SignedGraph& g, const Orientation& o, const IntFlow& psi, const IntFlow& tau);

}  // namespace sigflow
