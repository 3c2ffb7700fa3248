#pragma once

#include <array>
#include <functional>
#include <optional>
#include <vector>

#include "sigflow/oracle.hpp"
#include "sigflow/sigraph.hpp"

namespace sigflow {

struct ThreeCut {
  std::vector<VertexId> y;  // balanced side, sorted
  std::array<EdgeId, 3> cut{-1, -1, -1};  // sorted
};

struct SplitRecord {
  ThreeCut cut;
  std::vector<VertexId> switching;  // applied to the piece before contracting
  std::vector<EdgeId> reversed;     // cut edges reversed so they leave X
  VertexId y_vertex = -1;           // Y contracted to this vertex in G_y
  VertexId x_vertex = -1;           // X contracted to this vertex in G_x
};

struct ReductionStep {
  enum class Kind { Uncontract, SplitBalanced3Cut };
  Kind kind = Kind::Uncontract;
  Uncontraction uncontract;
  SplitRecord split;
};

struct CubicReduction {
  SignedGraph cubic;
  std::vector<ReductionStep> steps;
};

CubicReduction uncontract_to_cubic(const SignedGraph& g);
// Orientation of the cubic graph: input directions kept, added edges away at v.
Orientation extend_orientation(const Orientation& o, const std::vector<ReductionStep>& steps);
// Drops the added edges. Valid because the cubic orientation extends the input one.
IntFlow pull_back(const SignedGraph& original, const IntFlow& cubic_flow);

std::optional<ThreeCut> find_balanced_3cut(const SignedGraph& g);

// Values g3 are prescribed on v's three edges in increasing id order.
IntFlow prescribed_boundary_flow(const SignedGraph& g, const Orientation& o, VertexId v,
                                 const std::array<int, 3>& g3, int k, const SearchBudget& budget = {});

struct SplitPieces {
  SignedGraph gy, gx;
  Orientation oy, ox;
  SplitRecord record;
  SignedGraph switched;      // the input after switching and cut reversal
  Orientation switched_orientation;
  std::vector<char> switched_flags;
};
SplitPieces make_split(const SignedGraph& g, const Orientation& o, const ThreeCut& cut);
// Combines φ_y on G_y and φ_x on G_x into a flow on g relative to o.
IntFlow merge_split(const SignedGraph& g, const Orientation& o, const SplitPieces& pieces,
                    const IntFlow& phi_y, const IntFlow& phi_x);

using InnerSolver = std::function<IntFlow(const SignedGraph&, const Orientation&)>;
using OuterSolver =
    std::function<IntFlow(const SignedGraph&, const Orientation&, VertexId, const std::array<int, 3>&)>;

IntFlow split_and_merge(const SignedGraph& g, const Orientation& o, const ThreeCut& cut,
                        const InnerSolver& solve_inner, const OuterSolver& solve_outer);

}  // namespace sigflow
