#pragma once

#include <array>
#include <climits>
#include <functional>
#include <optional>
#include <utility>
#include <variant>
#include <vector>

#include "sigflow/sigraph.hpp"

namespace sigflow {

// Biconnected decomposition. A vertex with no (unmasked) edges forms a trivial block.
struct BlockCutTree {
  std::vector<std::vector<EdgeId>> blocks;
  std::vector<std::vector<VertexId>> block_vertices;  // sorted
  std::vector<VertexId> cut_vertices;                 // sorted
  std::vector<std::pair<int, VertexId>> tree_edges;   // (block, cut vertex)

  bool is_cut(VertexId v) const;
  int cut_count(int block) const;
  // Blocks with at most one cut vertex, ordered by smallest vertex id.
  std::vector<int> leaf_blocks() const;
  bool is_single_cycle(int block) const {
    return !blocks[block].empty() && blocks[block].size() == block_vertices[block].size();
  }
};

BlockCutTree block_cut_tree(const SignedGraph& g, const Mask& mask = {});

enum class SearchStatus { Found, None, Unknown };

struct CycleSearchOptions {
  Mask mask;
  // Per-vertex cost (indexed by id); a cycle's cost is the sum over its vertices.
  const std::vector<int>* cost = nullptr;
  int max_cost = INT_MAX;
  // Return true to cut the branch. Must be monotone: if it fires on a path it fires on extensions.
  std::function<bool(const std::vector<char>& on_path, const std::vector<EdgeId>& path_edges)> prune;
  long long node_limit = -1;
};

// Visits every simple cycle (loops included) once; `visit` returns true to stop.
SearchStatus for_each_cycle(const SignedGraph& g, const CycleSearchOptions& opts,
                            const std::function<bool(const Cycle&)>& visit);

// Shortest-first order with lexicographic tiebreak on sorted edge ids.
bool cycle_order_less(const Cycle& a, const Cycle& b);

// Lowest-cost accepted cycle (cost from opts.cost, unit cost if absent); ties by cycle_order_less.
struct RankedCycle {
  SearchStatus status = SearchStatus::None;
  Cycle cycle;
};
RankedCycle best_cycle(const SignedGraph& g, const CycleSearchOptions& opts,
                       const std::function<bool(const Cycle&)>& accept);

struct CycleEnumeration {
  std::vector<Cycle> cycles;
  bool truncated = false;
};
CycleEnumeration enumerate_cycles(const SignedGraph& g, int limit);

std::optional<Cycle> find_negative_cycle(const SignedGraph& g);

struct ThetaSubgraph {
  VertexId a = -1;
  VertexId b = -1;
  std::array<std::vector<VertexId>, 3> paths;  // each runs a..b
  std::array<std::vector<EdgeId>, 3> path_edges;
};

bool has_unbalanced_theta(const SignedGraph& g, const Mask& mask = {});
std::optional<ThetaSubgraph> find_unbalanced_theta(const SignedGraph& g);

struct CyclePair {
  SearchStatus status = SearchStatus::None;
  Cycle first;
  Cycle second;
};
CyclePair find_two_disjoint_negative_cycles(const SignedGraph& g, bool vertex_disjoint,
                                            long long node_limit = 2'000'000);

struct GoodCycleResult {
  enum class Kind { Found, IsNegativeCycle, None };
  Kind kind = Kind::None;
  Cycle cycle;  // a single vertex when is_vertex()
};

// Degrees are taken in g itself.
GoodCycleResult find_good_cycle(const SignedGraph& g);
GoodCycleResult find_usable_cycle(const SignedGraph& g);

// Ambient degrees by vertex id for the good/usable predicates.
std::vector<int> degree_table(const SignedGraph& g, const Mask& mask = {});
bool is_good_cycle(const Cycle& c, const std::vector<int>& deg);
bool is_usable_cycle(const Cycle& c, const std::vector<int>& deg);

struct GoodThetaPair {
  Cycle d;
  std::vector<VertexId> q_vertices;  // runs from one vertex of D to another
  std::vector<EdgeId> q_edges;
};
std::optional<GoodThetaPair> find_good_theta_pair(const SignedGraph& g);

bool is_fragile(const SignedGraph& g);

struct FishCertificate {
  VertexId a = -1, b = -1, r = -1, s = -1, p = -1, q = -1;
  EdgeId distinguished = -1;            // r–s
  std::vector<VertexId> path;           // P from r to s
  std::vector<EdgeId> path_edges;
  std::vector<EdgeId> theta_edges;      // the (2,2,3) theta H
  std::vector<VertexId> switching;      // H all positive, single negative edge: first edge of P
  Cycle tau_cycle;                      // positive cycle r s b p a through the distinguished edge
};
std::optional<FishCertificate> recognize_fish(const SignedGraph& g);

struct WMPartition {
  // Part label per vertex id: 0 = Y1, 1 = Y2, 2 = X1, 3 = X2, 4 = X3, -1 = absent.
  std::vector<int> part;
};
bool check_wm_partition(const SignedGraph& g, const WMPartition& p, VertexId x1, VertexId x2, VertexId x3);
std::variant<Cycle, WMPartition> cycle_through_three_vertices(const SignedGraph& g, VertexId x1,
                                                               VertexId x2, VertexId x3);

// Exponential subset scan; refuses graphs above 16 vertices.
bool is_well_behaved(const SignedGraph& g);

// Checks that `c` is a simple closed walk of g with the recorded sign.
bool is_valid_cycle(const SignedGraph& g, const Cycle& c);

// Negative cycles of a graph without an unbalanced theta (each is an unbalanced block).
std::vector<Cycle> negative_cycles_without_theta(const SignedGraph& g, const Mask& mask = {});

// Cycle formed by the edges of a 2-regular connected edge set, starting at its lowest vertex.
Cycle cycle_from_edges(const SignedGraph& g, const std::vector<EdgeId>& edges);

}  // namespace sigflow
