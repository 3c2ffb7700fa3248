#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "sigflow/errors.hpp"

namespace sigflow {

using VertexId = int;
using EdgeId = int;

enum class Sign : std::int8_t { Positive = 1, Negative = -1 };
enum class Dir : std::int8_t { Away = 1, Toward = -1 };

inline Sign operator*(Sign a, Sign b) {
  return a == b ? Sign::Positive : Sign::Negative;
}
inline Sign flip(Sign s) { return s == Sign::Positive ? Sign::Negative : Sign::Positive; }
inline Dir flip(Dir d) { return d == Dir::Away ? Dir::Toward : Dir::Away; }
inline int to_int(Dir d) { return static_cast<int>(d); }
inline int to_int(Sign s) { return static_cast<int>(s); }

struct EdgeRecord {
  EdgeId id = -1;
  VertexId u = -1;
  VertexId v = -1;
  Sign sign = Sign::Positive;

  bool is_loop() const { return u == v; }
  VertexId end(int i) const { return i == 0 ? u : v; }
  // For a loop this returns x itself.
  VertexId other(VertexId x) const { return x == u ? v : u; }
  // Index of the end at x; for loops always 0.
  int end_index(VertexId x) const { return x == u ? 0 : 1; }
};

// Multigraph with stable sparse ids. Removing a vertex or an edge never renumbers.
class SignedGraph {
 public:
  SignedGraph() = default;
  explicit SignedGraph(int n);

  VertexId add_vertex();
  void add_vertex_with_id(VertexId v);
  EdgeId add_edge(VertexId u, VertexId v, Sign s);
  void add_edge_with_id(EdgeId id, VertexId u, VertexId v, Sign s);
  void remove_edge(EdgeId e);
  void remove_vertex(VertexId v);  // also removes incident edges
  void set_sign(EdgeId e, Sign s);
  // Re-attach end `end` (0 = u, 1 = v) of e to vertex `to`.
  void move_end(EdgeId e, int end, VertexId to);

  bool has_vertex(VertexId v) const {
    return v >= 0 && v < static_cast<int>(present_.size()) && present_[v];
  }
  bool has_edge(EdgeId e) const {
    return e >= 0 && e < static_cast<int>(edges_.size()) && edges_[e].id >= 0;
  }
  const EdgeRecord& edge(EdgeId e) const;
  // Each loop appears once.
  const std::vector<EdgeId>& incident(VertexId v) const;
  // Loops count twice.
  int degree(VertexId v) const;

  int num_vertices() const { return nv_; }
  int num_edges() const { return ne_; }
  int vertex_bound() const { return static_cast<int>(present_.size()); }
  int edge_bound() const { return static_cast<int>(edges_.size()); }
  std::vector<VertexId> vertices() const;
  std::vector<EdgeId> edges() const;

  SignedGraph induced(const std::vector<VertexId>& keep) const;
  SignedGraph without_vertices(const std::vector<VertexId>& drop) const;

  bool operator==(const SignedGraph& o) const;

 private:
  std::vector<char> present_;
  std::vector<std::vector<EdgeId>> adj_;
  std::vector<EdgeRecord> edges_;
  int nv_ = 0;
  int ne_ = 0;
};

// Per-edge end directions, indexed by edge id.
class Orientation {
 public:
  Orientation() = default;
  // Positive edge: away at u, toward at v. Negative edge: away at both ends.
  static Orientation canonical(const SignedGraph& g);

  bool has(EdgeId e) const { return e >= 0 && e < static_cast<int>(set_.size()) && set_[e]; }
  Dir at(EdgeId e, int end) const;
  // Direction of e at its end on x. For a loop, the first end.
  Dir at_vertex(const SignedGraph& g, EdgeId e, VertexId x) const {
    return at(e, g.edge(e).end_index(x));
  }
  void set(EdgeId e, Dir du, Dir dv);
  void set_end(EdgeId e, int end, Dir d);
  void erase(EdgeId e);
  // Throws ConsistencyError naming the first bad edge.
  void check(const SignedGraph& g) const;

  bool operator==(const Orientation& o) const;

 private:
  std::vector<std::array<Dir, 2>> dirs_;
  std::vector<char> set_;
};

template <class T>
class EdgeMap {
 public:
  EdgeMap() = default;
  explicit EdgeMap(int bound, T init = T{}) : vals_(bound, init) {}

  T& operator[](EdgeId e) {
    if (e >= static_cast<int>(vals_.size())) vals_.resize(e + 1, T{});
    return vals_[e];
  }
  T operator[](EdgeId e) const {
    return e < static_cast<int>(vals_.size()) ? vals_[e] : T{};
  }
  int bound() const { return static_cast<int>(vals_.size()); }
  bool operator==(const EdgeMap& o) const = default;

 private:
  std::vector<T> vals_;
};

class Z3 {
 public:
  constexpr Z3() = default;
  constexpr explicit Z3(int x) : v_(static_cast<std::uint8_t>(((x % 3) + 3) % 3)) {}
  constexpr int value() const { return v_; }
  constexpr bool zero() const { return v_ == 0; }
  // Representative in {-1, 0, 1}.
  constexpr int balanced() const { return v_ == 2 ? -1 : v_; }
  friend constexpr Z3 operator+(Z3 a, Z3 b) { return Z3(a.v_ + b.v_); }
  friend constexpr Z3 operator-(Z3 a, Z3 b) { return Z3(a.v_ + 3 - b.v_); }
  friend constexpr Z3 operator*(Z3 a, Z3 b) { return Z3(a.v_ * b.v_); }
  constexpr Z3 operator-() const { return Z3(3 - v_); }
  Z3& operator+=(Z3 b) { return *this = *this + b; }
  Z3& operator-=(Z3 b) { return *this = *this - b; }
  friend constexpr bool operator==(Z3 a, Z3 b) { return a.v_ == b.v_; }

 private:
  std::uint8_t v_ = 0;
};

using IntFlow = EdgeMap<int>;
using Z3Assignment = EdgeMap<Z3>;

// A cycle as a closed walk: edges[i] joins vertices[i] and vertices[i+1 mod L].
// A single vertex with no edges is the degenerate "generalized cycle".
struct Cycle {
  std::vector<VertexId> vertices;
  std::vector<EdgeId> edges;
  Sign sign = Sign::Positive;

  int length() const { return static_cast<int>(edges.size()); }
  bool is_vertex() const { return edges.empty(); }
  bool operator==(const Cycle& o) const = default;
};

Sign product_sign(const SignedGraph& g, const std::vector<EdgeId>& edges);

// Optional exclusion masks (1 = excluded), sized at least to the bounds when present.
struct Mask {
  const std::vector<char>* vertices = nullptr;
  const std::vector<char>* edges = nullptr;

  bool vertex_out(VertexId v) const {
    return vertices && v < static_cast<int>(vertices->size()) && (*vertices)[v];
  }
  bool edge_out(EdgeId e) const {
    return edges && e < static_cast<int>(edges->size()) && (*edges)[e];
  }
};

struct BalanceCertificate {
  bool balanced = true;
  std::vector<VertexId> switching_set;  // when balanced
  Cycle negative_cycle;                 // when unbalanced
};

// Flow contribution of a value at an edge end.
template <class T>
T end_contribution(Dir d, T value) {
  return d == Dir::Away ? value : T{} - value;
}

template <class T>
T boundary_at(const SignedGraph& g, const Orientation& o, const EdgeMap<T>& f, VertexId v) {
  if (!g.has_vertex(v)) throw ArgumentError("unknown vertex " + std::to_string(v));
  T acc{};
  for (EdgeId e : g.incident(v)) {
    if (g.edge(e).is_loop()) {
      acc = acc + end_contribution(o.at(e, 0), f[e]) + end_contribution(o.at(e, 1), f[e]);
    } else {
      acc = acc + end_contribution(o.at_vertex(g, e, v), f[e]);
    }
  }
  return acc;
}

void switch_at_vertex(SignedGraph& g, Orientation& o, VertexId v);
void reverse_edge(Orientation& o, IntFlow& f, EdgeId e);
void reverse_edge(Orientation& o, Z3Assignment& f, EdgeId e);

struct FlowVerdict {
  enum class Clause { None, Boundary, Zero, Range };
  bool accepted = true;
  Clause clause = Clause::None;
  VertexId vertex = -1;
  EdgeId edge = -1;
  long value = 0;
  std::string message() const;
};

FlowVerdict verify_flow(const SignedGraph& g, const Orientation& o, const IntFlow& f, int k);

BalanceCertificate is_balanced(const SignedGraph& g, const Mask& mask = {});
bool balanced(const SignedGraph& g, const Mask& mask = {});
bool negativeness_at_most(const SignedGraph& g, int k);
bool is_flow_admissible(const SignedGraph& g);

struct Subdivision {
  VertexId x = -1;
  EdgeId e1 = -1;  // keeps the old id, u..x
  EdgeId e2 = -1;  // x..v, positive
};
Subdivision subdivide_edge(SignedGraph& g, Orientation& o, EdgeId e);
// Merges the two edges at x into the lower id. Throws ContractViolation if ∂f(x) ≠ 0.
EdgeId smooth_degree2_vertex(SignedGraph& g, Orientation& o, IntFlow& f, VertexId x);

struct Uncontraction {
  VertexId v = -1;
  EdgeId e = -1;
  EdgeId e2 = -1;
  VertexId new_vertex = -1;
  EdgeId new_edge = -1;
};
Uncontraction uncontract_at(SignedGraph& g, VertexId v, EdgeId e, EdgeId e2);

int edge_connectivity(const SignedGraph& g);

// Re-expresses a flow given on (g switched at `switched`, `working`) relative to `target`.
IntFlow transport_flow(const SignedGraph& g, const Orientation& target, const Orientation& working,
                       const std::vector<char>& switched, const IntFlow& f);

// Connected components (sorted vertex lists) of the unmasked part.
std::vector<std::vector<VertexId>> components(const SignedGraph& g, const Mask& mask = {});
bool is_connected(const SignedGraph& g);
bool is_cubic(const SignedGraph& g);
int max_degree(const SignedGraph& g);

}  // namespace sigflow
