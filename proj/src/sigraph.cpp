#include "sigflow/sigraph.hpp"

#include <algorithm>
#include <climits>
#include <deque>
#include <sstream>

#include "sigflow/oracle.hpp"

namespace sigflow {

SignedGraph::SignedGraph(int n) {
  for (int i = 0; i < n; ++i) add_vertex();
}

VertexId SignedGraph::add_vertex() {
  present_.push_back(1);
  adj_.emplace_back();
  ++nv_;
  return static_cast<VertexId>(present_.size()) - 1;
}

void SignedGraph::add_vertex_with_id(VertexId v) {
  if (v < 0) throw ArgumentError("negative vertex id");
  if (has_vertex(v)) throw ArgumentError("duplicate vertex " + std::to_string(v));
  if (v >= vertex_bound()) {
    present_.resize(v + 1, 0);
    adj_.resize(v + 1);
  }
  present_[v] = 1;
  ++nv_;
}

EdgeId SignedGraph::add_edge(VertexId u, VertexId v, Sign s) {
  EdgeId id = edge_bound();
  add_edge_with_id(id, u, v, s);
  return id;
}

void SignedGraph::add_edge_with_id(EdgeId id, VertexId u, VertexId v, Sign s) {
  if (!has_vertex(u) || !has_vertex(v))
    throw ArgumentError("edge " + std::to_string(id) + " has an unknown endpoint");
  if (id < 0) throw ArgumentError("negative edge id");
  if (has_edge(id)) throw ArgumentError("duplicate edge " + std::to_string(id));
  if (id >= edge_bound()) edges_.resize(id + 1);
  edges_[id] = EdgeRecord{id, u, v, s};
  adj_[u].push_back(id);
  if (u != v) adj_[v].push_back(id);
  ++ne_;
}

const EdgeRecord& SignedGraph::edge(EdgeId e) const {
  if (!has_edge(e)) throw ArgumentError("unknown edge " + std::to_string(e));
  return edges_[e];
}

const std::vector<EdgeId>& SignedGraph::incident(VertexId v) const {
  if (!has_vertex(v)) throw ArgumentError("unknown vertex " + std::to_string(v));
  return adj_[v];
}

int SignedGraph::degree(VertexId v) const {
  int d = 0;
  for (EdgeId e : incident(v)) d += edges_[e].is_loop() ? 2 : 1;
  return d;
}

static void erase_one(std::vector<EdgeId>& list, EdgeId e) {
  auto it = std::find(list.begin(), list.end(), e);
  if (it != list.end()) list.erase(it);
}

void SignedGraph::remove_edge(EdgeId e) {
  const EdgeRecord r = edge(e);
  erase_one(adj_[r.u], e);
  if (!r.is_loop()) erase_one(adj_[r.v], e);
  edges_[e].id = -1;
  --ne_;
}

void SignedGraph::remove_vertex(VertexId v) {
  std::vector<EdgeId> inc = incident(v);
  for (EdgeId e : inc) remove_edge(e);
  present_[v] = 0;
  --nv_;
}

void SignedGraph::set_sign(EdgeId e, Sign s) {
  edge(e);
  edges_[e].sign = s;
}

void SignedGraph::move_end(EdgeId e, int end, VertexId to) {
  const EdgeRecord r = edge(e);
  if (!has_vertex(to)) throw ArgumentError("unknown vertex " + std::to_string(to));
  VertexId from = r.end(end);
  if (from == to) return;
  // Loops keep a single adjacency entry.
  if (!r.is_loop()) erase_one(adj_[from], e);
  if (end == 0)
    edges_[e].u = to;
  else
    edges_[e].v = to;
  if (!(edges_[e].is_loop())) adj_[to].push_back(e);
}

std::vector<VertexId> SignedGraph::vertices() const {
  std::vector<VertexId> out;
  out.reserve(nv_);
  for (int v = 0; v < vertex_bound(); ++v)
    if (present_[v]) out.push_back(v);
  return out;
}

std::vector<EdgeId> SignedGraph::edges() const {
  std::vector<EdgeId> out;
  out.reserve(ne_);
  for (int e = 0; e < edge_bound(); ++e)
    if (edges_[e].id >= 0) out.push_back(e);
  return out;
}

SignedGraph SignedGraph::induced(const std::vector<VertexId>& keep) const {
  SignedGraph h;
  std::vector<char> in(vertex_bound(), 0);
  for (VertexId v : keep) {
    if (!has_vertex(v)) throw ArgumentError("unknown vertex " + std::to_string(v));
    in[v] = 1;
  }
  h.present_.assign(vertex_bound(), 0);
  h.adj_.resize(vertex_bound());
  for (int v = 0; v < vertex_bound(); ++v)
    if (in[v]) {
      h.present_[v] = 1;
      ++h.nv_;
    }
  h.edges_.resize(edge_bound());
  for (int e = 0; e < edge_bound(); ++e) {
    const EdgeRecord& r = edges_[e];
    if (r.id < 0 || !in[r.u] || !in[r.v]) continue;
    h.edges_[e] = r;
    h.adj_[r.u].push_back(e);
    if (!r.is_loop()) h.adj_[r.v].push_back(e);
    ++h.ne_;
  }
  return h;
}

SignedGraph SignedGraph::without_vertices(const std::vector<VertexId>& drop) const {
  std::vector<char> out(vertex_bound(), 0);
  for (VertexId v : drop)
    if (v >= 0 && v < vertex_bound()) out[v] = 1;
  std::vector<VertexId> keep;
  for (VertexId v : vertices())
    if (!out[v]) keep.push_back(v);
  return induced(keep);
}

bool SignedGraph::operator==(const SignedGraph& o) const {
  if (vertices() != o.vertices() || edges() != o.edges()) return false;
  for (EdgeId e : edges()) {
    const EdgeRecord &a = edges_[e], &b = o.edges_[e];
    if (a.u != b.u || a.v != b.v || a.sign != b.sign) return false;
  }
  return true;
}

Orientation Orientation::canonical(const SignedGraph& g) {
  Orientation o;
  for (EdgeId e : g.edges()) {
    if (g.edge(e).sign == Sign::Positive)
      o.set(e, Dir::Away, Dir::Toward);
    else
      o.set(e, Dir::Away, Dir::Away);
  }
  return o;
}

Dir Orientation::at(EdgeId e, int end) const {
  if (!has(e)) throw ArgumentError("edge " + std::to_string(e) + " has no orientation");
  return dirs_[e][end];
}

void Orientation::set(EdgeId e, Dir du, Dir dv) {
  if (e < 0) throw ArgumentError("negative edge id");
  if (e >= static_cast<int>(dirs_.size())) {
    dirs_.resize(e + 1, {Dir::Away, Dir::Toward});
    set_.resize(e + 1, 0);
  }
  dirs_[e] = {du, dv};
  set_[e] = 1;
}

void Orientation::set_end(EdgeId e, int end, Dir d) {
  if (!has(e)) throw ArgumentError("edge " + std::to_string(e) + " has no orientation");
  dirs_[e][end] = d;
}

void Orientation::erase(EdgeId e) {
  if (has(e)) set_[e] = 0;
}

void Orientation::check(const SignedGraph& g) const {
  for (EdgeId e : g.edges()) {
    if (!has(e)) throw ConsistencyError("edge " + std::to_string(e) + " has no orientation");
    bool same = dirs_[e][0] == dirs_[e][1];
    bool negative = g.edge(e).sign == Sign::Negative;
    if (same != negative)
      throw ConsistencyError("edge " + std::to_string(e) + " directions violate its sign");
  }
}

bool Orientation::operator==(const Orientation& o) const {
  size_t n = std::max(set_.size(), o.set_.size());
  for (size_t e = 0; e < n; ++e) {
    bool a = e < set_.size() && set_[e];
    bool b = e < o.set_.size() && o.set_[e];
    if (a != b) return false;
    if (a && dirs_[e] != o.dirs_[e]) return false;
  }
  return true;
}

Sign product_sign(const SignedGraph& g, const std::vector<EdgeId>& edges) {
  Sign s = Sign::Positive;
  for (EdgeId e : edges) s = s * g.edge(e).sign;
  return s;
}

void switch_at_vertex(SignedGraph& g, Orientation& o, VertexId v) {
  if (!g.has_vertex(v)) throw ArgumentError("unknown vertex " + std::to_string(v));
  for (EdgeId e : g.incident(v)) {
    const EdgeRecord& r = g.edge(e);
    if (r.is_loop()) {
      o.set(e, flip(o.at(e, 0)), flip(o.at(e, 1)));
    } else {
      g.set_sign(e, flip(r.sign));
      int i = r.end_index(v);
      o.set_end(e, i, flip(o.at(e, i)));
    }
  }
}

template <class T>
static void reverse_impl(Orientation& o, EdgeMap<T>& f, EdgeId e) {
  if (!o.has(e)) throw ArgumentError("unknown edge " + std::to_string(e));
  o.set(e, flip(o.at(e, 0)), flip(o.at(e, 1)));
  f[e] = T{} - f[e];
}

void reverse_edge(Orientation& o, IntFlow& f, EdgeId e) { reverse_impl(o, f, e); }
void reverse_edge(Orientation& o, Z3Assignment& f, EdgeId e) { reverse_impl(o, f, e); }

std::string FlowVerdict::message() const {
  std::ostringstream s;
  switch (clause) {
    case Clause::None:
      return "accepted";
    case Clause::Boundary:
      s << "nonzero boundary " << value << " at vertex " << vertex;
      break;
    case Clause::Zero:
      s << "zero value on edge " << edge;
      break;
    case Clause::Range:
      s << "value " << value << " out of range on edge " << edge;
      break;
  }
  return s.str();
}

FlowVerdict verify_flow(const SignedGraph& g, const Orientation& o, const IntFlow& f, int k) {
  FlowVerdict out;
  for (VertexId v : g.vertices()) {
    int b = boundary_at(g, o, f, v);
    if (b != 0) {
      out.accepted = false;
      out.clause = FlowVerdict::Clause::Boundary;
      out.vertex = v;
      out.value = b;
      return out;
    }
  }
  for (EdgeId e : g.edges()) {
    if (f[e] == 0) {
      out.accepted = false;
      out.clause = FlowVerdict::Clause::Zero;
      out.edge = e;
      return out;
    }
  }
  for (EdgeId e : g.edges()) {
    if (std::abs(f[e]) > k - 1) {
      out.accepted = false;
      out.clause = FlowVerdict::Clause::Range;
      out.edge = e;
      out.value = f[e];
      return out;
    }
  }
  return out;
}

namespace {

Cycle witness_from_tree(const SignedGraph& g, const std::vector<EdgeId>& parent,
                        const std::vector<int>& depth, EdgeId closing) {
  const EdgeRecord& r = g.edge(closing);
  Cycle c;
  if (r.is_loop()) {
    c.vertices = {r.u};
    c.edges = {closing};
    c.sign = r.sign;
    return c;
  }
  VertexId a = r.u, b = r.v;
  std::vector<VertexId> pa{a}, pb{b};
  std::vector<EdgeId> ea, eb;
  while (depth[a] > depth[b]) {
    ea.push_back(parent[a]);
    a = g.edge(parent[a]).other(a);
    pa.push_back(a);
  }
  while (depth[b] > depth[a]) {
    eb.push_back(parent[b]);
    b = g.edge(parent[b]).other(b);
    pb.push_back(b);
  }
  while (a != b) {
    ea.push_back(parent[a]);
    a = g.edge(parent[a]).other(a);
    pa.push_back(a);
    eb.push_back(parent[b]);
    b = g.edge(parent[b]).other(b);
    pb.push_back(b);
  }
  // pa: u..lca, pb: v..lca
  c.vertices = pa;
  for (int i = static_cast<int>(pb.size()) - 2; i >= 0; --i) c.vertices.push_back(pb[i]);
  c.edges = ea;
  for (int i = static_cast<int>(eb.size()) - 1; i >= 0; --i) c.edges.push_back(eb[i]);
  c.edges.push_back(closing);
  c.sign = product_sign(g, c.edges);
  return c;
}

template <bool WantCert>
BalanceCertificate balance_search(const SignedGraph& g, const Mask& mask) {
  BalanceCertificate cert;
  const int n = g.vertex_bound();
  std::vector<std::int8_t> sigma(n, 0);
  std::vector<EdgeId> parent(WantCert ? n : 0, -1);
  std::vector<int> depth(WantCert ? n : 0, 0);
  std::vector<VertexId> queue;
  queue.reserve(n);
  for (VertexId s = 0; s < n; ++s) {
    if (!g.has_vertex(s) || mask.vertex_out(s) || sigma[s] != 0) continue;
    sigma[s] = 1;
    queue.clear();
    queue.push_back(s);
    for (size_t qi = 0; qi < queue.size(); ++qi) {
      VertexId x = queue[qi];
      for (EdgeId e : g.incident(x)) {
        if (mask.edge_out(e)) continue;
        const EdgeRecord& r = g.edge(e);
        VertexId y = r.other(x);
        if (mask.vertex_out(y)) continue;
        std::int8_t want = static_cast<std::int8_t>(sigma[x] * to_int(r.sign));
        if (r.is_loop()) {
          if (r.sign == Sign::Positive) continue;
        } else if (sigma[y] == 0) {
          sigma[y] = want;
          if constexpr (WantCert) {
            parent[y] = e;
            depth[y] = depth[x] + 1;
          }
          queue.push_back(y);
          continue;
        } else if (sigma[y] == want) {
          continue;
        }
        cert.balanced = false;
        if constexpr (WantCert) cert.negative_cycle = witness_from_tree(g, parent, depth, e);
        return cert;
      }
    }
  }
  if constexpr (WantCert) {
    for (VertexId v = 0; v < n; ++v)
      if (sigma[v] == -1) cert.switching_set.push_back(v);
  }
  return cert;
}

}  // namespace

BalanceCertificate is_balanced(const SignedGraph& g, const Mask& mask) {
  return balance_search<true>(g, mask);
}

bool balanced(const SignedGraph& g, const Mask& mask) {
  return balance_search<false>(g, mask).balanced;
}

bool negativeness_at_most(const SignedGraph& g, int k) {
  if (k != 0 && k != 1) throw ArgumentError("negativeness_at_most supports k in {0,1}");
  BalanceCertificate c = is_balanced(g);
  if (c.balanced) return true;
  if (k == 0) return false;
  // A single edge whose deletion balances g lies on every negative cycle.
  std::vector<char> out(g.edge_bound(), 0);
  for (EdgeId e : c.negative_cycle.edges) {
    out[e] = 1;
    bool ok = balanced(g, Mask{nullptr, &out});
    out[e] = 0;
    if (ok) return true;
  }
  return false;
}

bool is_flow_admissible(const SignedGraph& g) {
  if (g.num_vertices() >= 2 && edge_connectivity(g) >= 2) {
    if (balanced(g)) return true;
    return !negativeness_at_most(g, 1);
  }
  auto verdict = brute_flow_admissible(g);
  if (!verdict) throw InvariantViolation("flow admissibility undecided within the search budget");
  return *verdict;
}

Subdivision subdivide_edge(SignedGraph& g, Orientation& o, EdgeId e) {
  const EdgeRecord r = g.edge(e);
  Subdivision s;
  s.x = g.add_vertex();
  s.e1 = e;
  Dir du = o.at(e, 0), dv = o.at(e, 1);
  g.move_end(e, 1, s.x);
  // e1 keeps its sign, so its x-end follows the sign rule from the u-end.
  Dir d1x = r.sign == Sign::Positive ? flip(du) : du;
  o.set(e, du, d1x);
  s.e2 = g.add_edge(s.x, r.v, Sign::Positive);
  o.set(s.e2, flip(d1x), dv);
  return s;
}

EdgeId smooth_degree2_vertex(SignedGraph& g, Orientation& o, IntFlow& f, VertexId x) {
  if (g.degree(x) != 2) throw ArgumentError("vertex " + std::to_string(x) + " is not of degree 2");
  std::vector<EdgeId> inc = g.incident(x);
  if (inc.size() != 2) throw ArgumentError("cannot smooth a vertex carrying a loop");
  if (boundary_at(g, o, f, x) != 0)
    throw ContractViolation("nonzero boundary at vertex " + std::to_string(x));
  std::sort(inc.begin(), inc.end());
  EdgeId a = inc[0], b = inc[1];
  if (o.at_vertex(g, b, x) == o.at_vertex(g, a, x)) reverse_edge(o, f, b);
  if (f[a] != f[b]) throw ContractViolation("inconsistent values across vertex " + std::to_string(x));
  const EdgeRecord ra = g.edge(a), rb = g.edge(b);
  int ia = ra.end_index(x), ib = rb.end_index(x);
  VertexId p = ra.end(1 - ia), q = rb.end(1 - ib);
  Dir dp = o.at(a, 1 - ia), dq = o.at(b, 1 - ib);
  Sign s = ra.sign * rb.sign;
  int val = f[a];
  g.remove_edge(b);
  g.remove_edge(a);
  g.remove_vertex(x);
  o.erase(b);
  f[b] = 0;
  // Keep the end order of a: its non-x end stays at the same index.
  if (ia == 1) {
    g.add_edge_with_id(a, p, q, s);
    o.set(a, dp, dq);
  } else {
    g.add_edge_with_id(a, q, p, s);
    o.set(a, dq, dp);
  }
  f[a] = val;
  return a;
}

Uncontraction uncontract_at(SignedGraph& g, VertexId v, EdgeId e, EdgeId e2) {
  if (!g.has_vertex(v)) throw ArgumentError("unknown vertex " + std::to_string(v));
  if (g.degree(v) < 4) throw ArgumentError("vertex " + std::to_string(v) + " has degree below 4");
  if (e == e2) throw ArgumentError("uncontraction needs two distinct edges");
  const EdgeRecord& r1 = g.edge(e);
  const EdgeRecord& r2 = g.edge(e2);
  if ((r1.u != v && r1.v != v) || (r2.u != v && r2.v != v))
    throw ArgumentError("edges not incident to vertex " + std::to_string(v));
  Uncontraction u{v, e, e2, g.add_vertex(), -1};
  // For a loop, its second end moves.
  g.move_end(e, g.edge(e).is_loop() ? 1 : g.edge(e).end_index(v), u.new_vertex);
  g.move_end(e2, g.edge(e2).is_loop() ? 1 : g.edge(e2).end_index(v), u.new_vertex);
  u.new_edge = g.add_edge(v, u.new_vertex, Sign::Positive);
  return u;
}

int edge_connectivity(const SignedGraph& g) {
  std::vector<VertexId> vs = g.vertices();
  const int n = static_cast<int>(vs.size());
  if (n < 2) return 0;
  std::vector<int> idx(g.vertex_bound(), -1);
  for (int i = 0; i < n; ++i) idx[vs[i]] = i;
  std::vector<std::vector<int>> w(n, std::vector<int>(n, 0));
  for (EdgeId e : g.edges()) {
    const EdgeRecord& r = g.edge(e);
    if (r.is_loop()) continue;
    ++w[idx[r.u]][idx[r.v]];
    ++w[idx[r.v]][idx[r.u]];
  }
  // Stoer-Wagner.
  std::vector<int> alive(n);
  for (int i = 0; i < n; ++i) alive[i] = i;
  int best = INT_MAX;
  while (alive.size() > 1) {
    const int m = static_cast<int>(alive.size());
    std::vector<int> key(m, 0);
    std::vector<char> added(m, 0);
    int prev = -1, last = -1;
    for (int it = 0; it < m; ++it) {
      int sel = -1;
      for (int j = 0; j < m; ++j)
        if (!added[j] && (sel < 0 || key[j] > key[sel])) sel = j;
      added[sel] = 1;
      prev = last;
      last = sel;
      if (it == m - 1) best = std::min(best, key[sel]);
      for (int j = 0; j < m; ++j)
        if (!added[j]) key[j] += w[alive[sel]][alive[j]];
    }
    int s = alive[prev], t = alive[last];
    for (int j = 0; j < n; ++j) {
      w[s][j] += w[t][j];
      w[j][s] = w[s][j];
    }
    w[s][s] = 0;
    alive.erase(alive.begin() + last);
  }
  return best;
}

IntFlow transport_flow(const SignedGraph& g, const Orientation& target, const Orientation& working,
                       const std::vector<char>& switched, const IntFlow& f) {
  IntFlow out(g.edge_bound(), 0);
  for (EdgeId e : g.edges()) {
    VertexId u = g.edge(e).u;
    Dir d = working.at(e, 0);
    if (u < static_cast<int>(switched.size()) && switched[u]) d = flip(d);
    out[e] = d == target.at(e, 0) ? f[e] : -f[e];
  }
  return out;
}

std::vector<std::vector<VertexId>> components(const SignedGraph& g, const Mask& mask) {
  std::vector<std::vector<VertexId>> out;
  std::vector<char> seen(g.vertex_bound(), 0);
  for (VertexId s : g.vertices()) {
    if (seen[s] || mask.vertex_out(s)) continue;
    std::vector<VertexId> comp{s};
    seen[s] = 1;
    for (size_t i = 0; i < comp.size(); ++i) {
      for (EdgeId e : g.incident(comp[i])) {
        if (mask.edge_out(e)) continue;
        VertexId y = g.edge(e).other(comp[i]);
        if (seen[y] || mask.vertex_out(y)) continue;
        seen[y] = 1;
        comp.push_back(y);
      }
    }
    std::sort(comp.begin(), comp.end());
    out.push_back(std::move(comp));
  }
  return out;
}

bool is_connected(const SignedGraph& g) { return components(g).size() <= 1; }

bool is_cubic(const SignedGraph& g) {
  for (VertexId v : g.vertices())
    if (g.degree(v) != 3) return false;
  return true;
}

int max_degree(const SignedGraph& g) {
  int d = 0;
  for (VertexId v : g.vertices()) d = std::max(d, g.degree(v));
  return d;
}

}  // namespace sigflow
