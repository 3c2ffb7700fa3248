#include "sigflow/oracle.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <cstdlib>
#include <future>
#include <limits>
#include <regex>

#include "sigflow/structure.hpp"

namespace sigflow {

const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::Yes:
      return "yes";
    case Verdict::No:
      return "no";
    default:
      return "unknown";
  }
}

namespace {

using Clock = std::chrono::steady_clock;

class FlowSearch {
 public:
  FlowSearch(const SignedGraph& g, const Orientation& o, int k) : k_(k) {
    std::vector<int> vidx(g.vertex_bound(), -1);
    int nv = 0;
    for (VertexId v : g.vertices()) vidx[v] = nv++;
    inc_.resize(nv);
    partial_.assign(nv, 0);
    remaining_.assign(nv, 0);
    remcap_.assign(nv, 0);
    for (EdgeId e : g.edges()) {
      const EdgeRecord& r = g.edge(e);
      int idx = static_cast<int>(ids_.size());
      ids_.push_back(e);
      std::array<int, 2> ends{-1, -1}, coef{0, 0};
      if (r.is_loop()) {
        ends[0] = vidx[r.u];
        coef[0] = to_int(o.at(e, 0)) + to_int(o.at(e, 1));
      } else {
        ends = {vidx[r.u], vidx[r.v]};
        coef = {to_int(o.at(e, 0)), to_int(o.at(e, 1))};
      }
      ends_.push_back(ends);
      coef_.push_back(coef);
      for (int i = 0; i < 2; ++i) {
        if (ends[i] < 0 || coef[i] == 0) continue;
        inc_[ends[i]].push_back(idx);
        remaining_[ends[i]] += 1;
        remcap_[ends[i]] += std::abs(coef[i]) * (k - 1);
      }
    }
    val_.assign(ids_.size(), 0);
    pos_.assign(g.edge_bound(), -1);
    for (int i = 0; i < static_cast<int>(ids_.size()); ++i) pos_[ids_[i]] = i;
    // Edges constraining nothing (positive loops) take value 1.
    for (int i = 0; i < static_cast<int>(ids_.size()); ++i)
      if (coef_[i][0] == 0 && coef_[i][1] == 0) val_[i] = 1;
  }

  bool fix(EdgeId e, int x) {
    if (e < 0 || e >= static_cast<int>(pos_.size()) || pos_[e] < 0) throw ArgumentError("unknown edge " + std::to_string(e));
    if (x == 0 || std::abs(x) > k_ - 1) return false;
    int i = pos_[e];
    if (val_[i] != 0) return val_[i] == x;
    assign(i, x);
    any_fixed_ = true;
    return consistent(i);
  }

  Verdict run(long long limit, Clock::time_point deadline, bool has_deadline, int worker, int workers) {
    limit_ = limit;
    deadline_ = deadline;
    has_deadline_ = has_deadline;
    worker_ = worker;
    workers_ = workers;
    nodes_ = 0;
    exhausted_ = false;
    root_branched_ = false;
    bool ok = solve();
    if (ok) return Verdict::Yes;
    return exhausted_ ? Verdict::Unknown : Verdict::No;
  }

  IntFlow witness() const {
    IntFlow f;
    for (size_t i = 0; i < ids_.size(); ++i) f[ids_[i]] = val_[i];
    return f;
  }
  long long nodes() const { return nodes_; }

 private:
  void assign(int i, int x) {
    val_[i] = x;
    for (int j = 0; j < 2; ++j) {
      int a = ends_[i][j], c = coef_[i][j];
      if (a < 0 || c == 0) continue;
      partial_[a] += c * x;
      remaining_[a] -= 1;
      remcap_[a] -= std::abs(c) * (k_ - 1);
    }
  }
  void unassign(int i) {
    int x = val_[i];
    for (int j = 0; j < 2; ++j) {
      int a = ends_[i][j], c = coef_[i][j];
      if (a < 0 || c == 0) continue;
      partial_[a] -= c * x;
      remaining_[a] += 1;
      remcap_[a] += std::abs(c) * (k_ - 1);
    }
    val_[i] = 0;
  }
  bool consistent(int i) const {
    for (int j = 0; j < 2; ++j) {
      int a = ends_[i][j];
      if (a < 0 || coef_[i][j] == 0) continue;
      if (std::abs(partial_[a]) > remcap_[a]) return false;
    }
    return true;
  }

  bool try_value(int i, int x) {
    assign(i, x);
    bool ok = consistent(i) && solve();
    if (!ok) unassign(i);
    return ok;
  }

  bool solve() {
    if (exhausted_) return false;
    if (++nodes_ > limit_) {
      exhausted_ = true;
      return false;
    }
    if (has_deadline_ && (nodes_ & 4095) == 0 && Clock::now() > deadline_) {
      exhausted_ = true;
      return false;
    }
    int best = -1;
    for (int a = 0; a < static_cast<int>(inc_.size()); ++a) {
      if (remaining_[a] == 0) continue;
      if (best < 0 || remaining_[a] < remaining_[best]) best = a;
      if (remaining_[best] == 1) break;
    }
    if (best < 0) return true;
    int edge = -1, c = 0;
    for (int i : inc_[best]) {
      if (val_[i] != 0) continue;
      edge = i;
      c = ends_[i][0] == best ? coef_[i][0] : coef_[i][1];
      break;
    }
    if (remaining_[best] == 1) {
      int p = partial_[best];
      if (p % c != 0) return false;
      int x = -p / c;
      if (x == 0 || std::abs(x) > k_ - 1) return false;
      return try_value(edge, x);
    }
    bool root = !root_branched_;
    root_branched_ = true;
    int slot = 0;
    for (int m = 1; m <= k_ - 1; ++m) {
      for (int sgn : {1, -1}) {
        int x = sgn * m;
        if (root && !any_fixed_ && x < 0) continue;
        if (root && (slot++ % workers_) != worker_) continue;
        if (try_value(edge, x)) return true;
        if (exhausted_) return false;
      }
    }
    return false;
  }

  int k_;
  std::vector<EdgeId> ids_;
  std::vector<int> pos_;
  std::vector<std::array<int, 2>> ends_, coef_;
  std::vector<std::vector<int>> inc_;
  std::vector<int> val_, partial_, remaining_, remcap_;
  bool any_fixed_ = false;
  bool root_branched_ = false;
  bool exhausted_ = false;
  long long nodes_ = 0, limit_ = 0;
  Clock::time_point deadline_{};
  bool has_deadline_ = false;
  int worker_ = 0, workers_ = 1;
};

}  // namespace

OracleResult search_flow_with_fixed(const SignedGraph& g, const Orientation& o, int k,
                                    const std::vector<std::pair<EdgeId, int>>& fixed,
                                    const SearchBudget& budget) {
  if (k < 2) throw ArgumentError("k must be at least 2");
  OracleResult out;
  FlowSearch base(g, o, k);
  for (auto [e, x] : fixed) {
    if (!base.fix(e, x)) {
      out.verdict = Verdict::No;
      return out;
    }
  }
  const bool has_deadline = budget.time_limit_s > 0;
  const auto deadline =
      Clock::now() + std::chrono::duration_cast<Clock::duration>(std::chrono::duration<double>(budget.time_limit_s));
  const int workers = std::max(1, budget.jobs);
  if (workers == 1) {
    out.verdict = base.run(budget.node_limit, deadline, has_deadline, 0, 1);
    out.nodes = base.nodes();
    if (out.verdict == Verdict::Yes) out.witness = base.witness();
    return out;
  }
  std::vector<std::future<std::pair<Verdict, FlowSearch>>> parts;
  for (int w = 0; w < workers; ++w) {
    parts.push_back(std::async(std::launch::async, [&, w] {
      FlowSearch s = base;
      Verdict v = s.run(budget.node_limit / workers, deadline, has_deadline, w, workers);
      return std::make_pair(v, std::move(s));
    }));
  }
  bool unknown = false;
  for (auto& p : parts) {
    auto [v, s] = p.get();
    out.nodes += s.nodes();
    if (v == Verdict::Yes && out.verdict != Verdict::Yes) {
      out.verdict = Verdict::Yes;
      out.witness = s.witness();
    }
    if (v == Verdict::Unknown) unknown = true;
  }
  if (out.verdict != Verdict::Yes) out.verdict = unknown ? Verdict::Unknown : Verdict::No;
  return out;
}

OracleResult nz_kflow_exists(const SignedGraph& g, const Orientation& o, int k, const SearchBudget& budget) {
  return search_flow_with_fixed(g, o, k, {}, budget);
}

std::optional<bool> brute_flow_admissible(const SignedGraph& g, const SearchBudget& budget) {
  Orientation o = Orientation::canonical(g);
  OracleResult r = nz_kflow_exists(g, o, kAdmissibilityModulus, budget);
  if (r.verdict == Verdict::Unknown) return std::nullopt;
  return r.verdict == Verdict::Yes;
}

std::uint64_t bounded_draw(std::mt19937_64& rng, std::uint64_t n) {
  if (n == 0) throw ArgumentError("bounded_draw needs n > 0");
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % n;
  std::uint64_t x;
  do {
    x = rng();
  } while (x >= limit);
  return x % n;
}

SignedGraph generate_cubic_3ec_signed(int n, std::uint64_t seed, bool require_two_disjoint_negative) {
  if (n < 4 || n % 2 != 0) throw ArgumentError("n must be even and at least 4");
  std::mt19937_64 rng(seed * 0x9E3779B97F4A7C15ULL + static_cast<std::uint64_t>(n));
  constexpr int kGraphAttempts = 4000;
  constexpr int kSignatureAttempts = 64;
  for (int attempt = 0; attempt < kGraphAttempts; ++attempt) {
    std::vector<int> points(3 * n);
    for (int i = 0; i < 3 * n; ++i) points[i] = i;
    for (int i = 3 * n - 1; i > 0; --i) std::swap(points[i], points[bounded_draw(rng, i + 1)]);
    SignedGraph g(n);
    for (int i = 0; i < 3 * n; i += 2) g.add_edge(points[i] / 3, points[i + 1] / 3, Sign::Positive);
    if (edge_connectivity(g) < 3) continue;
    for (int s = 0; s < (require_two_disjoint_negative ? kSignatureAttempts : 1); ++s) {
      for (EdgeId e : g.edges()) g.set_sign(e, bounded_draw(rng, 2) ? Sign::Negative : Sign::Positive);
      if (!require_two_disjoint_negative) return g;
      auto pair = find_two_disjoint_negative_cycles(g, true);
      if (pair.status == SearchStatus::Found && is_flow_admissible(g)) return g;
    }
  }
  throw GenerationFailure("no instance with n=" + std::to_string(n) + " after rejection cap");
}

SignedGraph petersen(std::uint32_t signature) {
  SignedGraph g(10);
  auto sign = [&](int id) { return (signature >> id) & 1U ? Sign::Negative : Sign::Positive; };
  int id = 0;
  for (int i = 0; i < 5; ++i, ++id) g.add_edge(i, (i + 1) % 5, sign(id));
  for (int i = 0; i < 5; ++i, ++id) g.add_edge(i, i + 5, sign(id));
  for (int i = 0; i < 5; ++i, ++id) g.add_edge(5 + i, 5 + (i + 2) % 5, sign(id));
  return g;
}

SignedGraph fish_instance(int m) {
  if (m < 0) throw ArgumentError("fish parameter must be non-negative");
  // a=0 b=1 r=2 s=3 p=4 q=5, then the inner vertices of P.
  SignedGraph g(8 + 2 * m);
  const Sign P = Sign::Positive;
  g.add_edge(0, 4, P);
  g.add_edge(4, 1, P);
  g.add_edge(0, 5, P);
  g.add_edge(5, 1, P);
  g.add_edge(0, 2, P);
  g.add_edge(2, 3, P);
  g.add_edge(3, 1, P);
  int prev = 2;
  for (int i = 0; i < 2 + 2 * m; ++i) {
    g.add_edge(prev, 6 + i, i == 0 ? Sign::Negative : P);
    prev = 6 + i;
  }
  g.add_edge(prev, 3, P);
  return g;
}

SignedGraph named_instance(const std::string& name) {
  static const std::regex pattern(R"(^([a-z0-9-]+)(?:[:(](\d+)\)?)?$)");
  std::smatch m;
  if (!std::regex_match(name, m, pattern)) throw ArgumentError("unknown instance '" + name + "'");
  const std::string base = m[1];
  const bool has_arg = m[2].matched;
  const long arg = has_arg ? std::stol(m[2]) : 0;
  if (base == "petersen") return petersen(static_cast<std::uint32_t>(arg));
  if (base == "fish") return fish_instance(static_cast<int>(arg));
  if (has_arg) throw ArgumentError("instance '" + base + "' takes no argument");
  if (base == "k4") {
    SignedGraph g(4);
    for (int i = 0; i < 4; ++i)
      for (int j = i + 1; j < 4; ++j) g.add_edge(i, j, Sign::Positive);
    return g;
  }
  if (base == "prism-neg") {
    SignedGraph g(6);
    g.add_edge(0, 1, Sign::Negative);
    g.add_edge(1, 2, Sign::Positive);
    g.add_edge(2, 0, Sign::Positive);
    g.add_edge(3, 4, Sign::Negative);
    g.add_edge(4, 5, Sign::Positive);
    g.add_edge(5, 3, Sign::Positive);
    for (int i = 0; i < 3; ++i) g.add_edge(i, i + 3, Sign::Positive);
    return g;
  }
  if (base == "triple-edge") {
    SignedGraph g(2);
    for (int i = 0; i < 3; ++i) g.add_edge(0, 1, Sign::Positive);
    return g;
  }
  throw ArgumentError("unknown instance '" + name + "'");
}

}  // namespace sigflow
