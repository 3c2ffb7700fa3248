#include "sigflow/select.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <sstream>

namespace sigflow {

namespace {

const std::vector<std::pair<CycleKind, const char*>> kKindNames{
    {CycleKind::Positive, "positive"},
    {CycleKind::NegativeOrdinary, "negative-ordinary"},
    {CycleKind::NegativeSpecial, "negative-special"},
    {CycleKind::Fish, "fish"},
};

const std::vector<std::pair<StepTag, const char*>> kTagNames{
    {StepTag::Preprocess1, "pre-1"},       {StepTag::Preprocess2, "pre-2"},
    {StepTag::Step3, "step-3"},            {StepTag::Step4, "step-4"},
    {StepTag::Step6, "step-6"},            {StepTag::Step8aFish, "step-8a-fish"},
    {StepTag::Step8aPositive, "step-8a-positive"}, {StepTag::Step8bSpecial, "step-8b-special"},
    {StepTag::Step8bPositive, "step-8b-positive"},
};

std::vector<char> flags_of(int bound, const std::vector<VertexId>& vs) {
  std::vector<char> f(bound, 0);
  for (VertexId v : vs) f[v] = 1;
  return f;
}

Cycle vertex_cycle(VertexId v) { return Cycle{{v}, {}, Sign::Positive}; }

bool theta_without(const SignedGraph& g, const std::vector<VertexId>& drop) {
  std::vector<char> m = flags_of(g.vertex_bound(), drop);
  return has_unbalanced_theta(g, Mask{&m, nullptr});
}

std::string join_ids(const std::vector<int>& xs) {
  std::string s;
  for (int x : xs) s += " " + std::to_string(x);
  return s;
}

// Enumerates perfect matchings in lowest-free-vertex order; visit returns true to stop.
SearchStatus for_each_perfect_matching(const SignedGraph& g, long long node_limit,
                                       const std::function<bool(const std::vector<EdgeId>&)>& visit) {
  std::vector<char> used(g.vertex_bound(), 0);
  std::vector<VertexId> vs = g.vertices();
  std::vector<EdgeId> m;
  long long nodes = 0;
  bool stop = false, unknown = false;
  std::function<void(size_t)> rec = [&](size_t from) {
    if (stop || unknown) return;
    if (++nodes > node_limit) {
      unknown = true;
      return;
    }
    while (from < vs.size() && used[vs[from]]) ++from;
    if (from == vs.size()) {
      if (visit(m)) stop = true;
      return;
    }
    VertexId v = vs[from];
    std::vector<EdgeId> inc = g.incident(v);
    std::sort(inc.begin(), inc.end());
    used[v] = 1;
    for (EdgeId e : inc) {
      const EdgeRecord& r = g.edge(e);
      if (r.is_loop()) continue;
      VertexId w = r.other(v);
      if (used[w]) continue;
      used[w] = 1;
      m.push_back(e);
      rec(from + 1);
      m.pop_back();
      used[w] = 0;
      if (stop || unknown) break;
    }
    used[v] = 0;
  };
  rec(0);
  if (stop) return SearchStatus::Found;
  return unknown ? SearchStatus::Unknown : SearchStatus::None;
}

// Closes the path (s..t, both on D) with one of the two arcs of D from t back to s.
Cycle close_with_arc(const SignedGraph& g, const GoodThetaPair& tp, bool forward) {
  const Cycle& d = tp.d;
  const int L = d.length();
  auto idx = [&](VertexId v) {
    return static_cast<int>(std::find(d.vertices.begin(), d.vertices.end(), v) - d.vertices.begin());
  };
  const int i = idx(tp.q_vertices.front()), j = idx(tp.q_vertices.back());
  Cycle c;
  c.vertices = tp.q_vertices;
  c.edges = tp.q_edges;
  if (forward) {
    for (int k = j; k != i; k = (k + 1) % L) {
      c.edges.push_back(d.edges[k]);
      if ((k + 1) % L != i) c.vertices.push_back(d.vertices[(k + 1) % L]);
    }
  } else {
    for (int k = j; k != i; k = (k + L - 1) % L) {
      c.edges.push_back(d.edges[(k + L - 1) % L]);
      if ((k + L - 1) % L != i) c.vertices.push_back(d.vertices[(k + L - 1) % L]);
    }
  }
  c.sign = product_sign(g, c.edges);
  return c;
}

std::vector<Cycle> good_vertex_cycles(const SignedGraph& g, const std::vector<int>& deg) {
  std::vector<Cycle> out;
  for (VertexId v : g.vertices())
    if (deg[v] <= 1) out.push_back(vertex_cycle(v));
  return out;
}

}  // namespace

std::string kind_name(CycleKind k) {
  for (auto [kk, n] : kKindNames)
    if (kk == k) return n;
  return "?";
}

std::string tag_name(StepTag t) {
  for (auto [tt, n] : kTagNames)
    if (tt == t) return n;
  return "?";
}

std::optional<CycleKind> parse_kind(const std::string& s) {
  for (auto [k, n] : kKindNames)
    if (s == n) return k;
  return std::nullopt;
}

std::optional<StepTag> parse_tag(const std::string& s) {
  for (auto [t, n] : kTagNames)
    if (s == n) return t;
  return std::nullopt;
}

FirstCycles preprocess_first(const SignedGraph& g) {
  if (!is_cubic(g)) throw ContractViolation("cycle selection needs a cubic graph");
  FirstCycles out;
  // Two negative cycles covering V are the 2-factor left by some perfect matching.
  std::vector<char> mmask(g.edge_bound(), 0);
  for_each_perfect_matching(g, 4'000'000, [&](const std::vector<EdgeId>& m) {
    for (EdgeId e : m) mmask[e] = 1;
    auto comps = components(g, Mask{nullptr, &mmask});
    bool ok = false;
    if (comps.size() == 2) {
      std::vector<std::vector<EdgeId>> ce(2);
      std::vector<char> side = flags_of(g.vertex_bound(), comps[1]);
      for (EdgeId e : g.edges())
        if (!mmask[e]) ce[side[g.edge(e).u]].push_back(e);
      Cycle a = cycle_from_edges(g, ce[0]), b = cycle_from_edges(g, ce[1]);
      if (a.sign == Sign::Negative && b.sign == Sign::Negative) {
        out.which = 1;
        out.c1 = a;
        out.c2 = b;
        ok = true;
      }
    }
    for (EdgeId e : m) mmask[e] = 0;
    return ok;
  });
  if (out.which == 1) return out;

  CycleSearchOptions opts;
  opts.prune = [&](const std::vector<char>& on_path, const std::vector<EdgeId>&) {
    return !has_unbalanced_theta(g, Mask{&on_path, nullptr});
  };
  RankedCycle rc = best_cycle(g, opts, [&](const Cycle& c) {
    return c.sign == Sign::Negative && theta_without(g, c.vertices);
  });
  if (rc.status != SearchStatus::Found)
    throw InvariantViolation("no first cycle: neither a covering pair nor a cycle leaving an unbalanced theta");
  out.which = 2;
  out.c1 = rc.cycle;
  return out;
}

std::vector<std::vector<EdgeId>> even_negative_cycles_after(const SignedGraph& g, const Cycle& c) {
  std::vector<char> m = flags_of(g.vertex_bound(), c.vertices);
  std::vector<std::vector<EdgeId>> out;
  for (const Cycle& n : negative_cycles_without_theta(g, Mask{&m, nullptr})) {
    if (n.length() % 2 != 0) continue;
    std::vector<EdgeId> es = n.edges;
    std::sort(es.begin(), es.end());
    out.push_back(es);
  }
  std::sort(out.begin(), out.end());
  return out;
}

bool beast_conditions(const SignedGraph& g, const Cycle& c0, const Cycle& c1) {
  std::vector<int> deg = degree_table(g);
  if (c1.is_vertex() || c1.sign != Sign::Negative || !is_valid_cycle(g, c1)) return false;
  if (!is_valid_cycle(g, c0) || !is_good_cycle(c0, deg)) return false;
  if (theta_without(g, c1.vertices) || theta_without(g, c0.vertices)) return false;
  if (even_negative_cycles_after(g, c0) != even_negative_cycles_after(g, c1)) return false;
  int two = 0;
  for (VertexId v : c1.vertices)
    if (deg[v] == 2) ++two;
  if (two >= 2) return true;
  std::vector<char> m = flags_of(g.vertex_bound(), c1.vertices);
  return two >= 1 && negative_cycles_without_theta(g, Mask{&m, nullptr}).size() <= 2;
}

BeastPair beast_pair(const SignedGraph& g) {
  BeastPair out;
  if (auto f = recognize_fish(g)) {
    out.fish = f;
    return out;
  }
  if (auto tp = find_good_theta_pair(g)) {
    Cycle a = close_with_arc(g, *tp, true), b = close_with_arc(g, *tp, false);
    if (a.sign == Sign::Negative) std::swap(a, b);
    if (beast_conditions(g, a, b)) {
      out.c0 = a;
      out.c1 = b;
      return out;
    }
  }
  std::vector<int> deg = degree_table(g);
  CycleEnumeration all = enumerate_cycles(g, 200000);
  if (all.truncated) throw InvariantViolation("cycle enumeration truncated while searching for a pair");
  std::vector<Cycle> goods = good_vertex_cycles(g, deg), negs;
  for (const Cycle& c : all.cycles) {
    if (c.sign == Sign::Negative)
      negs.push_back(c);
    else if (is_good_cycle(c, deg))
      goods.push_back(c);
  }
  for (const Cycle& c1 : negs)
    for (const Cycle& c0 : goods)
      if (beast_conditions(g, c0, c1)) {
        out.c0 = c0;
        out.c1 = c1;
        return out;
      }
  throw InvariantViolation("fragile residual is neither a fish nor has a qualifying cycle pair");
}

CycleList run_csa(const SignedGraph& g, CsaTrace* trace) {
  auto log = [&](const std::string& s) {
    if (trace) trace->lines.push_back(s);
  };
  CycleList cl;
  auto emit = [&](Cycle c, CycleKind k, StepTag t) {
    log("select " + tag_name(t) + " " + kind_name(k) + join_ids(c.vertices));
    cl.push_back(CycleRecord{std::move(c), k, t, std::nullopt});
  };

  FirstCycles first = preprocess_first(g);
  if (first.which == 1) {
    emit(first.c1, CycleKind::NegativeSpecial, StepTag::Preprocess1);
    emit(first.c2, CycleKind::NegativeSpecial, StepTag::Preprocess1);
    return cl;
  }
  emit(first.c1, CycleKind::NegativeSpecial, StepTag::Preprocess2);

  std::vector<char> removed(g.vertex_bound(), 0);
  for (VertexId v : first.c1.vertices) removed[v] = 1;
  bool step8_done = false;

  while (true) {
    std::vector<VertexId> keep;
    for (VertexId v : g.vertices())
      if (!removed[v]) keep.push_back(v);
    if (keep.empty()) break;
    const SignedGraph gp = g.induced(keep);
    const bool theta = has_unbalanced_theta(gp);
    if (step8_done && theta) throw InvariantViolation("unbalanced theta survived the step-8 record");

    const BlockCutTree bt = block_cut_tree(gp);
    const std::vector<int> leaves = bt.leaf_blocks();
    if (leaves.empty()) throw InvariantViolation("residual block-cut tree has no leaf");
    int hb = -1;
    for (int b : leaves)
      if (theta_without(gp, bt.block_vertices[b])) {
        hb = b;
        break;
      }
    // Otherwise prefer a leaf whose private part (all but its cut vertex) avoids some unbalanced theta.
    if (hb < 0 && theta)
      for (int b : leaves) {
        std::vector<VertexId> inner;
        for (VertexId v : bt.block_vertices[b])
          if (!bt.is_cut(v)) inner.push_back(v);
        if (inner.size() < bt.block_vertices[b].size() && theta_without(gp, inner)) {
          hb = b;
          break;
        }
      }
    if (hb < 0) hb = leaves.front();
    const std::vector<VertexId>& hv = bt.block_vertices[hb];
    std::vector<char> not_h(g.vertex_bound(), 1);
    for (VertexId v : hv) not_h[v] = 0;
    const Mask hmask{&not_h, nullptr};
    const std::vector<int> deg_gp = degree_table(gp);
    const std::vector<int> deg_h = degree_table(gp, hmask);
    const bool h_acyclic = bt.blocks[hb].empty() || (bt.blocks[hb].size() == 1 && !gp.edge(bt.blocks[hb][0]).is_loop());

    Cycle chosen;
    CycleKind kind = CycleKind::Positive;

    // A trivial or bridge leaf contributes its vertex of degree at most one.
    auto leaf_vertex = [&]() {
      for (VertexId v : hv)
        if (deg_gp[v] <= 1) return vertex_cycle(v);
      throw InvariantViolation("acyclic leaf block without a low-degree vertex");
    };
    std::vector<int> cost(g.vertex_bound(), 0);
    for (VertexId v : hv) cost[v] = deg_h[v] >= 3 ? 1 : 0;

    if (!theta) {
      if (h_acyclic) {
        chosen = leaf_vertex();
      } else {
        CycleSearchOptions opts;
        opts.mask = hmask;
        opts.cost = &cost;
        RankedCycle rc = best_cycle(gp, opts, [&](const Cycle& c) {
          if (c.sign == Sign::Positive) return is_good_cycle(c, deg_h);
          int other = 0;
          for (VertexId v : c.vertices)
            if (deg_gp[v] != 2) ++other;
          return other <= 1;
        });
        if (rc.status != SearchStatus::Found) throw InvariantViolation("leaf block without a usable cycle");
        chosen = rc.cycle;
        if (chosen.sign == Sign::Negative) kind = CycleKind::NegativeOrdinary;
      }
      emit(chosen, kind, StepTag::Step3);
    } else if (bt.is_single_cycle(hb) && product_sign(gp, bt.blocks[hb]) == Sign::Negative) {
      emit(cycle_from_edges(gp, bt.blocks[hb]), CycleKind::NegativeOrdinary, StepTag::Step4);
    } else {
      std::optional<Cycle> good;
      if (h_acyclic) {
        Cycle c = leaf_vertex();
        if (theta_without(gp, c.vertices)) good = c;
      } else {
        CycleSearchOptions opts;
        opts.mask = hmask;
        opts.cost = &cost;
        opts.prune = [&](const std::vector<char>& on_path, const std::vector<EdgeId>&) {
          return !has_unbalanced_theta(gp, Mask{&on_path, nullptr});
        };
        RankedCycle rc = best_cycle(gp, opts, [&](const Cycle& c) { return is_good_cycle(c, deg_h); });
        if (rc.status == SearchStatus::Found) good = rc.cycle;
      }
      if (good) {
        emit(*good, CycleKind::Positive, StepTag::Step6);
      } else {
        if (step8_done) throw InvariantViolation("step 8 reached twice");
        if (static_cast<int>(hv.size()) != gp.num_vertices())
          throw InvariantViolation("fragile residual is not a single block");
        step8_done = true;
        int k = 0;
        for (const CycleRecord& r : cl)
          if (r.kind == CycleKind::NegativeOrdinary && r.cycle.length() % 2 == 0) ++k;
        if (auto fish = recognize_fish(gp)) {
          if (k % 2 == 1) {
            Cycle whole;
            whole.vertices = gp.vertices();
            whole.edges = gp.edges();
            whole.sign = product_sign(gp, whole.edges);
            log("select " + tag_name(StepTag::Step8aFish) + " fish" + join_ids(whole.vertices));
            cl.push_back(CycleRecord{whole, CycleKind::Fish, StepTag::Step8aFish, fish});
          } else {
            const FishCertificate& f = *fish;
            std::vector<EdgeId> es;
            for (EdgeId e : f.theta_edges) {
              const EdgeRecord& r = gp.edge(e);
              if (r.u == f.p || r.v == f.p || r.u == f.q || r.v == f.q) es.push_back(e);
            }
            emit(cycle_from_edges(gp, es), CycleKind::Positive, StepTag::Step8aPositive);
          }
        } else {
          BeastPair bp = beast_pair(gp);
          const int j = static_cast<int>(even_negative_cycles_after(gp, bp.c0).size());
          log("select beast k=" + std::to_string(k) + " j=" + std::to_string(j));
          if ((k + j) % 2 == 0)
            emit(bp.c1, CycleKind::NegativeSpecial, StepTag::Step8bSpecial);
          else
            emit(bp.c0, CycleKind::Positive, StepTag::Step8bPositive);
        }
      }
    }
    for (VertexId v : cl.back().cycle.vertices) removed[v] = 1;
  }
  if (!step8_done) throw InvariantViolation("recursion ended without reaching step 8");
  return cl;
}

bool edge_set_is_cut(const SignedGraph& g, const std::vector<EdgeId>& s, std::vector<char>* side) {
  if (s.empty()) return false;
  std::vector<char> em(g.edge_bound(), 0);
  for (EdgeId e : s) em[e] = 1;
  auto comps = components(g, Mask{nullptr, &em});
  std::vector<int> comp(g.vertex_bound(), -1);
  for (int i = 0; i < static_cast<int>(comps.size()); ++i)
    for (VertexId v : comps[i]) comp[v] = i;
  std::vector<std::vector<int>> cadj(comps.size());
  for (EdgeId e : s) {
    const EdgeRecord& r = g.edge(e);
    if (comp[r.u] == comp[r.v]) return false;
    cadj[comp[r.u]].push_back(comp[r.v]);
    cadj[comp[r.v]].push_back(comp[r.u]);
  }
  std::vector<int> color(comps.size(), -1);
  for (int s0 = 0; s0 < static_cast<int>(comps.size()); ++s0) {
    if (color[s0] >= 0) continue;
    color[s0] = 0;
    std::vector<int> queue{s0};
    for (size_t i = 0; i < queue.size(); ++i)
      for (int y : cadj[queue[i]]) {
        if (color[y] < 0) {
          color[y] = 1 - color[queue[i]];
          queue.push_back(y);
        } else if (color[y] == color[queue[i]]) {
          return false;
        }
      }
  }
  if (side) {
    side->assign(g.vertex_bound(), 0);
    for (VertexId v : g.vertices()) (*side)[v] = static_cast<char>(color[comp[v]]);
  }
  return true;
}

bool cycle_straddles(const SignedGraph& g, const Cycle& c, const std::vector<char>& side) {
  bool in0 = false, in1 = false;
  for (EdgeId e : c.edges) {
    const EdgeRecord& r = g.edge(e);
    if (side[r.u] != side[r.v]) continue;
    (side[r.u] ? in1 : in0) = true;
  }
  return in0 && in1;
}

std::optional<StraddleViolation> find_straddle_violation(const SignedGraph& g, const std::vector<Cycle>& cycles) {
  std::vector<char> side;
  const std::vector<EdgeId> all = g.edges();
  for (int i = 0; i < static_cast<int>(cycles.size()); ++i) {
    const Cycle& c = cycles[i];
    std::set<EdgeId> own(c.edges.begin(), c.edges.end());
    for (size_t a = 0; a < c.edges.size(); ++a)
      for (size_t b = a + 1; b < c.edges.size(); ++b)
        for (EdgeId e : all) {
          if (own.count(e)) continue;
          std::vector<EdgeId> s{c.edges[a], c.edges[b], e};
          if (edge_set_is_cut(g, s, &side) && cycle_straddles(g, c, side)) return StraddleViolation{i, -1, s};
        }
  }
  for (int i = 0; i < static_cast<int>(cycles.size()); ++i)
    for (int j = i + 1; j < static_cast<int>(cycles.size()); ++j) {
      const Cycle& ci = cycles[i];
      const Cycle& cj = cycles[j];
      for (size_t a = 0; a < ci.edges.size(); ++a)
        for (size_t b = a + 1; b < ci.edges.size(); ++b)
          for (size_t c = 0; c < cj.edges.size(); ++c)
            for (size_t d = c + 1; d < cj.edges.size(); ++d) {
              std::vector<EdgeId> s{ci.edges[a], ci.edges[b], cj.edges[c], cj.edges[d]};
              if (edge_set_is_cut(g, s, &side) && cycle_straddles(g, ci, side) && cycle_straddles(g, cj, side))
                return StraddleViolation{i, j, s};
            }
    }
  return std::nullopt;
}

CycleListVerdict validate_cycle_list(const SignedGraph& g, const CycleList& cl) {
  CycleListVerdict v;
  auto fail = [&](const std::string& rule, const std::string& detail) {
    v.accepted = false;
    v.rule = rule;
    v.detail = detail;
    return v;
  };
  const int t = static_cast<int>(cl.size());
  if (t == 0) return fail("records", "empty list");

  for (int i = 0; i < t; ++i) {
    const CycleRecord& r = cl[i];
    const std::string at = "record " + std::to_string(i);
    if (r.kind == CycleKind::Fish) {
      std::vector<VertexId> vs = r.cycle.vertices;
      std::sort(vs.begin(), vs.end());
      if (vs.empty() || std::adjacent_find(vs.begin(), vs.end()) != vs.end()) return fail("records", at + ": bad vertex set");
      for (VertexId x : vs)
        if (!g.has_vertex(x)) return fail("records", at + ": unknown vertex");
      SignedGraph h = g.induced(vs);
      std::vector<EdgeId> es = r.cycle.edges;
      std::sort(es.begin(), es.end());
      if (es != h.edges()) return fail("records", at + ": fish edges are not the induced edge set");
      if (!recognize_fish(h)) return fail("records", at + ": not a fish");
      continue;
    }
    if (!is_valid_cycle(g, r.cycle)) return fail("records", at + ": not a cycle of the graph");
    const bool neg = r.cycle.sign == Sign::Negative;
    if (r.is_negative_kind() != neg) return fail("records", at + ": sign does not match kind");
  }
  v.passed.push_back("records");

  std::vector<int> owner(g.vertex_bound(), -1);
  for (int i = 0; i < t; ++i)
    for (VertexId x : cl[i].cycle.vertices) {
      if (owner[x] >= 0) return fail("cover", "vertex " + std::to_string(x) + " in two records");
      owner[x] = i;
    }
  for (VertexId x : g.vertices())
    if (owner[x] < 0) return fail("cover", "vertex " + std::to_string(x) + " uncovered");
  v.passed.push_back("cover");

  if (cl[0].kind != CycleKind::NegativeSpecial) return fail("special", "first record is not negative special");
  int specials = 0;
  for (const CycleRecord& r : cl)
    if (r.kind == CycleKind::NegativeSpecial) ++specials;
  if (specials > 2) return fail("special", "more than one further negative special record");
  v.passed.push_back("special");

  // Edges between record i and earlier / later records.
  auto back_edges = [&](int i) {
    int c = 0;
    for (EdgeId e : g.edges()) {
      const EdgeRecord& r = g.edge(e);
      int a = owner[r.u], b = owner[r.v];
      if ((a == i && b < i) || (b == i && a < i)) ++c;
    }
    return c;
  };
  auto forward_edges = [&](int i) {
    int c = 0;
    for (EdgeId e : g.edges()) {
      const EdgeRecord& r = g.edge(e);
      int a = owner[r.u], b = owner[r.v];
      if ((a == i && b > i) || (b == i && a > i)) ++c;
    }
    return c;
  };

  for (int i = 1; i < t; ++i) {
    if (cl[i].kind != CycleKind::NegativeSpecial) continue;
    int later_neg = 0;
    for (int j = i + 1; j < t; ++j)
      if (cl[j].is_negative_kind()) ++later_neg;
    const int back = back_edges(i);
    if (!(back >= 2 || (back >= 1 && later_neg <= 2)))
      return fail("special-attachment", "record " + std::to_string(i) + " has " + std::to_string(back) +
                                            " back edges and " + std::to_string(later_neg) + " later negative records");
  }
  v.passed.push_back("special-attachment");

  for (int i = 0; i + 1 < t; ++i)
    if (cl[i].kind == CycleKind::Fish) return fail("fish-last", "fish record " + std::to_string(i) + " is not last");
  v.passed.push_back("fish-last");

  for (int i = 0; i < t; ++i) {
    if (cl[i].kind != CycleKind::NegativeOrdinary) continue;
    std::set<EdgeId> own(cl[i].cycle.edges.begin(), cl[i].cycle.edges.end());
    for (EdgeId e : g.edges()) {
      const EdgeRecord& r = g.edge(e);
      if (owner[r.u] == i && owner[r.v] == i && !own.count(e))
        return fail("ordinary", "record " + std::to_string(i) + " has chord " + std::to_string(e));
    }
    if (forward_edges(i) > 1) return fail("ordinary", "record " + std::to_string(i) + " has several forward edges");
  }
  v.passed.push_back("ordinary");

  for (int i = 0; i < t; ++i) {
    if (cl[i].kind != CycleKind::Positive) continue;
    const Cycle& c = cl[i].cycle;
    const std::string at = "record " + std::to_string(i);
    std::vector<int> earlier(g.vertex_bound(), 0);
    for (EdgeId e : g.edges()) {
      const EdgeRecord& r = g.edge(e);
      if (owner[r.u] == i && owner[r.v] < i) ++earlier[r.u];
      if (owner[r.v] == i && owner[r.u] < i) ++earlier[r.v];
    }
    if (c.is_vertex()) {
      if (earlier[c.vertices[0]] < 2) return fail("positive", at + ": single vertex with fewer than two back edges");
      continue;
    }
    std::vector<char> not_later(g.vertex_bound(), 1);
    for (VertexId x : g.vertices())
      if (owner[x] >= i) not_later[x] = 0;
    BlockCutTree bt = block_cut_tree(g, Mask{&not_later, nullptr});
    std::vector<char> at_bridge(g.vertex_bound(), 0);
    for (int b = 0; b < static_cast<int>(bt.blocks.size()); ++b)
      if (bt.blocks[b].size() == 1 && !g.edge(bt.blocks[b][0]).is_loop()) {
        at_bridge[g.edge(bt.blocks[b][0]).u] = 1;
        at_bridge[g.edge(bt.blocks[b][0]).v] = 1;
      }
    bool ok = false;
    for (VertexId x : c.vertices)
      for (VertexId y : c.vertices)
        if (x != y && earlier[x] > 0 && (earlier[y] > 0 || at_bridge[y])) ok = true;
    if (!ok) return fail("positive", at + ": no vertex pair with the required attachments");
  }
  v.passed.push_back("positive");

  int parity = 0;
  for (const CycleRecord& r : cl)
    if (r.kind == CycleKind::NegativeSpecial || (r.kind == CycleKind::NegativeOrdinary && r.cycle.length() % 2 == 0))
      ++parity;
  if (parity % 2 != 0) return fail("parity", "odd count of special and even ordinary records");
  v.passed.push_back("parity");

  std::vector<Cycle> evens;
  std::vector<int> even_idx;
  for (int i = 0; i < t; ++i)
    if (cl[i].kind == CycleKind::NegativeOrdinary && cl[i].cycle.length() % 2 == 0) {
      evens.push_back(cl[i].cycle);
      even_idx.push_back(i);
    }
  if (evens.size() > 2) {
    evens.resize(evens.size() - 2);
    if (auto sv = find_straddle_violation(g, evens)) {
      std::string d = "record " + std::to_string(even_idx[sv->first]);
      if (sv->second >= 0) d += " and record " + std::to_string(even_idx[sv->second]);
      d += " straddle cut" + join_ids(sv->cut);
      return fail("straddle", d);
    }
  }
  v.passed.push_back("straddle");
  return v;
}

std::vector<std::string> serialize_cycle_list(const CycleList& cl) {
  std::vector<std::string> out;
  for (size_t i = 0; i < cl.size(); ++i) {
    const std::string idx = std::to_string(i);
    out.push_back("cycle " + idx + " " + kind_name(cl[i].kind) + join_ids(cl[i].cycle.vertices));
    out.push_back("cycle-edges " + idx + join_ids(cl[i].cycle.edges));
    out.push_back("cycle-step " + idx + " " + tag_name(cl[i].tag));
  }
  return out;
}

CycleList parse_cycle_list(const SignedGraph& g, const std::vector<std::string>& lines) {
  std::map<int, CycleRecord> recs;
  std::map<int, int> seen;
  for (size_t ln = 0; ln < lines.size(); ++ln) {
    std::istringstream in(lines[ln]);
    std::string head;
    int idx = -1;
    in >> head;
    if (head != "cycle" && head != "cycle-edges" && head != "cycle-step") continue;
    if (!(in >> idx) || idx < 0) throw ParseError(static_cast<int>(ln + 1), "bad record index");
    CycleRecord& r = recs[idx];
    if (head == "cycle") {
      std::string k;
      in >> k;
      auto kind = parse_kind(k);
      if (!kind) throw ParseError(static_cast<int>(ln + 1), "unknown cycle kind '" + k + "'");
      r.kind = *kind;
      for (int x; in >> x;) r.cycle.vertices.push_back(x);
      seen[idx] |= 1;
    } else if (head == "cycle-edges") {
      for (int x; in >> x;) r.cycle.edges.push_back(x);
      seen[idx] |= 2;
    } else {
      std::string t;
      in >> t;
      auto tag = parse_tag(t);
      if (!tag) throw ParseError(static_cast<int>(ln + 1), "unknown step tag '" + t + "'");
      r.tag = *tag;
      seen[idx] |= 4;
    }
  }
  CycleList out;
  int expect = 0;
  for (auto& [idx, r] : recs) {
    if (idx != expect++) throw ParseError(0, "cycle records are not numbered consecutively");
    if (seen[idx] != 7) throw ParseError(0, "cycle record " + std::to_string(idx) + " is incomplete");
    for (EdgeId e : r.cycle.edges)
      if (!g.has_edge(e)) throw ParseError(0, "cycle record names unknown edge " + std::to_string(e));
    for (VertexId x : r.cycle.vertices)
      if (!g.has_vertex(x)) throw ParseError(0, "cycle record names unknown vertex " + std::to_string(x));
    r.cycle.sign = r.cycle.edges.empty() ? Sign::Positive : product_sign(g, r.cycle.edges);
    if (r.kind == CycleKind::Fish) r.fish = recognize_fish(g.induced(r.cycle.vertices));
    out.push_back(r);
  }
  return out;
}

}  // namespace sigflow
