#include "sigflow/cli.hpp"

#include <CLI11.hpp>

#include <atomic>
#include <chrono>
#include <functional>
#include <mutex>
#include <ostream>
#include <random>
#include <thread>

#include "sigflow/certificate.hpp"
#include "sigflow/io.hpp"
#include "sigflow/oracle.hpp"
#include "sigflow/pipeline.hpp"
#include "sigflow/structure.hpp"

namespace sigflow {

namespace {

// "@name" loads a built-in instance, anything else is a path to an .sg file.
SgFile load_graph(const std::string& spec) {
  SgFile f;
  if (!spec.empty() && spec[0] == '@') {
    f.graph = named_instance(spec.substr(1));
  } else {
    f = parse_sg(read_file(spec));
  }
  if (!f.orientation) f.orientation = Orientation::canonical(f.graph);
  f.orientation->check(f.graph);
  return f;
}

const char* yes_no(bool b) { return b ? "yes" : "no"; }

void parallel_for(int count, int jobs, const std::function<void(int)>& body) {
  jobs = std::max(1, std::min(jobs, count));
  std::atomic<int> next{0};
  auto worker = [&] {
    for (int i = next++; i < count; i = next++) body(i);
  };
  std::vector<std::thread> pool;
  for (int t = 1; t < jobs; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
}

int cmd_analyze(const std::string& path, std::ostream& out) {
  SgFile f = load_graph(path);
  const SignedGraph& g = f.graph;
  out << "vertices " << g.num_vertices() << "\n";
  out << "edges " << g.num_edges() << "\n";
  const bool bal = balanced(g);
  out << "balanced " << yes_no(bal) << "\n";
  out << "negativeness " << (bal ? "0" : negativeness_at_most(g, 1) ? "1" : ">=2") << "\n";
  out << "edge-connectivity " << edge_connectivity(g) << "\n";
  out << "cubic " << yes_no(is_cubic(g)) << "\n";
  const bool theta = has_unbalanced_theta(g);
  out << "unbalanced-theta " << yes_no(theta) << "\n";
  CyclePair cp = find_two_disjoint_negative_cycles(g, true);
  out << "two-disjoint-negative-cycles "
      << (cp.status == SearchStatus::Found ? "yes" : cp.status == SearchStatus::None ? "no" : "unknown") << "\n";
  out << "fragile " << yes_no(theta && is_fragile(g)) << "\n";
  out << "fish " << (recognize_fish(g) ? "recognized" : "no") << "\n";
  if (g.num_vertices() <= 16 && max_degree(g) <= 3)
    out << "well-behaved " << yes_no(is_well_behaved(g)) << "\n";
  out << "flow-admissible " << yes_no(is_flow_admissible(g)) << "\n";
  return kExitOk;
}

struct SynthArgs {
  std::string graph, out, cert, trace;
  std::uint64_t seed = 0;
  bool no_fallback = false;
  long long budget = 20'000'000;
  int jobs = 1;
};

int cmd_synthesize(const SynthArgs& a, std::ostream& out, std::ostream& err) {
  SgFile f = load_graph(a.graph);
  SynthesisOptions opts;
  opts.allow_fallback = !a.no_fallback;
  opts.budget.node_limit = a.budget;
  opts.budget.jobs = a.jobs;
  SynthesisResult r;
  try {
    r = synthesize(f.graph, *f.orientation, opts);
  } catch (const Unsupported& e) {
    err << "unsupported: " << e.what() << "\n";
    return kExitUnsupported;
  }
  const std::string flow = serialize_flow(f.graph, r.flow);
  if (a.out.empty())
    out << flow;
  else
    write_file(a.out, flow);
  std::string cert_path = a.cert;
  if (cert_path.empty() && !a.out.empty()) cert_path = a.out + ".cert";
  if (!cert_path.empty()) write_file(cert_path, write_certificate(f.graph, *f.orientation, r, a.seed));
  if (!a.trace.empty()) write_file(a.trace, trace_text(r));
  err << "route " << route_name(r.route) << "\n";
  return kExitOk;
}

int cmd_verify(const std::string& gpath, const std::string& fpath, int k, std::ostream& out) {
  SgFile f = load_graph(gpath);
  IntFlow flow = parse_flow(read_file(fpath));
  for (EdgeId e = 0; e < flow.bound(); ++e)
    if (flow[e] != 0 && !f.graph.has_edge(e)) throw ParseError(0, "flow names unknown edge " + std::to_string(e));
  FlowVerdict v = verify_flow(f.graph, *f.orientation, flow, k);
  if (v.accepted) {
    out << "accepted k=" << k << "\n";
    return kExitOk;
  }
  out << "rejected: " << v.message() << "\n";
  return kExitFailure;
}

int cmd_replay(const std::string& gpath, const std::string& cpath, std::ostream& out) {
  SgFile f = load_graph(gpath);
  ReplayVerdict v = replay_certificate(f.graph, *f.orientation, read_file(cpath));
  for (const StageAudit& s : v.stages)
    out << "stage " << s.name << " " << (s.ok ? "ok" : "FAIL") << (s.detail.empty() ? "" : " " + s.detail) << "\n";
  out << "replay " << (v.ok ? "ok" : "failed") << "\n";
  return v.ok ? kExitOk : kExitFailure;
}

int cmd_oracle(const std::string& gpath, int k, long long budget, int jobs, const std::string& witness,
               std::ostream& out) {
  SgFile f = load_graph(gpath);
  SearchBudget b;
  b.node_limit = budget;
  b.jobs = jobs;
  OracleResult r = nz_kflow_exists(f.graph, *f.orientation, k, b);
  out << "oracle " << k << " " << verdict_name(r.verdict);
  if (r.verdict == Verdict::Yes && !witness.empty()) {
    write_file(witness, serialize_flow(f.graph, r.witness));
    out << " " << witness;
  }
  out << "\n";
  return r.verdict == Verdict::Unknown ? kExitFailure : kExitOk;
}

int cmd_generate(int n, std::uint64_t seed, bool two_neg, const std::string& path, std::ostream& out,
                 std::ostream& err) {
  if (n < 4 || n % 2) {
    err << "--n must be even and at least 4\n";
    return kExitUsage;
  }
  SignedGraph g;
  try {
    g = generate_cubic_3ec_signed(n, seed, two_neg);
  } catch (const GenerationFailure& e) {
    err << "generation failed: " << e.what() << "\n";
    return kExitFailure;
  }
  const std::string text = serialize_sg(g);
  if (path.empty())
    out << text;
  else
    write_file(path, text);
  return kExitOk;
}

// Maximum matching size by subset DP; only for tiny graphs.
int brute_matching_size(int n, const std::vector<std::pair<int, int>>& edges) {
  std::vector<std::vector<char>> adj(n, std::vector<char>(n, 0));
  for (auto [a, b] : edges)
    if (a != b) adj[a][b] = adj[b][a] = 1;
  std::vector<int> best(1 << n, 0);
  for (int mask = 1; mask < (1 << n); ++mask) {
    int v = __builtin_ctz(mask);
    int rest = mask & ~(1 << v);
    int b = best[rest];
    for (int u = 0; u < n; ++u)
      if ((rest >> u & 1) && adj[v][u]) b = std::max(b, 1 + best[rest & ~(1 << u)]);
    best[mask] = b;
  }
  return best[(1 << n) - 1];
}

struct SelftestArgs {
  int max_n = 8;
  int samples = 200;
  std::uint64_t seed = 1;
  int jobs = 1;
};

int cmd_selftest(const SelftestArgs& a, std::ostream& out) {
  bool all = true;
  auto report = [&](const std::string& suite, int failures, int total, const std::string& first) {
    out << "selftest " << suite << " " << (failures ? "FAIL" : "pass") << " " << total - failures << "/" << total;
    if (failures) out << " first: " << first;
    out << "\n";
    if (failures) all = false;
  };

  {
    int total = 0, failures = 0;
    std::string first;
    for (int len = 2; len <= 6; ++len)
      for (Sign s : {Sign::Positive, Sign::Negative}) {
        SignedGraph g(len);
        Cycle c;
        for (int i = 0; i < len; ++i) {
          c.vertices.push_back(i);
          c.edges.push_back(g.add_edge(i, (i + 1) % len, i == 0 ? s : Sign::Positive));
        }
        c.sign = s;
        Orientation o = Orientation::canonical(g);
        int count = 1;
        for (int i = 0; i < len; ++i) count *= 3;
        for (int code = 0; code < count; ++code) {
          std::vector<Z3> b(len);
          int x = code, sum = 0;
          for (int i = 0; i < len; ++i, x /= 3) {
            b[i] = Z3(x % 3);
            sum += x % 3;
          }
          ++total;
          auto sol = solve_cycle_boundary(g, o, c, b);
          const bool expect = s == Sign::Negative || sum % 3 == 0;
          bool ok = sol.has_value() == expect;
          if (ok && sol) {
            Z3Assignment t;
            for (int i = 0; i < len; ++i) t[c.edges[i]] = (*sol)[i];
            for (int i = 0; i < len; ++i) ok = ok && boundary_at(g, o, t, i) == b[i];
          }
          if (!ok && failures++ == 0) first = "length " + std::to_string(len);
        }
      }
    report("cycle-boundary", failures, total, first);
  }

  {
    std::mt19937_64 rng(a.seed);
    int failures = 0;
    std::string first;
    for (int i = 0; i < a.samples; ++i) {
      int n = 1 + static_cast<int>(bounded_draw(rng, 10));
      int m = static_cast<int>(bounded_draw(rng, 2 * n + 1));
      std::vector<std::pair<int, int>> es;
      for (int j = 0; j < m; ++j)
        es.push_back({static_cast<int>(bounded_draw(rng, n)), static_cast<int>(bounded_draw(rng, n))});
      std::vector<int> mate = maximum_matching(n, es);
      int size = 0;
      for (int v = 0; v < n; ++v)
        if (mate[v] > v) ++size;
      if (size != brute_matching_size(n, es) && failures++ == 0) first = "sample " + std::to_string(i);
    }
    report("blossom", failures, a.samples, first);
  }

  {
    std::mutex mu;
    int failures = 0;
    std::string first;
    std::vector<int> sizes;
    for (int n = 6; n <= std::max(6, a.max_n); n += 2) sizes.push_back(n);
    parallel_for(a.samples, a.jobs, [&](int i) {
      const int n = sizes[i % sizes.size()];
      std::string why;
      try {
        SignedGraph g = generate_cubic_3ec_signed(n, a.seed * 7919 + i, true);
        Orientation o = Orientation::canonical(g);
        SynthesisResult r = synthesize(g, o);
        ReplayVerdict rv = replay_certificate(g, o, write_certificate(g, o, r));
        if (!verify_flow(g, o, r.flow, 8).accepted) why = "flow rejected";
        else if (!rv.ok) why = "replay: " + rv.first_failure();
      } catch (const std::exception& e) {
        why = e.what();
      }
      if (!why.empty()) {
        std::lock_guard lock(mu);
        if (failures++ == 0) first = "n=" + std::to_string(n) + " sample " + std::to_string(i) + ": " + why;
      }
    });
    report("synthesis", failures, a.samples, first);
  }
  return all ? kExitOk : kExitFailure;
}

}  // namespace

int run_command(const std::vector<std::string>& argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Nowhere-zero 8-flows on signed graphs"};
  app.require_subcommand(1);
  app.fallthrough();
  int jobs = 1;
  app.add_option("--jobs", jobs, "worker threads")->check(CLI::PositiveNumber);

  std::string g_path, f_path, c_path;
  auto* analyze = app.add_subcommand("analyze", "structural report");
  analyze->add_option("graph", g_path)->required();

  SynthArgs sa;
  auto* synth = app.add_subcommand("synthesize", "construct a nowhere-zero 8-flow");
  synth->add_option("graph", sa.graph)->required();
  synth->add_option("-o,--output", sa.out, "flow file (stdout if absent)");
  synth->add_option("--cert", sa.cert, "certificate file (default <output>.cert)");
  synth->add_option("--trace", sa.trace, "trace file");
  synth->add_option("--seed", sa.seed);
  synth->add_option("--budget", sa.budget, "oracle node limit");
  synth->add_flag("--no-fallback", sa.no_fallback, "refuse the oracle route");

  int k = 8;
  auto* verify = app.add_subcommand("verify", "check a flow file");
  verify->add_option("graph", g_path)->required();
  verify->add_option("flow", f_path)->required();
  verify->add_option("--k", k)->required()->check(CLI::Range(2, 1 << 20));

  auto* replay = app.add_subcommand("replay", "re-verify a certificate");
  replay->add_option("graph", g_path)->required();
  replay->add_option("cert", c_path)->required();

  long long budget = 20'000'000;
  std::string witness;
  auto* oracle = app.add_subcommand("oracle", "exhaustive nowhere-zero k-flow search");
  oracle->add_option("graph", g_path)->required();
  oracle->add_option("--k", k)->required()->check(CLI::Range(2, 64));
  oracle->add_option("--budget", budget, "node limit");
  oracle->add_option("-o,--witness", witness);

  int n = 0;
  std::uint64_t seed = 0;
  bool two_neg = false;
  std::string out_path;
  auto* generate = app.add_subcommand("generate", "random cubic 3-edge-connected signed graph");
  generate->add_option("--n", n)->required();
  generate->add_option("--seed", seed)->required();
  generate->add_flag("--require-2-neg", two_neg);
  generate->add_option("-o,--output", out_path);

  SelftestArgs st;
  auto* selftest = app.add_subcommand("selftest", "small exhaustive suites");
  selftest->add_option("--max-n", st.max_n);
  selftest->add_option("--samples", st.samples)->check(CLI::PositiveNumber);
  selftest->add_option("--seed", st.seed);

  std::vector<std::string> args(argv.begin() + (argv.empty() ? 0 : 1), argv.end());
  std::reverse(args.begin(), args.end());
  try {
    app.parse(args);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n";
    return kExitUsage;
  }

  try {
    if (*analyze) return cmd_analyze(g_path, out);
    if (*synth) {
      sa.jobs = jobs;
      return cmd_synthesize(sa, out, err);
    }
    if (*verify) return cmd_verify(g_path, f_path, k, out);
    if (*replay) return cmd_replay(g_path, c_path, out);
    if (*oracle) return cmd_oracle(g_path, k, budget, jobs, witness, out);
    if (*generate) return cmd_generate(n, seed, two_neg, out_path, out, err);
    if (*selftest) {
      st.jobs = jobs;
      return cmd_selftest(st, out);
    }
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const ConsistencyError& e) {
    err << "inconsistent orientation: " << e.what() << "\n";
    return kExitUsage;
  } catch (const ArgumentError& e) {
    err << "bad argument: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "failure: " << e.what() << "\n";
    return kExitFailure;
  }
  return kExitUsage;
}

}  // namespace sigflow
