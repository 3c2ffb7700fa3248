#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "sigflow/sigraph.hpp"

namespace sigflow {

struct SearchBudget {
  long long node_limit = 20'000'000;
  double time_limit_s = 0;  // 0 means no limit
  int jobs = 1;
};

enum class Verdict { Yes, No, Unknown };
const char* verdict_name(Verdict v);

struct OracleResult {
  Verdict verdict = Verdict::Unknown;
  IntFlow witness;  // valid when Yes
  long long nodes = 0;
};

// Exhaustive backtracking for a nowhere-zero k-flow.
OracleResult nz_kflow_exists(const SignedGraph& g, const Orientation& o, int k,
                             const SearchBudget& budget = {});

// Same search with some edge values fixed in advance.
OracleResult search_flow_with_fixed(const SignedGraph& g, const Orientation& o, int k,
                                    const std::vector<std::pair<EdgeId, int>>& fixed,
                                    const SearchBudget& budget = {});

// Largest modulus tried by brute_flow_admissible.
inline constexpr int kAdmissibilityModulus = 11;

// nullopt when the budget runs out.
std::optional<bool> brute_flow_admissible(const SignedGraph& g, const SearchBudget& budget = {});

class GenerationFailure : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

SignedGraph generate_cubic_3ec_signed(int n, std::uint64_t seed, bool require_two_disjoint_negative);

// petersen[:id], fish[:m], k4, prism-neg, triple-edge. "name(arg)" is accepted too.
SignedGraph named_instance(const std::string& name);

// Petersen graph with the negative edge set given by the low 15 bits of `signature`.
SignedGraph petersen(std::uint32_t signature);
SignedGraph fish_instance(int m);

// Deterministic bounded draw, independent of the standard library's distributions.
std::uint64_t bounded_draw(std::mt19937_64& rng, std::uint64_t n);

}  // namespace sigflow
