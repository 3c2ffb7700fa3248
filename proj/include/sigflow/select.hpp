#pragma once

#include <optional>
#include <string>
#include <vector>

#include "sigflow/sigraph.hpp"
#include "sigflow/structure.hpp"

namespace sigflow {

enum class CycleKind { Positive, NegativeOrdinary, NegativeSpecial, Fish };

enum class StepTag {
  Preprocess1,
  Preprocess2,
  Step3,
  Step4,
  Step6,
  Step8aFish,
  Step8aPositive,
  Step8bSpecial,
  Step8bPositive,
};

std::string kind_name(CycleKind k);
std::string tag_name(StepTag t);
std::optional<CycleKind> parse_kind(const std::string& s);
std::optional<StepTag> parse_tag(const std::string& s);

// For a Fish record, `cycle` holds the whole fish: sorted vertices, sorted edges, overall sign.
struct CycleRecord {
  Cycle cycle;
  CycleKind kind = CycleKind::Positive;
  StepTag tag = StepTag::Step3;
  std::optional<FishCertificate> fish;

  bool is_negative_kind() const {
    return kind == CycleKind::NegativeOrdinary || kind == CycleKind::NegativeSpecial;
  }
};
using CycleList = std::vector<CycleRecord>;

struct FirstCycles {
  int which = 0;  // 1: two negative cycles covering V, 2: one cycle leaving an unbalanced theta
  Cycle c1;
  Cycle c2;  // only when which == 1
};
FirstCycles preprocess_first(const SignedGraph& g);

struct BeastPair {
  std::optional<FishCertificate> fish;
  Cycle c0;  // good
  Cycle c1;  // negative
};
// Input is the residual graph itself (degrees taken in it).
BeastPair beast_pair(const SignedGraph& g);
bool beast_conditions(const SignedGraph& g, const Cycle& c0, const Cycle& c1);

// Even-length negative cycles of g - V(c), as sorted edge lists. Requires no unbalanced theta there.
std::vector<std::vector<EdgeId>> even_negative_cycles_after(const SignedGraph& g, const Cycle& c);

struct CsaTrace {
  std::vector<std::string> lines;
};
CycleList run_csa(const SignedGraph& g, CsaTrace* trace = nullptr);

struct CycleListVerdict {
  bool accepted = true;
  std::string rule;  // first failing rule
  std::string detail;
  std::vector<std::string> passed;
};
CycleListVerdict validate_cycle_list(const SignedGraph& g, const CycleList& cl);

// Does S = δ(X) for some X? If so fills side (1 = X) for the vertices of g.
bool edge_set_is_cut(const SignedGraph& g, const std::vector<EdgeId>& s, std::vector<char>* side = nullptr);
bool cycle_straddles(const SignedGraph& g, const Cycle& c, const std::vector<char>& side);
struct StraddleViolation {
  int first = -1;
  int second = -1;  // -1 for a 3-cut
  std::vector<EdgeId> cut;
};
// Checks the 3-cut and 4-cut straddle conditions for the given cycles.
std::optional<StraddleViolation> find_straddle_violation(const SignedGraph& g, const std::vector<Cycle>& cycles);

std::vector<std::string> serialize_cycle_list(const CycleList& cl);
// Lines with prefixes `cycle`, `cycle-edges`, `cycle-step`; other lines are ignored.
CycleList parse_cycle_list(const SignedGraph& g, const std::vector<std::string>& lines);

}  // namespace sigflow
