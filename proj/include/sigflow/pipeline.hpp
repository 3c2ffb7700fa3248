#pragma once

#include <array>
#include <stdexcept>
#include <string>
#include <vector>

#include "sigflow/lift.hpp"
#include "sigflow/oracle.hpp"
#include "sigflow/preflow.hpp"
#include "sigflow/reduce.hpp"
#include "sigflow/select.hpp"
#include "sigflow/sigraph.hpp"

namespace sigflow {

// The input is outside the supported hypotheses and no fallback applies.
class Unsupported : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class Route { Constructive, Oracle6, Oracle8 };
std::string route_name(Route r);

struct SynthesisOptions {
  bool allow_fallback = true;
  SearchBudget budget;
};

struct StageAudit {
  std::string name;
  bool ok = true;
  std::string detail;
};

// Everything produced by the constructive route on one cubic piece.
struct ConstructiveTrace {
  CycleList cl;
  std::vector<std::string> csa_lines;
  ParityGraph pg;  // after signature normalization
  Z3Assignment phi;
  std::vector<std::string> preflow_notes;
  NormalizedPreflow normalized;
  AuxiliaryGraph aux;
  HypothesisReport hypotheses;
  std::vector<EdgeId> matching;  // auxiliary edge ids
  bool lift_from_matching = true;
  IntFlow psi, tau, f_star;
};

enum class PieceKind { Split, Constructive, Oracle6, Oracle8 };
std::string piece_kind_name(PieceKind k);

struct Piece {
  int id = 0;
  int parent = -1;
  PieceKind kind = PieceKind::Oracle8;
  SignedGraph g;
  Orientation o;
  IntFlow flow;
  // Split pieces.
  ThreeCut cut;
  int child = -1;
  IntFlow x_flow;  // on the balanced side with the contracted outside
  // Constructive pieces.
  ConstructiveTrace trace;
};

struct SynthesisResult {
  IntFlow flow;
  Route route = Route::Constructive;
  bool reduced = false;
  CubicReduction reduction;
  std::vector<Piece> pieces;  // pieces[0] is the root
  std::vector<StageAudit> audits;
};

// Runs the constructive pipeline on a cubic, 3-edge-connected graph that has two vertex-disjoint
// negative cycles and no balanced 3-cut. Throws InvariantViolation on any failed stage.
ConstructiveTrace construct_flow(const SignedGraph& g, const Orientation& o, IntFlow& flow);
// The same stages starting from a given cycle list (validated first).
ConstructiveTrace construct_from_list(const SignedGraph& g, const Orientation& o, const CycleList& cl, IntFlow& flow);

// Full synthesis: reduce to cubic, split balanced 3-cuts, then the constructive route or the
// oracle fallback per piece. The returned flow is relative to (g, o) and verified at k = 8.
SynthesisResult synthesize(const SignedGraph& g, const Orientation& o, const SynthesisOptions& opts = {});

}  // namespace sigflow
