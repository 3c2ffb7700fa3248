#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "sigflow/pipeline.hpp"

namespace sigflow {

// Line-oriented, versioned "cert 1". Pieces embed their graphs between graph-begin/graph-end.
std::string write_certificate(const SignedGraph& g, const Orientation& o, const SynthesisResult& r,
                              std::uint64_t seed = 0);

struct ReplayVerdict {
  bool ok = true;
  std::vector<StageAudit> stages;
  std::string route;
  IntFlow flow;
  std::string first_failure() const;
};

// Re-checks every recorded stage against the input. Deterministic constructions are recomputed,
// searched objects (cycle list, matching, witnesses) are only checked.
ReplayVerdict replay_certificate(const SignedGraph& g, const Orientation& o, std::string_view cert);

// psi/tau/flow/match lines plus the selection trace, for --trace.
std::string trace_text(const SynthesisResult& r);

}  // namespace sigflow
