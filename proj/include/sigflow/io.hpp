#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "sigflow/sigraph.hpp"

namespace sigflow {

struct SgFile {
  SignedGraph graph;
  std::optional<Orientation> orientation;
};

// .sg text: "sg 1", "v <n>", optional "x <id>" holes, "e <id> <u> <v> <+|-> [dirU dirV]".
SgFile parse_sg(std::string_view text);
std::string serialize_sg(const SignedGraph& g, const Orientation* o = nullptr);

// Flow file: "<edge-id> <integer>" per line.
IntFlow parse_flow(std::string_view text);
std::string serialize_flow(const SignedGraph& g, const IntFlow& f);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& text);

std::uint64_t fnv1a64(std::string_view text);

}  // namespace sigflow
