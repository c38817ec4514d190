#pragma once

#include <cstdint>
#include <filesystem>
#include <string>

#include "kgk/kgraph.hpp"

namespace kgk {

// Graph-spec files are JSON objects
//   {"k": int, "vertices": [string],
//    "edges": [{"id","color","source","range"}],
//    "squares": [[eId, fId, fPrimeId, ePrimeId]]}
// where a square entry means e.f == f'.e' with color(e) < color(f).

GraphSpec parse_graph_spec(const std::string& json_text);
GraphSpec load_graph_spec(const std::filesystem::path& file);

// Canonical serialization: fields in schema order, arrays in spec order.
// load -> save -> load yields an identical graph.
std::string graph_spec_to_json(const GraphSpec& spec);
void save_graph(const KGraph& g, const std::filesystem::path& file);

// FNV-1a over the canonical serialization; stable across runs and platforms.
std::uint64_t graph_hash(const KGraph& g);

}  // namespace kgk
