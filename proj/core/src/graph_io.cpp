#include "kgk/graph_io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace kgk {

using json = nlohmann::json;
using ordered_json = nlohmann::ordered_json;

GraphSpec parse_graph_spec(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::exception& ex) {
    throw Error::validation("MalformedSpec",
                            std::string("invalid JSON: ") + ex.what());
  }
  GraphSpec spec;
  try {
    if (!j.is_object()) {
      throw Error::validation("MalformedSpec", "top level must be an object");
    }
    spec.k = j.at("k").get<int>();
    for (const auto& v : j.at("vertices")) {
      spec.vertices.push_back(v.get<std::string>());
    }
    for (const auto& e : j.at("edges")) {
      EdgeSpec es;
      es.id = e.at("id").get<std::string>();
      es.color = e.at("color").get<int>();
      es.source = e.at("source").get<std::string>();
      es.range = e.at("range").get<std::string>();
      spec.edges.push_back(std::move(es));
    }
    if (j.contains("squares")) {
      for (const auto& s : j.at("squares")) {
        if (!s.is_array() || s.size() != 4) {
          throw Error::validation("MalformedSpec",
                                  "square entries must be 4-element arrays");
        }
        spec.squares.push_back(SquareSpec{
            s.at(0).get<std::string>(), s.at(1).get<std::string>(),
            s.at(2).get<std::string>(), s.at(3).get<std::string>()});
      }
    }
  } catch (const json::exception& ex) {
    throw Error::validation("MalformedSpec",
                            std::string("bad graph spec: ") + ex.what());
  }
  return spec;
}

GraphSpec load_graph_spec(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) {
    throw Error::validation("MalformedSpec",
                            "cannot read file '" + file.string() + "'");
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_graph_spec(buf.str());
}

std::string graph_spec_to_json(const GraphSpec& spec) {
  ordered_json j;
  j["k"] = spec.k;
  j["vertices"] = spec.vertices;
  j["edges"] = ordered_json::array();
  for (const EdgeSpec& e : spec.edges) {
    ordered_json je;
    je["id"] = e.id;
    je["color"] = e.color;
    je["source"] = e.source;
    je["range"] = e.range;
    j["edges"].push_back(std::move(je));
  }
  j["squares"] = ordered_json::array();
  for (const SquareSpec& s : spec.squares) {
    j["squares"].push_back({s.e, s.f, s.f_prime, s.e_prime});
  }
  return j.dump(2) + "\n";
}

void save_graph(const KGraph& g, const std::filesystem::path& file) {
  std::ofstream out(file);
  if (!out) {
    throw Error::validation("MalformedSpec",
                            "cannot write file '" + file.string() + "'");
  }
  out << graph_spec_to_json(g.spec());
}

std::uint64_t graph_hash(const KGraph& g) {
  const std::string text = graph_spec_to_json(g.spec());
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

}  // namespace kgk
