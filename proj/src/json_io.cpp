#include "tripack/json_io.hpp"

#include <istream>
#include <sstream>

namespace tripack {

using nlohmann::json;

json graph_to_json(const Digraph& g, const Tripartition& parts) {
  json j;
  j["n"] = parts.n;
  j["mode"] = g.mode() == GraphMode::Oriented ? "oriented" : "general";
  json edges = json::array();
  for (auto [u, v] : g.edges()) edges.push_back(json::array({u, v}));
  j["edges"] = std::move(edges);
  return j;
}

std::pair<Digraph, Tripartition> graph_from_json(const json& j) {
  if (!j.contains("n") || !j["n"].is_number_integer())
    throw InvariantError("format", "missing integer field 'n'");
  int n = j["n"].get<int>();
  if (n < 1) throw InvariantError("class_size", "n must be >= 1");
  std::string mode_s = j.value("mode", "oriented");
  GraphMode mode;
  if (mode_s == "oriented")
    mode = GraphMode::Oriented;
  else if (mode_s == "general")
    mode = GraphMode::General;
  else
    throw InvariantError("format", "mode must be 'oriented' or 'general'");
  if (!j.contains("edges") || !j["edges"].is_array())
    throw InvariantError("format", "missing array field 'edges'");
  std::vector<Edge> edges;
  edges.reserve(j["edges"].size());
  for (const auto& e : j["edges"]) {
    if (!e.is_array() || e.size() != 2 || !e[0].is_number_integer() ||
        !e[1].is_number_integer())
      throw InvariantError("format", "edge must be a pair of integers");
    edges.emplace_back(e[0].get<int>(), e[1].get<int>());
  }
  // Digraph constructor enforces range/loop/duplicate/orientation invariants
  Digraph g(3 * n, mode, std::move(edges));
  return {std::move(g), Tripartition{n}};
}

json tournament_to_json(const TripartiteTournament& t) {
  return graph_to_json(t.graph(), t.parts());
}

TripartiteTournament tournament_from_json(const json& j) {
  auto [g, parts] = graph_from_json(j);
  return TripartiteTournament(std::move(g), parts);
}

std::pair<Digraph, Tripartition> read_graph(std::istream& is) {
  json j;
  try {
    is >> j;
  } catch (const json::parse_error& e) {
    throw InvariantError("format", e.what());
  }
  return graph_from_json(j);
}

TripartiteTournament read_tournament(std::istream& is) {
  json j;
  try {
    is >> j;
  } catch (const json::parse_error& e) {
    throw InvariantError("format", e.what());
  }
  return tournament_from_json(j);
}

std::string hash_hex(uint64_t h) {
  char buf[19];
  snprintf(buf, sizeof buf, "0x%016llx", static_cast<unsigned long long>(h));
  return buf;
}

uint64_t hash_from_hex(const std::string& s) {
  return std::stoull(s, nullptr, 16);
}

}  // namespace tripack
