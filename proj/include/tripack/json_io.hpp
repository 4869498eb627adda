#pragma once

#include "tripack/digraph.hpp"

#include <iosfwd>
#include <string>

#include <json.hpp>

namespace tripack {

// Wire format: {"n": <class size>, "mode": "oriented"|"general",
// "edges": [[u,v], ...]} with class i occupying vertex block [i*n, (i+1)*n).
nlohmann::json graph_to_json(const Digraph& g, const Tripartition& parts);
std::pair<Digraph, Tripartition> graph_from_json(const nlohmann::json& j);

nlohmann::json tournament_to_json(const TripartiteTournament& t);
TripartiteTournament tournament_from_json(const nlohmann::json& j);

std::pair<Digraph, Tripartition> read_graph(std::istream& is);
TripartiteTournament read_tournament(std::istream& is);

std::string hash_hex(uint64_t h);
uint64_t hash_from_hex(const std::string& s);

}  // namespace tripack
