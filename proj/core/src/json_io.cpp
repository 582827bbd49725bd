#include <json.hpp>

#include "cqd/graph.hpp"

// {"n": int, "edges": [[i,j],...], "loops": [i,...]} -- the loop-carrying
// companion to graph6.

namespace cqd {

using nlohmann::json;

Graph graph_from_json_text(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const std::exception& e) {
    throw Error(std::string("graph json parse error: ") + e.what());
  }
  if (!j.is_object() || !j.contains("n") || !j["n"].is_number_integer())
    throw Error("graph json: missing integer field 'n'");
  int n = j["n"].get<int>();
  if (n < 0 || n > kMaxVertices) throw Error("graph json: order out of range");
  Graph g(n);
  auto check_vertex = [&](int v, const char* where) {
    if (v < 0 || v >= n)
      throw Error(std::string("graph json: vertex ") + std::to_string(v) +
                  " out of range in " + where);
  };
  if (j.contains("edges")) {
    if (!j["edges"].is_array()) throw Error("graph json: 'edges' must be an array");
    for (const auto& e : j["edges"]) {
      if (!e.is_array() || e.size() != 2 || !e[0].is_number_integer() ||
          !e[1].is_number_integer())
        throw Error("graph json: each edge must be a pair of integers");
      int u = e[0].get<int>(), v = e[1].get<int>();
      check_vertex(u, "edges");
      check_vertex(v, "edges");
      if (u == v) throw Error("graph json: self-edge; use 'loops' instead");
      g.set_edge(u, v);
    }
  }
  if (j.contains("loops")) {
    if (!j["loops"].is_array()) throw Error("graph json: 'loops' must be an array");
    for (const auto& l : j["loops"]) {
      if (!l.is_number_integer()) throw Error("graph json: loops must be integers");
      int v = l.get<int>();
      check_vertex(v, "loops");
      g.set_loop(v);
    }
  }
  return g;
}

std::string graph_to_json_text(const Graph& g) {
  json j;
  j["n"] = g.order();
  json edges = json::array();
  for (int u = 0; u < g.order(); u++)
    for (int v = u + 1; v < g.order(); v++)
      if (g.adjacent(u, v)) edges.push_back({u, v});
  j["edges"] = std::move(edges);
  json loops = json::array();
  for (int v = 0; v < g.order(); v++)
    if (g.loop(v)) loops.push_back(v);
  j["loops"] = std::move(loops);
  return j.dump();
}

}  // namespace cqd
