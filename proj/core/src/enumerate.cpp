#include <algorithm>
#include <unordered_set>

#include "cqd/graph.hpp"

namespace cqd {

namespace {

struct CodeHash {
  size_t operator()(const std::array<uint64_t, 2>& c) const {
    return c[0] * 0x9e3779b97f4a7c15ULL ^ c[1];
  }
};

}  // namespace

// Grows representatives one vertex at a time: every forbidden-free graph on k
// vertices arises from a forbidden-free graph on k-1 vertices by attaching a
// new vertex (deleting a vertex never creates a subgraph copy).
std::vector<Graph> enumerate_graphs(int n, const std::vector<Graph>& forbidden) {
  if (n < 1 || n > kEnumerateCap)
    throw Error("enumerate_graphs: order " + std::to_string(n) + " out of range [1, " +
                std::to_string(kEnumerateCap) + "]");
  for (const Graph& f : forbidden)
    if (f.has_loops()) throw Error("enumerate_graphs: forbidden graphs must be loop-free");

  auto blocked = [&](const Graph& g) {
    for (const Graph& f : forbidden)
      if (contains_subgraph(g, f)) return true;
    return false;
  };

  std::vector<Graph> reps;
  {
    Graph k1(1);
    if (!blocked(k1)) reps.push_back(canonical_form(k1));
  }
  for (int k = 2; k <= n && !reps.empty(); k++) {
    std::unordered_set<std::array<uint64_t, 2>, CodeHash> seen;
    std::vector<Graph> next;
    for (const Graph& base : reps) {
      for (uint32_t mask = 0; mask < (uint32_t(1) << (k - 1)); mask++) {
        Graph g(k);
        for (int u = 0; u < k - 1; u++) {
          for (int v = u + 1; v < k - 1; v++)
            if (base.adjacent(u, v)) g.set_edge(u, v);
          if (mask >> u & 1) g.set_edge(u, k - 1);
        }
        if (blocked(g)) continue;
        Graph c = canonical_form(g);
        if (seen.insert(encode_small(c)).second) next.push_back(std::move(c));
      }
    }
    reps = std::move(next);
  }
  std::sort(reps.begin(), reps.end(), [](const Graph& a, const Graph& b) {
    return encode_small(a) < encode_small(b);
  });
  return reps;
}

}  // namespace cqd
