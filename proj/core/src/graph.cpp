#include "cqd/graph.hpp"

#include <algorithm>
#include <cassert>

namespace cqd {

Rational parse_rational(const std::string& s) {
  auto bad = [&] { throw Error("bad rational '" + s + "'"); };
  std::string t;
  for (char c : s)
    if (!isspace((unsigned char)c)) t += c;
  if (t.empty()) bad();
  size_t slash = t.find('/');
  try {
    if (slash == std::string::npos) return Rational(BigInt(t));
    BigInt num(t.substr(0, slash));
    BigInt den(t.substr(slash + 1));
    if (den == 0) bad();
    return Rational(num, den);  // construction from two integers canonicalizes
  } catch (const std::exception&) {
    bad();
  }
  return Rational();  // unreachable
}

std::string format_rational(const Rational& r) {
  if (denominator(r) == 1) return numerator(r).str();
  return numerator(r).str() + "/" + denominator(r).str();
}

Graph::Graph(int n) : n_(n), adj_(n, Bits(n)), loops_(n) {
  if (n < 0 || n > kMaxVertices)
    throw Error("graph order " + std::to_string(n) + " out of range [0, " +
                std::to_string(kMaxVertices) + "]");
}

void Graph::set_edge(int u, int v, bool present) {
  assert(u != v);
  if (present) {
    adj_[u].set(v);
    adj_[v].set(u);
  } else {
    adj_[u].reset(v);
    adj_[v].reset(u);
  }
}

int64_t Graph::edge_count() const {
  int64_t c = 0;
  for (int v = 0; v < n_; v++) c += degree(v);
  return c / 2;
}

Graph complete_graph(int n) {
  Graph g(n);
  for (int u = 0; u < n; u++)
    for (int v = u + 1; v < n; v++) g.set_edge(u, v);
  return g;
}

Graph empty_graph(int n) { return Graph(n); }

Graph cycle_graph(int n) {
  Graph g(n);
  for (int v = 0; v < n; v++) g.set_edge(v, (v + 1) % n);
  return g;
}

Graph perfect_matching(int n) {
  if (n % 2) throw Error("perfect matching needs even order");
  Graph g(n);
  for (int v = 0; v + 1 < n; v += 2) g.set_edge(v, v + 1);
  return g;
}

Graph induced_subgraph(const Graph& g, const std::vector<int>& vertices) {
  Graph h((int)vertices.size());
  for (size_t i = 0; i < vertices.size(); i++) {
    if (g.loop(vertices[i])) h.set_loop((int)i);
    for (size_t j = i + 1; j < vertices.size(); j++)
      if (g.adjacent(vertices[i], vertices[j])) h.set_edge((int)i, (int)j);
  }
  return h;
}

Graph apply_permutation(const Graph& g, const Permutation& p) {
  assert((int)p.size() == g.order());
  Graph h(g.order());
  for (int v = 0; v < g.order(); v++) {
    if (g.loop(v)) h.set_loop(p[v]);
    for (int u = v + 1; u < g.order(); u++)
      if (g.adjacent(v, u)) h.set_edge(p[v], p[u]);
  }
  return h;
}

Graph complement(const Graph& g) {
  Graph h(g.order());
  for (int v = 0; v < g.order(); v++) {
    if (g.loop(v)) h.set_loop(v);
    for (int u = v + 1; u < g.order(); u++)
      if (!g.adjacent(v, u)) h.set_edge(v, u);
  }
  return h;
}

Graph looped_complement(const Graph& g) {
  Graph h = complement(g);
  for (int v = 0; v < g.order(); v++) h.set_loop(v, !g.loop(v));
  return h;
}

namespace {

// recursive clique extension: cand = vertices adjacent to everything chosen,
// restricted to indices above the last chosen one
void clique_rec(const std::vector<Bits>& adj, const Bits& cand, int depth,
                int tmax, std::vector<int64_t>& out) {
  out[depth]++;
  if (depth == tmax) return;
  for (int v = cand.next(0); v >= 0; v = cand.next(v + 1)) {
    Bits next = cand;
    next &= adj[v];
    next.reset_below(v + 1);  // count each subset once
    clique_rec(adj, next, depth + 1, tmax, out);
  }
}

}  // namespace

std::vector<int64_t> count_cliques_upto_within(const Graph& g, const Bits& mask,
                                               int tmax) {
  std::vector<int64_t> out(tmax + 1, 0);
  if (tmax < 0) return out;
  std::vector<Bits> adj(g.order());
  for (int v = 0; v < g.order(); v++) adj[v] = g.neighbors(v);
  if (tmax == 0) {
    out[0] = 1;
    return out;
  }
  clique_rec(adj, mask, 0, tmax, out);
  return out;
}

std::vector<int64_t> count_cliques_upto(const Graph& g, int tmax) {
  Bits all(g.order());
  for (int v = 0; v < g.order(); v++) all.set(v);
  return count_cliques_upto_within(g, all, tmax);
}

int64_t count_cliques(const Graph& g, int t) {
  if (t < 0) throw Error("clique size must be >= 0");
  if (t > g.order()) return 0;
  return count_cliques_upto(g, t)[t];
}

}  // namespace cqd
