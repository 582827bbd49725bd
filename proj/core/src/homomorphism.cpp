#include <algorithm>
#include <cassert>
#include <map>
#include <numeric>

#include "cqd/graph.hpp"

namespace cqd {

namespace {

// equitable coloring (iterated neighbor-count refinement); color ids are
// label-independent so they can be compared across isomorphic graphs
std::vector<int> equitable_colors(const Graph& g) {
  int n = g.order();
  std::vector<int> color(n);
  for (int v = 0; v < n; v++) color[v] = (g.loop(v) ? 1 : 0);
  while (true) {
    // signature: (old color, sorted neighbor colors)
    std::map<std::pair<int, std::vector<int>>, std::vector<int>> groups;
    for (int v = 0; v < n; v++) {
      std::vector<int> nb;
      g.neighbors(v).for_each([&](int u) { nb.push_back(color[u]); });
      std::sort(nb.begin(), nb.end());
      groups[{color[v], std::move(nb)}].push_back(v);
    }
    std::vector<int> next(n);
    int c = 0;
    for (auto& [sig, vs] : groups) {
      for (int v : vs) next[v] = c;
      c++;
    }
    if (next == color) break;
    color = std::move(next);
  }
  return color;
}

void strong_hom_rec(const Graph& T, const Graph& C, int depth, std::vector<int>& img,
                    std::vector<Bits>& cand_stack, int64_t limit,
                    std::vector<std::vector<int>>& out) {
  int n = T.order();
  if (depth == n) {
    out.push_back(img);
    return;
  }
  const Bits& cand = cand_stack[depth];
  for (int c = cand.next(0); c >= 0; c = cand.next(c + 1)) {
    if (limit > 0 && (int64_t)out.size() >= limit) return;
    img[depth] = c;
    if (depth + 1 < n) {
      // adjacency constraints from every already-mapped vertex; the and_not
      // branch keeps img[v] itself, so nonadjacent vertices may collapse
      Bits& next = cand_stack[depth + 1];
      next = cand_stack[0];  // all of V(C)
      for (int v = 0; v <= depth; v++) {
        if (T.adjacent(v, depth + 1))
          next &= C.neighbors(img[v]);
        else
          next.and_not(C.neighbors(img[v]));
      }
    }
    strong_hom_rec(T, C, depth + 1, img, cand_stack, limit, out);
  }
}

}  // namespace

std::vector<std::vector<int>> strong_homomorphisms(const Graph& T, const Graph& C,
                                                   int64_t limit) {
  if (T.has_loops() || C.has_loops())
    throw Error("strong_homomorphisms: loop-free graphs only");
  std::vector<std::vector<int>> out;
  if (T.order() == 0) {
    out.push_back({});
    return out;
  }
  std::vector<int> img(T.order());
  std::vector<Bits> cand_stack(T.order() + 1, Bits(C.order()));
  for (int v = 0; v < C.order(); v++) cand_stack[0].set(v);
  strong_hom_rec(T, C, 0, img, cand_stack, limit, out);
  return out;
}

namespace {

// generic exhaustive backtracking for bijections a -> b preserving adjacency
// and loops; bails out after `limit` maps when limit > 0
void iso_rec(const Graph& a, const Graph& b, const std::vector<int>& col_a,
             const std::vector<int>& col_b, int depth, std::vector<int>& img,
             Bits& used, int64_t limit, std::vector<Permutation>& out) {
  int n = a.order();
  if (depth == n) {
    out.push_back(img);
    return;
  }
  for (int c = 0; c < n; c++) {
    if (limit > 0 && (int64_t)out.size() >= limit) return;
    if (used.test(c) || col_a[depth] != col_b[c]) continue;
    bool ok = b.loop(c) == a.loop(depth);
    for (int v = 0; ok && v < depth; v++)
      if (a.adjacent(v, depth) != b.adjacent(img[v], c)) ok = false;
    if (!ok) continue;
    img[depth] = c;
    used.set(c);
    iso_rec(a, b, col_a, col_b, depth + 1, img, used, limit, out);
    used.reset(c);
  }
}

std::vector<Permutation> isomorphisms(const Graph& a, const Graph& b, int64_t limit) {
  std::vector<Permutation> out;
  if (a.order() != b.order()) return out;
  std::vector<int> ca = equitable_colors(a), cb = equitable_colors(b);
  {
    std::vector<int> sa = ca, sb = cb;
    std::sort(sa.begin(), sa.end());
    std::sort(sb.begin(), sb.end());
    if (sa != sb) return out;
  }
  std::vector<int> img(a.order());
  Bits used(a.order());
  iso_rec(a, b, ca, cb, 0, img, used, limit, out);
  return out;
}

}  // namespace

std::vector<Permutation> automorphisms(const Graph& g) {
  if (g.order() > kAutomorphismCap)
    throw Error("automorphisms: order " + std::to_string(g.order()) +
                " exceeds cap " + std::to_string(kAutomorphismCap));
  return isomorphisms(g, g, 0);
}

bool is_isomorphic(const Graph& a, const Graph& b) {
  if (a.order() != b.order() || a.edge_count() != b.edge_count() ||
      a.loops().count() != b.loops().count())
    return false;
  return !isomorphisms(a, b, 1).empty();
}

std::vector<Permutation> generating_set(const std::vector<Permutation>& group) {
  if (group.empty()) return {};
  size_t n = group[0].size();
  Permutation id(n);
  std::iota(id.begin(), id.end(), 0);

  auto closure_size = [&](const std::vector<Permutation>& gens) -> size_t {
    std::map<Permutation, bool> seen;
    std::vector<Permutation> frontier{id};
    seen[id] = true;
    while (!frontier.empty()) {
      std::vector<Permutation> next;
      for (const auto& p : frontier)
        for (const auto& q : gens) {
          Permutation r(n);
          for (size_t i = 0; i < n; i++) r[i] = q[p[i]];
          if (!seen.count(r)) {
            seen[r] = true;
            next.push_back(r);
          }
        }
      frontier = std::move(next);
    }
    return seen.size();
  };

  std::vector<Permutation> gens;
  size_t have = 1;
  for (const auto& p : group) {
    if (have == group.size()) break;
    if (p == id) continue;
    gens.push_back(p);
    size_t s = closure_size(gens);
    if (s == have)
      gens.pop_back();  // redundant
    else
      have = s;
  }
  return gens;
}

bool contains_subgraph(const Graph& host, const Graph& pattern) {
  if (pattern.order() > host.order()) return false;
  int k = pattern.order();
  // order pattern vertices by degree (descending) for earlier pruning
  std::vector<int> order(k);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](int a, int b) { return pattern.degree(a) > pattern.degree(b); });

  std::vector<int> img(k);
  Bits used(host.order());
  auto rec = [&](auto&& self, int depth) -> bool {
    if (depth == k) return true;
    int pv = order[depth];
    Bits cand(host.order());
    for (int v = 0; v < host.order(); v++) cand.set(v);
    cand.and_not(used);
    for (int d = 0; d < depth; d++)
      if (pattern.adjacent(order[d], pv)) cand &= host.neighbors(img[d]);
    for (int c = cand.next(0); c >= 0; c = cand.next(c + 1)) {
      if (host.degree(c) < pattern.degree(pv)) continue;
      img[depth] = c;
      used.set(c);
      if (self(self, depth + 1)) return true;
      used.reset(c);
    }
    return false;
  };
  return rec(rec, 0);
}

}  // namespace cqd
