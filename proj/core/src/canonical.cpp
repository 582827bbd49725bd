#include <algorithm>
#include <cassert>
#include <map>

#include "cqd/graph.hpp"

// Canonical labeling by iterated equitable refinement plus backtracking over
// the remaining cell choices, taking the lexicographically smallest encoding.
// No automorphism pruning: correctness over speed, which is fine up to the
// n <= 12 cap (tests and flag work stay at n <= 8).

namespace cqd {

namespace {

// Encoding bit order: per position j emit [loop(j), adj(0,j), ..., adj(j-1,j)].
// Fixing a prefix of positions therefore fixes a contiguous bit prefix, which
// makes the partial-encoding pruning below a plain lexicographic compare.
struct Code {
  std::array<uint64_t, 2> w{0, 0};
  int bits = 0;

  void push(bool b) {
    assert(bits < 128);
    if (b) w[bits >> 6] |= uint64_t(1) << (63 - (bits & 63));
    bits++;
  }
  bool operator<(const Code& o) const { return w < o.w; }
  bool operator==(const Code& o) const { return w == o.w; }
};

Code encode_prefix(const Graph& g, const std::vector<int>& pos_to_vertex, int upto) {
  Code c;
  for (int j = 0; j < upto; j++) {
    c.push(g.loop(pos_to_vertex[j]));
    for (int i = 0; i < j; i++)
      c.push(g.adjacent(pos_to_vertex[i], pos_to_vertex[j]));
  }
  return c;
}

using Partition = std::vector<std::vector<int>>;  // ordered list of cells

// Split every cell by (loop flag, counts of neighbors in each cell); repeat
// until stable.  Sub-cells are ordered by their signature so the refinement
// result does not depend on vertex labels.
void refine(const Graph& g, Partition& p) {
  bool changed = true;
  while (changed) {
    changed = false;
    Partition next;
    for (const auto& cell : p) {
      if (cell.size() == 1) {
        next.push_back(cell);
        continue;
      }
      std::map<std::vector<int>, std::vector<int>> split;
      for (int v : cell) {
        std::vector<int> sig;
        sig.push_back(g.loop(v) ? 1 : 0);
        for (const auto& other : p) {
          int c = 0;
          for (int u : other)
            if (g.adjacent(v, u)) c++;
          sig.push_back(c);
        }
        split[sig].push_back(v);
      }
      if (split.size() > 1) changed = true;
      for (auto& [sig, vs] : split) next.push_back(std::move(vs));
    }
    p = std::move(next);
  }
}

struct CanonSearch {
  const Graph& g;
  Code best;
  std::vector<int> best_perm;  // position -> vertex
  bool have_best = false;

  explicit CanonSearch(const Graph& gr) : g(gr) {}

  void descend(Partition p) {
    refine(g, p);
    int fixed = 0;
    std::vector<int> assign;
    for (const auto& cell : p) {
      if (cell.size() != 1) break;
      assign.push_back(cell[0]);
      fixed++;
    }
    if (have_best) {
      Code partial = encode_prefix(g, assign, fixed);
      Code bp = best;  // compare only the shared prefix
      mask_to(bp, partial.bits);
      Code pp = partial;
      if (bp < pp) return;  // strictly worse than best on a decided prefix
    }
    if (fixed == (int)p.size() && fixed == g.order()) {
      Code full = encode_prefix(g, assign, fixed);
      if (!have_best || full < best) {
        best = full;
        best_perm = assign;
        have_best = true;
      }
      return;
    }
    // branch on the first non-singleton cell
    const std::vector<int> cell = p[fixed];
    for (int v : cell) {
      Partition q;
      q.reserve(p.size() + 1);
      for (int i = 0; i < fixed; i++) q.push_back(p[i]);
      q.push_back({v});
      std::vector<int> rest;
      for (int u : cell)
        if (u != v) rest.push_back(u);
      q.push_back(rest);
      for (size_t i = fixed + 1; i < p.size(); i++) q.push_back(p[i]);
      descend(std::move(q));
    }
  }

  static void mask_to(Code& c, int bits) {
    for (int w = 0; w < 2; w++) {
      int lo = w * 64, hi = lo + 64;
      if (bits <= lo)
        c.w[w] = 0;
      else if (bits < hi)
        c.w[w] &= ~uint64_t(0) << (hi - bits);
    }
    c.bits = bits;
  }
};

Graph canonical_with_partition(const Graph& g, Partition initial) {
  CanonSearch s(g);
  s.descend(std::move(initial));
  assert(s.have_best);
  // best_perm maps position -> vertex; apply_permutation wants vertex -> image
  Permutation vert_to_pos(g.order());
  for (int j = 0; j < g.order(); j++) vert_to_pos[s.best_perm[j]] = j;
  return apply_permutation(g, vert_to_pos);
}

}  // namespace

Graph canonical_form(const Graph& g) {
  if (g.order() > kCanonicalCap)
    throw Error("canonical_form: order " + std::to_string(g.order()) +
                " exceeds cap " + std::to_string(kCanonicalCap));
  if (g.order() == 0) return g;
  // initial cells grouped by (loop, degree), ordered by that invariant
  std::map<std::pair<int, int>, std::vector<int>> by_inv;
  for (int v = 0; v < g.order(); v++)
    by_inv[{g.loop(v) ? 1 : 0, g.degree(v)}].push_back(v);
  Partition p;
  for (auto& [k, vs] : by_inv) p.push_back(std::move(vs));
  return canonical_with_partition(g, std::move(p));
}

Graph canonical_form_fixed_prefix(const Graph& g, int fixed) {
  if (g.order() > kCanonicalCap)
    throw Error("canonical_form_fixed_prefix: order " + std::to_string(g.order()) +
                " exceeds cap " + std::to_string(kCanonicalCap));
  assert(fixed >= 0 && fixed <= g.order());
  if (g.order() == 0) return g;
  Partition p;
  for (int v = 0; v < fixed; v++) p.push_back({v});
  std::vector<int> rest;
  for (int v = fixed; v < g.order(); v++) rest.push_back(v);
  if (!rest.empty()) p.push_back(rest);
  Graph c = canonical_with_partition(g, std::move(p));
  // pinned vertices must not have moved
  for (int v = 0; v < fixed; v++) {
    assert(c.loop(v) == g.loop(v));
    for (int u = 0; u < fixed; u++) assert(c.adjacent(u, v) == g.adjacent(u, v));
  }
  return c;
}

std::array<uint64_t, 2> encode_small(const Graph& g) {
  if (g.order() > kCanonicalCap)
    throw Error("encode_small: order exceeds cap");
  std::vector<int> identity(g.order());
  for (int i = 0; i < g.order(); i++) identity[i] = i;
  return encode_prefix(g, identity, g.order()).w;
}

}  // namespace cqd
