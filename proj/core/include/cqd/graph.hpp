#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cqd/bits.hpp"
#include "cqd/rational.hpp"

namespace cqd {

inline constexpr int kMaxVertices = 1024;
inline constexpr int kCanonicalCap = 12;
inline constexpr int kEnumerateCap = 8;
inline constexpr int kAutomorphismCap = 30;

// Graph with an optional loop flag per vertex.  Adjacency is always
// irreflexive; loops are carried separately because they mean "blow this
// vertex up into cliques" rather than self-adjacency.  Clique counting and
// graph6 round-tripping look at adjacency only.
class Graph {
 public:
  Graph() : n_(0) {}
  explicit Graph(int n);

  int order() const { return n_; }

  bool adjacent(int u, int v) const { return u != v && adj_[u].test(v); }
  void set_edge(int u, int v, bool present = true);
  bool loop(int v) const { return loops_.test(v); }
  void set_loop(int v, bool present = true) {
    if (present)
      loops_.set(v);
    else
      loops_.reset(v);
  }
  bool has_loops() const { return loops_.any(); }

  const Bits& neighbors(int v) const { return adj_[v]; }
  const Bits& loops() const { return loops_; }
  int degree(int v) const { return adj_[v].count(); }
  int64_t edge_count() const;

  bool operator==(const Graph& o) const {
    return n_ == o.n_ && loops_ == o.loops_ && adj_ == o.adj_;
  }

 private:
  int n_;
  std::vector<Bits> adj_;
  Bits loops_;
};

using Permutation = std::vector<int>;

Graph complete_graph(int n);
Graph empty_graph(int n);
Graph cycle_graph(int n);
Graph perfect_matching(int n);  // n even: edges (0,1),(2,3),...
Graph induced_subgraph(const Graph& g, const std::vector<int>& vertices);
Graph apply_permutation(const Graph& g, const Permutation& p);  // image v -> p[v]

// adjacency flipped on distinct pairs, loop flags kept
Graph complement(const Graph& g);
// adjacency flipped on distinct pairs AND all loop flags flipped; models the
// complement of a blow-up (independent sets <-> cliques)
Graph looped_complement(const Graph& g);

// ---- graph6 (McKay's format; loop-free graphs only) ----

Graph parse_graph6(const std::string& s);
std::string to_graph6(const Graph& g);

// ---- JSON graph format for loop-carrying graphs ----
// {"n": int, "edges": [[i,j],...], "loops": [i,...]}

Graph graph_from_json_text(const std::string& text);
std::string graph_to_json_text(const Graph& g);

// ---- clique counting (adjacency only; loops never contribute) ----

// number of t-vertex subsets that are pairwise adjacent; t >= 0
int64_t count_cliques(const Graph& g, int t);
// counts for all sizes 0..tmax at once (index j = number of j-cliques)
std::vector<int64_t> count_cliques_upto(const Graph& g, int tmax);
// same, restricted to subsets of `mask`
std::vector<int64_t> count_cliques_upto_within(const Graph& g, const Bits& mask,
                                               int tmax);

// ---- canonical forms & enumeration ----

// Canonically relabeled copy: isomorphic graphs (loops included) map to equal
// graphs.  Exact for any input; capped at n <= 12 where the refinement +
// backtracking scheme is known to stay fast enough.
Graph canonical_form(const Graph& g);

// Canonical form where vertices 0..fixed-1 are pinned pointwise (used for
// flag isomorphism).  The pinned prefix stays in place.
Graph canonical_form_fixed_prefix(const Graph& g, int fixed);

// 128-bit encoding of a graph with n <= 12 (loops + upper triangle); the
// canonical encoding of g is encode(canonical_form(g)).
std::array<uint64_t, 2> encode_small(const Graph& g);

// does `host` contain `pattern` as a not-necessarily-induced subgraph?
// (injective map preserving edges; loops ignored -- both must be loop-free)
bool contains_subgraph(const Graph& host, const Graph& pattern);

// All isomorphism classes of loop-free graphs of the given order, each class
// represented by its canonical form, sorted by canonical encoding.  Graphs
// containing any member of `forbidden` as a (non-induced) subgraph are
// dropped.  n <= 8.
std::vector<Graph> enumerate_graphs(int n, const std::vector<Graph>& forbidden = {});

// ---- homomorphisms / symmetry ----

// Strong homomorphisms T -> C between loop-free graphs: maps with
// psi(u)~psi(v) iff u~v for all distinct u,v.  Distinct nonadjacent vertices
// of T may share an image.  Stops after `limit` maps if limit > 0.
std::vector<std::vector<int>> strong_homomorphisms(const Graph& T, const Graph& C,
                                                   int64_t limit = 0);

// Full automorphism group (loops respected), n <= 30.
std::vector<Permutation> automorphisms(const Graph& g);

// a small generating set extracted from the full group (plumbing for orbit
// closures; the set returned generates the whole group)
std::vector<Permutation> generating_set(const std::vector<Permutation>& group);

bool is_isomorphic(const Graph& a, const Graph& b);

}  // namespace cqd
