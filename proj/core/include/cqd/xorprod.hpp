#pragma once

#include <vector>

#include "cqd/blowup.hpp"
#include "cqd/graph.hpp"
#include "cqd/rational.hpp"

namespace cqd {

// Map-count vector over edge 2-colorings of K_t: entries[P] = number of maps
// [t] -> V(g) whose loop-sense adjacency pattern is exactly P.  Pair {i,j}
// (i < j) sits at bit j(j-1)/2 + i, the column-major pair order used
// everywhere else.  A pair of equal images counts as adjacent iff the image
// vertex is looped, matching the blow-up clique semantics.
struct PatternVector {
  int t = 0;
  int n = 0;  // order of the source graph (product of orders after compose)
  std::vector<BigInt> entries;  // size 2^{t(t-1)/2}
};

// XOR product: distinct vertex pairs adjacent iff exactly one factor pair is
// loop-sense adjacent; the loop flags XOR.  Vertex (v1, v2) gets index
// v1*|V(g2)| + v2, so g (x) empty_graph(m) literally equals the loop-keeping
// blow-up of g.  |V(g1)|*|V(g2)| <= 1024.
Graph xor_product(const Graph& g1, const Graph& g2);

// exact counts by n^t enumeration (parallel over the first image); t <= 5,
// |V(g)| <= 256 -- runtime grows as n^t
PatternVector pattern_vector(const Graph& g, int t);

// in-place Walsh-Hadamard butterflies; size must be a power of two.  The
// inverse divides by the size and insists on exact divisibility.
void walsh_hadamard(std::vector<BigInt>& v);
void inverse_walsh_hadamard(std::vector<BigInt>& v);

// XOR convolution: the pattern vector of the XOR product of the sources,
// computed as a pointwise product in the transformed basis
PatternVector compose(const PatternVector& a, const PatternVector& b);

// Limit monochromatic density of the blow-up sequence of the XOR product of
// the factors: independent-s side = entry[no edges] of the order-s vector,
// clique-t side = entry[all edges] of the order-t vector, each normalized by
// (product order)^size; returns their sum.
Rational mono_density_of_product(const std::vector<Graph>& factors, int s,
                                 int t);

}  // namespace cqd
