#pragma once

#include <optional>
#include <vector>

#include "cqd/graph.hpp"
#include "cqd/rational.hpp"

namespace cqd {

// Nonnegative vertex weights summing to 1: the limit part sizes of the
// blow-up sequence C[m] as m -> infinity.
using WeightVector = std::vector<Rational>;

WeightVector uniform_weights(int n);
void validate_weights(const Graph& c, const WeightVector& w);

// Objective  ws * x + lambda * wt * y  where x is the limiting independent-
// s-set density and y the limiting t-clique density of the blow-up of C.
struct BlowupObjective {
  int s = 3;
  int t = 3;
  Rational ws = 1;
  Rational wt = 1;
  Rational lambda = 1;
};

// Weighted homomorphic t-clique density of a graph with loops:
//   sum over maps f:[t] -> V(g) such that distinct image pairs are adjacent
//   and every vertex hit twice or more is looped, of prod_i w_{f(i)}.
// Evaluated per adjacency-closed set S = U (unlooped) + L (looped) as
//   (prod_{v in U} w_v) * t!/(t-|U|)! * Surj_w(t-|U|, L),
// with Surj_w the inclusion-exclusion weighted surjection sum.  t <= 16.
Rational hom_clique_weight(int t, const Graph& g, const WeightVector& w);

// same evaluation in doubles (used only inside weight optimization)
double hom_clique_weight_f(int t, const Graph& g, const std::vector<double>& w);

struct DensityPair {
  Rational x;  // independent-s side: hom_clique_weight(s, looped_complement(C), w)
  Rational y;  // clique-t side:      hom_clique_weight(t, C, w)
};

DensityPair blowup_density_pair(const Graph& c, int s, int t, const WeightVector& w);

Rational blowup_cost(const Graph& c, const BlowupObjective& obj, const WeightVector& w);

// Explicit blow-up: vertex v becomes m vertices; looped v becomes a clique
// (loop flags inherited when keep_loops), unlooped an independent set; parts
// joined completely iff the base vertices are adjacent.
Graph blowup_graph(const Graph& c, int m, bool keep_loops);

// Stirling numbers of the second kind S(t, j), j = 0..t.
std::vector<BigInt> stirling_row(int t);

struct WeightOptimum {
  WeightVector weights;
  Rational value;      // exact cost at the (rounded) weights
  bool converged = true;
};

// Projected coordinate descent over the weight simplex from the uniform
// start plus automorphism-orbit-symmetrized restarts; the best float point is
// rounded to rationals and re-evaluated exactly.  Never returns a value above
// the uniform-weight cost.  |V(C)| <= 64.
WeightOptimum optimize_weights(const Graph& c, const BlowupObjective& obj,
                               double tol = 1e-10, int restarts = 8,
                               uint64_t seed = 1);

}  // namespace cqd
