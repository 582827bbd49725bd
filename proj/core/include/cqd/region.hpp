#pragma once

#include <cqd/blowup.hpp>
#include <cqd/graph.hpp>
#include <cqd/rational.hpp>

#include <optional>
#include <string>
#include <vector>

namespace cqd {

// One realizable (independent-set-s density, clique-t density) pair, tagged
// with the construction that produced it.  Exact points keep full rationals;
// curve samples only ever appear as floats in the CSV export.
struct RegionPoint {
  Rational x;  // independent-s density
  Rational y;  // clique-t density
  std::string source;
};

// Upper boundary of the feasible region, as a function of the clique-side
// density x:
//
//   max{ (1-x^{1/t})^s + s x^{1/t} (1-x^{1/t})^{s-1},  (1-z)^s }
//
// where z is the unique root of z^t + t z^{t-1} (1-z) = x in [0,1].  The two
// branches come from a clique plus isolated vertices and from its complement.
// z is found by bisection to 1e-12; the polynomial is increasing on [0,1].
double upper_curve(int s, int t, double x);

// Exact density pair of a weighted blow-up, tagged with `source`.
RegionPoint construction_point(const Graph& c, int s, int t, const WeightVector& w,
                               const std::string& source);

// Four-vertex gadget: a fully looped non-edge joined to a plain edge by a
// perfect matching, weighted (a, a, b, b) with a = 1/2 - b.  Sweeping b over
// [0, 1/2] traces the segment x + y = 1/4 of the s = t = 3 region boundary.
RegionPoint goodman_gadget_point(const Rational& b);

// One propagation of an upper bound g at clique size t0 up to clique size t:
//
//   g_t <= (t - t0 + g^{1/(1-s)})^{1-s}
//
// Exact when 1/g has a rational (s-1)-th root (then `value` holds the bound
// and `approx` its double image); otherwise only `approx` is meaningful.
struct ErdosBound {
  bool exact;
  Rational value;
  double approx;
};
ErdosBound erdos_propagate(int s, int t0, const Rational& g, int t);

// Writes rows `x,y,source`: the upper curve sampled at `grid` uniform points
// (floats, 12 significant digits), then the given exact points (rationals as
// "p/q"), then, when a verified lower bound c is supplied, the line y = c - x
// on the same grid (exact, not clamped at zero).  The construction points use
// the independent-set density as x, so the curve is sampled with the roles of
// s and t exchanged to share that axis.
void export_region_csv(const std::string& path, int s, int t,
                       const std::vector<RegionPoint>& constructions, int grid,
                       const std::optional<Rational>& lower_bound = std::nullopt);

}  // namespace cqd
