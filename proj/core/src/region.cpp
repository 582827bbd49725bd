#include <cqd/region.hpp>

#include <cassert>
#include <cmath>
#include <cstdio>
#include <fstream>

namespace cqd {

double upper_curve(int s, int t, double x) {
  if (s < 2 || t < 2) throw Error("upper curve needs s, t >= 2");
  if (!(x >= 0.0 && x <= 1.0)) throw Error("upper curve argument outside [0, 1]");
  if (x == 0.0) return 1.0;  // both branches are exactly 1
  if (x == 1.0) return 0.0;  // and exactly 0

  double xr = std::pow(x, 1.0 / t);
  double clique_side = std::pow(1 - xr, s) + s * xr * std::pow(1 - xr, s - 1);

  double lo = 0, hi = 1;
  while (hi - lo > 1e-12) {
    double z = 0.5 * (lo + hi);
    double v = std::pow(z, t) + t * std::pow(z, t - 1) * (1 - z);
    (v < x ? lo : hi) = z;
  }
  double z = 0.5 * (lo + hi);
  return std::max(clique_side, std::pow(1 - z, s));
}

RegionPoint construction_point(const Graph& c, int s, int t, const WeightVector& w,
                               const std::string& source) {
  DensityPair d = blowup_density_pair(c, s, t, w);
  assert(d.x >= 0 && d.x <= 1 && d.y >= 0 && d.y <= 1);
  return {d.x, d.y, source};
}

RegionPoint goodman_gadget_point(const Rational& b) {
  if (b < 0 || b > Rational(1, 2)) throw Error("gadget weight must lie in [0, 1/2]");
  Graph g(4);
  g.set_loop(0, true);
  g.set_loop(1, true);
  g.set_edge(2, 3, true);
  g.set_edge(0, 2, true);
  g.set_edge(1, 3, true);
  Rational a = Rational(1, 2) - b;
  DensityPair d = blowup_density_pair(g, 3, 3, {a, a, b, b});
  return {d.x, d.y, "goodman-gadget"};
}

namespace {

// floor root, true iff n is a perfect k-th power
bool exact_kth_root(const BigInt& n, unsigned k, BigInt& root) {
  assert(n > 0 && k >= 1);
  int exactp = mpz_root(root.backend().data(), n.backend().data(), k);
  return exactp != 0;
}

}  // namespace

ErdosBound erdos_propagate(int s, int t0, const Rational& g, int t) {
  if (s < 2) throw Error("propagation needs s >= 2");
  if (t < t0) throw Error("target clique size below starting one");
  if (g <= 0 || g > 1) throw Error("bound must lie in (0, 1]");
  double gd = g.convert_to<double>();
  if (t == t0) return {true, g, gd};

  unsigned k = (unsigned)(s - 1);
  int steps = t - t0;
  // g^{1/(1-s)} = (q/p)^{1/k} for g = p/q in lowest terms; rational exactly
  // when both ends are perfect k-th powers
  BigInt p = numerator(g), q = denominator(g), rp, rq;
  if (exact_kth_root(q, k, rq) && exact_kth_root(p, k, rp)) {
    BigInt num = rq + rp * steps;  // root + steps, over denominator rp
    Rational value(big_pow(rp, k), big_pow(num, k));
    return {true, value, value.convert_to<double>()};
  }
  double root = std::pow(1.0 / gd, 1.0 / k);
  double approx = std::pow(root + steps, -(double)k);
  return {false, Rational(0), approx};
}

void export_region_csv(const std::string& path, int s, int t,
                       const std::vector<RegionPoint>& constructions, int grid,
                       const std::optional<Rational>& lower_bound) {
  if (grid < 2) throw Error("grid needs at least 2 samples");
  std::ofstream out(path);
  if (!out) throw Error("cannot open " + path);
  out << "x,y,source\n";
  char row[80];
  for (int i = 0; i < grid; i++) {
    double x = double(i) / (grid - 1);
    double y = upper_curve(t, s, x);  // swapped: x axis is the independent side
    std::snprintf(row, sizeof row, "%.12g,%.12g,upper-curve\n", x, y);
    out << row;
  }
  for (const RegionPoint& p : constructions)
    out << format_rational(p.x) << ',' << format_rational(p.y) << ',' << p.source << '\n';
  if (lower_bound) {
    for (int i = 0; i < grid; i++) {
      Rational x(i, grid - 1);
      out << format_rational(x) << ',' << format_rational(*lower_bound - x) << ",lower-line\n";
    }
  }
  if (!out.good()) throw Error("write failed: " + path);
}

}  // namespace cqd
