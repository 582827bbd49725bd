#include "cqd/blowup.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <random>

namespace cqd {

WeightVector uniform_weights(int n) {
  if (n <= 0) throw Error("uniform_weights: need n >= 1");
  return WeightVector(n, Rational(1, n));
}

void validate_weights(const Graph& c, const WeightVector& w) {
  if ((int)w.size() != c.order())
    throw Error("weight vector has " + std::to_string(w.size()) + " entries, graph has " +
                std::to_string(c.order()) + " vertices");
  Rational sum = 0;
  for (const Rational& x : w) {
    if (x < 0) throw Error("weights must be nonnegative");
    sum += x;
  }
  if (sum != 1) throw Error("weights must sum to 1, got " + format_rational(sum));
}

std::vector<BigInt> stirling_row(int t) {
  // S(t, j) by the usual recurrence S(t,j) = j*S(t-1,j) + S(t-1,j-1)
  std::vector<BigInt> row(t + 1, 0);
  row[0] = 1;  // S(0,0) = 1
  for (int i = 1; i <= t; i++) {
    std::vector<BigInt> next(t + 1, 0);
    for (int j = 1; j <= i; j++) next[j] = BigInt(j) * row[j] + row[j - 1];
    row = std::move(next);
  }
  return row;
}

namespace {

constexpr int kHomCliqueTCap = 16;

// one adjacency-closed set, split into unlooped and looped members
struct CliqueTerm {
  std::vector<int> unlooped;
  std::vector<int> looped;
};

void collect_rec(const Graph& g, const Bits& cand, int t, std::vector<int>& cur,
                 std::vector<CliqueTerm>& out) {
  if (!cur.empty()) {
    CliqueTerm term;
    for (int v : cur)
      (g.loop(v) ? term.looped : term.unlooped).push_back(v);
    // sets that cannot be the image of any map contribute nothing
    int k = t - (int)term.unlooped.size();
    if (k >= (int)term.looped.size() && (term.looped.empty() ? k == 0 : true))
      out.push_back(std::move(term));
  }
  if ((int)cur.size() == t) return;
  for (int v = cand.next(0); v >= 0; v = cand.next(v + 1)) {
    Bits next = cand;
    next &= g.neighbors(v);
    next.reset_below(v + 1);
    cur.push_back(v);
    collect_rec(g, next, t, cur, out);
    cur.pop_back();
  }
}

// all adjacency-closed sets of size 1..t that admit at least one valid map
std::vector<CliqueTerm> collect_terms(int t, const Graph& g) {
  Bits all(g.order());
  for (int v = 0; v < g.order(); v++) all.set(v);
  std::vector<int> cur;
  std::vector<CliqueTerm> out;
  collect_rec(g, all, t, cur, out);
  return out;
}

// contribution of one term:
//   (prod_{v in U} w_v) * t!/(t-|U|)! * sum_{R subseteq L} (-1)^{|L|-|R|} (sum_R w)^k
// with k = t-|U|; the subset sum counts weighted surjections onto L.
template <class S, class Weights>
S term_value(const CliqueTerm& term, int t, const std::vector<S>& falling,
             const Weights& w) {
  S piU = S(1);
  for (int v : term.unlooped) piU = piU * S(w[v]);
  int k = t - (int)term.unlooped.size();
  S surj = S(0);
  int L = (int)term.looped.size();
  if (L == 0) {
    surj = S(1);  // k == 0 guaranteed by collect_rec
  } else {
    for (uint32_t mask = 0; mask < (uint32_t(1) << L); mask++) {
      S acc = S(0);
      for (int i = 0; i < L; i++)
        if (mask >> i & 1) acc = acc + S(w[term.looped[i]]);
      S p = S(1);
      for (int i = 0; i < k; i++) p = p * acc;
      int excluded = L - std::popcount(mask);
      if (excluded % 2)
        surj = surj - p;
      else
        surj = surj + p;
    }
  }
  return piU * falling[term.unlooped.size()] * surj;
}

template <class S, class Weights>
S eval_terms(const std::vector<CliqueTerm>& terms, int t, const Weights& w) {
  std::vector<S> falling(t + 1);
  falling[0] = S(1);
  for (int u = 1; u <= t; u++) falling[u] = falling[u - 1] * S(t - u + 1);
  S total = S(0);
  for (const CliqueTerm& term : terms) total = total + term_value<S>(term, t, falling, w);
  return total;
}

}  // namespace

Rational hom_clique_weight(int t, const Graph& g, const WeightVector& w) {
  if (t < 1 || t > kHomCliqueTCap)
    throw Error("hom_clique_weight: t must be in [1, " +
                std::to_string(kHomCliqueTCap) + "]");
  validate_weights(g, w);
  return eval_terms<Rational>(collect_terms(t, g), t, w);
}

double hom_clique_weight_f(int t, const Graph& g, const std::vector<double>& w) {
  assert(t >= 1 && (int)w.size() == g.order());
  return eval_terms<double>(collect_terms(t, g), t, w);
}

DensityPair blowup_density_pair(const Graph& c, int s, int t, const WeightVector& w) {
  DensityPair d;
  d.x = hom_clique_weight(s, looped_complement(c), w);
  d.y = hom_clique_weight(t, c, w);
  return d;
}

Rational blowup_cost(const Graph& c, const BlowupObjective& obj, const WeightVector& w) {
  DensityPair d = blowup_density_pair(c, obj.s, obj.t, w);
  return obj.ws * d.x + obj.lambda * obj.wt * d.y;
}

Graph blowup_graph(const Graph& c, int m, bool keep_loops) {
  if (m < 1) throw Error("blowup_graph: m >= 1 required");
  int n = c.order();
  if ((int64_t)n * m > kMaxVertices)
    throw Error("blowup_graph: blown-up order exceeds cap");
  Graph g(n * m);
  auto part = [m](int v, int i) { return v * m + i; };
  for (int v = 0; v < n; v++) {
    if (c.loop(v)) {
      for (int i = 0; i < m; i++) {
        if (keep_loops) g.set_loop(part(v, i));
        for (int j = i + 1; j < m; j++) g.set_edge(part(v, i), part(v, j));
      }
    }
    for (int u = v + 1; u < n; u++)
      if (c.adjacent(v, u))
        for (int i = 0; i < m; i++)
          for (int j = 0; j < m; j++) g.set_edge(part(v, i), part(u, j));
  }
  return g;
}

WeightOptimum optimize_weights(const Graph& c, const BlowupObjective& obj, double tol,
                               int restarts, uint64_t seed) {
  int n = c.order();
  if (n < 1 || n > 64) throw Error("optimize_weights: |V| must be in [1, 64]");
  Graph lc = looped_complement(c);
  auto terms_x = collect_terms(obj.s, lc);
  auto terms_y = collect_terms(obj.t, c);
  double ws = (double)obj.ws, wt = (double)obj.wt, lambda = (double)obj.lambda;

  auto eval = [&](const std::vector<double>& w) {
    return ws * eval_terms<double>(terms_x, obj.s, w) +
           lambda * wt * eval_terms<double>(terms_y, obj.t, w);
  };

  // move mass between coordinate pairs; the slice is a low-degree polynomial
  // in the moved mass, minimized by grid sampling plus bisection refinement
  auto line_min = [&](std::vector<double>& w, int i, int j, double cur) {
    double lo = -w[j], hi = w[i];
    if (hi - lo < 1e-15) return cur;
    auto at = [&](double d) {
      std::vector<double> v = w;
      v[i] -= d;
      v[j] += d;
      return eval(v);
    };
    double best_d = 0, best = cur;
    const int kGrid = 12;
    for (int k = 0; k <= kGrid; k++) {
      double d = lo + (hi - lo) * k / kGrid;
      double f = at(d);
      if (f < best) {
        best = f;
        best_d = d;
      }
    }
    double step = (hi - lo) / kGrid;
    while (step > 1e-13) {
      for (double d : {best_d - step / 2, best_d + step / 2}) {
        if (d < lo || d > hi) continue;
        double f = at(d);
        if (f < best) {
          best = f;
          best_d = d;
        }
      }
      step /= 2;
    }
    if (best_d != 0) {
      w[i] -= best_d;
      w[j] += best_d;
    }
    return best;
  };

  auto descend = [&](std::vector<double> w, double& out_val) {
    double cur = eval(w);
    for (int sweep = 0; sweep < 100; sweep++) {
      double before = cur;
      for (int i = 0; i < n; i++)
        for (int j = i + 1; j < n; j++) cur = line_min(w, i, j, cur);
      if (before - cur < tol) break;
    }
    out_val = cur;
    return w;
  };

  // starts: uniform, plus restarts with random weights constant on
  // automorphism orbits
  std::vector<std::vector<int>> orbits;
  if (n > kAutomorphismCap) {
    for (int v = 0; v < n; v++) orbits.push_back({v});
  } else {
    std::vector<int> orbit_of(n, -1);
    auto autos = automorphisms(c);
    for (int v = 0; v < n; v++) {
      if (orbit_of[v] >= 0) continue;
      int id = (int)orbits.size();
      orbits.push_back({});
      std::vector<int> stack{v};
      orbit_of[v] = id;
      while (!stack.empty()) {
        int u = stack.back();
        stack.pop_back();
        orbits[id].push_back(u);
        for (const auto& p : autos)
          if (orbit_of[p[u]] < 0) {
            orbit_of[p[u]] = id;
            stack.push_back(p[u]);
          }
      }
    }
  }

  std::mt19937_64 rng(seed);
  std::vector<std::vector<double>> starts;
  starts.push_back(std::vector<double>(n, 1.0 / n));
  for (int r = 0; r < restarts; r++) {
    std::vector<double> w(n);
    double sum = 0;
    for (const auto& orb : orbits) {
      double x = 0.05 + (double)(rng() >> 11) / (double)(1ULL << 53);
      for (int v : orb) w[v] = x;
      sum += x * (double)orb.size();
    }
    for (double& x : w) x /= sum;
    starts.push_back(std::move(w));
  }

  double best_val = 0;
  std::vector<double> best_w = descend(starts[0], best_val);
  for (size_t k = 1; k < starts.size(); k++) {
    double val;
    auto w = descend(starts[k], val);
    if (val < best_val - 1e-14) {
      best_val = val;
      best_w = w;
    }
  }

  // round to rationals with bounded denominator, renormalize exactly
  bool converged = true;
  WeightVector wr(n);
  Rational sum = 0;
  const int64_t kDen = 1000000;
  for (int v = 0; v < n; v++) {
    int64_t num = (int64_t)llround(best_w[v] * (double)kDen);
    if (num < 0) num = 0;
    wr[v] = Rational(num, kDen);
    sum += wr[v];
  }
  if (sum == 0) {
    wr = uniform_weights(n);
  } else {
    for (auto& x : wr) x /= sum;
  }
  Rational exact = blowup_cost(c, obj, wr);

  WeightVector uni = uniform_weights(n);
  Rational at_uniform = blowup_cost(c, obj, uni);
  if (exact > at_uniform) {  // rounding must never lose to the uniform start
    wr = uni;
    exact = at_uniform;
    converged = false;
  }
  return WeightOptimum{std::move(wr), std::move(exact), converged};
}

}  // namespace cqd
