#include <doctest.h>

#include <random>

#include "cqd/blowup.hpp"
#include "cqd/graph.hpp"
#include "fixtures.hpp"

using namespace cqd;

namespace {

// independent oracle: enumerate all |V|^t maps and test validity directly
// (distinct image pairs adjacent, vertices hit twice or more looped)
Rational hom_weight_by_maps(int t, const Graph& g, const WeightVector& w) {
  int n = g.order();
  Rational total = 0;
  std::vector<int> f(t);
  auto rec = [&](auto&& self, int pos) -> void {
    if (pos == t) {
      std::vector<int> hits(n, 0);
      for (int i = 0; i < t; i++) hits[f[i]]++;
      for (int v = 0; v < n; v++)
        if (hits[v] >= 2 && !g.loop(v)) return;
      for (int i = 0; i < t; i++)
        for (int j = i + 1; j < t; j++)
          if (f[i] != f[j] && !g.adjacent(f[i], f[j])) return;
      Rational p = 1;
      for (int i = 0; i < t; i++) p *= w[f[i]];
      total += p;
      return;
    }
    for (int v = 0; v < n; v++) {
      f[pos] = v;
      self(self, pos + 1);
    }
  };
  rec(rec, 0);
  return total;
}

Graph random_looped_graph(int n, uint64_t seed) {
  std::mt19937_64 rng(seed);
  Graph g(n);
  for (int u = 0; u < n; u++) {
    if (rng() & 1) g.set_loop(u);
    for (int v = u + 1; v < n; v++)
      if (rng() & 1) g.set_edge(u, v);
  }
  return g;
}

WeightVector random_weights(int n, uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<int64_t> parts(n);
  int64_t sum = 0;
  for (auto& p : parts) {
    p = 1 + (int64_t)(rng() % 7);
    sum += p;
  }
  WeightVector w(n);
  for (int i = 0; i < n; i++) w[i] = Rational(parts[i], sum);
  return w;
}

// the Goodman construction: looped non-edge joined to an unlooped edge by a
// perfect matching, weights (a, a, b, b) with a = 1/2 - b
Graph goodman_gadget() {
  Graph g(4);
  g.set_loop(0);
  g.set_loop(1);
  g.set_edge(2, 3);
  g.set_edge(0, 2);
  g.set_edge(1, 3);
  return g;
}

}  // namespace

TEST_CASE("hom_clique_weight on two looped isolated vertices") {
  Graph g(2);
  g.set_loop(0);
  g.set_loop(1);
  CHECK(hom_clique_weight(3, g, uniform_weights(2)) == Rational(1, 4));
}

TEST_CASE("hom_clique_weight matches brute-force map enumeration") {
  for (uint64_t seed = 0; seed < 30; seed++) {
    int n = 2 + (int)(seed % 4);
    Graph g = random_looped_graph(n, 900 + seed);
    WeightVector w = random_weights(n, 7000 + seed);
    for (int t = 1; t <= 4; t++)
      CHECK(hom_clique_weight(t, g, w) == hom_weight_by_maps(t, g, w));
  }
}

TEST_CASE("weight validation") {
  Graph g(2);
  CHECK_THROWS_AS(hom_clique_weight(2, g, {Rational(1, 2)}), Error);
  CHECK_THROWS_AS(hom_clique_weight(2, g, {Rational(1, 2), Rational(1, 3)}), Error);
  CHECK_THROWS_AS(hom_clique_weight(2, g, {Rational(3, 2), Rational(-1, 2)}), Error);
  CHECK_THROWS_AS(hom_clique_weight(0, g, uniform_weights(2)), Error);
  CHECK_THROWS_AS(hom_clique_weight(17, g, uniform_weights(2)), Error);
}

TEST_CASE("blow-up density pair of K2 recovers the triangle bound") {
  DensityPair d = blowup_density_pair(complete_graph(2), 3, 3, uniform_weights(2));
  CHECK(d.x == Rational(1, 4));
  CHECK(d.y == 0);
}

TEST_CASE("blow-up density pair of the Schlafli graph") {
  Graph s = parse_graph6(fixtures::kSchlafli);
  DensityPair d = blowup_density_pair(s, 3, 4, uniform_weights(27));
  CHECK(d.x == Rational(41, 729));
  CHECK(d.y == Rational(320, 6561));
  BlowupObjective obj{3, 4, 1, 1, 1};
  CHECK(blowup_cost(s, obj, uniform_weights(27)) == Rational(689, 6561));
}

TEST_CASE("blow-up cost of the Schlafli complement at (5,3)") {
  Graph sc = complement(parse_graph6(fixtures::kSchlafli));
  BlowupObjective obj{5, 3, 1, 1, 1};
  CHECK(blowup_cost(sc, obj, uniform_weights(27)) == Rational(24011, 531441));
}

TEST_CASE("blow-up densities of the 13-vertex Ramsey graph") {
  Graph r = parse_graph6(fixtures::kRamsey35);
  DensityPair d45 = blowup_density_pair(r, 4, 5, uniform_weights(13));
  CHECK(d45.x == Rational(29, 2197));
  CHECK(d45.y == 0);
  DensityPair d55 = blowup_density_pair(r, 5, 5, uniform_weights(13));
  CHECK(d55.x == Rational(61, 28561));
  CHECK(d55.y == 0);
}

TEST_CASE("looped blow-up multiplies homomorphic clique counts exactly") {
  for (uint64_t seed = 0; seed < 10; seed++) {
    int n = 2 + (int)(seed % 3);
    Graph c = random_looped_graph(n, 40 + seed);
    for (int m = 2; m <= 3; m++) {
      Graph b = blowup_graph(c, m, /*keep_loops=*/true);
      for (int t = 2; t <= 3; t++) {
        Rational lhs =
            hom_weight_by_maps(t, b, uniform_weights(n * m)) * big_pow(n * m, t);
        Rational rhs = hom_clique_weight(t, c, uniform_weights(n)) *
                       big_pow(m, t) * big_pow(n, t);
        CHECK(lhs == rhs);
      }
    }
  }
}

TEST_CASE("blow-up of a loop-free graph is plain and simple") {
  Graph b = blowup_graph(complete_graph(2), 3, true);
  CHECK(b.order() == 6);
  CHECK(!b.has_loops());
  CHECK(b.edge_count() == 9);  // complete bipartite K33
  Graph lb = blowup_graph(parse_graph6("A_"), 2, false);
  CHECK(count_cliques(lb, 2) == 4);
}

TEST_CASE("stirling rows") {
  auto s5 = stirling_row(5);
  CHECK(s5[0] == 0);
  CHECK(s5[1] == 1);
  CHECK(s5[2] == 15);
  CHECK(s5[3] == 25);
  CHECK(s5[4] == 10);
  CHECK(s5[5] == 1);
  auto s0 = stirling_row(0);
  CHECK(s0[0] == 1);
}

TEST_CASE("independent-set side equals the Stirling aggregation of complement cliques") {
  for (uint64_t seed = 0; seed < 15; seed++) {
    int n = 2 + (int)(seed % 4);
    std::mt19937_64 rng(seed);
    Graph c(n);
    for (int u = 0; u < n; u++)
      for (int v = u + 1; v < n; v++)
        if (rng() & 1) c.set_edge(u, v);
    for (int t = 1; t <= 5; t++) {
      Rational lhs =
          hom_clique_weight(t, looped_complement(c), uniform_weights(n)) * big_pow(n, t);
      auto row = stirling_row(t);
      auto kj = count_cliques_upto(complement(c), t);
      BigInt rhs = 0;
      for (int j = 1; j <= t && j <= n; j++)
        rhs += factorial(j) * row[j] * BigInt(kj[j]);
      CHECK(lhs == Rational(rhs));
    }
  }
}

TEST_CASE("optimize_weights returns uniform on the Schlafli graph") {
  Graph s = parse_graph6(fixtures::kSchlafli);
  BlowupObjective obj{3, 4, 1, 1, 1};
  WeightOptimum r = optimize_weights(s, obj, 1e-9, /*restarts=*/1, /*seed=*/5);
  CHECK(r.value == Rational(689, 6561));
}

TEST_CASE("optimize_weights on a single looped vertex") {
  Graph g(1);
  g.set_loop(0);
  BlowupObjective obj{3, 3, 1, 1, Rational(7, 2)};
  WeightOptimum r = optimize_weights(g, obj);
  CHECK(r.weights == WeightVector{Rational(1)});
  CHECK(r.value == Rational(7, 2));
}

TEST_CASE("optimize_weights finds the Goodman optimum line") {
  BlowupObjective obj{3, 3, 1, 1, 1};
  WeightOptimum r = optimize_weights(goodman_gadget(), obj, 1e-10, 4, 11);
  // 1/4 is attained at uniform and is a global minimum over all weights
  CHECK(r.value == Rational(1, 4));
}

TEST_CASE("optimize_weights rejects oversized graphs") {
  CHECK_THROWS_AS(optimize_weights(empty_graph(65), BlowupObjective{}), Error);
}
