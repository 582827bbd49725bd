#include <vector>

#include "cqd/parallel.hpp"
#include "cqd/xorprod.hpp"

namespace cqd {

namespace {

// adjacency including the diagonal: adj*(u,v) for u != v, loop flag on it
bool adj_star(const Graph& g, int u, int v) {
  return u == v ? g.loop(u) : g.adjacent(u, v);
}

int pair_bit(int i, int j) {  // i < j
  return j * (j - 1) / 2 + i;
}

}  // namespace

Graph xor_product(const Graph& g1, const Graph& g2) {
  int64_t n = (int64_t)g1.order() * g2.order();
  if (g1.order() == 0 || g2.order() == 0) throw Error("empty product factor");
  if (n > kMaxVertices)
    throw Error("product order " + std::to_string(n) + " exceeds cap of " +
                std::to_string(kMaxVertices));
  const int n2 = g2.order();
  Graph p((int)n);
  for (int a1 = 0; a1 < g1.order(); a1++)
    for (int a2 = 0; a2 < n2; a2++) {
      int a = a1 * n2 + a2;
      if (g1.loop(a1) != g2.loop(a2)) p.set_loop(a);
      for (int b1 = a1; b1 < g1.order(); b1++)
        for (int b2 = 0; b2 < n2; b2++) {
          int b = b1 * n2 + b2;
          if (b <= a) continue;
          if (adj_star(g1, a1, b1) != adj_star(g2, a2, b2)) p.set_edge(a, b);
        }
    }
  return p;
}

PatternVector pattern_vector(const Graph& g, int t) {
  if (t < 1 || t > 5) throw Error("pattern order must be in 1..5");
  if (g.order() < 1 || g.order() > 256)
    throw Error("pattern vectors need 1..256 vertices");
  const int n = g.order();
  const int dim = t * (t - 1) / 2;
  const size_t size = size_t(1) << dim;

  // one integer bucket row per first image, merged below; counts stay well
  // inside 64 bits (n^t <= 256^5)
  std::vector<std::vector<int64_t>> rows(n, std::vector<int64_t>(size, 0));
  parallel_for(n, [&](int64_t v0) {
    auto& row = rows[v0];
    int img[5];
    img[0] = (int)v0;
    // depth-first over remaining positions, accumulating pattern bits
    auto extend = [&](int depth, unsigned pat, auto&& self) -> void {
      if (depth == t) {
        row[pat]++;
        return;
      }
      for (int v = 0; v < n; v++) {
        unsigned p2 = pat;
        for (int j = 0; j < depth; j++)
          if (adj_star(g, img[j], v)) p2 |= 1u << pair_bit(j, depth);
        img[depth] = v;
        self(depth + 1, p2, self);
      }
    };
    extend(1, 0, extend);
  });

  PatternVector out;
  out.t = t;
  out.n = n;
  out.entries.assign(size, 0);
  for (size_t p = 0; p < size; p++) {
    int64_t sum = 0;
    for (int v = 0; v < n; v++) sum += rows[v][p];
    out.entries[p] = sum;
  }
  return out;
}

void walsh_hadamard(std::vector<BigInt>& v) {
  size_t n = v.size();
  if (n == 0 || (n & (n - 1)))
    throw Error("transform length must be a power of two");
  for (size_t len = 1; len < n; len <<= 1)
    for (size_t i = 0; i < n; i += len << 1)
      for (size_t j = i; j < i + len; j++) {
        BigInt a = v[j], b = v[j + len];
        v[j] = a + b;
        v[j + len] = a - b;
      }
}

void inverse_walsh_hadamard(std::vector<BigInt>& v) {
  walsh_hadamard(v);
  BigInt n = (int64_t)v.size();
  for (auto& x : v) {
    if (x % n != 0)
      throw Error("internal error: inverse transform is not integral");
    x /= n;
  }
}

PatternVector compose(const PatternVector& a, const PatternVector& b) {
  if (a.t != b.t) throw Error("pattern vectors have different orders");
  if (a.entries.size() != b.entries.size())
    throw Error("pattern vectors have different lengths");
  std::vector<BigInt> fa = a.entries, fb = b.entries;
  walsh_hadamard(fa);
  walsh_hadamard(fb);
  for (size_t i = 0; i < fa.size(); i++) fa[i] *= fb[i];
  inverse_walsh_hadamard(fa);
  PatternVector out;
  out.t = a.t;
  out.n = a.n * b.n;
  out.entries = std::move(fa);
  return out;
}

Rational mono_density_of_product(const std::vector<Graph>& factors, int s,
                                 int t) {
  if (factors.empty()) throw Error("need at least one product factor");
  if (s < 1 || s > 5 || t < 1 || t > 5)
    throw Error("pattern orders must be in 1..5");

  auto chain = [&](int order) {
    PatternVector acc = pattern_vector(factors[0], order);
    for (size_t i = 1; i < factors.size(); i++)
      acc = compose(acc, pattern_vector(factors[i], order));
    return acc;
  };
  PatternVector vs = chain(s);
  PatternVector vt = chain(t);
  Rational x(vs.entries.front(), big_pow(BigInt(vs.n), s));
  Rational y(vt.entries.back(), big_pow(BigInt(vt.n), t));
  return x + y;
}

}  // namespace cqd
