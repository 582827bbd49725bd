#include <cstdint>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "cqd/graph.hpp"
#include "cqd/search.hpp"

namespace cqd {

namespace {

void validate(FiniteGroup& g) {
  const int n = g.order;
  if (n <= 0) throw Error("group table is empty");
  if ((int)g.mult.size() != n) throw Error("group table is not square");
  for (const auto& row : g.mult) {
    if ((int)row.size() != n) throw Error("group table is not square");
    for (int x : row)
      if (x < 0 || x >= n)
        throw Error("group axiom violated: closure (entry " +
                    std::to_string(x) + " outside 0.." + std::to_string(n - 1) +
                    ")");
  }

  g.identity = -1;
  for (int e = 0; e < n; e++) {
    bool ok = true;
    for (int x = 0; x < n && ok; x++)
      ok = g.mult[e][x] == x && g.mult[x][e] == x;
    if (ok) {
      g.identity = e;
      break;
    }
  }
  if (g.identity < 0) throw Error("group axiom violated: identity (no two-sided identity element)");

  g.inv.assign(n, -1);
  for (int a = 0; a < n; a++) {
    for (int b = 0; b < n; b++)
      if (g.mult[a][b] == g.identity && g.mult[b][a] == g.identity) {
        g.inv[a] = b;
        break;
      }
    if (g.inv[a] < 0)
      throw Error("group axiom violated: inverse (element " +
                  std::to_string(a) + " has none)");
  }

  // associativity: exhaustive for small orders, sampled otherwise
  auto check = [&](int a, int b, int c) {
    if (g.mult[g.mult[a][b]][c] != g.mult[a][g.mult[b][c]])
      throw Error("group axiom violated: associativity at (" +
                  std::to_string(a) + "," + std::to_string(b) + "," +
                  std::to_string(c) + ")");
  };
  if ((int64_t)n * n * n <= 1 << 20) {
    for (int a = 0; a < n; a++)
      for (int b = 0; b < n; b++)
        for (int c = 0; c < n; c++) check(a, b, c);
  } else {
    std::mt19937_64 rng(0x5eedf00d);
    for (int i = 0; i < 20000; i++)
      check(rng() % n, rng() % n, rng() % n);
  }

  if (g.labels.empty())
    for (int i = 0; i < n; i++) g.labels.push_back(std::to_string(i));
  if ((int)g.labels.size() != n) throw Error("group label count mismatch");
}

}  // namespace

FiniteGroup group_from_table(std::vector<std::vector<int>> table,
                             std::vector<std::string> labels) {
  FiniteGroup g;
  g.order = (int)table.size();
  g.mult = std::move(table);
  g.labels = std::move(labels);
  validate(g);
  return g;
}

FiniteGroup direct_product_group(const std::vector<int>& orders) {
  if (orders.empty()) throw Error("direct product needs at least one factor");
  int64_t n = 1;
  for (int m : orders) {
    if (m < 1) throw Error("cyclic factor order must be >= 1");
    n *= m;
    if (n > kMaxVertices)
      throw Error("group order exceeds cap of " + std::to_string(kMaxVertices));
  }
  const int k = (int)orders.size();
  auto digits = [&](int x) {
    std::vector<int> d(k);
    for (int i = k - 1; i >= 0; i--) {
      d[i] = x % orders[i];
      x /= orders[i];
    }
    return d;
  };
  auto index = [&](const std::vector<int>& d) {
    int x = 0;
    for (int i = 0; i < k; i++) x = x * orders[i] + d[i];
    return x;
  };

  FiniteGroup g;
  g.order = (int)n;
  g.mult.assign(g.order, std::vector<int>(g.order));
  for (int a = 0; a < g.order; a++) {
    auto da = digits(a);
    for (int b = 0; b < g.order; b++) {
      auto db = digits(b);
      std::vector<int> dc(k);
      for (int i = 0; i < k; i++) dc[i] = (da[i] + db[i]) % orders[i];
      g.mult[a][b] = index(dc);
    }
  }
  for (int a = 0; a < g.order; a++) {
    auto d = digits(a);
    std::string s = "(";
    for (int i = 0; i < k; i++) s += std::to_string(d[i]) + (i + 1 < k ? "," : ")");
    g.labels.push_back(s);
  }
  validate(g);
  return g;
}

FiniteGroup load_group_table(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open group table file: " + path);
  int n = 0;
  if (!(in >> n) || n < 1) throw Error("group table file must start with the order");
  std::vector<std::vector<int>> table(n, std::vector<int>(n));
  for (int a = 0; a < n; a++)
    for (int b = 0; b < n; b++)
      if (!(in >> table[a][b]))
        throw Error("group table file truncated at row " + std::to_string(a));
  return group_from_table(std::move(table));
}

}  // namespace cqd
