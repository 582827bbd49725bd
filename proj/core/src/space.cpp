#include <algorithm>
#include <string>

#include "cqd/search.hpp"

namespace cqd {

Graph SearchSpace::decode(const Bits& state) const {
  assert(state.size() == bits);
  if (kind == SpaceKind::graph_edges) {
    Graph g(n);
    state.for_each([&](int k) {
      g.set_edge(pair_of_bit[k][0], pair_of_bit[k][1]);
    });
    return g;
  }
  Graph g(n);
  state.for_each([&](int k) {
    for (auto [u, v] : orbit_of_bit[k]) g.set_edge(u, v);
  });
  return g;
}

SearchSpace make_graph_space(int n) {
  if (n < 2 || n > kMaxVertices) throw Error("graph space order out of range");
  SearchSpace s;
  s.kind = SpaceKind::graph_edges;
  s.n = n;
  s.bits = n * (n - 1) / 2;
  for (int col = 1; col < n; col++)
    for (int row = 0; row < col; row++) s.pair_of_bit.push_back({row, col});
  return s;
}

SearchSpace make_cayley_space(FiniteGroup g) {
  SearchSpace s;
  s.kind = SpaceKind::cayley_classes;
  s.n = g.order;
  for (int x = 0; x < g.order; x++) {
    if (x == g.identity) continue;
    int y = g.inv[x];
    if (std::min(x, y) < x) continue;  // class already listed
    s.class_of_bit.push_back({x, y});
    std::vector<std::array<int, 2>> orbit;
    for (int h = 0; h < g.order; h++) {
      int hx = g.mult[h][x];
      int a = std::min(h, hx), b = std::max(h, hx);
      orbit.push_back({a, b});
      if (y != x) {
        int hy = g.mult[h][y];
        a = std::min(h, hy), b = std::max(h, hy);
        orbit.push_back({a, b});
      }
    }
    std::sort(orbit.begin(), orbit.end());
    orbit.erase(std::unique(orbit.begin(), orbit.end()), orbit.end());
    s.orbit_of_bit.push_back(std::move(orbit));
  }
  s.bits = (int)s.class_of_bit.size();
  s.group = std::move(g);
  return s;
}

Graph cayley_graph(const FiniteGroup& g, const Bits& class_bits) {
  SearchSpace s = make_cayley_space(g);
  return s.decode(class_bits);
}

std::string state_to_hex(const Bits& state) {
  static const char* digits = "0123456789abcdef";
  int nibbles = (state.size() + 3) / 4;
  std::string out(nibbles, '0');
  for (int i = 0; i < nibbles; i++) {
    int v = 0;
    for (int j = 0; j < 4; j++) {
      int bit = 4 * i + j;
      if (bit < state.size() && state.test(bit)) v |= 1 << j;
    }
    out[nibbles - 1 - i] = digits[v];
  }
  return out;
}

Bits state_from_hex(const std::string& hex, int bits) {
  if ((int)hex.size() != (bits + 3) / 4)
    throw Error("state hex has wrong length for " + std::to_string(bits) +
                " bits");
  Bits out(bits);
  for (int i = 0; i < (int)hex.size(); i++) {
    char c = hex[hex.size() - 1 - i];
    int v;
    if (c >= '0' && c <= '9')
      v = c - '0';
    else if (c >= 'a' && c <= 'f')
      v = c - 'a' + 10;
    else if (c >= 'A' && c <= 'F')
      v = c - 'A' + 10;
    else
      throw Error(std::string("bad hex digit '") + c + "' in state");
    for (int j = 0; j < 4; j++)
      if (v & (1 << j)) {
        int bit = 4 * i + j;
        if (bit >= bits) throw Error("state hex sets bits beyond the space");
        out.set(bit);
      }
  }
  return out;
}

}  // namespace cqd
