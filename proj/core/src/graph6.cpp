#include <cstdint>

#include "cqd/graph.hpp"

// graph6: printable encoding of loop-free graphs (Brendan McKay).  The order
// is encoded in 1, 4 or 8 bytes; the upper triangle follows column by column
// (x01, x02, x12, x03, ...), packed big-endian into 6-bit groups, each +63.

namespace cqd {

namespace {

constexpr int kBias = 63;

void check_byte(int c, size_t pos, const std::string& s) {
  if (c < 63 || c > 126)
    throw Error("graph6 parse error: byte " + std::to_string(pos) + " of '" + s +
                "' is out of range");
}

}  // namespace

Graph parse_graph6(const std::string& s) {
  if (s.empty()) throw Error("graph6 parse error: empty string");
  size_t pos = 0;
  auto next = [&]() -> int {
    if (pos >= s.size())
      throw Error("graph6 parse error: '" + s + "' truncated at byte " +
                  std::to_string(pos));
    int c = (unsigned char)s[pos];
    check_byte(c, pos, s);
    pos++;
    return c - kBias;
  };

  int64_t n;
  int c0 = next();
  if (c0 < 63) {
    n = c0;
  } else {
    int c1 = next();
    if (c1 < 63) {
      n = (int64_t)c1 << 12 | next() << 6 | next();
    } else {
      n = 0;
      for (int i = 0; i < 6; i++) n = n << 6 | next();
    }
  }
  if (n > kMaxVertices)
    throw Error("graph6 parse error: order " + std::to_string(n) + " exceeds cap " +
                std::to_string(kMaxVertices));

  Graph g((int)n);
  int64_t bits = n * (n - 1) / 2;
  size_t expect = pos + (size_t)((bits + 5) / 6);
  if (s.size() != expect)
    throw Error("graph6 parse error: '" + s + "' has length " +
                std::to_string(s.size()) + ", expected " + std::to_string(expect));

  int group = 0, have = 0;
  int64_t k = 0;
  for (int col = 1; col < n; col++) {
    for (int row = 0; row < col; row++, k++) {
      if (have == 0) {
        group = next();
        have = 6;
      }
      have--;
      if ((group >> have) & 1) g.set_edge(row, col);
    }
  }
  // padding bits must be zero
  if (have > 0 && (group & ((1 << have) - 1)) != 0)
    throw Error("graph6 parse error: nonzero padding in '" + s + "'");
  return g;
}

std::string to_graph6(const Graph& g) {
  if (g.has_loops()) throw Error("graph6 cannot represent loops");
  int64_t n = g.order();
  std::string out;
  if (n <= 62) {
    out += char(n + kBias);
  } else if (n <= 258047) {
    out += char(126);
    out += char((n >> 12 & 63) + kBias);
    out += char((n >> 6 & 63) + kBias);
    out += char((n & 63) + kBias);
  } else {
    out += char(126);
    out += char(126);
    for (int i = 5; i >= 0; i--) out += char((n >> (6 * i) & 63) + kBias);
  }
  int group = 0, have = 0;
  for (int col = 1; col < n; col++) {
    for (int row = 0; row < col; row++) {
      group = group << 1 | (g.adjacent(row, col) ? 1 : 0);
      if (++have == 6) {
        out += char(group + kBias);
        group = have = 0;
      }
    }
  }
  if (have > 0) out += char((group << (6 - have)) + kBias);
  return out;
}

}  // namespace cqd
