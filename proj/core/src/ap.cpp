#include <cqd/ap.hpp>

#include <algorithm>
#include <cassert>
#include <cctype>
#include <set>

namespace cqd {

ZnColoring make_coloring(int n, std::vector<uint8_t> colors) {
  if (n <= 0) throw Error("coloring needs n >= 1");
  if ((int)colors.size() != n)
    throw Error("coloring has " + std::to_string(colors.size()) + " symbols, expected " +
                std::to_string(n));
  ZnColoring c;
  c.n = n;
  c.colors = std::move(colors);
  for (int i = 0; i < n; i++) {
    if (c.colors[i] > kStar) throw Error("color values are 0, 1 or star");
    if (c.colors[i] == kStar) c.stars.push_back(i);
  }
  return c;
}

ZnColoring parse_coloring(const std::string& text, int n) {
  std::vector<uint8_t> colors;
  for (size_t i = 0; i < text.size();) {
    unsigned char ch = text[i];
    if (ch == '0' || ch == '1') {
      colors.push_back(ch - '0');
      i++;
    } else if (ch == '*') {
      colors.push_back(kStar);
      i++;
    } else if (ch == 0xE2 && i + 2 < text.size() && (unsigned char)text[i + 1] == 0x8B &&
               (unsigned char)text[i + 2] == 0x86) {
      colors.push_back(kStar);  // UTF-8 star operator
      i += 3;
    } else if (std::isspace(ch)) {
      i++;
    } else {
      throw Error("unexpected character '" + std::string(1, text[i]) + "' in coloring");
    }
  }
  const int count = (int)colors.size();
  if (n >= 0 && count != n)
    throw Error("coloring has " + std::to_string(colors.size()) + " symbols, expected " +
                std::to_string(n));
  return make_coloring(count, std::move(colors));
}

std::string format_coloring(const ZnColoring& c) {
  std::string s;
  s.reserve(c.n);
  for (uint8_t v : c.colors) s += v == kStar ? '*' : char('0' + v);
  return s;
}

namespace {

// per-progression summary: does (a,d) stay monochromatic, and through which
// star positions
struct ApClass {
  int64_t fixed_mono = 0;     // pairs monochromatic independent of completions
  int64_t star_diag = 0;      // part of fixed_mono: diagonal pairs on stars
  // cross progressions that are monochromatic once their stars all take the
  // base color: (star subset mask, base color)
  std::vector<std::pair<uint32_t, uint8_t>> cross;
};

ApClass classify(const ZnColoring& c, int k) {
  if (k < 3) throw Error("progressions need k >= 3");
  const int n = c.n;
  std::vector<int> star_index(n, -1);
  for (size_t i = 0; i < c.stars.size(); i++) star_index[c.stars[i]] = (int)i;

  ApClass out;
  for (int a = 0; a < n; a++)
    for (int d = 0; d < n; d++) {
      uint32_t mask = 0;
      int base = -1;
      bool consistent = true, colored = false;
      int pos = a;
      for (int i = 0; i < k; i++, pos = pos + d < n ? pos + d : pos + d - n) {
        if (star_index[pos] >= 0) {
          mask |= uint32_t(1) << star_index[pos];
        } else {
          colored = true;
          if (base < 0)
            base = c.colors[pos];
          else if (base != c.colors[pos]) {
            consistent = false;
            break;
          }
        }
      }
      if (!consistent) continue;
      if (!mask) {
        out.fixed_mono++;  // fully colored and all one color
      } else if (!colored) {
        // star-internal: only the diagonal survives scaling
        if (d == 0) {
          out.fixed_mono++;
          out.star_diag++;
        }
      } else {
        out.cross.push_back({mask, (uint8_t)base});
      }
    }
  return out;
}

void require_star_shape(const ZnColoring& c) {
  const int ell = (int)c.stars.size();
  if (ell == 0) return;
  if (ell > 20) throw Error("completion enumeration capped at 20 stars");
  if (c.n % ell != 0) throw Error("number of stars must divide n");
  std::set<int> want(c.stars.begin(), c.stars.end());
  for (int d = 0; d < c.n && ell > 1; d++)
    for (int start : c.stars) {
      std::set<int> got;
      int pos = start;
      for (int i = 0; i < ell; i++, pos = (pos + d) % c.n) got.insert(pos);
      if (got == want) return;
    }
  if (ell > 1) throw Error("stars must form an arithmetic progression");
}

}  // namespace

Rational mono_ap_fraction(const ZnColoring& c, int k) {
  if (!c.stars.empty()) throw Error("coloring has uncolored positions");
  ApClass cls = classify(c, k);
  assert(cls.cross.empty() && cls.star_diag == 0);
  return Rational(cls.fixed_mono, (int64_t)c.n * c.n);
}

PartialReport verify_partial(const ZnColoring& c, int k) {
  require_star_shape(c);
  ApClass cls = classify(c, k);
  const int ell = (int)c.stars.size();

  PartialReport rep;
  rep.violations = (int64_t)cls.cross.size();
  rep.cross_ok = cls.cross.empty();
  int64_t worst = 0;
  for (uint32_t phi = 0; phi < (uint32_t(1) << ell); phi++) {
    int64_t hits = 0;
    for (const auto& [mask, base] : cls.cross)
      if ((phi & mask) == (base ? mask : 0)) hits++;
    worst = std::max(worst, hits);
  }
  rep.max_fraction = Rational(cls.fixed_mono + worst, (int64_t)c.n * c.n);
  return rep;
}

Rational lemma_bound(int n_effective, int ell) {
  assert(n_effective >= 1 && ell >= 0);
  return Rational(1, n_effective + ell);
}

PartialSearchOutcome search_partial(int n, int ell, int k, const Schedule& sched,
                                    const ZnColoring* initial, const Rational& penalty) {
  if (ell < 1 || ell > n) throw Error("star count must lie in [1, n]");
  if (n % ell != 0) throw Error("number of stars must divide n");

  std::vector<uint8_t> base(n, 0);
  std::vector<int> free_pos;
  for (int i = 0; i < n; i += n / ell) base[i] = kStar;
  for (int i = 0; i < n; i++)
    if (base[i] != kStar) free_pos.push_back(i);
  const int nbits = (int)free_pos.size();

  auto decode = [&](const Bits& state) {
    std::vector<uint8_t> colors = base;
    for (int j = 0; j < nbits; j++) colors[free_pos[j]] = state.test(j) ? 1 : 0;
    return make_coloring(n, std::move(colors));
  };
  auto cost = [&](const Bits& state) -> Rational {
    PartialReport rep = verify_partial(decode(state), k);
    return Rational(penalty * rep.violations + rep.max_fraction);
  };

  Bits init(nbits);
  if (initial) {
    if (initial->n != n) throw Error("initial coloring has the wrong modulus");
    for (int j = 0; j < nbits; j++) {
      uint8_t v = initial->colors[free_pos[j]];
      if (v == kStar) throw Error("initial coloring stars off the canonical progression");
      if (v) init.set(j);
    }
    for (int s : initial->stars)
      if (base[s] != kStar) throw Error("initial coloring stars off the canonical progression");
  }

  PartialSearchOutcome out;
  out.run = tabu_search_callback(nbits, cost, sched, initial ? &init : nullptr);
  out.best = decode(out.run.best_state);
  out.best_cost = out.run.best_cost;
  out.report = verify_partial(out.best, k);
  out.certifies = out.report.cross_ok && out.report.max_fraction == Rational(1, n);
  return out;
}

}  // namespace cqd
