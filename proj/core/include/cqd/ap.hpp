#pragma once

#include <cqd/rational.hpp>
#include <cqd/search.hpp>

#include <cstdint>
#include <string>
#include <vector>

namespace cqd {

// 2-coloring of Z_n, possibly partial: 0, 1, or kStar for "not yet colored"
inline constexpr uint8_t kStar = 2;

struct ZnColoring {
  int n = 0;
  std::vector<uint8_t> colors;
  std::vector<int> stars;  // ascending positions carrying kStar
};

// validates the value range and fills the star index
ZnColoring make_coloring(int n, std::vector<uint8_t> colors);

// Alphabet {0, 1, ⋆}; '*' is accepted for the star and whitespace is ignored.
// When n >= 0 the symbol count must equal it.
ZnColoring parse_coloring(const std::string& text, int n = -1);
std::string format_coloring(const ZnColoring& c);  // stars rendered as '*'

// Fraction of monochromatic k-term progressions over all (start, difference)
// pairs in Z_n x Z_n, difference 0 included, denominator n^2.  The n diagonal
// pairs are always monochromatic, so the result is at least 1/n.  Total
// colorings only.
Rational mono_ap_fraction(const ZnColoring& c, int k);

// Certificate check for a partial coloring whose stars form an arithmetic
// progression of length l dividing n (the star block is what gets replaced by
// a denser recursive coloring when the construction is scaled up):
//   cross_ok      no completion of the stars creates a monochromatic k-AP
//                 touching both a colored and a starred position
//   max_fraction  worst completion's fraction, where nontrivial progressions
//                 lying entirely inside the star set are not counted (their
//                 slots are recolored at scale, only the diagonal persists)
//   violations    number of (start, difference) progressions that turn
//                 monochromatic and cross under at least one completion
struct PartialReport {
  bool cross_ok = false;
  Rational max_fraction;
  int64_t violations = 0;
};
PartialReport verify_partial(const ZnColoring& c, int k);

// scaled-up bound 1/(n_effective + l) from a verified partial coloring with
// max_fraction = 1/n_effective and l stars
Rational lemma_bound(int n_effective, int ell);

// Tabu search over the colors of the n - l positions outside the canonical
// star progression {0, n/l, 2n/l, ...}; cost = penalty * violations +
// max_fraction.  Deterministic per schedule seed.
struct PartialSearchOutcome {
  ZnColoring best;
  Rational best_cost;
  PartialReport report;  // of best
  bool certifies = false;  // cross_ok and max_fraction == 1/n
  SearchResult run;
};
PartialSearchOutcome search_partial(int n, int ell, int k, const Schedule& sched,
                                    const ZnColoring* initial = nullptr,
                                    const Rational& penalty = 1);

}  // namespace cqd
