#pragma once

#include <string>
#include <vector>

#include "cqd/certificate.hpp"
#include "cqd/graph.hpp"

namespace cqd {

// Checks whether every strong homomorphism T -> C lies in a single orbit
// under Aut(C) o psi o Aut(T).  Strong homomorphisms can only merge
// nonadjacent twins, so collapsing and injective maps are never equivalent.
// count is the number of strong homomorphisms, orbit_size the orbit of the
// first one (by orbit-stabilizer; the orbit is deduplicated).  T up to 7
// vertices, C up to 30.
struct EmbeddingReport {
  int64_t count = 0;
  int64_t orbit_size = 0;
  bool unique_up_to_automorphism = false;
  std::vector<int> base;  // representative map, empty when count == 0
};

EmbeddingReport uniquely_embeds(const Graph& t, const Graph& c);

// Equivalence classes of V(C) under v ~ u iff N_C(v) cap X == N_C(u) cap X.
// Classes are sorted internally and by smallest member.
std::vector<std::vector<int>> neighborhood_classes(const Graph& c,
                                                   const std::vector<int>& x);

// X defines unique neighborhoods when every class is a singleton.  offending
// holds the first non-singleton class otherwise.
struct NeighborhoodReport {
  bool unique = false;
  std::vector<int> offending;
};

NeighborhoodReport defines_unique_neighborhoods(const std::vector<int>& x,
                                                const Graph& c);

// X reconstructs C from any l-vertex local view when all three hold:
// (i) |X| <= l - 2, (ii) C[X] uniquely embeds into C, (iii) X defines
// unique neighborhoods.
struct SimpleReconstructorReport {
  bool size_ok = false;
  bool embeds = false;
  bool neighborhoods = false;
  bool ok = false;
};

SimpleReconstructorReport check_reconstructor_simple(const std::vector<int>& x,
                                                     const Graph& c, int ell);

// Witness search result for one unordered pair v1 <= v2 outside X: the first
// X'' subseteq X with |X''| <= l - 2 (ordered by size, then by sorted member
// list) satisfying the pair condition.  For v1 == v2 that is: C[X'' + v1]
// uniquely embeds and [v1] is a singleton class.  For v1 != v2: distinct
// classes, the bipartite graph between them complete or empty, and
// C[X'' + vi] uniquely embeds for at least one i.
struct PairCheck {
  int v1 = -1;
  int v2 = -1;
  bool ok = false;
  std::vector<int> witness;
};

// Stronger reconstruction test driven by a pair X' subseteq X.  branch is 1
// when |X| == |X'| <= l - 1 (embedding requirement: C[X] uniquely embeds), 2
// when |X| == l and |X'| <= l - 2 (requirement: C[X' + x] uniquely embeds for
// every x in X), 0 when the sizes fit neither alternative.
struct StrongReconstructorReport {
  int branch = 0;
  bool embedding_ok = false;
  bool neighborhoods_ok = false;  // X' defines unique neighborhoods
  std::vector<PairCheck> pairs;   // one entry per pair outside X, sorted
  bool ok = false;
};

StrongReconstructorReport check_reconstructor_strong(const std::vector<int>& x,
                                                     const std::vector<int>& xprime,
                                                     const Graph& c, int ell);

// Structural conditions under which a verified certificate pins the weighting
// w of C as the unique optimum.  xs[i] is a labeled vertex set, js[i] the
// index of the certificate matrix tied to it.  Checked parts:
//   weights_positive     w > 0 everywhere
//   admissible           C contains no forbidden subgraph
//   attains_bound        blowup cost of (C, w) equals the certificate bound
//   unique_embedding     C[xs[0]] uniquely embeds into C
//   chain                xs[i] inside xs[0] plus earlier singleton classes
//   coverage             every vertex is a singleton class of some xs[i]
//   type_match[i]        types[js[i]] is a labeled copy of C[xs[i]]
//   corank_one[i]        q[js[i]] has corank exactly 1
// The strict-gap hypothesis (dropping C[xs[0]] raises the optimum) is not
// decided here; gap_reference records where that separate verification
// lives and is carried into the report verbatim.
struct SymmetryReport {
  bool weights_positive = false;
  bool admissible = false;
  bool attains_bound = false;
  bool unique_embedding = false;
  bool chain = false;
  bool coverage = false;
  std::vector<char> type_match;
  std::vector<char> corank_one;
  std::string gap_reference;
  bool ok = false;
};

SymmetryReport check_symmetry_conditions(const FlagCertificate& cert,
                                         const Graph& c, const WeightVector& w,
                                         const std::vector<std::vector<int>>& xs,
                                         const std::vector<int>& js,
                                         const std::string& gap_reference = "",
                                         bool allow_large = false);

// Single-line JSON renderings of the reports above.
std::string report_json(const EmbeddingReport& rep);
std::string report_json(const SimpleReconstructorReport& rep);
std::string report_json(const StrongReconstructorReport& rep);
std::string report_json(const SymmetryReport& rep);

}  // namespace cqd
