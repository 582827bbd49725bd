#pragma once

#include <string>
#include <vector>

#include "cqd/blowup.hpp"
#include "cqd/flags.hpp"
#include "cqd/graph.hpp"
#include "cqd/linalg.hpp"

namespace cqd {

// A lower-bound certificate: graphs of order m, an objective
// lambda(H) = ws * d_{empty s}(H) + lambda * wt * d_{K_t}(H), and per-type PSD
// matrices indexed by flag lists.  Type orders satisfy v == m (mod 2) and
// v <= m - 2; flag lists live at order l = (m + v) / 2.
struct FlagCertificate {
  int m = 0;
  std::vector<Graph> forbidden;
  BlowupObjective objective;
  std::vector<FlagType> types;
  std::vector<std::vector<Flag>> flags;  // flags[i]: list for types[i]
  std::vector<Matrix> q;                 // q[i]: symmetric, dim = flags[i].size()
};

// structural validation only (shapes, parities, flag embeddings, symmetry);
// throws on the first violation
void validate_certificate(const FlagCertificate& cert);

// lambda(h) under the certificate's objective
Rational objective_value(const BlowupObjective& obj, const Graph& h);

struct VerifyReport {
  Rational bound;
  std::vector<Graph> graphs;        // the enumerated order-m graphs
  std::vector<Rational> lambda;     // lambda(H)
  std::vector<Rational> correction; // sum_i <Q_i, D_i(H)>
  std::vector<Rational> slack;      // lambda - correction - bound, >= 0
};

// Exact verification: checks every Q_i is PSD, enumerates the forbidden-free
// graphs of order m, and returns min_H (lambda(H) - sum_i <Q_i, D_i(H)>)
// together with the per-graph slack table.  Does not touch floating point.
// m <= 6 unless allow_large is set, which admits m = 7 with a stderr warning.
VerifyReport verify_certificate(const FlagCertificate& cert, bool allow_large = false);

// graphs attaining the bound exactly
std::vector<Graph> sharp_graphs(const FlagCertificate& cert, const Rational& bound,
                                bool allow_large = false);

// Checks Q_i x = 0 for x_F = d^psi_F(c, w), the flag densities of the
// w-weighted blow-up limit of c rooted at psi.  psi must turn c into a flag
// of type i and w must be positive on its image.
bool zero_eigenvector_check(const FlagCertificate& cert, int i, const Graph& c,
                            const WeightVector& w, const std::vector<int>& psi);

FlagCertificate certificate_from_json_text(const std::string& text);
std::string certificate_to_json_text(const FlagCertificate& cert);
FlagCertificate load_certificate(const std::string& path);
void save_certificate(const FlagCertificate& cert, const std::string& path);

}  // namespace cqd
