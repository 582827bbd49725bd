#include <doctest.h>

#include <cqd/certificate.hpp>

#include <algorithm>
#include <filesystem>
#include <random>

#include "fixtures.hpp"

using namespace cqd;

namespace {

Rational det(const Matrix& a) {
  const int n = static_cast<int>(a.size());
  if (n == 0) return Rational(1);
  Rational acc(0);
  for (int i = 0; i < n; ++i) {
    if (a[i][0] == 0) continue;
    Matrix sub;
    for (int r = 0; r < n; ++r) {
      if (r == i) continue;
      sub.emplace_back(a[r].begin() + 1, a[r].end());
    }
    const Rational term = a[i][0] * det(sub);
    if (i % 2) acc -= term; else acc += term;
  }
  return acc;
}

// Sylvester-style oracle: symmetric A is PSD iff every principal minor is
// nonnegative
bool psd_by_minors(const Matrix& a) {
  const int n = static_cast<int>(a.size());
  for (uint32_t mask = 1; mask < (uint32_t{1} << n); ++mask) {
    std::vector<int> idx;
    for (int i = 0; i < n; ++i)
      if (mask >> i & 1) idx.push_back(i);
    Matrix sub(idx.size(), std::vector<Rational>(idx.size()));
    for (size_t r = 0; r < idx.size(); ++r)
      for (size_t c = 0; c < idx.size(); ++c) sub[r][c] = a[idx[r]][idx[c]];
    if (det(sub) < 0) return false;
  }
  return true;
}

Rational quad(const Matrix& a, const std::vector<Rational>& x) {
  Rational acc(0);
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < a.size(); ++j) acc += x[i] * a[i][j] * x[j];
  return acc;
}

Matrix worked_q() {
  Matrix q = zero_matrix(2);
  q[0][0] = Rational(3, 4);
  q[1][1] = Rational(3, 4);
  q[0][1] = Rational(-3, 4);
  q[1][0] = Rational(-3, 4);
  return q;
}

// m = 3 certificate for the triangle/independent-triple bound
FlagCertificate worked_certificate() {
  FlagCertificate cert;
  cert.m = 3;
  cert.objective = {3, 3, 1, 1, 1};
  cert.types = {point_type()};
  cert.flags = {enumerate_flags(point_type(), 2)};
  cert.q = {worked_q()};
  return cert;
}

FlagCertificate trivial_certificate(int m) {
  FlagCertificate cert;
  cert.m = m;
  cert.objective = {3, 3, 1, 1, 1};
  return cert;
}

Graph random_graph(int n, std::mt19937_64& rng) {
  Graph g(n);
  for (int j = 1; j < n; ++j)
    for (int i = 0; i < j; ++i) g.set_edge(i, j, rng() & 1);
  return g;
}

}  // namespace

TEST_CASE("psd check on pinned matrices") {
  const auto ok = psd_check(worked_q());
  CHECK(ok.psd);
  REQUIRE(ok.pivots.size() == 2);
  CHECK(ok.pivots[0] == Rational(3, 4));
  CHECK(ok.pivots[1] == 0);

  const auto id = psd_check(identity_matrix(3));
  CHECK(id.psd);
  CHECK(id.pivots == std::vector<Rational>{1, 1, 1});
  CHECK(psd_check(zero_matrix(4)).psd);

  Matrix offdiag = zero_matrix(2);
  offdiag[0][1] = 1;
  offdiag[1][0] = 1;
  const auto bad = psd_check(offdiag);
  CHECK(!bad.psd);
  REQUIRE(bad.witness.size() == 2);
  CHECK(bad.witness[0] == 1);
  CHECK(bad.witness[1] == -1);
  CHECK(quad(offdiag, bad.witness) < 0);
  CHECK(det(Matrix{{offdiag[bad.minor_indices[0]][bad.minor_indices[0]],
                    offdiag[bad.minor_indices[0]][bad.minor_indices[1]]},
                   {offdiag[bad.minor_indices[1]][bad.minor_indices[0]],
                    offdiag[bad.minor_indices[1]][bad.minor_indices[1]]}}) < 0);

  Matrix indef = identity_matrix(2);
  indef[1][1] = -1;
  const auto neg = psd_check(indef);
  CHECK(!neg.psd);
  CHECK(quad(indef, neg.witness) < 0);

  // zero row blocking the diagonal scan must not hide a negative entry
  Matrix sneaky = zero_matrix(2);
  sneaky[1][1] = -1;
  const auto hidden = psd_check(sneaky);
  CHECK(!hidden.psd);
  CHECK(quad(sneaky, hidden.witness) < 0);

  Matrix asym = zero_matrix(2);
  asym[0][1] = 1;
  CHECK_THROWS_WITH_AS(psd_check(asym), doctest::Contains("symmetric"), Error);
  CHECK_THROWS_WITH_AS(psd_check(Matrix{{Rational(1), Rational(0)}}),
                       doctest::Contains("square"), Error);
}

TEST_CASE("psd check agrees with the principal-minor oracle") {
  std::mt19937_64 rng(31);
  int rejected = 0;
  for (int trial = 0; trial < 120; ++trial) {
    const int n = 2 + static_cast<int>(rng() % 3);
    Matrix a = zero_matrix(n);
    for (int i = 0; i < n; ++i)
      for (int j = i; j < n; ++j) {
        const int num = static_cast<int>(rng() % 7) - 3;
        const int den = 1 + static_cast<int>(rng() % 3);
        a[i][j] = Rational(num, den);
        a[j][i] = a[i][j];
      }
    const auto res = psd_check(a);
    REQUIRE(res.psd == psd_by_minors(a));
    if (!res.psd) {
      ++rejected;
      REQUIRE(quad(a, res.witness) < 0);
      // the named principal submatrix really has negative determinant
      Matrix sub(res.minor_indices.size(),
                 std::vector<Rational>(res.minor_indices.size()));
      for (size_t r = 0; r < sub.size(); ++r)
        for (size_t c = 0; c < sub.size(); ++c)
          sub[r][c] = a[res.minor_indices[r]][res.minor_indices[c]];
      REQUIRE(det(sub) < 0);
    }
  }
  CHECK(rejected > 20);  // the sample exercises both branches
}

TEST_CASE("gram matrices pass and report their corank") {
  std::mt19937_64 rng(37);
  for (int trial = 0; trial < 40; ++trial) {
    const int n = 2 + static_cast<int>(rng() % 3);
    const int r = static_cast<int>(rng() % (n + 1));
    // B has r honest rows, the remainder zero, so B^T B has rank r generically
    Matrix b = zero_matrix(n);
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < n; ++j) b[i][j] = Rational(static_cast<int>(rng() % 5) - 2);
    Matrix a = zero_matrix(n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k) a[i][j] += b[k][i] * b[k][j];
    const auto res = psd_check(a);
    REQUIRE(res.psd);
    int positive = 0;
    for (const Rational& p : res.pivots)
      if (p > 0) ++positive;
    REQUIRE(positive == rank(a));
    REQUIRE(corank(a) == static_cast<int>(a.size()) - rank(a));
    REQUIRE(rank(a) <= r);
  }
}

TEST_CASE("rank and corank on pinned matrices") {
  CHECK(corank(identity_matrix(3)) == 0);
  CHECK(corank(worked_q()) == 1);
  CHECK(corank(zero_matrix(4)) == 4);
  CHECK(rank(zero_matrix(4)) == 0);
  Matrix ones = zero_matrix(3);
  for (auto& row : ones) std::fill(row.begin(), row.end(), Rational(1));
  CHECK(rank(ones) == 1);
  CHECK(corank(ones) == 2);
}

TEST_CASE("worked certificate verifies to 1/4 with every graph sharp") {
  const FlagCertificate cert = worked_certificate();
  const VerifyReport rep = verify_certificate(cert);
  CHECK(rep.bound == Rational(1, 4));
  REQUIRE(rep.graphs.size() == 4);
  for (size_t j = 0; j < rep.graphs.size(); ++j) {
    CHECK(rep.slack[j] == 0);
    CHECK(rep.lambda[j] - rep.correction[j] == rep.bound);
  }
  CHECK(sharp_graphs(cert, rep.bound).size() == 4);
}

TEST_CASE("verification is invariant under permuting the flag list") {
  // asymmetric diagonal so the permutation actually moves something:
  // Q = [[1, -3/4], [-3/4, 9/16]] is PSD with determinant 0
  FlagCertificate cert = worked_certificate();
  cert.q[0][0][0] = 1;
  cert.q[0][1][1] = Rational(9, 16);
  const VerifyReport rep = verify_certificate(cert);
  CHECK(rep.bound == 0);

  FlagCertificate perm = cert;
  std::swap(perm.flags[0][0], perm.flags[0][1]);
  std::swap(perm.q[0][0][0], perm.q[0][1][1]);
  const VerifyReport rep2 = verify_certificate(perm);
  CHECK(rep2.bound == rep.bound);

  auto names = [](const std::vector<Graph>& gs) {
    std::vector<std::string> out;
    for (const Graph& g : gs) out.push_back(to_graph6(canonical_form(g)));
    std::sort(out.begin(), out.end());
    return out;
  };
  CHECK(names(sharp_graphs(cert, rep.bound)) == names(sharp_graphs(perm, rep2.bound)));
  // the only graph losing nothing is the empty one
  const auto sharp = sharp_graphs(cert, rep.bound);
  REQUIRE(sharp.size() == 1);
  CHECK(sharp[0].edge_count() == 0);
}

TEST_CASE("zero matrices reproduce the small-order minima") {
  // no flag machinery at all: the bound degenerates to min lambda(H)
  const VerifyReport m5 = verify_certificate(trivial_certificate(5));
  CHECK(m5.bound == 0);
  CHECK(m5.graphs.size() == 34);
  const auto sharp5 = sharp_graphs(trivial_certificate(5), m5.bound);
  REQUIRE(sharp5.size() == 1);
  CHECK(is_isomorphic(sharp5[0], cycle_graph(5)));

  const VerifyReport m6 = verify_certificate(trivial_certificate(6));
  CHECK(m6.bound == Rational(1, 10));
  CHECK(m6.graphs.size() == 156);
  Rational direct_min = objective_value(trivial_certificate(6).objective, m6.graphs[0]);
  for (const Graph& h : m6.graphs)
    direct_min = std::min(direct_min,
                          objective_value(trivial_certificate(6).objective, h));
  CHECK(m6.bound == direct_min);
  for (const Rational& s : m6.slack) CHECK(s >= 0);

  // a zero matrix over an explicit flag list changes nothing
  FlagCertificate padded = trivial_certificate(5);
  padded.types = {point_type()};
  padded.flags = {enumerate_flags(point_type(), 3)};
  padded.q = {zero_matrix(6)};
  CHECK(verify_certificate(padded).bound == 0);
}

TEST_CASE("order-seven certificates sit behind the opt-in flag") {
  FlagCertificate cert = trivial_certificate(7);
  CHECK_THROWS_WITH_AS(verify_certificate(cert), doctest::Contains("large"), Error);
  const VerifyReport rep = verify_certificate(cert, true);
  CHECK(rep.bound == Rational(4, 35));
  CHECK(rep.graphs.size() == 1044);
  CHECK_THROWS_WITH_AS(verify_certificate(trivial_certificate(8), true),
                       doctest::Contains("7"), Error);
}

TEST_CASE("forbidden graphs restrict the enumeration") {
  FlagCertificate cert = trivial_certificate(4);
  cert.forbidden = {complete_graph(3)};
  const VerifyReport rep = verify_certificate(cert);
  for (const Graph& h : rep.graphs) CHECK(!contains_subgraph(h, complete_graph(3)));
  CHECK(rep.graphs.size() == 7);  // triangle-free graphs on four vertices
  CHECK(rep.bound == 0);
}

TEST_CASE("objective values") {
  const BlowupObjective obj{3, 3, Rational(2, 3), Rational(5, 7), 1};
  CHECK(objective_value(obj, complete_graph(3)) == Rational(5, 7));
  CHECK(objective_value(obj, empty_graph(3)) == Rational(2, 3));
  Graph p3(3);
  p3.set_edge(0, 1, true);
  p3.set_edge(1, 2, true);
  CHECK(objective_value(obj, p3) == 0);
  // the extra multiplier scales the clique side
  const BlowupObjective scaled{3, 3, 1, 1, 2};
  CHECK(objective_value(scaled, complete_graph(3)) == 2);
  CHECK(objective_value(scaled, complete_graph(5)) == 2);
}

TEST_CASE("objective averages over one-larger graphs") {
  const BlowupObjective obj{3, 3, 1, 1, 1};
  const auto hosts = enumerate_graphs(5);
  std::mt19937_64 rng(41);
  std::vector<Graph> gs = {complete_graph(6), cycle_graph(6)};
  for (int trial = 0; trial < 5; ++trial) gs.push_back(random_graph(6, rng));
  for (const Graph& g : gs) {
    Rational mixed(0);
    for (const Graph& h : hosts) mixed += subgraph_density(h, g) * objective_value(obj, h);
    REQUIRE(mixed == objective_value(obj, g));
  }
}

TEST_CASE("malformed certificates are rejected") {
  CHECK_THROWS_WITH_AS(verify_certificate(trivial_certificate(1)),
                       doctest::Contains("at least 2"), Error);
  {
    FlagCertificate cert = trivial_certificate(3);
    cert.objective.s = 4;
    CHECK_THROWS_WITH_AS(verify_certificate(cert), doctest::Contains("below"), Error);
  }
  {
    FlagCertificate cert = worked_certificate();
    cert.q.clear();
    CHECK_THROWS_WITH_AS(verify_certificate(cert), doctest::Contains("per type"), Error);
  }
  {
    // parity: a two-vertex type inside an odd-order certificate
    FlagCertificate cert = trivial_certificate(3);
    cert.types = {make_type(complete_graph(2), {0, 1})};
    cert.flags = {{}};
    cert.q = {Matrix{}};
    CHECK_THROWS_WITH_AS(verify_certificate(cert), doctest::Contains("parity"), Error);
  }
  {
    // v must stay at or below m - 2
    FlagCertificate cert = trivial_certificate(3);
    cert.types = {make_type(complete_graph(3), {0, 1, 2})};
    cert.flags = {{}};
    cert.q = {Matrix{}};
    CHECK_THROWS_WITH_AS(verify_certificate(cert), doctest::Contains("m - 2"), Error);
  }
  {
    // flag at the wrong order
    FlagCertificate cert = worked_certificate();
    cert.flags[0] = enumerate_flags(point_type(), 3);
    CHECK_THROWS_WITH_AS(verify_certificate(cert),
                         doctest::Contains("(m + v) / 2"), Error);
  }
  {
    FlagCertificate cert = worked_certificate();
    cert.flags[0][1] = cert.flags[0][0];
    CHECK_THROWS_WITH_AS(verify_certificate(cert), doctest::Contains("duplicate"), Error);
  }
  {
    // a flag carrying a forbidden subgraph
    FlagCertificate cert = trivial_certificate(4);
    cert.forbidden = {complete_graph(2)};
    cert.types = {empty_type()};
    cert.flags = {enumerate_flags(empty_type(), 2)};  // contains K2
    cert.q = {zero_matrix(2)};
    CHECK_THROWS_WITH_AS(verify_certificate(cert), doctest::Contains("forbidden"), Error);
  }
  {
    FlagCertificate cert = worked_certificate();
    cert.q[0][0][1] = 0;
    CHECK_THROWS_WITH_AS(verify_certificate(cert), doctest::Contains("symmetric"), Error);
  }
  {
    FlagCertificate cert = worked_certificate();
    cert.q[0] = zero_matrix(3);
    CHECK_THROWS_WITH_AS(verify_certificate(cert), doctest::Contains("dimension"), Error);
  }
}

TEST_CASE("non-psd certificates fail loudly") {
  FlagCertificate cert = worked_certificate();
  cert.q[0] = Matrix{{Rational(1), Rational(0)}, {Rational(0), Rational(-1)}};
  CHECK_THROWS_WITH_AS(verify_certificate(cert),
                       doctest::Contains("not positive semidefinite"), Error);
  CHECK_THROWS_WITH_AS(verify_certificate(cert), doctest::Contains("matrix 0"), Error);
  CHECK_THROWS_WITH_AS(verify_certificate(cert), doctest::Contains("minor"), Error);
  cert.q[0] = Matrix{{Rational(0), Rational(1)}, {Rational(1), Rational(0)}};
  CHECK_THROWS_WITH_AS(verify_certificate(cert),
                       doctest::Contains("not positive semidefinite"), Error);
}

TEST_CASE("zero eigenvector condition at the blow-up optimum") {
  const FlagCertificate cert = worked_certificate();
  // balanced K2 attains 1/4, so the density vector must sit in the kernel
  CHECK(zero_eigenvector_check(cert, 0, complete_graph(2), uniform_weights(2), {0}));
  CHECK(zero_eigenvector_check(cert, 0, complete_graph(2), uniform_weights(2), {1}));
  // K3 and unbalanced K2 overshoot the bound, and the kernel test sees it
  CHECK(!zero_eigenvector_check(cert, 0, complete_graph(3), uniform_weights(3), {0}));
  const WeightVector biased = {Rational(1, 3), Rational(2, 3)};
  CHECK(!zero_eigenvector_check(cert, 0, complete_graph(2), biased, {0}));

  CHECK_THROWS_WITH_AS(
      zero_eigenvector_check(cert, 1, complete_graph(2), uniform_weights(2), {0}),
      doctest::Contains("index"), Error);
  CHECK_THROWS_WITH_AS(
      zero_eigenvector_check(cert, 0, complete_graph(2), uniform_weights(2), {0, 1}),
      doctest::Contains("size"), Error);

  // a two-vertex type: psi must span an edge and carry positive weight
  FlagCertificate pair;
  pair.m = 4;
  pair.objective = {3, 3, 1, 1, 1};
  pair.types = {make_type(complete_graph(2), {0, 1})};
  pair.flags = {enumerate_flags(make_type(complete_graph(2), {0, 1}), 3)};
  pair.q = {zero_matrix(4)};
  CHECK(zero_eigenvector_check(pair, 0, cycle_graph(5), uniform_weights(5), {0, 1}));
  CHECK_THROWS_WITH_AS(
      zero_eigenvector_check(pair, 0, cycle_graph(5), uniform_weights(5), {0, 2}),
      doctest::Contains("induce"), Error);
  WeightVector degenerate(5, Rational(0));
  degenerate[1] = Rational(1, 2);
  degenerate[2] = Rational(1, 2);
  CHECK_THROWS_WITH_AS(zero_eigenvector_check(pair, 0, cycle_graph(5), degenerate, {0, 1}),
                       doctest::Contains("zero weight"), Error);
}

TEST_CASE("certificate json round trip") {
  const char* text = R"({
    "m": 3,
    "forbidden": [],
    "objective": {"s": 3, "t": 3, "ws": "1", "wt": "1"},
    "types": [{"graph6": "@", "labels": [0]}],
    "flags": [[{"graph6": "A?", "embedding": [0]},
               {"graph6": "A_", "embedding": [0]}]],
    "Q": [[["3/4", "-3/4"], ["-3/4", "3/4"]]]
  })";
  const FlagCertificate cert = certificate_from_json_text(text);
  CHECK(cert.m == 3);
  CHECK(cert.flags[0].size() == 2);
  const VerifyReport rep = verify_certificate(cert);
  CHECK(rep.bound == Rational(1, 4));

  const FlagCertificate again = certificate_from_json_text(certificate_to_json_text(cert));
  const VerifyReport rep2 = verify_certificate(again);
  CHECK(rep2.bound == rep.bound);
  REQUIRE(rep2.graphs.size() == rep.graphs.size());
  for (size_t j = 0; j < rep.graphs.size(); ++j) CHECK(rep2.slack[j] == rep.slack[j]);

  // a lambda multiplier folds into the clique weight on the way out
  FlagCertificate scaled = worked_certificate();
  scaled.objective.wt = Rational(1, 2);
  scaled.objective.lambda = 2;
  const FlagCertificate folded =
      certificate_from_json_text(certificate_to_json_text(scaled));
  CHECK(folded.objective.wt == 1);
  CHECK(folded.objective.lambda == 1);
  CHECK(verify_certificate(folded).bound == verify_certificate(scaled).bound);
}

TEST_CASE("certificate files round trip") {
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / "cqd_cert_io";
  fs::create_directories(dir);
  const FlagCertificate cert = worked_certificate();
  save_certificate(cert, (dir / "worked.json").string());
  const FlagCertificate loaded = load_certificate((dir / "worked.json").string());
  CHECK(verify_certificate(loaded).bound == Rational(1, 4));
  CHECK_THROWS_WITH_AS(load_certificate((dir / "absent.json").string()),
                       doctest::Contains("cannot open"), Error);
}

TEST_CASE("certificate json rejects malformed input") {
  CHECK_THROWS_WITH_AS(certificate_from_json_text("not json"),
                       doctest::Contains("parse error"), Error);
  CHECK_THROWS_WITH_AS(certificate_from_json_text("{}"),
                       doctest::Contains("missing field 'm'"), Error);
  CHECK_THROWS_AS(certificate_from_json_text(
                      R"({"m": 3, "forbidden": [], "objective":
                          {"s": 3, "t": 3, "ws": "x", "wt": "1"},
                          "types": [], "flags": [], "Q": []})"),
                  Error);
  // one flag list per type
  CHECK_THROWS_WITH_AS(certificate_from_json_text(
                           R"({"m": 3, "forbidden": [], "objective":
                               {"s": 3, "t": 3, "ws": "1", "wt": "1"},
                               "types": [{"graph6": "@", "labels": [0]}],
                               "flags": [], "Q": []})"),
                       doctest::Contains("one flag list per type"), Error);
  // matrix entries must be strings
  CHECK_THROWS_WITH_AS(certificate_from_json_text(
                           R"({"m": 3, "forbidden": [], "objective":
                               {"s": 3, "t": 3, "ws": "1", "wt": "1"},
                               "types": [{"graph6": "@", "labels": [0]}],
                               "flags": [[{"graph6": "A?", "embedding": [0]}]],
                               "Q": [[[0.75]]]})"),
                       doctest::Contains("p/q"), Error);
  // embeddings must be integer arrays
  CHECK_THROWS_WITH_AS(certificate_from_json_text(
                           R"({"m": 3, "forbidden": [], "objective":
                               {"s": 3, "t": 3, "ws": "1", "wt": "1"},
                               "types": [{"graph6": "@", "labels": [0]}],
                               "flags": [[{"graph6": "A?", "embedding": ["a"]}]],
                               "Q": [[["0"]]]})"),
                       doctest::Contains("integers"), Error);
}
