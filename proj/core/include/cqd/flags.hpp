#pragma once

#include <array>
#include <vector>

#include "cqd/blowup.hpp"
#include "cqd/graph.hpp"
#include "cqd/rational.hpp"

namespace cqd {

// A type: a fully labeled (loop-free) graph.  labels[i] is the vertex of T
// carrying label i, so labels is a bijection [v] -> V(T).
struct FlagType {
  Graph T;
  std::vector<int> labels;

  int order() const { return T.order(); }
};

FlagType make_type(const Graph& t, const std::vector<int>& labels);
FlagType empty_type();
FlagType point_type();  // single labeled vertex

// relabeled copy with labels[i] == i
FlagType normalize_type(const FlagType& tau);
bool types_equal(const FlagType& a, const FlagType& b);  // after normalization

// A tau-flag: graph F with an injective partial labeling [v] -> V(F) whose
// image induces the type graph.
struct Flag {
  Graph F;
  std::vector<int> embedding;

  int order() const { return F.order(); }
};

// validates that the embedding induces tau inside f
Flag make_flag(const FlagType& tau, const Graph& f, const std::vector<int>& embedding);
// permuted copy with embedding[i] == i
Flag normalize_flag(const Flag& fl);
// isomorphism fixing the labeled vertices pointwise
bool flags_isomorphic(const Flag& a, const Flag& b);
// canonical key of a flag (prefix of `labeled` vertices pinned); order <= 12
std::array<uint64_t, 2> flag_key(const Graph& f, int labeled);

// Induced subgraph density: probability that |V(h)| uniformly chosen vertices
// of g induce a copy of h.  |V(h)| <= |V(g)| <= 10.
Rational subgraph_density(const Graph& h, const Graph& g);

// One representative per label-fixing isomorphism class of tau-flags of order
// l that contain no forbidden subgraph; deterministic order.  l <= 6.
std::vector<Flag> enumerate_flags(const FlagType& tau, int l,
                                  const std::vector<Graph>& forbidden = {});

// Pair density d_{F,F'}(h): expectation over injective theta:[v] -> V(h) of
// the probability that an (l-v)-subset S1 of the unlabeled vertices and then
// an (l-v)-subset S2 of the remainder (sequential, without replacement)
// together with theta form flags isomorphic to F and F'.  |V(h)| >= 2l-v.
Rational pair_density(const Flag& f, const Flag& fp, const Graph& h);

// all pairs of one type at once; entry [a][b] = d_{flags[a],flags[b]}(h).
// Splits realizing a flag outside `flags` count toward no entry.
std::vector<std::vector<Rational>> pair_density_matrix(const std::vector<Flag>& flags,
                                                       const Graph& h);

// d^psi_F(c, w): probability that the flag spanned by psi and l-v further
// vertices drawn independently from the w-weighted blow-up limit of c is
// isomorphic to F.  Draws may repeat and may hit psi's image; copies of one
// part are mutually non-adjacent.  psi must induce F's type in c.
Rational flag_density_weighted(const Flag& f, const Graph& c,
                               const std::vector<int>& psi, const WeightVector& w);

}  // namespace cqd
