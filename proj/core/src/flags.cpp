#include "cqd/flags.hpp"

#include <algorithm>
#include <cassert>
#include <map>
#include <numeric>

namespace cqd {

namespace {

void require_loop_free(const Graph& g, const char* what) {
  for (int v = 0; v < g.order(); ++v)
    if (g.loop(v)) throw Error(std::string(what) + " must be loop-free");
}

void require_injective_labels(const std::vector<int>& m, int range, const char* what) {
  std::vector<char> seen(range, 0);
  for (int x : m) {
    if (x < 0 || x >= range) throw Error(std::string(what) + " out of range");
    if (seen[x]) throw Error(std::string(what) + " is not injective");
    seen[x] = 1;
  }
}

// all k-subsets of `pool`, each sorted ascending
std::vector<std::vector<int>> subsets_of(const std::vector<int>& pool, int k) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur;
  auto rec = [&](auto&& self, size_t from) -> void {
    if (static_cast<int>(cur.size()) == k) {
      out.push_back(cur);
      return;
    }
    for (size_t i = from; i + (k - cur.size()) <= pool.size(); ++i) {
      cur.push_back(pool[i]);
      self(self, i + 1);
      cur.pop_back();
    }
  };
  rec(rec, 0);
  return out;
}

// graph on the vertices theta[0..v-1], members[0..k-1] (in that order) with
// adjacency inherited from h
Graph assemble(const Graph& h, const std::vector<int>& theta,
               const std::vector<int>& members) {
  std::vector<int> verts = theta;
  verts.insert(verts.end(), members.begin(), members.end());
  return induced_subgraph(h, verts);
}

}  // namespace

FlagType make_type(const Graph& t, const std::vector<int>& labels) {
  require_loop_free(t, "type graph");
  if (static_cast<int>(labels.size()) != t.order())
    throw Error("type labeling must cover every vertex");
  require_injective_labels(labels, t.order(), "type labeling");
  return FlagType{t, labels};
}

FlagType empty_type() { return FlagType{Graph(0), {}}; }

FlagType point_type() { return FlagType{Graph(1), {0}}; }

FlagType normalize_type(const FlagType& tau) {
  FlagType checked = make_type(tau.T, tau.labels);
  Permutation p(checked.T.order());
  for (int i = 0; i < checked.T.order(); ++i) p[checked.labels[i]] = i;
  std::vector<int> ident(checked.T.order());
  std::iota(ident.begin(), ident.end(), 0);
  return FlagType{apply_permutation(checked.T, p), ident};
}

bool types_equal(const FlagType& a, const FlagType& b) {
  return normalize_type(a).T == normalize_type(b).T;
}

Flag make_flag(const FlagType& tau, const Graph& f, const std::vector<int>& embedding) {
  require_loop_free(f, "flag graph");
  const FlagType nt = normalize_type(tau);
  const int v = nt.order();
  if (static_cast<int>(embedding.size()) != v)
    throw Error("flag embedding size differs from the type order");
  if (f.order() < v) throw Error("flag graph is smaller than its type");
  require_injective_labels(embedding, f.order(), "flag embedding");
  for (int a = 0; a < v; ++a)
    for (int b = a + 1; b < v; ++b)
      if (f.adjacent(embedding[a], embedding[b]) != nt.T.adjacent(a, b))
        throw Error("flag embedding does not induce the type");
  return Flag{f, embedding};
}

Flag normalize_flag(const Flag& fl) {
  const int n = fl.F.order();
  const int v = static_cast<int>(fl.embedding.size());
  require_injective_labels(fl.embedding, n, "flag embedding");
  Permutation p(n, -1);
  for (int i = 0; i < v; ++i) p[fl.embedding[i]] = i;
  int next = v;
  for (int u = 0; u < n; ++u)
    if (p[u] < 0) p[u] = next++;
  std::vector<int> ident(v);
  std::iota(ident.begin(), ident.end(), 0);
  return Flag{apply_permutation(fl.F, p), ident};
}

std::array<uint64_t, 2> flag_key(const Graph& f, int labeled) {
  return encode_small(canonical_form_fixed_prefix(f, labeled));
}

bool flags_isomorphic(const Flag& a, const Flag& b) {
  if (a.order() != b.order() || a.embedding.size() != b.embedding.size()) return false;
  const int v = static_cast<int>(a.embedding.size());
  return flag_key(normalize_flag(a).F, v) == flag_key(normalize_flag(b).F, v);
}

Rational subgraph_density(const Graph& h, const Graph& g) {
  require_loop_free(h, "pattern graph");
  require_loop_free(g, "host graph");
  const int hn = h.order(), gn = g.order();
  if (hn > gn) throw Error("pattern graph larger than host");
  if (gn > 10) throw Error("host graph order exceeds 10");
  const auto target = encode_small(canonical_form(h));
  std::vector<int> all(gn);
  std::iota(all.begin(), all.end(), 0);
  int64_t hits = 0, total = 0;
  for (const auto& s : subsets_of(all, hn)) {
    ++total;
    if (encode_small(canonical_form(induced_subgraph(g, s))) == target) ++hits;
  }
  return Rational(hits, total);
}

std::vector<Flag> enumerate_flags(const FlagType& tau, int l,
                                  const std::vector<Graph>& forbidden) {
  const FlagType nt = normalize_type(tau);
  const int v = nt.order();
  if (l < v) throw Error("flag order below the type order");
  if (l > 6) throw Error("flag order exceeds 6");
  for (const Graph& x : forbidden) require_loop_free(x, "forbidden graph");

  // free slots: every vertex pair not inside the labeled prefix
  std::vector<std::pair<int, int>> free_pairs;
  for (int j = 1; j < l; ++j)
    for (int i = 0; i < j; ++i)
      if (j >= v) free_pairs.emplace_back(i, j);

  std::map<std::array<uint64_t, 2>, Graph> classes;
  for (uint64_t mask = 0; mask < (uint64_t{1} << free_pairs.size()); ++mask) {
    Graph f(l);
    for (int a = 0; a < v; ++a)
      for (int b = a + 1; b < v; ++b)
        if (nt.T.adjacent(a, b)) f.set_edge(a, b, true);
    for (size_t k = 0; k < free_pairs.size(); ++k)
      if (mask >> k & 1) f.set_edge(free_pairs[k].first, free_pairs[k].second, true);
    bool bad = false;
    for (const Graph& x : forbidden)
      if (contains_subgraph(f, x)) { bad = true; break; }
    if (bad) continue;
    Graph canon = canonical_form_fixed_prefix(f, v);
    classes.emplace(encode_small(canon), canon);
  }

  std::vector<int> ident(v);
  std::iota(ident.begin(), ident.end(), 0);
  std::vector<Flag> out;
  out.reserve(classes.size());
  for (auto& [key, g] : classes) out.push_back(Flag{g, ident});
  return out;
}

namespace {

// shared core: counts ordered disjoint splits realizing each listed flag pair
struct PairTally {
  std::vector<std::vector<int64_t>> counts;
  int64_t total = 0;
};

PairTally tally_pairs(const std::vector<Flag>& flags, const Graph& h) {
  if (flags.empty()) throw Error("empty flag list");
  require_loop_free(h, "host graph");
  const Flag first = normalize_flag(flags.front());
  const int v = static_cast<int>(first.embedding.size());
  const int l = first.order();
  const int k = l - v;
  const Graph type_graph = induced_subgraph(first.F, std::vector<int>(
      first.embedding.begin(), first.embedding.end()));

  std::map<std::array<uint64_t, 2>, int> index;
  for (size_t i = 0; i < flags.size(); ++i) {
    const Flag nf = normalize_flag(flags[i]);
    if (nf.order() != l || static_cast<int>(nf.embedding.size()) != v)
      throw Error("flag order mismatch in pair density");
    const Graph t2 = induced_subgraph(nf.F, std::vector<int>(
        nf.embedding.begin(), nf.embedding.end()));
    if (!(t2 == type_graph)) throw Error("flag type mismatch in pair density");
    if (!index.emplace(flag_key(nf.F, v), static_cast<int>(i)).second)
      throw Error("duplicate flag in pair density");
  }

  const int n = h.order();
  if (n < 2 * l - v) throw Error("host graph too small for this flag order");

  PairTally tally;
  tally.counts.assign(flags.size(), std::vector<int64_t>(flags.size(), 0));

  // walk injective theta by recursion; subsets and keys are rebuilt per theta
  std::vector<int> theta;
  std::vector<char> used(n, 0);
  auto place = [&](auto&& self) -> void {
    if (static_cast<int>(theta.size()) == v) {
      std::vector<int> rest;
      for (int u = 0; u < n; ++u)
        if (!used[u]) rest.push_back(u);
      const auto subs = subsets_of(rest, k);
      std::vector<int> idx(subs.size());
      std::vector<uint64_t> bits(subs.size(), 0);
      for (size_t a = 0; a < subs.size(); ++a) {
        auto it = index.find(flag_key(assemble(h, theta, subs[a]), v));
        idx[a] = it == index.end() ? -1 : it->second;
        for (int u : subs[a]) bits[a] |= uint64_t{1} << u;
      }
      for (size_t a = 0; a < subs.size(); ++a)
        for (size_t b = 0; b < subs.size(); ++b) {
          if (bits[a] & bits[b]) continue;
          ++tally.total;
          if (idx[a] >= 0 && idx[b] >= 0) ++tally.counts[idx[a]][idx[b]];
        }
      return;
    }
    for (int u = 0; u < n; ++u) {
      if (used[u]) continue;
      used[u] = 1;
      theta.push_back(u);
      self(self);
      theta.pop_back();
      used[u] = 0;
    }
  };
  place(place);
  assert(tally.total > 0);
  return tally;
}

}  // namespace

Rational pair_density(const Flag& f, const Flag& fp, const Graph& h) {
  if (f.order() != fp.order() || f.embedding.size() != fp.embedding.size())
    throw Error("flag order mismatch in pair density");
  if (flags_isomorphic(f, fp)) {
    const PairTally t = tally_pairs({f}, h);
    return Rational(t.counts[0][0], t.total);
  }
  const PairTally t = tally_pairs({f, fp}, h);
  return Rational(t.counts[0][1], t.total);
}

std::vector<std::vector<Rational>> pair_density_matrix(const std::vector<Flag>& flags,
                                                       const Graph& h) {
  const PairTally t = tally_pairs(flags, h);
  std::vector<std::vector<Rational>> out(flags.size(),
                                         std::vector<Rational>(flags.size()));
  for (size_t a = 0; a < flags.size(); ++a)
    for (size_t b = 0; b < flags.size(); ++b)
      out[a][b] = Rational(t.counts[a][b], t.total);
  return out;
}

Rational flag_density_weighted(const Flag& f, const Graph& c,
                               const std::vector<int>& psi, const WeightVector& w) {
  require_loop_free(c, "construction graph");
  validate_weights(c, w);
  const Flag nf = normalize_flag(f);
  const int v = static_cast<int>(nf.embedding.size());
  const int l = nf.order();
  const int k = l - v;
  if (static_cast<int>(psi.size()) != v)
    throw Error("flag embedding size differs from the type order");
  require_injective_labels(psi, c.order(), "flag embedding");
  for (int a = 0; a < v; ++a) {
    for (int b = a + 1; b < v; ++b)
      if (c.adjacent(psi[a], psi[b]) != nf.F.adjacent(a, b))
        throw Error("flag embedding does not induce the type");
    if (w[psi[a]] == 0) throw Error("zero weight on a labeled vertex");
  }
  const auto target = flag_key(nf.F, v);

  const int n = c.order();
  Rational acc(0);
  std::vector<int> draw(k, 0);
  // odometer over all k-tuples of parts; repeats allowed, twins of one part
  // (including a labeled vertex's part) stay non-adjacent
  while (true) {
    Rational weight(1);
    for (int j = 0; j < k; ++j) weight *= w[draw[j]];
    if (weight != 0) {
      Graph g(l);
      for (int a = 0; a < v; ++a)
        for (int b = a + 1; b < v; ++b)
          if (nf.F.adjacent(a, b)) g.set_edge(a, b, true);
      for (int j = 0; j < k; ++j) {
        for (int a = 0; a < v; ++a)
          if (psi[a] != draw[j] && c.adjacent(psi[a], draw[j]))
            g.set_edge(a, v + j, true);
        for (int j2 = 0; j2 < j; ++j2)
          if (draw[j2] != draw[j] && c.adjacent(draw[j2], draw[j]))
            g.set_edge(v + j2, v + j, true);
      }
      if (flag_key(g, v) == target) acc += weight;
    }
    int pos = k - 1;
    while (pos >= 0 && draw[pos] == n - 1) draw[pos--] = 0;
    if (pos < 0) break;
    ++draw[pos];
  }
  return acc;
}

}  // namespace cqd
