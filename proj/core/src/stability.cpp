#include "cqd/stability.hpp"

#include <json.hpp>

#include <algorithm>
#include <cassert>
#include <map>
#include <mutex>
#include <set>

#include "cqd/blowup.hpp"
#include "cqd/linalg.hpp"
#include "cqd/parallel.hpp"

namespace cqd {

using nlohmann::json;

namespace {

void require_loop_free(const Graph& g, const char* what) {
  if (g.has_loops()) throw Error(std::string(what) + " must be loop-free");
}

std::vector<int> checked_vertex_set(const std::vector<int>& x, const Graph& c,
                                    const char* what) {
  std::set<int> seen;
  for (int v : x) {
    if (v < 0 || v >= c.order())
      throw Error(std::string(what) + " vertex out of range");
    if (!seen.insert(v).second)
      throw Error(std::string(what) + " has a repeated vertex");
  }
  return {seen.begin(), seen.end()};
}

// orbit of base under (pc, pt) -> pc o base o pt, by orbit-stabilizer
int64_t orbit_size_of(const std::vector<int>& base,
                      const std::vector<Permutation>& auts_t,
                      const std::vector<Permutation>& auts_c) {
  int n = static_cast<int>(base.size());
  int64_t stab = 0;
  std::vector<int> bt(n);
  for (const auto& pt : auts_t) {
    for (int i = 0; i < n; ++i) bt[i] = base[pt[i]];
    for (const auto& pc : auts_c) {
      bool fix = true;
      for (int i = 0; i < n && fix; ++i) fix = pc[bt[i]] == base[i];
      stab += fix;
    }
  }
  assert(stab > 0);
  int64_t total = static_cast<int64_t>(auts_t.size()) * auts_c.size();
  assert(total % stab == 0);
  return total / stab;
}

EmbeddingReport embeds_with_auts(const Graph& t, const Graph& c,
                                 const std::vector<Permutation>& auts_c) {
  EmbeddingReport rep;
  if (t.order() == 0) {
    rep.count = rep.orbit_size = 1;
    rep.unique_up_to_automorphism = true;
    return rep;
  }
  auto maps = strong_homomorphisms(t, c);
  rep.count = static_cast<int64_t>(maps.size());
  if (maps.empty()) return rep;
  rep.base = maps.front();
  rep.orbit_size = orbit_size_of(rep.base, automorphisms(t), auts_c);
  rep.unique_up_to_automorphism = rep.count == rep.orbit_size;
  return rep;
}

// memoizes "C[verts] uniquely embeds into C" by the iso class of C[verts]
struct embed_oracle {
  const Graph& c;
  std::vector<Permutation> auts_c;
  std::map<std::array<uint64_t, 2>, bool> memo;
  std::mutex mu;

  explicit embed_oracle(const Graph& host) : c(host), auts_c(automorphisms(host)) {}

  bool unique(const std::vector<int>& verts) {
    Graph sub = induced_subgraph(c, verts);
    auto key = encode_small(canonical_form(sub));
    std::lock_guard<std::mutex> lock(mu);
    auto it = memo.find(key);
    if (it != memo.end()) return it->second;
    bool ans = embeds_with_auts(sub, c, auts_c).unique_up_to_automorphism;
    memo.emplace(key, ans);
    return ans;
  }
};

// subsets of base of size <= cap: by size, then lexicographic
std::vector<std::vector<int>> small_subsets(const std::vector<int>& base, int cap) {
  std::vector<std::vector<int>> out;
  int n = static_cast<int>(base.size());
  cap = std::min(cap, n);
  std::vector<int> pick;
  auto rec = [&](auto&& self, int from, int left) -> void {
    if (left == 0) {
      out.push_back(pick);
      return;
    }
    for (int i = from; i + left <= n; ++i) {
      pick.push_back(base[i]);
      self(self, i + 1, left - 1);
      pick.pop_back();
    }
  };
  for (int k = 0; k <= cap; ++k) rec(rec, 0, k);
  return out;
}

std::vector<int> with_vertex(const std::vector<int>& verts, int v) {
  std::vector<int> out = verts;
  if (!std::binary_search(out.begin(), out.end(), v))
    out.insert(std::upper_bound(out.begin(), out.end(), v), v);
  return out;
}

std::vector<int> singleton_class_members(const Graph& c, const std::vector<int>& x) {
  std::vector<int> out;
  for (const auto& cls : neighborhood_classes(c, x))
    if (cls.size() == 1) out.push_back(cls[0]);
  return out;
}

json pair_json(const PairCheck& p) {
  return json{{"v1", p.v1}, {"v2", p.v2}, {"ok", p.ok}, {"witness", p.witness}};
}

}  // namespace

EmbeddingReport uniquely_embeds(const Graph& t, const Graph& c) {
  if (t.order() > 7) throw Error("pattern order above 7 is not supported");
  if (c.order() > 30) throw Error("host order above 30 is not supported");
  require_loop_free(t, "pattern");
  require_loop_free(c, "host");
  if (t.order() == 0) {
    EmbeddingReport rep;
    rep.count = rep.orbit_size = 1;
    rep.unique_up_to_automorphism = true;
    return rep;
  }
  return embeds_with_auts(t, c, automorphisms(c));
}

std::vector<std::vector<int>> neighborhood_classes(const Graph& c,
                                                   const std::vector<int>& x) {
  require_loop_free(c, "host");
  auto xs = checked_vertex_set(x, c, "labeled set");
  std::map<std::vector<int>, std::vector<int>> by_trace;
  for (int v = 0; v < c.order(); ++v) {
    std::vector<int> trace;
    for (int u : xs)
      if (u != v && c.adjacent(u, v)) trace.push_back(u);
    by_trace[trace].push_back(v);
  }
  std::vector<std::vector<int>> classes;
  classes.reserve(by_trace.size());
  for (auto& [trace, members] : by_trace) classes.push_back(std::move(members));
  std::sort(classes.begin(), classes.end(),
            [](const auto& a, const auto& b) { return a.front() < b.front(); });
  return classes;
}

NeighborhoodReport defines_unique_neighborhoods(const std::vector<int>& x,
                                                const Graph& c) {
  NeighborhoodReport rep;
  rep.unique = true;
  for (const auto& cls : neighborhood_classes(c, x))
    if (cls.size() > 1) {
      rep.unique = false;
      rep.offending = cls;
      break;
    }
  return rep;
}

SimpleReconstructorReport check_reconstructor_simple(const std::vector<int>& x,
                                                     const Graph& c, int ell) {
  auto xs = checked_vertex_set(x, c, "labeled set");
  SimpleReconstructorReport rep;
  rep.size_ok = static_cast<int>(xs.size()) <= ell - 2;
  rep.embeds = uniquely_embeds(induced_subgraph(c, xs), c).unique_up_to_automorphism;
  rep.neighborhoods = defines_unique_neighborhoods(xs, c).unique;
  rep.ok = rep.size_ok && rep.embeds && rep.neighborhoods;
  return rep;
}

StrongReconstructorReport check_reconstructor_strong(const std::vector<int>& x,
                                                     const std::vector<int>& xprime,
                                                     const Graph& c, int ell) {
  require_loop_free(c, "host");
  auto xs = checked_vertex_set(x, c, "labeled set");
  auto xp = checked_vertex_set(xprime, c, "inner labeled set");
  if (!std::includes(xs.begin(), xs.end(), xp.begin(), xp.end()))
    throw Error("inner labeled set must be contained in the outer one");

  StrongReconstructorReport rep;
  embed_oracle oracle(c);

  int nx = static_cast<int>(xs.size());
  int np = static_cast<int>(xp.size());
  if (nx == np && nx <= ell - 1) {
    rep.branch = 1;
    rep.embedding_ok = oracle.unique(xs);
  } else if (nx == ell && np <= ell - 2) {
    rep.branch = 2;
    rep.embedding_ok = true;
    for (int v : xs)
      if (!oracle.unique(with_vertex(xp, v))) {
        rep.embedding_ok = false;
        break;
      }
  }
  rep.neighborhoods_ok = defines_unique_neighborhoods(xp, c).unique;

  auto candidates = small_subsets(xs, ell - 2);
  struct candidate_classes {
    const std::vector<int>* members;
    std::vector<int> class_id;
    std::vector<std::vector<int>> classes;
  };
  std::vector<candidate_classes> cands(candidates.size());
  for (size_t i = 0; i < candidates.size(); ++i) {
    cands[i].members = &candidates[i];
    cands[i].classes = neighborhood_classes(c, candidates[i]);
    cands[i].class_id.assign(c.order(), -1);
    for (size_t k = 0; k < cands[i].classes.size(); ++k)
      for (int v : cands[i].classes[k]) cands[i].class_id[v] = static_cast<int>(k);
  }

  std::vector<int> rest;
  for (int v = 0; v < c.order(); ++v)
    if (!std::binary_search(xs.begin(), xs.end(), v)) rest.push_back(v);
  for (size_t i = 0; i < rest.size(); ++i)
    for (size_t j = i; j < rest.size(); ++j)
      rep.pairs.push_back({rest[i], rest[j], false, {}});

  parallel_for(static_cast<int64_t>(rep.pairs.size()), [&](int64_t idx) {
    PairCheck& pc = rep.pairs[idx];
    for (const auto& cand : cands) {
      const auto& members = *cand.members;
      if (pc.v1 == pc.v2) {
        if (cand.classes[cand.class_id[pc.v1]].size() != 1) continue;
        if (!oracle.unique(with_vertex(members, pc.v1))) continue;
      } else {
        int c1 = cand.class_id[pc.v1], c2 = cand.class_id[pc.v2];
        if (c1 == c2) continue;
        bool want = c.adjacent(cand.classes[c1][0], cand.classes[c2][0]);
        bool flat = true;
        for (int a : cand.classes[c1]) {
          for (int b : cand.classes[c2])
            if (c.adjacent(a, b) != want) {
              flat = false;
              break;
            }
          if (!flat) break;
        }
        if (!flat) continue;
        if (!oracle.unique(with_vertex(members, pc.v1)) &&
            !oracle.unique(with_vertex(members, pc.v2)))
          continue;
      }
      pc.ok = true;
      pc.witness = members;
      break;
    }
  });

  rep.ok = rep.branch != 0 && rep.embedding_ok && rep.neighborhoods_ok;
  for (const auto& pc : rep.pairs) rep.ok = rep.ok && pc.ok;
  return rep;
}

SymmetryReport check_symmetry_conditions(const FlagCertificate& cert,
                                         const Graph& c, const WeightVector& w,
                                         const std::vector<std::vector<int>>& xs,
                                         const std::vector<int>& js,
                                         const std::string& gap_reference,
                                         bool allow_large) {
  validate_certificate(cert);
  require_loop_free(c, "host");
  if (xs.empty() || xs.size() != js.size())
    throw Error("need one labeled set per matrix index");
  for (int j : js)
    if (j < 0 || j >= static_cast<int>(cert.types.size()))
      throw Error("matrix index out of range");
  if (static_cast<int>(w.size()) != c.order())
    throw Error("weight vector size mismatch");

  std::vector<std::vector<int>> sets;
  sets.reserve(xs.size());
  for (const auto& x : xs) sets.push_back(checked_vertex_set(x, c, "labeled set"));

  SymmetryReport rep;
  rep.gap_reference = gap_reference;

  rep.weights_positive = true;
  for (const auto& wv : w) rep.weights_positive = rep.weights_positive && wv > 0;

  rep.admissible = true;
  for (const auto& f : cert.forbidden)
    rep.admissible = rep.admissible && !contains_subgraph(c, f);

  VerifyReport vr = verify_certificate(cert, allow_large);
  rep.attains_bound = blowup_cost(c, cert.objective, w) == vr.bound;

  rep.unique_embedding =
      uniquely_embeds(induced_subgraph(c, sets[0]), c).unique_up_to_automorphism;

  // sets[i] must sit inside sets[0] plus vertices pinned by earlier sets
  rep.chain = true;
  std::set<int> allowed(sets[0].begin(), sets[0].end());
  std::set<int> covered;
  for (size_t i = 0; i < sets.size(); ++i) {
    for (int v : sets[i]) rep.chain = rep.chain && allowed.count(v) > 0;
    for (int v : singleton_class_members(c, sets[i])) {
      allowed.insert(v);
      covered.insert(v);
    }
  }
  rep.coverage = static_cast<int>(covered.size()) == c.order();

  rep.type_match.resize(sets.size());
  rep.corank_one.resize(sets.size());
  for (size_t i = 0; i < sets.size(); ++i) {
    rep.type_match[i] =
        is_isomorphic(cert.types[js[i]].T, induced_subgraph(c, sets[i]));
    rep.corank_one[i] = corank(cert.q[js[i]]) == 1;
  }

  rep.ok = rep.weights_positive && rep.admissible && rep.attains_bound &&
           rep.unique_embedding && rep.chain && rep.coverage;
  for (size_t i = 0; i < sets.size(); ++i)
    rep.ok = rep.ok && rep.type_match[i] && rep.corank_one[i];
  return rep;
}

std::string report_json(const EmbeddingReport& rep) {
  return json{{"count", rep.count},
              {"orbit_size", rep.orbit_size},
              {"unique", rep.unique_up_to_automorphism},
              {"base", rep.base}}
      .dump();
}

std::string report_json(const SimpleReconstructorReport& rep) {
  return json{{"size_ok", rep.size_ok},
              {"embeds", rep.embeds},
              {"neighborhoods", rep.neighborhoods},
              {"ok", rep.ok}}
      .dump();
}

std::string report_json(const StrongReconstructorReport& rep) {
  json pairs = json::array();
  for (const auto& p : rep.pairs) pairs.push_back(pair_json(p));
  return json{{"branch", rep.branch},
              {"embedding_ok", rep.embedding_ok},
              {"neighborhoods_ok", rep.neighborhoods_ok},
              {"pairs", pairs},
              {"ok", rep.ok}}
      .dump();
}

std::string report_json(const SymmetryReport& rep) {
  json tm = json::array(), co = json::array();
  for (char b : rep.type_match) tm.push_back(static_cast<bool>(b));
  for (char b : rep.corank_one) co.push_back(static_cast<bool>(b));
  return json{{"weights_positive", rep.weights_positive},
              {"admissible", rep.admissible},
              {"attains_bound", rep.attains_bound},
              {"unique_embedding", rep.unique_embedding},
              {"chain", rep.chain},
              {"coverage", rep.coverage},
              {"type_match", tm},
              {"corank_one", co},
              {"gap_reference", rep.gap_reference},
              {"ok", rep.ok}}
      .dump();
}

}  // namespace cqd
