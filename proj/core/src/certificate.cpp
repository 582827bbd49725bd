#include "cqd/certificate.hpp"

#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

#include "cqd/parallel.hpp"

namespace cqd {

using nlohmann::json;

void validate_certificate(const FlagCertificate& cert) {
  if (cert.m < 2) throw Error("certificate order m must be at least 2");
  if (cert.objective.s < 1 || cert.objective.t < 1)
    throw Error("objective clique orders must be positive");
  if (cert.m < std::max(cert.objective.s, cert.objective.t))
    throw Error("certificate order m is below the objective's clique orders");
  for (const Graph& x : cert.forbidden)
    for (int u = 0; u < x.order(); ++u)
      if (x.loop(u)) throw Error("forbidden graph must be loop-free");
  if (cert.types.size() != cert.flags.size() || cert.types.size() != cert.q.size())
    throw Error("certificate needs one flag list and one matrix per type");
  for (size_t i = 0; i < cert.types.size(); ++i) {
    const FlagType nt = normalize_type(cert.types[i]);
    const int v = nt.order();
    if ((cert.m - v) % 2 != 0)
      throw Error("type order parity differs from the certificate order");
    if (v > cert.m - 2) throw Error("type order exceeds m - 2");
    const int l = (cert.m + v) / 2;
    std::map<std::array<uint64_t, 2>, int> seen;
    for (const Flag& fl : cert.flags[i]) {
      make_flag(nt, fl.F, fl.embedding);  // validates the embedding
      if (fl.order() != l) throw Error("flag order differs from (m + v) / 2");
      for (const Graph& x : cert.forbidden)
        if (contains_subgraph(fl.F, x))
          throw Error("flag contains a forbidden subgraph");
      if (!seen.emplace(flag_key(normalize_flag(fl).F, v), 1).second)
        throw Error("duplicate flag in a flag list");
    }
    validate_symmetric(cert.q[i]);
    if (cert.q[i].size() != cert.flags[i].size())
      throw Error("matrix dimension differs from the flag list length");
  }
}

Rational objective_value(const BlowupObjective& obj, const Graph& h) {
  return obj.ws * subgraph_density(empty_graph(obj.s), h) +
         obj.lambda * obj.wt * subgraph_density(complete_graph(obj.t), h);
}

namespace {

void check_order_cap(int m, bool allow_large) {
  if (m > 7) throw Error("certificate order m exceeds 7");
  if (m == 7) {
    if (!allow_large)
      throw Error("certificate order 7 needs the large-order flag");
    std::fprintf(stderr,
                 "warning: order-7 certificate; expect 1044 graphs and a "
                 "noticeably longer run\n");
  }
}

}  // namespace

VerifyReport verify_certificate(const FlagCertificate& cert, bool allow_large) {
  validate_certificate(cert);
  check_order_cap(cert.m, allow_large);
  for (size_t i = 0; i < cert.q.size(); ++i) {
    if (cert.q[i].empty()) continue;
    const PsdResult p = psd_check(cert.q[i]);
    if (!p.psd) {
      std::ostringstream os;
      os << "certificate matrix " << i << " is not positive semidefinite: "
         << "principal minor {";
      for (size_t a = 0; a < p.minor_indices.size(); ++a)
        os << (a ? "," : "") << p.minor_indices[a];
      os << "} has negative determinant";
      throw Error(os.str());
    }
  }

  VerifyReport rep;
  rep.graphs = enumerate_graphs(cert.m, cert.forbidden);
  if (rep.graphs.empty()) throw Error("no graphs of order m avoid the forbidden set");
  const int64_t count = static_cast<int64_t>(rep.graphs.size());
  rep.lambda.assign(count, Rational(0));
  rep.correction.assign(count, Rational(0));
  rep.slack.assign(count, Rational(0));

  parallel_for(count, [&](int64_t j) {
    const Graph& h = rep.graphs[j];
    rep.lambda[j] = objective_value(cert.objective, h);
    Rational corr(0);
    for (size_t i = 0; i < cert.types.size(); ++i) {
      if (cert.flags[i].empty()) continue;
      const auto d = pair_density_matrix(cert.flags[i], h);
      for (size_t a = 0; a < d.size(); ++a)
        for (size_t b = 0; b < d.size(); ++b) corr += cert.q[i][a][b] * d[a][b];
    }
    rep.correction[j] = corr;
  });

  rep.bound = rep.lambda[0] - rep.correction[0];
  for (int64_t j = 1; j < count; ++j) {
    const Rational value = rep.lambda[j] - rep.correction[j];
    if (value < rep.bound) rep.bound = value;
  }
  for (int64_t j = 0; j < count; ++j)
    rep.slack[j] = rep.lambda[j] - rep.correction[j] - rep.bound;
  return rep;
}

std::vector<Graph> sharp_graphs(const FlagCertificate& cert, const Rational& bound,
                                bool allow_large) {
  const VerifyReport rep = verify_certificate(cert, allow_large);
  std::vector<Graph> out;
  for (size_t j = 0; j < rep.graphs.size(); ++j)
    if (rep.lambda[j] - rep.correction[j] == bound) out.push_back(rep.graphs[j]);
  return out;
}

bool zero_eigenvector_check(const FlagCertificate& cert, int i, const Graph& c,
                            const WeightVector& w, const std::vector<int>& psi) {
  validate_certificate(cert);
  if (i < 0 || i >= static_cast<int>(cert.types.size()))
    throw Error("type index out of range");
  std::vector<Rational> x;
  x.reserve(cert.flags[i].size());
  for (const Flag& fl : cert.flags[i])
    x.push_back(flag_density_weighted(fl, c, psi, w));
  const std::vector<Rational> y = mat_vec(cert.q[i], x);
  for (const Rational& e : y)
    if (e != 0) return false;
  return true;
}

namespace {

json require_field(const json& j, const char* key) {
  if (!j.contains(key))
    throw Error(std::string("certificate json: missing field '") + key + "'");
  return j.at(key);
}

int int_field(const json& j, const char* key) {
  const json f = require_field(j, key);
  if (!f.is_number_integer())
    throw Error(std::string("certificate json: field '") + key + "' must be an integer");
  return f.get<int>();
}

Rational rational_field(const json& j, const char* key) {
  const json f = require_field(j, key);
  if (!f.is_string())
    throw Error(std::string("certificate json: field '") + key +
                "' must be a \"p/q\" string");
  return parse_rational(f.get<std::string>());
}

std::vector<int> int_array(const json& j, const char* what) {
  if (!j.is_array())
    throw Error(std::string("certificate json: ") + what + " must be an array");
  std::vector<int> out;
  for (const json& e : j) {
    if (!e.is_number_integer())
      throw Error(std::string("certificate json: ") + what + " must hold integers");
    out.push_back(e.get<int>());
  }
  return out;
}

}  // namespace

FlagCertificate certificate_from_json_text(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const std::exception& e) {
    throw Error(std::string("certificate json parse error: ") + e.what());
  }
  FlagCertificate cert;
  cert.m = int_field(j, "m");
  for (const json& f : require_field(j, "forbidden")) {
    if (!f.is_string()) throw Error("certificate json: forbidden entries must be graph6");
    cert.forbidden.push_back(parse_graph6(f.get<std::string>()));
  }
  const json obj = require_field(j, "objective");
  cert.objective.s = int_field(obj, "s");
  cert.objective.t = int_field(obj, "t");
  cert.objective.ws = rational_field(obj, "ws");
  cert.objective.wt = rational_field(obj, "wt");
  cert.objective.lambda = 1;

  for (const json& tj : require_field(j, "types")) {
    if (!tj.is_object() || !tj.contains("graph6"))
      throw Error("certificate json: each type needs 'graph6' and 'labels'");
    const Graph t = parse_graph6(require_field(tj, "graph6").get<std::string>());
    cert.types.push_back(make_type(t, int_array(require_field(tj, "labels"), "labels")));
  }
  const json fl = require_field(j, "flags");
  if (!fl.is_array() || fl.size() != cert.types.size())
    throw Error("certificate json: need one flag list per type");
  for (size_t i = 0; i < cert.types.size(); ++i) {
    std::vector<Flag> list;
    for (const json& fj : fl.at(i)) {
      if (!fj.is_object())
        throw Error("certificate json: each flag needs 'graph6' and 'embedding'");
      const Graph f = parse_graph6(require_field(fj, "graph6").get<std::string>());
      list.push_back(make_flag(cert.types[i], f,
                               int_array(require_field(fj, "embedding"), "embedding")));
    }
    cert.flags.push_back(std::move(list));
  }
  const json qj = require_field(j, "Q");
  if (!qj.is_array() || qj.size() != cert.types.size())
    throw Error("certificate json: need one matrix per type");
  for (const json& mj : qj) {
    Matrix m;
    if (!mj.is_array()) throw Error("certificate json: each matrix must be an array");
    for (const json& row : mj) {
      std::vector<Rational> r;
      for (const json& e : row) {
        if (!e.is_string())
          throw Error("certificate json: matrix entries must be \"p/q\" strings");
        r.push_back(parse_rational(e.get<std::string>()));
      }
      m.push_back(std::move(r));
    }
    cert.q.push_back(std::move(m));
  }
  validate_certificate(cert);
  return cert;
}

std::string certificate_to_json_text(const FlagCertificate& cert) {
  validate_certificate(cert);
  json j;
  j["m"] = cert.m;
  j["forbidden"] = json::array();
  for (const Graph& x : cert.forbidden) j["forbidden"].push_back(to_graph6(x));
  j["objective"] = {{"s", cert.objective.s},
                    {"t", cert.objective.t},
                    {"ws", format_rational(cert.objective.ws)},
                    {"wt", format_rational(cert.objective.wt * cert.objective.lambda)}};
  j["types"] = json::array();
  for (const FlagType& t : cert.types)
    j["types"].push_back({{"graph6", to_graph6(t.T)}, {"labels", t.labels}});
  j["flags"] = json::array();
  for (const auto& list : cert.flags) {
    json row = json::array();
    for (const Flag& f : list)
      row.push_back({{"graph6", to_graph6(f.F)}, {"embedding", f.embedding}});
    j["flags"].push_back(std::move(row));
  }
  j["Q"] = json::array();
  for (const Matrix& m : cert.q) {
    json mat = json::array();
    for (const auto& row : m) {
      json r = json::array();
      for (const Rational& e : row) r.push_back(format_rational(e));
      mat.push_back(std::move(r));
    }
    j["Q"].push_back(std::move(mat));
  }
  return j.dump(2);
}

FlagCertificate load_certificate(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open certificate file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return certificate_from_json_text(buf.str());
}

void save_certificate(const FlagCertificate& cert, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot open certificate file for writing: " + path);
  out << certificate_to_json_text(cert) << "\n";
}

}  // namespace cqd
