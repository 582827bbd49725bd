// cqd: one executable over the whole library.  Subcommands map 1:1 onto the
// module entry points; every command prints a short human summary on stdout
// and, with --out, a JSON record of the same data.  Exit codes: 0 success,
// 1 verification failure, 2 usage or input error.

#include <CLI11.hpp>
#include <json.hpp>

#include <cqd/ap.hpp>
#include <cqd/blowup.hpp>
#include <cqd/certificate.hpp>
#include <cqd/flags.hpp>
#include <cqd/graph.hpp>
#include <cqd/parallel.hpp>
#include <cqd/rational.hpp>
#include <cqd/region.hpp>
#include <cqd/search.hpp>
#include <cqd/stability.hpp>
#include <cqd/xorprod.hpp>

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <functional>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

using nlohmann::json;
using namespace cqd;

namespace {

// thrown for bad inputs so main can map them to exit code 2; library Errors
// escaping a compute step stay exit code 1 (verification failure)
struct usage_failure {
  std::string message;
};

template <class F>
auto usage_phase(F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const Error& e) {
    throw usage_failure{e.what()};
  }
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw usage_failure{"cannot open " + path};
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text(const std::string& path, const std::string& text) {
  if (path.empty()) return;
  std::ofstream out(path);
  if (!out) throw usage_failure{"cannot open " + path};
  out << text;
}

void write_json_out(const std::string& path, const json& j) {
  if (!path.empty()) write_text(path, j.dump(2) + "\n");
}

std::string rstr(const Rational& r) { return format_rational(r); }

double rdouble(const Rational& r) { return r.convert_to<double>(); }

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char ch : s) {
    if (ch == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += ch;
    }
  }
  out.push_back(cur);
  return out;
}

std::vector<int> parse_int_list(const std::string& s) {
  std::vector<int> out;
  if (s.empty()) return out;
  for (const std::string& tok : split(s, ',')) {
    try {
      size_t used = 0;
      const int v = std::stoi(tok, &used);
      if (used != tok.size()) throw std::invalid_argument(tok);
      out.push_back(v);
    } catch (const std::exception&) {
      throw usage_failure{"not an integer: '" + tok + "'"};
    }
  }
  return out;
}

Rational parse_rat(const std::string& s) {
  return usage_phase([&] { return parse_rational(s); });
}

WeightVector parse_weight_list(const std::string& csv, int n) {
  if (csv.empty()) return uniform_weights(n);
  WeightVector w;
  for (const std::string& tok : split(csv, ',')) w.push_back(parse_rat(tok));
  return w;
}

// graph6 string, inline JSON {"n":...}, or @file containing either
Graph graph_from_spec(std::string spec) {
  if (!spec.empty() && spec[0] == '@') spec = read_file(spec.substr(1));
  return usage_phase([&] {
    const size_t a = spec.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) throw Error("empty graph spec");
    const size_t b = spec.find_last_not_of(" \t\r\n");
    spec = spec.substr(a, b - a + 1);
    return spec[0] == '{' ? graph_from_json_text(spec) : parse_graph6(spec);
  });
}

// --graph6 / --json FILE / --json-text TEXT, exactly one
struct graph_input {
  std::string g6, file, text;

  void attach(CLI::App* cmd) {
    auto* grp = cmd->add_option_group("input", "input graph (exactly one)");
    grp->add_option("--graph6", g6, "graph6 string (loop-free graphs)");
    grp->add_option("--json", file,
                    "path of a JSON graph {\"n\":..,\"edges\":[[i,j],..],\"loops\":[..]}");
    grp->add_option("--json-text", text, "inline JSON graph");
    grp->require_option(1);
  }

  Graph load() const {
    return usage_phase([&] {
      if (!g6.empty()) return parse_graph6(g6);
      if (!file.empty()) return graph_from_json_text(read_file(file));
      return graph_from_json_text(text);
    });
  }
};

json graph_json(const Graph& g) { return json::parse(graph_to_json_text(g)); }

void write_trace_log(const std::string& path, const std::vector<TraceEvent>& trace) {
  if (path.empty()) return;
  std::string body;
  for (const TraceEvent& e : trace) body += trace_event_json(e) + "\n";
  write_text(path, body);
}

// ---- suggestions for mistyped flags and subcommands ----

int edit_distance(const std::string& a, const std::string& b) {
  std::vector<int> prev(b.size() + 1), cur(b.size() + 1);
  for (size_t j = 0; j <= b.size(); ++j) prev[j] = (int)j;
  for (size_t i = 1; i <= a.size(); ++i) {
    cur[0] = (int)i;
    for (size_t j = 1; j <= b.size(); ++j)
      cur[j] = std::min({prev[j] + 1, cur[j - 1] + 1,
                         prev[j - 1] + (a[i - 1] == b[j - 1] ? 0 : 1)});
    std::swap(prev, cur);
  }
  return prev[b.size()];
}

void collect_names(CLI::App* app, std::vector<std::string>& names) {
  for (const CLI::Option* opt : app->get_options())
    for (const std::string& n : opt->get_lnames()) names.push_back("--" + n);
  for (CLI::App* sub : app->get_subcommands([](CLI::App*) { return true; })) {
    if (dynamic_cast<CLI::Option_group*>(sub) == nullptr)
      names.push_back(sub->get_name());
    collect_names(sub, names);
  }
}

std::string suggestion_for(CLI::App& app, const std::string& bad) {
  if (bad.empty()) return "";
  std::vector<std::string> names;
  collect_names(&app, names);
  std::string best;
  int best_d = 3;  // only offer close matches
  for (const std::string& n : names) {
    const int d = edit_distance(bad, n);
    if (d < best_d) {
      best_d = d;
      best = n;
    }
  }
  return best;
}

int usage_exit(CLI::App& app, const std::string& message, int argc, char** argv) {
  std::fprintf(stderr, "error: %s\n", message.c_str());
  std::string tok = message;
  while (!tok.empty() && (tok.back() == '.' || tok.back() == '\n')) tok.pop_back();
  const size_t pos = tok.find_last_of(" \t");
  if (pos != std::string::npos) tok = tok.substr(pos + 1);
  std::string hint = suggestion_for(app, tok);
  if (hint.empty()) {
    // the message may not name the offender; try the raw arguments
    std::vector<std::string> names;
    collect_names(&app, names);
    for (int i = 1; i < argc && hint.empty(); ++i) {
      const std::string arg = argv[i];
      if (std::find(names.begin(), names.end(), arg) != names.end()) continue;
      hint = suggestion_for(app, arg);
    }
  }
  if (!hint.empty()) std::fprintf(stderr, "did you mean '%s'?\n", hint.c_str());
  std::fprintf(stderr, "run '%s --help' for usage\n", app.get_name().c_str());
  return 2;
}

// ---- embedded reference inputs for `reproduce` ----

// 27-vertex Schlafli graph and its complement
const char* kSchlafliG6 =
    "ZBXzz|z^Z|tFixjTtp|mFk\\uqm|gz}]FbHvHqjh]WzFy[RmtSUztaLvyF`vw";
const char* kSchlafliComplementG6 =
    "Z??G`@?@wrDSLGQoigbKO]CA?^{VDsjIqehgmK[EM[OzIqCyegO|FO_^{?_?";
// the 13-vertex Ramsey(3,5) witness (Paley-type circulant)
const char* kRamsey13G6 = "LJ]lmZRnn]]\\v[";
// partial colorings of Z_44 and Z_226 with 4 resp. 2 stars
const char* kZ44Coloring = "*1101111011*1000101110*0010000100*0111010001";
const char* kZ226Coloring =
    "*01111001000001011110111001111101101110100011101001010011"
    "00110101101000111010001001000001100010000101111101100001"
    "*10000110111110100001000110000010010001011100010110101100"
    "11001010010111000101110110111110011101111010000010011110";

// 2x2 toy certificate over the point type: bound 1/4 for s = t = 3
FlagCertificate toy_certificate() {
  FlagCertificate cert;
  cert.m = 3;
  cert.objective = {3, 3, 1, 1, 1};
  cert.types = {point_type()};
  cert.flags = {enumerate_flags(point_type(), 2)};
  Matrix q(2, std::vector<Rational>(2));
  q[0][0] = Rational(3, 4);
  q[1][1] = Rational(3, 4);
  q[0][1] = Rational(-3, 4);
  q[1][0] = Rational(-3, 4);
  cert.q = {q};
  return cert;
}

Rational uniform_pair_sum(const Graph& g, int s, int t) {
  const DensityPair p = blowup_density_pair(g, s, t, uniform_weights(g.order()));
  return p.x + p.y;
}

Rational ap_recipe_bound(const char* text, int k) {
  const ZnColoring c = parse_coloring(text);
  const PartialReport rep = verify_partial(c, k);
  const bool certifies = rep.cross_ok && rep.max_fraction == Rational(1, c.n);
  // on failure return the raw fraction so the mismatch diff shows what happened
  if (!certifies) return rep.max_fraction;
  return lemma_bound(c.n, (int)c.stars.size());
}

struct recipe {
  std::string name;
  std::string what;
  Rational expected;
  std::function<Rational()> run;
};

std::vector<recipe> recipe_list() {
  std::vector<recipe> rs;
  rs.push_back({"goodman", "uniform K2 blow-up, s = t = 3 density sum",
                Rational(1, 4), [] {
                  Graph k2(2);
                  k2.set_edge(0, 1);
                  return uniform_pair_sum(k2, 3, 3);
                }});
  rs.push_back({"c34-schlafli", "uniform Schlafli blow-up, s = 3, t = 4 density sum",
                Rational(689, 6561),
                [] { return uniform_pair_sum(parse_graph6(kSchlafliG6), 3, 4); }});
  rs.push_back({"c35-schlafli-complement",
                "uniform Schlafli-complement blow-up, s = 5, t = 3 cost",
                Rational(24011, 531441), [] {
                  const Graph g = parse_graph6(kSchlafliComplementG6);
                  return blowup_cost(g, {5, 3, 1, 1, 1}, uniform_weights(g.order()));
                }});
  rs.push_back({"g45-ramsey13", "uniform 13-vertex Ramsey graph blow-up, s = 4, t = 5",
                Rational(29, 2197),
                [] { return uniform_pair_sum(parse_graph6(kRamsey13G6), 4, 5); }});
  rs.push_back({"g55-ramsey13", "uniform 13-vertex Ramsey graph blow-up, s = 5, t = 5",
                Rational(61, 28561),
                [] { return uniform_pair_sum(parse_graph6(kRamsey13G6), 5, 5); }});
  rs.push_back({"flag-toy-c3", "toy 2x2 flag certificate bound for s = t = 3",
                Rational(1, 4),
                [] { return verify_certificate(toy_certificate()).bound; }});
  rs.push_back({"ap-z44", "Z_44 partial coloring, 4 stars, k = 5 scaled bound",
                Rational(1, 48), [] { return ap_recipe_bound(kZ44Coloring, 5); }});
  rs.push_back({"ap-z226", "Z_226 partial coloring, 2 stars, k = 6 scaled bound",
                Rational(1, 228), [] { return ap_recipe_bound(kZ226Coloring, 6); }});
  return rs;
}

// ---- subcommands ----

struct cli_state {
  int threads = 0;
  int rc = 0;

  void apply_threads() const {
    if (threads > 0) set_thread_cap(threads);
  }
};

void add_count(CLI::App& app, cli_state& st) {
  auto* cmd = app.add_subcommand("count", "count t-cliques of a graph");
  auto in = std::make_shared<graph_input>();
  in->attach(cmd);
  auto t = std::make_shared<int>(3);
  auto complement_flag = std::make_shared<bool>(false);
  auto upto = std::make_shared<bool>(false);
  auto out = std::make_shared<std::string>();
  cmd->add_option("--t", *t, "clique size")->required();
  cmd->add_flag("--complement", *complement_flag,
                "count in the complement (independent t-sets)");
  cmd->add_flag("--upto", *upto, "print all sizes 0..t");
  cmd->add_option("--out", *out, "JSON output path");
  cmd->callback([&st, in, t, complement_flag, upto, out] {
    st.apply_threads();
    if (*t < 0) throw usage_failure{"--t must be nonnegative"};
    Graph g = in->load();
    if (*complement_flag) g = complement(g);
    json counts = json::array();
    if (*upto) {
      const std::vector<int64_t> all = count_cliques_upto(g, *t);
      for (int j = 0; j <= *t; ++j) {
        std::printf("k_%d = %lld\n", j, (long long)all[j]);
        counts.push_back(all[j]);
      }
    } else {
      const int64_t k = count_cliques(g, *t);
      std::printf("k_%d = %lld\n", *t, (long long)k);
      counts.push_back(k);
    }
    write_json_out(*out, json{{"n", g.order()},
                              {"t", *t},
                              {"complement", *complement_flag},
                              {"counts", counts}});
    st.rc = 0;
  });
}

void add_density(CLI::App& app, cli_state& st) {
  auto* cmd = app.add_subcommand(
      "density", "exact blow-up density pair (independent-s, clique-t)");
  auto in = std::make_shared<graph_input>();
  in->attach(cmd);
  auto s = std::make_shared<int>(3);
  auto t = std::make_shared<int>(3);
  auto weights = std::make_shared<std::string>();
  auto out = std::make_shared<std::string>();
  cmd->add_option("--s", *s, "independent set size")->required();
  cmd->add_option("--t", *t, "clique size")->required();
  cmd->add_option("--weights", *weights,
                  "comma-separated rational weights (default uniform)");
  cmd->add_option("--out", *out, "JSON output path");
  cmd->callback([&st, in, s, t, weights, out] {
    st.apply_threads();
    const Graph g = in->load();
    const WeightVector w = parse_weight_list(*weights, g.order());
    usage_phase([&] { validate_weights(g, w); });
    const DensityPair p = blowup_density_pair(g, *s, *t, w);
    std::printf("x=%s y=%s sum=%s\n", rstr(p.x).c_str(), rstr(p.y).c_str(),
                rstr(p.x + p.y).c_str());
    write_json_out(*out, json{{"n", g.order()},
                              {"s", *s},
                              {"t", *t},
                              {"x", rstr(p.x)},
                              {"y", rstr(p.y)},
                              {"sum", rstr(p.x + p.y)}});
    st.rc = 0;
  });
}

void add_cost(CLI::App& app, cli_state& st) {
  auto* cmd = app.add_subcommand("cost",
                                 "blow-up objective ws*x + lambda*wt*y of a graph");
  auto in = std::make_shared<graph_input>();
  in->attach(cmd);
  auto s = std::make_shared<int>(3);
  auto t = std::make_shared<int>(3);
  auto ws = std::make_shared<std::string>("1");
  auto wt = std::make_shared<std::string>("1");
  auto lambda = std::make_shared<std::string>("1");
  auto weights = std::make_shared<std::string>();
  auto out = std::make_shared<std::string>();
  cmd->add_option("--s", *s, "independent set size")->required();
  cmd->add_option("--t", *t, "clique size")->required();
  cmd->add_option("--ws", *ws, "weight of the independent-s density");
  cmd->add_option("--wt", *wt, "weight of the clique-t density");
  cmd->add_option("--lambda", *lambda, "trade-off factor");
  cmd->add_option("--weights", *weights,
                  "comma-separated rational weights (default uniform)");
  cmd->add_option("--out", *out, "JSON output path");
  cmd->callback([&st, in, s, t, ws, wt, lambda, weights, out] {
    st.apply_threads();
    const Graph g = in->load();
    const WeightVector w = parse_weight_list(*weights, g.order());
    usage_phase([&] { validate_weights(g, w); });
    BlowupObjective obj;
    obj.s = *s;
    obj.t = *t;
    obj.ws = parse_rat(*ws);
    obj.wt = parse_rat(*wt);
    obj.lambda = parse_rat(*lambda);
    const Rational c = blowup_cost(g, obj, w);
    std::printf("cost=%s\n", rstr(c).c_str());
    write_json_out(*out, json{{"n", g.order()},
                              {"s", *s},
                              {"t", *t},
                              {"ws", rstr(obj.ws)},
                              {"wt", rstr(obj.wt)},
                              {"lambda", rstr(obj.lambda)},
                              {"cost", rstr(c)}});
    st.rc = 0;
  });
}

struct search_opts {
  int n = 0;
  std::string group_orders, group_table;
  int s = 3, t = 3;
  std::string ws = "1", wt = "1", lambda = "1";
  std::string algo = "tabu";
  int64_t iterations = 500;
  int tabu_length = 3;
  double t0 = 0.25;
  uint64_t seed = 0;
  int restarts = 1;
  bool rejection_free = false;
  std::string initial, log, checkpoint, out;
};

void add_search(CLI::App& app, cli_state& st) {
  auto* cmd = app.add_subcommand(
      "search", "minimize a blow-up objective over graphs or Cayley graphs");
  auto o = std::make_shared<search_opts>();
  auto* space = cmd->add_option_group("space", "search space (exactly one)");
  space->add_option("--n", o->n, "all graphs on n vertices");
  space->add_option("--group-orders", o->group_orders,
                    "Cayley graphs of a product of cyclic groups, e.g. 13 or 2,2,3");
  space->add_option("--group-table", o->group_table,
                    "Cayley graphs of the group in a multiplication-table file");
  space->require_option(1);
  cmd->add_option("--s", o->s, "independent set size")->required();
  cmd->add_option("--t", o->t, "clique size")->required();
  cmd->add_option("--ws", o->ws, "weight of the independent-s density");
  cmd->add_option("--wt", o->wt, "weight of the clique-t density");
  cmd->add_option("--lambda", o->lambda, "trade-off factor");
  cmd->add_option("--algo", o->algo, "tabu, anneal or exhaustive")
      ->check(CLI::IsMember({"tabu", "anneal", "exhaustive"}));
  cmd->add_option("--iterations", o->iterations, "iteration budget");
  cmd->add_option("--tabu-length", o->tabu_length, "tabu history length");
  cmd->add_option("--t0", o->t0, "initial temperature of the linear schedule");
  cmd->add_option("--seed", o->seed, "random seed");
  cmd->add_option("--restarts", o->restarts, "independent seeded restarts");
  cmd->add_flag("--rejection-free", o->rejection_free,
                "rejection-free annealing moves");
  cmd->add_option("--initial", o->initial, "initial state as hex (single run only)");
  cmd->add_option("--log", o->log, "JSONL trace of improvement events");
  cmd->add_option("--checkpoint", o->checkpoint, "JSON checkpoint of the best state");
  cmd->add_option("--out", o->out, "JSON output path");
  cmd->callback([&st, o] {
    st.apply_threads();
    SearchSpace sp;
    std::string space_name;
    if (o->n > 0) {
      sp = usage_phase([&] { return make_graph_space(o->n); });
      space_name = "graph";
    } else {
      FiniteGroup g = usage_phase([&] {
        return o->group_table.empty()
                   ? direct_product_group(parse_int_list(o->group_orders))
                   : load_group_table(o->group_table);
      });
      sp = make_cayley_space(std::move(g));
      space_name = "cayley";
    }
    BlowupObjective obj;
    obj.s = o->s;
    obj.t = o->t;
    obj.ws = parse_rat(o->ws);
    obj.wt = parse_rat(o->wt);
    obj.lambda = parse_rat(o->lambda);

    SearchResult res;
    if (o->algo == "exhaustive") {
      res = exhaustive_search(sp, obj);
    } else {
      Schedule sched;
      if (o->algo == "anneal") {
        sched = linear_schedule(o->iterations, o->t0, o->seed, o->tabu_length);
      } else {
        sched.iterations = o->iterations;
        sched.tabu_length = o->tabu_length;
        sched.seed = o->seed;
      }
      if (o->restarts > 1) {
        if (!o->initial.empty())
          throw usage_failure{"--initial cannot be combined with --restarts"};
        res = best_of_restarts(sp, obj, sched, o->restarts,
                               o->algo == "anneal" ? SearchAlgo::anneal
                                                   : SearchAlgo::tabu,
                               o->rejection_free);
      } else {
        Bits init;
        const Bits* initp = nullptr;
        if (!o->initial.empty()) {
          init = usage_phase([&] { return state_from_hex(o->initial, sp.bits); });
          initp = &init;
        }
        if (o->algo == "anneal") {
          AnnealOptions ao;
          ao.rejection_free = o->rejection_free;
          ao.initial = initp;
          res = simulated_annealing(sp, obj, sched, ao);
        } else {
          res = tabu_search(sp, obj, sched, initp);
        }
      }
    }

    const Graph best = sp.decode(res.best_state);
    const std::string hex = state_to_hex(res.best_state);
    const std::string g6 = to_graph6(best);
    std::printf("space = %s, bits = %d\n", space_name.c_str(), sp.bits);
    std::printf("best cost = %s\n", rstr(res.best_cost).c_str());
    std::printf("best state = %s\n", hex.c_str());
    std::printf("best graph6 = %s\n", g6.c_str());
    std::printf("iterations = %lld, accepted = %lld\n", (long long)res.iterations,
                (long long)res.accepted);
    write_trace_log(o->log, res.trace);
    const json best_json{{"cost", rstr(res.best_cost)},
                         {"state", hex},
                         {"graph6", g6},
                         {"graph", graph_json(best)}};
    write_json_out(
        o->checkpoint,
        json{{"subcommand", "search"}, {"space", space_name},   {"bits", sp.bits},
             {"algo", o->algo},        {"seed", o->seed},       {"best", best_json}});
    write_json_out(o->out,
                   json{{"space", space_name},
                        {"bits", sp.bits},
                        {"algo", o->algo},
                        {"iterations", res.iterations},
                        {"accepted", res.accepted},
                        {"forced_evictions", res.forced_evictions},
                        {"improvements", res.trace.size()},
                        {"best", best_json}});
    st.rc = 0;
  });
}

void add_verify_cert(CLI::App& app, cli_state& st) {
  auto* cmd = app.add_subcommand("verify-cert",
                                 "verify a flag certificate exactly (PSD + slack)");
  auto file = std::make_shared<std::string>();
  auto allow_large = std::make_shared<bool>(false);
  auto out = std::make_shared<std::string>();
  cmd->add_option("file", *file, "certificate JSON path")->required();
  cmd->add_flag("--allow-large", *allow_large, "admit m = 7 (slow)");
  cmd->add_option("--out", *out, "JSON output path");
  cmd->callback([&st, file, allow_large, out] {
    st.apply_threads();
    const FlagCertificate cert =
        usage_phase([&] { return load_certificate(*file); });
    const VerifyReport rep = verify_certificate(cert, *allow_large);
    int sharp = 0;
    json table = json::array();
    for (size_t i = 0; i < rep.graphs.size(); ++i) {
      if (rep.slack[i] == 0) ++sharp;
      table.push_back(json{{"graph6", to_graph6(rep.graphs[i])},
                           {"lambda", rstr(rep.lambda[i])},
                           {"correction", rstr(rep.correction[i])},
                           {"slack", rstr(rep.slack[i])}});
    }
    std::printf("bound = %s\n", rstr(rep.bound).c_str());
    std::printf("graphs = %zu\n", rep.graphs.size());
    std::printf("sharp = %d\n", sharp);
    write_json_out(*out, json{{"bound", rstr(rep.bound)},
                              {"m", cert.m},
                              {"sharp", sharp},
                              {"graphs", table}});
    st.rc = 0;
  });
}

void add_sharp(CLI::App& app, cli_state& st) {
  auto* cmd = app.add_subcommand("sharp",
                                 "list the graphs attaining a certificate bound");
  auto file = std::make_shared<std::string>();
  auto bound = std::make_shared<std::string>();
  auto allow_large = std::make_shared<bool>(false);
  auto out = std::make_shared<std::string>();
  cmd->add_option("file", *file, "certificate JSON path")->required();
  cmd->add_option("--bound", *bound, "bound to test (default: verified bound)");
  cmd->add_flag("--allow-large", *allow_large, "admit m = 7 (slow)");
  cmd->add_option("--out", *out, "JSON output path");
  cmd->callback([&st, file, bound, allow_large, out] {
    st.apply_threads();
    const FlagCertificate cert =
        usage_phase([&] { return load_certificate(*file); });
    const Rational b = bound->empty() ? verify_certificate(cert, *allow_large).bound
                                      : parse_rat(*bound);
    const std::vector<Graph> graphs = sharp_graphs(cert, b, *allow_large);
    std::printf("bound = %s\n", rstr(b).c_str());
    std::printf("sharp graphs = %zu\n", graphs.size());
    json list = json::array();
    for (const Graph& g : graphs) {
      std::printf("%s\n", to_graph6(g).c_str());
      list.push_back(to_graph6(g));
    }
    write_json_out(*out, json{{"bound", rstr(b)}, {"sharp", list}});
    st.rc = 0;
  });
}

void add_stability(CLI::App& app, cli_state& st) {
  auto* cmd = app.add_subcommand(
      "stability", "structural checks behind uniqueness of an optimum");
  cmd->require_subcommand(1);

  {
    auto* sub = cmd->add_subcommand(
        "embed", "is every strong homomorphism pattern -> host in one orbit?");
    auto pattern = std::make_shared<std::string>();
    auto host = std::make_shared<std::string>();
    auto out = std::make_shared<std::string>();
    sub->add_option("--pattern", *pattern, "pattern graph (graph6, JSON or @file)")
        ->required();
    sub->add_option("--host", *host, "host graph (graph6, JSON or @file)")
        ->required();
    sub->add_option("--out", *out, "JSON output path");
    sub->callback([&st, pattern, host, out] {
      st.apply_threads();
      const EmbeddingReport rep =
          uniquely_embeds(graph_from_spec(*pattern), graph_from_spec(*host));
      const std::string j = report_json(rep);
      std::printf("%s\n", j.c_str());
      write_text(*out, j + "\n");
      st.rc = rep.unique_up_to_automorphism ? 0 : 1;
    });
  }
  {
    auto* sub = cmd->add_subcommand(
        "neighborhoods", "does a vertex set separate all host neighborhoods?");
    auto host = std::make_shared<std::string>();
    auto set = std::make_shared<std::string>();
    auto out = std::make_shared<std::string>();
    sub->add_option("--host", *host, "host graph (graph6, JSON or @file)")
        ->required();
    sub->add_option("--set", *set, "comma-separated vertex set")->required();
    sub->add_option("--out", *out, "JSON output path");
    sub->callback([&st, host, set, out] {
      st.apply_threads();
      const Graph c = graph_from_spec(*host);
      const std::vector<int> x = parse_int_list(*set);
      const NeighborhoodReport rep =
          usage_phase([&] { return defines_unique_neighborhoods(x, c); });
      const std::vector<std::vector<int>> classes =
          usage_phase([&] { return neighborhood_classes(c, x); });
      const json j{{"unique", rep.unique},
                   {"offending", rep.offending},
                   {"classes", classes}};
      std::printf("%s\n", j.dump().c_str());
      write_text(*out, j.dump() + "\n");
      st.rc = rep.unique ? 0 : 1;
    });
  }
  {
    auto* sub = cmd->add_subcommand(
        "simple", "size + embedding + neighborhood reconstruction test");
    auto host = std::make_shared<std::string>();
    auto set = std::make_shared<std::string>();
    auto ell = std::make_shared<int>(0);
    auto out = std::make_shared<std::string>();
    sub->add_option("--host", *host, "host graph (graph6, JSON or @file)")
        ->required();
    sub->add_option("--set", *set, "comma-separated vertex set")->required();
    sub->add_option("--ell", *ell, "local view size")->required();
    sub->add_option("--out", *out, "JSON output path");
    sub->callback([&st, host, set, ell, out] {
      st.apply_threads();
      const SimpleReconstructorReport rep = usage_phase([&] {
        return check_reconstructor_simple(parse_int_list(*set),
                                          graph_from_spec(*host), *ell);
      });
      const std::string j = report_json(rep);
      std::printf("%s\n", j.c_str());
      write_text(*out, j + "\n");
      st.rc = rep.ok ? 0 : 1;
    });
  }
  {
    auto* sub = cmd->add_subcommand(
        "strong", "pair-witness reconstruction test driven by a subset");
    auto host = std::make_shared<std::string>();
    auto set = std::make_shared<std::string>();
    auto set_prime = std::make_shared<std::string>();
    auto ell = std::make_shared<int>(0);
    auto out = std::make_shared<std::string>();
    sub->add_option("--host", *host, "host graph (graph6, JSON or @file)")
        ->required();
    sub->add_option("--set", *set, "comma-separated vertex set X")->required();
    sub->add_option("--set-prime", *set_prime, "comma-separated subset X'")
        ->required();
    sub->add_option("--ell", *ell, "local view size")->required();
    sub->add_option("--out", *out, "JSON output path");
    sub->callback([&st, host, set, set_prime, ell, out] {
      st.apply_threads();
      const StrongReconstructorReport rep = usage_phase([&] {
        return check_reconstructor_strong(parse_int_list(*set),
                                          parse_int_list(*set_prime),
                                          graph_from_spec(*host), *ell);
      });
      const std::string j = report_json(rep);
      std::printf("%s\n", j.c_str());
      write_text(*out, j + "\n");
      st.rc = rep.ok ? 0 : 1;
    });
  }
  {
    auto* sub = cmd->add_subcommand(
        "symmetry", "certificate-side conditions pinning a unique optimum");
    auto cert_path = std::make_shared<std::string>();
    auto construction = std::make_shared<std::string>();
    auto weights = std::make_shared<std::string>();
    auto sets = std::make_shared<std::string>();
    auto js = std::make_shared<std::string>();
    auto gap_ref = std::make_shared<std::string>();
    auto allow_large = std::make_shared<bool>(false);
    auto out = std::make_shared<std::string>();
    sub->add_option("--cert", *cert_path, "certificate JSON path")->required();
    sub->add_option("--construction", *construction,
                    "conjectured optimum (graph6, JSON or @file)")
        ->required();
    sub->add_option("--weights", *weights,
                    "comma-separated rational weights (default uniform)");
    sub->add_option("--sets", *sets, "vertex sets, colon-separated CSVs, e.g. 0,1:2,3")
        ->required();
    sub->add_option("--js", *js, "certificate matrix index per set")->required();
    sub->add_option("--gap-ref", *gap_ref,
                    "where the strict-gap hypothesis is verified");
    sub->add_flag("--allow-large", *allow_large, "admit m = 7 (slow)");
    sub->add_option("--out", *out, "JSON output path");
    sub->callback([&st, cert_path, construction, weights, sets, js, gap_ref,
                   allow_large, out] {
      st.apply_threads();
      const FlagCertificate cert =
          usage_phase([&] { return load_certificate(*cert_path); });
      const Graph c = graph_from_spec(*construction);
      const WeightVector w = parse_weight_list(*weights, c.order());
      std::vector<std::vector<int>> xs;
      for (const std::string& tok : split(*sets, ':'))
        xs.push_back(parse_int_list(tok));
      const SymmetryReport rep = usage_phase([&] {
        return check_symmetry_conditions(cert, c, w, xs, parse_int_list(*js),
                                         *gap_ref, *allow_large);
      });
      const std::string j = report_json(rep);
      std::printf("%s\n", j.c_str());
      write_text(*out, j + "\n");
      st.rc = rep.ok ? 0 : 1;
    });
  }
}

void add_region(CLI::App& app, cli_state& st) {
  auto* cmd = app.add_subcommand(
      "region", "feasible-region boundary: curve, gadget sweep, propagation, CSV");
  cmd->require_subcommand(1);

  {
    auto* sub = cmd->add_subcommand("curve", "upper boundary value at one point");
    auto s = std::make_shared<int>(3);
    auto t = std::make_shared<int>(3);
    auto x = std::make_shared<double>(0.0);
    sub->add_option("--s", *s, "independent set size")->required();
    sub->add_option("--t", *t, "clique size")->required();
    sub->add_option("--x", *x, "clique-side density in [0,1]")->required();
    sub->callback([&st, s, t, x] {
      const double v = usage_phase([&] { return upper_curve(*s, *t, *x); });
      std::printf("%.12g\n", v);
      st.rc = 0;
    });
  }
  {
    auto* sub = cmd->add_subcommand("goodman",
                                    "four-vertex gadget point on x + y = 1/4");
    auto b = std::make_shared<std::string>("0");
    auto out = std::make_shared<std::string>();
    sub->add_option("--b", *b, "gadget weight in [0, 1/2]")->required();
    sub->add_option("--out", *out, "JSON output path");
    sub->callback([&st, b, out] {
      const RegionPoint p =
          usage_phase([&] { return goodman_gadget_point(parse_rat(*b)); });
      std::printf("x=%s y=%s sum=%s\n", rstr(p.x).c_str(), rstr(p.y).c_str(),
                  rstr(p.x + p.y).c_str());
      write_json_out(*out, json{{"b", *b},
                                {"x", rstr(p.x)},
                                {"y", rstr(p.y)},
                                {"sum", rstr(p.x + p.y)}});
      st.rc = 0;
    });
  }
  {
    auto* sub = cmd->add_subcommand(
        "erdos", "propagate a clique-density bound to a larger clique size");
    auto s = std::make_shared<int>(3);
    auto t0 = std::make_shared<int>(3);
    auto bound = std::make_shared<std::string>();
    auto t = std::make_shared<int>(3);
    auto out = std::make_shared<std::string>();
    sub->add_option("--s", *s, "independent set size")->required();
    sub->add_option("--t0", *t0, "clique size of the known bound")->required();
    sub->add_option("--bound", *bound, "known bound at t0, as p/q")->required();
    sub->add_option("--t", *t, "target clique size")->required();
    sub->add_option("--out", *out, "JSON output path");
    sub->callback([&st, s, t0, bound, t, out] {
      const ErdosBound b = usage_phase(
          [&] { return erdos_propagate(*s, *t0, parse_rat(*bound), *t); });
      if (b.exact)
        std::printf("bound = %s (exact)\n", rstr(b.value).c_str());
      std::printf("approx = %.12g\n", b.approx);
      json j{{"exact", b.exact}, {"approx", b.approx}};
      if (b.exact) j["bound"] = rstr(b.value);
      write_json_out(*out, j);
      st.rc = 0;
    });
  }
  {
    auto* sub = cmd->add_subcommand(
        "export", "CSV of the upper curve, construction points and a lower line");
    auto file = std::make_shared<std::string>();
    auto s = std::make_shared<int>(3);
    auto t = std::make_shared<int>(3);
    auto grid = std::make_shared<int>(101);
    auto lower = std::make_shared<std::string>();
    auto points = std::make_shared<std::vector<std::string>>();
    auto goodman = std::make_shared<int>(0);
    sub->add_option("file", *file, "CSV output path")->required();
    sub->add_option("--s", *s, "independent set size")->required();
    sub->add_option("--t", *t, "clique size")->required();
    sub->add_option("--grid", *grid, "number of curve samples");
    sub->add_option("--lower", *lower, "verified lower bound c for the line y = c - x");
    sub->add_option("--point", *points,
                    "uniform blow-up point, SPEC=LABEL (graph6, JSON or @file)");
    sub->add_option("--goodman", *goodman,
                    "also sweep the four-vertex gadget at this many points (s = t = 3)");
    sub->callback([&st, file, s, t, grid, lower, points, goodman] {
      st.apply_threads();
      std::vector<RegionPoint> pts;
      for (const std::string& spec : *points) {
        const size_t eq = spec.find('=');
        const std::string label =
            eq == std::string::npos ? "construction" : spec.substr(eq + 1);
        const Graph g = graph_from_spec(
            eq == std::string::npos ? spec : spec.substr(0, eq));
        pts.push_back(
            construction_point(g, *s, *t, uniform_weights(g.order()), label));
      }
      if (*goodman > 0) {
        if (*s != 3 || *t != 3)
          throw usage_failure{"--goodman points live in the s = t = 3 region"};
        if (*goodman < 2) throw usage_failure{"--goodman needs at least 2 points"};
        for (int i = 0; i < *goodman; ++i)
          pts.push_back(goodman_gadget_point(Rational(i, 2 * (*goodman - 1))));
      }
      std::optional<Rational> lb;
      if (!lower->empty()) lb = parse_rat(*lower);
      usage_phase([&] { export_region_csv(*file, *s, *t, pts, *grid, lb); });
      std::printf("wrote %s: %d curve samples, %zu construction points%s\n",
                  file->c_str(), *grid, pts.size(),
                  lb ? ", lower line" : "");
      st.rc = 0;
    });
  }
}

void add_xor(CLI::App& app, cli_state& st) {
  auto* cmd = app.add_subcommand(
      "xor", "monochromatic density sum of an XOR product of 2-colorings");
  auto factors = std::make_shared<std::vector<std::string>>();
  auto s = std::make_shared<int>(3);
  auto t = std::make_shared<int>(3);
  auto print_product = std::make_shared<bool>(false);
  auto out = std::make_shared<std::string>();
  cmd->add_option("--factor", *factors, "factor graph (graph6, JSON or @file); repeatable")
      ->required();
  cmd->add_option("--s", *s, "independent set size")->required();
  cmd->add_option("--t", *t, "clique size")->required();
  cmd->add_flag("--print-product", *print_product, "also print the product graph6");
  cmd->add_option("--out", *out, "JSON output path");
  cmd->callback([&st, factors, s, t, print_product, out] {
    st.apply_threads();
    std::vector<Graph> gs;
    int order = 1;
    for (const std::string& spec : *factors) {
      gs.push_back(graph_from_spec(spec));
      order *= gs.back().order();
    }
    const Rational d = mono_density_of_product(gs, *s, *t);
    std::printf("factors = %zu, product order = %d\n", gs.size(), order);
    std::printf("mono = %s\n", rstr(d).c_str());
    std::printf("approx = %.6g\n", rdouble(d));
    json j{{"factors", factors->size()},
           {"order", order},
           {"s", *s},
           {"t", *t},
           {"mono", rstr(d)},
           {"approx", rdouble(d)}};
    if (*print_product) {
      Graph p = gs[0];
      for (size_t i = 1; i < gs.size(); ++i) p = xor_product(p, gs[i]);
      const std::string g6 = to_graph6(p);
      std::printf("product = %s\n", g6.c_str());
      j["product"] = g6;
    }
    write_json_out(*out, j);
    st.rc = 0;
  });
}

void add_ap(CLI::App& app, cli_state& st) {
  auto* cmd = app.add_subcommand(
      "ap", "monochromatic arithmetic progressions of cyclic 2-colorings");
  cmd->require_subcommand(1);

  {
    auto* sub = cmd->add_subcommand(
        "verify", "check a total or partial coloring and its scaled bound");
    auto coloring = std::make_shared<std::string>();
    auto file = std::make_shared<std::string>();
    auto k = std::make_shared<int>(3);
    auto n = std::make_shared<int>(-1);
    auto out = std::make_shared<std::string>();
    auto* grp = sub->add_option_group("coloring", "coloring source (exactly one)");
    grp->add_option("--coloring", *coloring, "coloring text over {0,1,*}");
    grp->add_option("--file", *file, "path of a coloring text file");
    grp->require_option(1);
    sub->add_option("--k", *k, "progression length")->required();
    sub->add_option("--n", *n, "expected modulus (default: text length)");
    sub->add_option("--out", *out, "JSON output path");
    sub->callback([&st, coloring, file, k, n, out] {
      st.apply_threads();
      const std::string text = coloring->empty() ? read_file(*file) : *coloring;
      const ZnColoring c = usage_phase([&] { return parse_coloring(text, *n); });
      if (c.stars.empty()) {
        const Rational f = usage_phase([&] { return mono_ap_fraction(c, *k); });
        std::printf("n = %d\nfraction = %s\n", c.n, rstr(f).c_str());
        write_json_out(*out,
                       json{{"n", c.n}, {"k", *k}, {"fraction", rstr(f)}});
        st.rc = 0;
        return;
      }
      const PartialReport rep = usage_phase([&] { return verify_partial(c, *k); });
      const bool certifies =
          rep.cross_ok && rep.max_fraction == Rational(1, c.n);
      std::printf("n = %d, stars = %zu, k = %d\n", c.n, c.stars.size(), *k);
      std::printf("violations = %lld\n", (long long)rep.violations);
      std::printf("cross_ok = %s\n", rep.cross_ok ? "true" : "false");
      std::printf("max_fraction = %s\n", rstr(rep.max_fraction).c_str());
      json j{{"n", c.n},
             {"stars", c.stars},
             {"k", *k},
             {"violations", rep.violations},
             {"cross_ok", rep.cross_ok},
             {"max_fraction", rstr(rep.max_fraction)},
             {"certifies", certifies}};
      if (certifies) {
        const Rational b = lemma_bound(c.n, (int)c.stars.size());
        std::printf("bound = %s\n", rstr(b).c_str());
        j["bound"] = rstr(b);
      }
      write_json_out(*out, j);
      st.rc = rep.cross_ok ? 0 : 1;
    });
  }
  {
    auto* sub = cmd->add_subcommand(
        "search", "tabu search for a certifying partial coloring");
    auto n = std::make_shared<int>(0);
    auto stars = std::make_shared<int>(1);
    auto k = std::make_shared<int>(3);
    auto iterations = std::make_shared<int64_t>(300);
    auto tabu_length = std::make_shared<int>(3);
    auto seed = std::make_shared<uint64_t>(0);
    auto penalty = std::make_shared<std::string>("1");
    auto initial = std::make_shared<std::string>();
    auto log = std::make_shared<std::string>();
    auto out = std::make_shared<std::string>();
    sub->add_option("--n", *n, "modulus")->required();
    sub->add_option("--stars", *stars, "number of stars (must divide n)")->required();
    sub->add_option("--k", *k, "progression length")->required();
    sub->add_option("--iterations", *iterations, "iteration budget");
    sub->add_option("--tabu-length", *tabu_length, "tabu history length");
    sub->add_option("--seed", *seed, "random seed");
    sub->add_option("--penalty", *penalty, "violation penalty in the cost");
    sub->add_option("--initial", *initial, "initial coloring text");
    sub->add_option("--log", *log, "JSONL trace of improvement events");
    sub->add_option("--out", *out, "JSON output path");
    sub->callback([&st, n, stars, k, iterations, tabu_length, seed, penalty,
                   initial, log, out] {
      st.apply_threads();
      Schedule sched;
      sched.iterations = *iterations;
      sched.tabu_length = *tabu_length;
      sched.seed = *seed;
      ZnColoring init;
      const ZnColoring* initp = nullptr;
      if (!initial->empty()) {
        init = usage_phase([&] { return parse_coloring(*initial, *n); });
        initp = &init;
      }
      const PartialSearchOutcome res = usage_phase([&] {
        return search_partial(*n, *stars, *k, sched, initp, parse_rat(*penalty));
      });
      std::printf("best = %s\n", format_coloring(res.best).c_str());
      std::printf("cost = %s\n", rstr(res.best_cost).c_str());
      std::printf("violations = %lld\n", (long long)res.report.violations);
      std::printf("max_fraction = %s\n", rstr(res.report.max_fraction).c_str());
      std::printf("certifies = %s\n", res.certifies ? "true" : "false");
      json j{{"n", *n},
             {"stars", *stars},
             {"k", *k},
             {"best", format_coloring(res.best)},
             {"cost", rstr(res.best_cost)},
             {"violations", res.report.violations},
             {"max_fraction", rstr(res.report.max_fraction)},
             {"certifies", res.certifies}};
      if (res.certifies) {
        const Rational b = lemma_bound(*n, *stars);
        std::printf("bound = %s\n", rstr(b).c_str());
        j["bound"] = rstr(b);
      }
      write_trace_log(*log, res.run.trace);
      write_json_out(*out, j);
      st.rc = 0;
    });
  }
  {
    auto* sub = cmd->add_subcommand(
        "bound", "scaled-up bound 1/(n_effective + stars) of a verified coloring");
    auto n_eff = std::make_shared<int>(0);
    auto stars = std::make_shared<int>(1);
    auto out = std::make_shared<std::string>();
    sub->add_option("--n-effective", *n_eff, "denominator of the verified max fraction")
        ->required();
    sub->add_option("--stars", *stars, "number of stars")->required();
    sub->add_option("--out", *out, "JSON output path");
    sub->callback([&st, n_eff, stars, out] {
      const Rational b = usage_phase([&] { return lemma_bound(*n_eff, *stars); });
      std::printf("bound = %s\n", rstr(b).c_str());
      write_json_out(*out, json{{"n_effective", *n_eff},
                                {"stars", *stars},
                                {"bound", rstr(b)}});
      st.rc = 0;
    });
  }
}

void add_reproduce(CLI::App& app, cli_state& st) {
  auto* cmd = app.add_subcommand(
      "reproduce", "re-run a named exact pipeline and check its pinned value");
  auto name = std::make_shared<std::string>();
  auto list = std::make_shared<bool>(false);
  auto out = std::make_shared<std::string>();
  cmd->add_option("name", *name, "recipe name, or 'all'");
  cmd->add_flag("--list", *list, "list available recipes");
  cmd->add_option("--out", *out, "JSON output path");
  cmd->callback([&st, name, list, out] {
    st.apply_threads();
    const std::vector<recipe> rs = recipe_list();
    if (*list) {
      for (const recipe& r : rs)
        std::printf("%-24s %s (expected %s)\n", r.name.c_str(), r.what.c_str(),
                    rstr(r.expected).c_str());
      st.rc = 0;
      return;
    }
    if (name->empty())
      throw usage_failure{"reproduce needs a recipe name (or --list)"};
    std::vector<const recipe*> chosen;
    for (const recipe& r : rs)
      if (*name == "all" || r.name == *name) chosen.push_back(&r);
    if (chosen.empty()) {
      std::string known = "all";
      for (const recipe& r : rs) known += ", " + r.name;
      throw usage_failure{"unknown recipe '" + *name + "'; available: " + known};
    }
    int rc = 0;
    json arr = json::array();
    for (const recipe* r : chosen) {
      const Rational got = r->run();
      const bool ok = got == r->expected;
      std::printf("%s: expected %s computed %s %s\n", r->name.c_str(),
                  rstr(r->expected).c_str(), rstr(got).c_str(),
                  ok ? "ok" : "MISMATCH");
      if (!ok) {
        std::printf("  difference = %s\n", rstr(got - r->expected).c_str());
        rc = 1;
      }
      arr.push_back(json{{"name", r->name},
                         {"expected", rstr(r->expected)},
                         {"computed", rstr(got)},
                         {"ok", ok}});
    }
    write_json_out(*out, json{{"recipes", arr}});
    st.rc = rc;
  });
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "exact clique-density toolkit: blow-up densities, local search, flag "
      "certificates, stability checks, region exports and AP colorings"};
  app.set_help_all_flag("--help-all", "full help for every subcommand");
  app.require_subcommand(1);

  cli_state st;
  app.add_option("--threads", st.threads, "cap worker threads (overrides CQD_THREADS)")
      ->check(CLI::Range(1, 4096));

  add_count(app, st);
  add_density(app, st);
  add_cost(app, st);
  add_search(app, st);
  add_verify_cert(app, st);
  add_sharp(app, st);
  add_stability(app, st);
  add_region(app, st);
  add_xor(app, st);
  add_ap(app, st);
  add_reproduce(app, st);

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);  // --help and friends
  } catch (const CLI::ParseError& e) {
    return usage_exit(app, e.what(), argc, argv);
  } catch (const usage_failure& u) {
    std::fprintf(stderr, "error: %s\n", u.message.c_str());
    return 2;
  } catch (const Error& e) {
    std::fprintf(stderr, "verification failure: %s\n", e.what());
    return 1;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return st.rc;
}
