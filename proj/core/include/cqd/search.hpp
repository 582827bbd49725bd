#pragma once

#include <array>
#include <functional>
#include <string>
#include <vector>

#include "cqd/bits.hpp"
#include "cqd/blowup.hpp"
#include "cqd/graph.hpp"
#include "cqd/rational.hpp"

namespace cqd {

// ---- finite groups ----

// Group given by an explicit multiplication table.  Validation finds the
// identity, checks inverses exhaustively and associativity on sampled
// triples (exhaustively for small orders).
struct FiniteGroup {
  int order = 0;
  int identity = 0;
  std::vector<std::string> labels;
  std::vector<std::vector<int>> mult;  // mult[a][b] = a*b
  std::vector<int> inv;

  int op(int a, int b) const { return mult[a][b]; }
};

// validates the table and fills identity/inv; throws Error naming the
// violated axiom (closure, identity, inverse, associativity)
FiniteGroup group_from_table(std::vector<std::vector<int>> table,
                             std::vector<std::string> labels = {});

// product of cyclic groups of the given orders, elements ordered
// lexicographically by tuple (mixed-radix integers)
FiniteGroup direct_product_group(const std::vector<int>& orders);

// whitespace-separated integer matrix; first line is the order
FiniteGroup load_group_table(const std::string& path);

// ---- search spaces ----

enum class SpaceKind {
  graph_edges,     // one bit per vertex pair of an n-vertex graph
  cayley_classes,  // one bit per inverse-closed class {g, g^-1}, g != 1
};

struct SearchSpace {
  SpaceKind kind = SpaceKind::graph_edges;
  int n = 0;     // number of vertices of decoded graphs
  int bits = 0;  // state length N

  // graph space: bit k <-> pair_of_bit[k], column-major order (0,1),(0,2),
  // (1,2),(0,3),... matching graph6 bit order
  std::vector<std::array<int, 2>> pair_of_bit;

  // cayley space
  FiniteGroup group;
  std::vector<std::array<int, 2>> class_of_bit;           // {g, g^-1}
  std::vector<std::vector<std::array<int, 2>>> orbit_of_bit;  // edges toggled

  Graph decode(const Bits& state) const;
};

SearchSpace make_graph_space(int n);
SearchSpace make_cayley_space(FiniteGroup g);

// undirected Cayley graph on G with the selected generator classes
// (class indexing as in make_cayley_space)
Graph cayley_graph(const FiniteGroup& g, const Bits& class_bits);

// uniformly random state (n bits of a seeded mt19937_64)
Bits random_state(const SearchSpace& space, uint64_t seed);

// fixed-width hex encoding of a state, bit 0 least significant
std::string state_to_hex(const Bits& state);
Bits state_from_hex(const std::string& hex, int bits);

// ---- incremental cost ----

// Exact cost of a decoded state under a blow-up objective with uniform
// weights, maintained incrementally.  Decoded graphs are simple, so
//   cost = ws * sum_k surj(s,k) * indep_k / n^s  +  lambda * wt * t! * cliq_t / n^t
// with integer set counts updated per edge toggle (cliques through the
// toggled pair, counted inside the common neighborhood).
class CostModel {
 public:
  CostModel(const SearchSpace& space, const BlowupObjective& obj);

  void reset(const Bits& state);
  const Bits& state() const { return state_; }
  const SearchSpace& space() const { return *space_; }

  Rational cost() const;

  // flips one state bit (an edge orbit in cayley spaces), updating all
  // counts; returns the exact cost change.  Involutive.
  Rational apply(int bit);

  // cost(flip(state, bit)) - cost(state) without changing the state
  Rational delta(int bit);

 private:
  void toggle_pair(int u, int v, int64_t* dindep, int64_t* dcliq);

  const SearchSpace* space_;
  BlowupObjective obj_;
  Bits state_;
  Graph g_, gc_;                // current graph and its complement
  std::vector<int64_t> indep_;  // indep_[k] = independent k-sets, k = 0..s
  int64_t cliq_t_ = 0;          // t-cliques
  std::vector<BigInt> surj_s_;  // surjections [s] ->> [k]
  BigInt fact_t_, den_x_, den_y_;
};

// spec'd entry point: requires `cache` primed for exactly `state`
Rational delta_cost(const SearchSpace& space, const Bits& state, int bit,
                    const BlowupObjective& obj, CostModel& cache);

// ---- schedules and runs ----

struct Schedule {
  int64_t iterations = 0;
  std::vector<double> temperatures;  // length == iterations when annealing
  int tabu_length = 0;
  uint64_t seed = 0;
};

// temperatures t_i = t0 * (I - i) / I, i = 1..I (nonincreasing, ending at 0)
Schedule linear_schedule(int64_t iterations, double t0, uint64_t seed,
                         int tabu_length = 0);

void validate_schedule(const Schedule& sched, bool need_temperatures);

struct TraceEvent {
  int64_t iteration = 0;
  Rational cost;
  std::string state_hex;
  double seconds = 0.0;
};

std::string trace_event_json(const TraceEvent& e);

struct SearchResult {
  Bits best_state;
  Rational best_cost;
  std::vector<TraceEvent> trace;  // improvement events, cost strictly falling
  int64_t iterations = 0;
  int64_t accepted = 0;  // accepted moves (annealing) / moves made (tabu)
  int64_t forced_evictions = 0;  // tabu entries popped early (all-tabu stall)
};

struct AnnealOptions {
  bool rejection_free = false;
  const Bits* initial = nullptr;  // default: random_state(space, sched.seed)
  // per-iteration observer: (iteration, cost after the step, accepted?)
  std::function<void(int64_t, const Rational&, bool)> on_step;
};

// Metropolis acceptance min(exp((c_prev - c_cand)/t_i), 1); a candidate is a
// uniform random single-bit flip.  t_i <= 0 degenerates to "accept iff not
// worse".  Rejection-free mode samples the move from the acceptance-weighted
// neighbor distribution instead.
SearchResult simulated_annealing(const SearchSpace& space,
                                 const BlowupObjective& obj,
                                 const Schedule& sched,
                                 const AnnealOptions& opts = {});

// Each iteration flips the non-tabu bit minimizing the neighbor cost (ties:
// lowest bit index); flipped bits enter a FIFO list of length tabu_length.
// The seed is used only for the initial state.
SearchResult tabu_search(const SearchSpace& space, const BlowupObjective& obj,
                         const Schedule& sched, const Bits* initial = nullptr);

// Same move rule over an arbitrary state cost, recomputed per neighbor; for
// blow-up objectives prefer tabu_search, which updates costs incrementally.
SearchResult tabu_search_callback(int bits, const std::function<Rational(const Bits&)>& cost,
                                  const Schedule& sched, const Bits* initial = nullptr);

// full enumeration by Gray-code walk; bits <= 24; ties resolved toward the
// lowest state read as an integer
SearchResult exhaustive_search(const SearchSpace& space,
                               const BlowupObjective& obj);

enum class SearchAlgo { anneal, tabu };

// k independent seeded runs (seed_r = splitmix64(sched.seed + r)) executed in
// parallel; the winner is reduced sequentially by (cost, run index), so the
// result is independent of the thread count
SearchResult best_of_restarts(const SearchSpace& space,
                              const BlowupObjective& obj,
                              const Schedule& sched, int restarts,
                              SearchAlgo algo, bool rejection_free = false);

}  // namespace cqd
