#include <algorithm>
#include <bit>
#include <chrono>
#include <cmath>
#include <deque>
#include <limits>
#include <mutex>
#include <optional>
#include <random>

#include "cqd/parallel.hpp"
#include "cqd/search.hpp"

namespace cqd {

namespace {

Rational make_ratio(const BigInt& num, const BigInt& den) {
  return Rational(num, den);
}

Bits random_bits(std::mt19937_64& rng, int nbits) {
  Bits b(nbits);
  for (auto& w : b.words()) w = rng();
  if (nbits % 64) b.words().back() &= (uint64_t(1) << (nbits % 64)) - 1;
  return b;
}

// 53-bit uniform draw in [0, 1)
double uniform01(std::mt19937_64& rng) {
  return (rng() >> 11) * 0x1.0p-53;
}

uint64_t splitmix64(uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
      .count();
}

}  // namespace

Bits random_state(const SearchSpace& space, uint64_t seed) {
  std::mt19937_64 rng(seed);
  return random_bits(rng, space.bits);
}

// ---- cost model ----

CostModel::CostModel(const SearchSpace& space, const BlowupObjective& obj)
    : space_(&space), obj_(obj) {
  if (obj.s < 1 || obj.s > 16 || obj.t < 1 || obj.t > 16)
    throw Error("objective sizes must be in 1..16");
  const int n = space.n;
  // the largest count we hold is C(n, k) for some k <= max(s,t); binomials
  // peak at n/2
  int peak = std::min(std::max(obj.s, obj.t), n / 2);
  if (peak >= 1 && binomial(n, peak) > BigInt(INT64_MAX))
    throw Error("set counts would overflow 64 bits for this space");
  surj_s_.assign(obj.s + 1, 0);
  for (int k = 0; k <= obj.s; k++) {
    BigInt sum = 0;
    for (int r = 0; r <= k; r++) {
      BigInt term = binomial(k, r) * big_pow(BigInt(r), obj.s);
      if ((k - r) % 2)
        sum -= term;
      else
        sum += term;
    }
    surj_s_[k] = sum;
  }
  fact_t_ = factorial(obj.t);
  den_x_ = big_pow(BigInt(n), obj.s);
  den_y_ = big_pow(BigInt(n), obj.t);
  reset(Bits(space.bits));
}

void CostModel::reset(const Bits& state) {
  if (state.size() != space_->bits) throw Error("state size mismatch");
  state_ = state;
  g_ = space_->decode(state);
  gc_ = complement(g_);
  auto iv = count_cliques_upto(gc_, std::min(obj_.s, gc_.order()));
  indep_.assign(obj_.s + 1, 0);
  for (int k = 0; k < (int)iv.size() && k <= obj_.s; k++) indep_[k] = iv[k];
  cliq_t_ = obj_.t <= g_.order() ? count_cliques(g_, obj_.t) : 0;
}

Rational CostModel::cost() const {
  BigInt num = 0;
  for (int k = 0; k <= obj_.s; k++) num += surj_s_[k] * indep_[k];
  Rational x = make_ratio(num, den_x_);
  Rational y = make_ratio(fact_t_ * cliq_t_, den_y_);
  return obj_.ws * x + obj_.lambda * obj_.wt * y;
}

void CostModel::toggle_pair(int u, int v, int64_t* dindep, int64_t* dcliq) {
  const int s = obj_.s, t = obj_.t;
  bool adding = !g_.adjacent(u, v);
  // cliques/independent sets through {u,v} live inside the common
  // (non-)neighborhood; the uv edge itself never enters those sets
  if (t >= 2) {
    Bits common = g_.neighbors(u) & g_.neighbors(v);
    auto within = count_cliques_upto_within(g_, common, t - 2);
    int64_t made = within[t - 2];
    cliq_t_ += adding ? made : -made;
    *dcliq += adding ? made : -made;
  }
  if (s >= 2) {
    Bits common = gc_.neighbors(u) & gc_.neighbors(v);
    auto within = count_cliques_upto_within(gc_, common, s - 2);
    for (int k = 2; k <= s; k++) {
      int64_t made = within[k - 2];
      indep_[k] += adding ? -made : made;
      dindep[k] += adding ? -made : made;
    }
  }
  g_.set_edge(u, v, adding);
  gc_.set_edge(u, v, !adding);
}

Rational CostModel::apply(int bit) {
  assert(bit >= 0 && bit < space_->bits);
  std::vector<int64_t> dindep(obj_.s + 1, 0);
  int64_t dcliq = 0;
  if (space_->kind == SpaceKind::graph_edges) {
    auto [u, v] = space_->pair_of_bit[bit];
    toggle_pair(u, v, dindep.data(), &dcliq);
  } else {
    for (auto [u, v] : space_->orbit_of_bit[bit])
      toggle_pair(u, v, dindep.data(), &dcliq);
  }
  state_.flip(bit);
  BigInt num = 0;
  for (int k = 0; k <= obj_.s; k++) num += surj_s_[k] * dindep[k];
  return obj_.ws * make_ratio(num, den_x_) +
         obj_.lambda * obj_.wt * make_ratio(fact_t_ * dcliq, den_y_);
}

Rational CostModel::delta(int bit) {
  Rational d = apply(bit);
  Rational back = apply(bit);
  assert(d == -back);
  (void)back;
  return d;
}

Rational delta_cost(const SearchSpace& space, const Bits& state, int bit,
                    const BlowupObjective& obj, CostModel& cache) {
  if (&cache.space() != &space) throw Error("cost cache bound to another space");
  (void)obj;
  if (!(cache.state() == state))
    throw Error("stale cost cache: prime it with reset(state) first");
  return cache.delta(bit);
}

// ---- schedules ----

Schedule linear_schedule(int64_t iterations, double t0, uint64_t seed,
                         int tabu_length) {
  if (iterations < 0) throw Error("iteration count must be >= 0");
  if (t0 < 0) throw Error("initial temperature must be >= 0");
  Schedule s;
  s.iterations = iterations;
  s.seed = seed;
  s.tabu_length = tabu_length;
  s.temperatures.reserve(iterations);
  for (int64_t i = 1; i <= iterations; i++)
    s.temperatures.push_back(t0 * (double)(iterations - i) / (double)iterations);
  return s;
}

void validate_schedule(const Schedule& sched, bool need_temperatures) {
  if (sched.iterations < 0) throw Error("iteration count must be >= 0");
  if (sched.tabu_length < 0) throw Error("tabu history length must be >= 0");
  if (!need_temperatures) return;
  if ((int64_t)sched.temperatures.size() != sched.iterations)
    throw Error("schedule needs one temperature per iteration");
  double prev = std::numeric_limits<double>::infinity();
  for (double t : sched.temperatures) {
    if (std::isnan(t) || t < 0) throw Error("temperatures must be >= 0");
    if (t > prev) throw Error("temperatures must be nonincreasing");
    prev = t;
  }
}

std::string trace_event_json(const TraceEvent& e) {
  std::string out = "{\"iteration\":" + std::to_string(e.iteration);
  out += ",\"cost\":\"" + format_rational(e.cost) + "\"";
  out += ",\"state\":\"" + e.state_hex + "\"";
  out += ",\"seconds\":" + std::to_string(e.seconds) + "}";
  return out;
}

// ---- simulated annealing ----

SearchResult simulated_annealing(const SearchSpace& space,
                                 const BlowupObjective& obj,
                                 const Schedule& sched,
                                 const AnnealOptions& opts) {
  validate_schedule(sched, true);
  auto t0 = std::chrono::steady_clock::now();
  std::mt19937_64 rng(sched.seed);
  Bits init = opts.initial ? *opts.initial : random_bits(rng, space.bits);

  CostModel model(space, obj);
  model.reset(init);
  Rational cur = model.cost();

  SearchResult res;
  res.best_state = init;
  res.best_cost = cur;
  res.trace.push_back({0, cur, state_to_hex(init), seconds_since(t0)});

  const int nbits = space.bits;
  std::vector<Rational> deltas(opts.rejection_free ? nbits : 0);
  std::vector<double> weights(opts.rejection_free ? nbits : 0);

  for (int64_t i = 1; i <= sched.iterations; i++) {
    double temp = sched.temperatures[i - 1];
    bool moved = false;
    if (opts.rejection_free) {
      // sample the move from the acceptance-probability distribution
      double total = 0;
      for (int j = 0; j < nbits; j++) {
        deltas[j] = model.delta(j);
        double w;
        if (deltas[j] <= 0)
          w = 1.0;
        else if (temp > 0)
          w = std::exp(-deltas[j].convert_to<double>() / temp);
        else
          w = 0.0;
        weights[j] = w;
        total += w;
      }
      int pick = -1;
      if (total > 0) {
        double u = uniform01(rng) * total;
        double acc = 0;
        for (int j = 0; j < nbits; j++) {
          acc += weights[j];
          if (u < acc) {
            pick = j;
            break;
          }
        }
        if (pick < 0) pick = nbits - 1;  // float round-off tail
      } else {
        // every neighbor is rejected with probability 1 in doubles: fall
        // back to the least-bad neighbor (lowest index on ties)
        pick = 0;
        for (int j = 1; j < nbits; j++)
          if (deltas[j] < deltas[pick]) pick = j;
      }
      cur += model.apply(pick);
      moved = true;
    } else {
      int j = (int)(rng() % (uint64_t)nbits);
      Rational d = model.apply(j);
      bool accept;
      if (d <= 0)
        accept = true;
      else if (temp > 0)
        accept = uniform01(rng) < std::exp(-d.convert_to<double>() / temp);
      else
        accept = false;
      if (accept) {
        cur += d;
        moved = true;
      } else {
        model.apply(j);  // revert
      }
    }
    if (moved) res.accepted++;
    if (cur < res.best_cost) {
      res.best_cost = cur;
      res.best_state = model.state();
      res.trace.push_back({i, cur, state_to_hex(model.state()), seconds_since(t0)});
    }
    if (opts.on_step) opts.on_step(i, cur, moved);
  }
  res.iterations = sched.iterations;
  return res;
}

// ---- tabu search ----

SearchResult tabu_search(const SearchSpace& space, const BlowupObjective& obj,
                         const Schedule& sched, const Bits* initial) {
  validate_schedule(sched, false);
  const int nbits = space.bits;
  if (sched.tabu_length >= nbits)
    throw Error("tabu history length must be smaller than the state size");
  auto t0 = std::chrono::steady_clock::now();
  std::mt19937_64 rng(sched.seed);
  Bits init = initial ? *initial : random_bits(rng, nbits);

  CostModel model(space, obj);
  model.reset(init);
  Rational cur = model.cost();

  SearchResult res;
  res.best_state = init;
  res.best_cost = cur;
  res.trace.push_back({0, cur, state_to_hex(init), seconds_since(t0)});

  std::deque<int> history;
  std::vector<int> tabu(nbits, 0);

  for (int64_t i = 1; i <= sched.iterations; i++) {
    int best_bit = -1;
    Rational best_d;
    while (true) {
      for (int j = 0; j < nbits; j++) {
        if (tabu[j]) continue;
        Rational d = model.delta(j);
        if (best_bit < 0 || d < best_d) {
          best_bit = j;
          best_d = d;
        }
      }
      if (best_bit >= 0) break;
      // unreachable while tabu_length < nbits; kept as a safety valve
      assert(!history.empty());
      tabu[history.front()]--;
      history.pop_front();
      res.forced_evictions++;
    }
    cur += model.apply(best_bit);
    res.accepted++;
    history.push_back(best_bit);
    tabu[best_bit]++;
    while ((int)history.size() > sched.tabu_length) {
      tabu[history.front()]--;
      history.pop_front();
    }
    if (cur < res.best_cost) {
      res.best_cost = cur;
      res.best_state = model.state();
      res.trace.push_back({i, cur, state_to_hex(model.state()), seconds_since(t0)});
    }
  }
  res.iterations = sched.iterations;
  return res;
}

SearchResult tabu_search_callback(int bits, const std::function<Rational(const Bits&)>& cost,
                                  const Schedule& sched, const Bits* initial) {
  validate_schedule(sched, false);
  if (bits <= 0) throw Error("state needs at least one bit");
  if (sched.tabu_length >= bits)
    throw Error("tabu history length must be smaller than the state size");
  auto t0 = std::chrono::steady_clock::now();
  std::mt19937_64 rng(sched.seed);
  Bits state = initial ? *initial : random_bits(rng, bits);
  Rational cur = cost(state);

  SearchResult res;
  res.best_state = state;
  res.best_cost = cur;
  res.trace.push_back({0, cur, state_to_hex(state), seconds_since(t0)});

  std::deque<int> history;
  std::vector<int> tabu(bits, 0);

  for (int64_t i = 1; i <= sched.iterations; i++) {
    int best_bit = -1;
    Rational best_c;
    while (true) {
      for (int j = 0; j < bits; j++) {
        if (tabu[j]) continue;
        state.flip(j);
        Rational c = cost(state);
        state.flip(j);
        if (best_bit < 0 || c < best_c) {
          best_bit = j;
          best_c = c;
        }
      }
      if (best_bit >= 0) break;
      assert(!history.empty());
      tabu[history.front()]--;
      history.pop_front();
      res.forced_evictions++;
    }
    state.flip(best_bit);
    cur = best_c;
    res.accepted++;
    history.push_back(best_bit);
    tabu[best_bit]++;
    while ((int)history.size() > sched.tabu_length) {
      tabu[history.front()]--;
      history.pop_front();
    }
    if (cur < res.best_cost) {
      res.best_cost = cur;
      res.best_state = state;
      res.trace.push_back({i, cur, state_to_hex(state), seconds_since(t0)});
    }
  }
  res.iterations = sched.iterations;
  return res;
}

// ---- exhaustive enumeration ----

SearchResult exhaustive_search(const SearchSpace& space,
                               const BlowupObjective& obj) {
  if (space.bits > 24)
    throw Error("exhaustive search needs at most 24 bits, space has " +
                std::to_string(space.bits));
  auto t0 = std::chrono::steady_clock::now();
  CostModel model(space, obj);
  model.reset(Bits(space.bits));
  Rational cur = model.cost();

  SearchResult res;
  res.best_state = model.state();
  res.best_cost = cur;
  uint32_t best_int = 0;
  res.trace.push_back({0, cur, state_to_hex(model.state()), seconds_since(t0)});

  uint32_t istate = 0;
  const uint64_t total = uint64_t(1) << space.bits;
  for (uint64_t k = 1; k < total; k++) {
    int bit = std::countr_zero(k);  // Gray-code walk: one flip per visit
    istate ^= uint32_t(1) << bit;
    cur += model.apply(bit);
    if (cur < res.best_cost ||
        (cur == res.best_cost && istate < best_int)) {
      res.best_cost = cur;
      res.best_state = model.state();
      best_int = istate;
      res.trace.push_back(
          {(int64_t)k, cur, state_to_hex(model.state()), seconds_since(t0)});
    }
  }
  res.iterations = (int64_t)total;
  return res;
}

// ---- seeded restarts ----

SearchResult best_of_restarts(const SearchSpace& space,
                              const BlowupObjective& obj,
                              const Schedule& sched, int restarts,
                              SearchAlgo algo, bool rejection_free) {
  if (restarts < 1) throw Error("need at least one restart");
  std::vector<SearchResult> runs(restarts);

  // shared monotone best-so-far record (observability only; the returned
  // winner is reduced deterministically below)
  std::mutex mu;
  std::optional<Rational> record;

  parallel_for(restarts, [&](int64_t r) {
    Schedule local = sched;
    local.seed = splitmix64(sched.seed + (uint64_t)r);
    if (algo == SearchAlgo::anneal) {
      AnnealOptions opts;
      opts.rejection_free = rejection_free;
      runs[r] = simulated_annealing(space, obj, local, opts);
    } else {
      runs[r] = tabu_search(space, obj, local);
    }
    std::lock_guard<std::mutex> lock(mu);
    if (!record || runs[r].best_cost < *record) record = runs[r].best_cost;
  });

  int win = 0;
  for (int r = 1; r < restarts; r++)
    if (runs[r].best_cost < runs[win].best_cost) win = r;
  return runs[win];
}

}  // namespace cqd
