#include "swapatomic/atomicity.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <limits>
#include <mutex>
#include <thread>
#include <unordered_map>

namespace swapatomic {

std::string to_string(Decision d) {
  switch (d) {
    case Decision::kYes: return "yes";
    case Decision::kNo: return "no";
    case Decision::kInconclusive: return "inconclusive";
  }
  return "?";
}

namespace {

void require_spanning(const Subgraph& g) {
  if (!g.is_spanning()) throw ModelError("the dominated subgraph must be spanning");
}

}  // namespace

bool dominates(const PreferenceEngine& engine, const Subgraph& h, const Subgraph& g) {
  require_spanning(g);
  const auto& d = engine.system().digraph();
  for (auto v : h.vertex_list()) {
    if (!engine.leq(deal_outcome(d, g, v), deal_outcome(d, h, v))) return false;
  }
  return true;
}

bool strictly_dominates(const PreferenceEngine& engine, const Subgraph& h, const Subgraph& g) {
  if (!dominates(engine, h, g)) return false;
  const auto& d = engine.system().digraph();
  for (auto v : h.vertex_list()) {
    if (engine.compare(deal_outcome(d, g, v), deal_outcome(d, h, v)) == Ordering::kLess) return true;
  }
  return false;
}

namespace {

using Clock = std::chrono::steady_clock;

struct Timeout {};

// Periodic deadline and cancellation check.
class Ticker {
 public:
  Ticker(std::optional<Clock::time_point> deadline, const std::atomic<bool>* stop)
      : deadline_(deadline), stop_(stop) {}
  void tick() {
    if (++count_ % 1024 != 0) return;
    if (stop_ && stop_->load(std::memory_order_relaxed)) throw Timeout{};
    if (deadline_ && Clock::now() > *deadline_) throw Timeout{};
  }

 private:
  std::optional<Clock::time_point> deadline_;
  const std::atomic<bool>* stop_;
  std::uint64_t count_ = 0;
};

Mask bit(unsigned i) { return Mask{1} << i; }

// Backtracking search for an H strictly dominating a fixed spanning G.
class DominatorSearch {
 public:
  DominatorSearch(const SwapDigraph& d, const PreferenceEngine& engine)
      : d_(d), engine_(engine), n_(d.vertex_count()), m_(d.arc_count()) {
    hin_.assign(n_, 0);
    hout_.assign(n_, 0);
    und_in_.assign(n_, 0);
    und_out_.assign(n_, 0);
    src_.assign(n_, nullptr);
    iso_strict_.assign(n_, false);
    arcs_.assign(m_, false);
  }

  // g_outcomes[v] = Deal^G_v. On success the dominator is left in found().
  bool run(const std::vector<Outcome>& g_outcomes, HScope scope, std::uint64_t& h_count, Ticker& ticker) {
    scope_ = scope;
    g_ = &g_outcomes;
    h_count_ = &h_count;
    ticker_ = &ticker;
    for (VertexIndex v = 0; v < n_; ++v) {
      hin_[v] = hout_[v] = 0;
      und_in_[v] = d_.full_in_mask(v);
      und_out_[v] = d_.full_out_mask(v);
      src_[v] = &upper(g_outcomes[v]);
      iso_strict_[v] = g_outcomes[v] != no_deal(v) && src_[v]->contains(no_deal(v));
    }
    std::fill(arcs_.begin(), arcs_.end(), false);
    return dfs(0);
  }

  Subgraph found() const {
    std::vector<bool> vertices(n_, false);
    for (VertexIndex v = 0; v < n_; ++v) vertices[v] = (hin_[v] | hout_[v]) != 0;
    if (scope_ == HScope::kFull && !touched_strict()) {
      for (VertexIndex v = 0; v < n_; ++v) {
        if (!vertices[v] && iso_strict_[v]) {
          vertices[v] = true;
          break;
        }
      }
    }
    return Subgraph(d_, std::move(vertices), arcs_);
  }

 private:
  const UpperSet& upper(const Outcome& o) {
    auto it = cache_.find(o);
    if (it != cache_.end()) return it->second;
    return cache_.emplace(o, engine_.vertex(o.owner).upper_set(o)).first->second;
  }

  bool feasible(VertexIndex v) const {
    if ((hin_[v] | hout_[v]) == 0) return true;
    return src_[v]->contains({v, hin_[v] | und_in_[v], hout_[v]});
  }

  bool touched_strict() const {
    for (VertexIndex v = 0; v < n_; ++v) {
      if ((hin_[v] | hout_[v]) != 0 && Outcome{v, hin_[v], hout_[v]} != (*g_)[v]) return true;
    }
    return false;
  }

  bool leaf() {
    ++*h_count_;
    ticker_->tick();
    if (touched_strict()) return true;
    if (scope_ == HScope::kFull) {
      for (VertexIndex v = 0; v < n_; ++v) {
        if ((hin_[v] | hout_[v]) == 0 && iso_strict_[v]) return true;
      }
    }
    return false;
  }

  bool dfs(ArcIndex a) {
    if (a == m_) return leaf();
    const auto u = d_.arc(a).from;
    const auto w = d_.arc(a).to;
    const Mask ob = bit(d_.out_position(a));
    const Mask ib = bit(d_.in_position(a));
    und_out_[u] &= ~ob;
    und_in_[w] &= ~ib;
    hout_[u] |= ob;
    hin_[w] |= ib;
    arcs_[a] = true;
    if (feasible(u) && feasible(w) && dfs(a + 1)) return true;
    hout_[u] &= ~ob;
    hin_[w] &= ~ib;
    arcs_[a] = false;
    bool hit = feasible(u) && feasible(w) && dfs(a + 1);
    if (!hit) {
      und_out_[u] |= ob;
      und_in_[w] |= ib;
    }
    return hit;
  }

  const SwapDigraph& d_;
  const PreferenceEngine& engine_;
  const std::size_t n_;
  const std::size_t m_;
  HScope scope_ = HScope::kArcSubsets;
  const std::vector<Outcome>* g_ = nullptr;
  std::uint64_t* h_count_ = nullptr;
  Ticker* ticker_ = nullptr;
  std::vector<Mask> hin_, hout_, und_in_, und_out_;
  std::vector<const UpperSet*> src_;
  std::vector<bool> iso_strict_;
  std::vector<bool> arcs_;
  std::unordered_map<Outcome, UpperSet, OutcomeHash> cache_;
};

// Arc states: -1 free, 0 forced out, 1 forced in.
std::vector<int> forced_states(const SwapDigraph& d, const FrozenArcs& frozen) {
  std::vector<int> forced(d.arc_count(), -1);
  for (auto a : frozen.in) {
    if (a >= d.arc_count()) throw ModelError("frozen arc index out of range");
    forced[a] = 1;
  }
  for (auto a : frozen.out) {
    if (a >= d.arc_count()) throw ModelError("frozen arc index out of range");
    if (forced[a] == 1) {
      throw ModelError("arc (" + d.id(d.arc(a).from) + "," + d.id(d.arc(a).to) + ") is frozen both in and out");
    }
    forced[a] = 0;
  }
  return forced;
}

struct TaskResult {
  bool found = false;
  Decision decision = Decision::kNo;
  std::vector<bool> arcs;
  SearchStats stats;
  bool timed_out = false;
};

// Depth-first search over G in ascending counter order: the highest arc index
// is decided first and 0 is tried before 1.
class WitnessSearch {
 public:
  WitnessSearch(const SwapDigraph& d, const PreferenceEngine& engine, const std::vector<UpperSet>& deal_up,
                std::vector<int> forced, HScope scope, SearchMode mode, Ticker ticker)
      : d_(d),
        deal_up_(deal_up),
        forced_(std::move(forced)),
        scope_(scope),
        mode_(mode),
        ticker_(ticker),
        n_(d.vertex_count()),
        m_(d.arc_count()),
        checker_(d),
        dominators_(d, engine) {
    gin_.assign(n_, 0);
    gout_.assign(n_, 0);
    und_in_.resize(n_);
    und_out_.resize(n_);
    for (VertexIndex v = 0; v < n_; ++v) {
      und_in_[v] = d.full_in_mask(v);
      und_out_[v] = d.full_out_mask(v);
    }
    arcs_.assign(m_, false);
    outcomes_.resize(n_);
  }

  TaskResult run() {
    TaskResult r;
    bool feasible_root = true;
    for (VertexIndex v = 0; v < n_ && feasible_root; ++v) feasible_root = feasible(v);
    try {
      if (feasible_root && m_ > 0) dfs(0);
    } catch (const Timeout&) {
      r.timed_out = true;
    }
    r.found = found_;
    r.decision = decision_;
    r.arcs = witness_;
    r.stats = stats_;
    return r;
  }

 private:
  bool feasible(VertexIndex v) const {
    const Mask in = gin_[v] | und_in_[v];
    if (in == 0 || (gout_[v] | und_out_[v]) == 0) return false;
    return deal_up_[v].contains({v, in, gout_[v]});
  }

  void leaf() {
    ++stats_.g_candidates;
    ticker_.tick();
    if (!checker_.check(arcs_)) return;
    ++stats_.g_passing;
    for (VertexIndex v = 0; v < n_; ++v) outcomes_[v] = {v, gin_[v], gout_[v]};
    const bool dominated = dominators_.run(outcomes_, scope_, stats_.h_candidates, ticker_);
    if (mode_ == SearchMode::kLiteral) {
      found_ = true;
      decision_ = dominated ? Decision::kNo : Decision::kYes;
      if (!dominated) witness_ = arcs_;
    } else if (!dominated) {
      found_ = true;
      decision_ = Decision::kYes;
      witness_ = arcs_;
    }
  }

  void dfs(std::size_t pos) {
    if (pos == m_) {
      leaf();
      return;
    }
    const ArcIndex a = static_cast<ArcIndex>(m_ - 1 - pos);
    const auto u = d_.arc(a).from;
    const auto w = d_.arc(a).to;
    const Mask ob = bit(d_.out_position(a));
    const Mask ib = bit(d_.in_position(a));
    und_out_[u] &= ~ob;
    und_in_[w] &= ~ib;
    if (forced_[a] != 1 && feasible(u) && feasible(w)) {
      dfs(pos + 1);
      if (found_) return;
    }
    if (forced_[a] != 0) {
      gout_[u] |= ob;
      gin_[w] |= ib;
      arcs_[a] = true;
      if (feasible(u) && feasible(w)) dfs(pos + 1);
      if (found_) return;
      gout_[u] &= ~ob;
      gin_[w] &= ~ib;
      arcs_[a] = false;
    }
    und_out_[u] |= ob;
    und_in_[w] |= ib;
  }

  const SwapDigraph& d_;
  const std::vector<UpperSet>& deal_up_;
  std::vector<int> forced_;
  HScope scope_;
  SearchMode mode_;
  Ticker ticker_;
  const std::size_t n_;
  const std::size_t m_;
  PiecewiseChecker checker_;
  DominatorSearch dominators_;
  std::vector<Mask> gin_, gout_, und_in_, und_out_;
  std::vector<bool> arcs_;
  std::vector<Outcome> outcomes_;
  SearchStats stats_;
  bool found_ = false;
  Decision decision_ = Decision::kNo;
  std::vector<bool> witness_;
};

constexpr std::size_t kMaxExhaustiveArcs = 24;

// Naive double enumeration, kept free of the pruning machinery.
TaskResult exhaustive_search(const SwapSystem& system, const PreferenceEngine& engine,
                             const std::vector<int>& forced, HScope scope, Ticker& ticker) {
  const auto& d = system.digraph();
  const std::size_t n = d.vertex_count();
  const std::size_t m = d.arc_count();
  if (m > kMaxExhaustiveArcs) {
    throw ModelError("exhaustive mode supports at most " + std::to_string(kMaxExhaustiveArcs) + " arcs");
  }
  TaskResult r;
  auto subgraph_of = [&](std::uint64_t mask, std::vector<bool> vertices) {
    std::vector<bool> arcs(m, false);
    for (ArcIndex a = 0; a < m; ++a) arcs[a] = mask >> a & 1;
    return Subgraph(d, std::move(vertices), std::move(arcs));
  };
  try {
    for (std::uint64_t gm = 0; gm < (std::uint64_t{1} << m); ++gm) {
      bool respects = true;
      for (ArcIndex a = 0; a < m && respects; ++a) {
        if (forced[a] >= 0 && static_cast<int>(gm >> a & 1) != forced[a]) respects = false;
      }
      if (!respects) continue;
      ++r.stats.g_candidates;
      ticker.tick();
      const Subgraph g = subgraph_of(gm, std::vector<bool>(n, true));
      if (!is_piecewise_strongly_connected(d, g)) continue;
      // dominates(G, D): every vertex does at least as well in G as in D.
      bool c2 = true;
      for (VertexIndex v = 0; v < n && c2; ++v) {
        c2 = engine.leq(full_deal(d, v), deal_outcome(d, g, v));
      }
      if (!c2) continue;
      ++r.stats.g_passing;
      bool dominated = false;
      if (scope == HScope::kArcSubsets) {
        for (std::uint64_t hm = 1; hm < (std::uint64_t{1} << m) && !dominated; ++hm) {
          ++r.stats.h_candidates;
          ticker.tick();
          std::vector<ArcIndex> list;
          for (ArcIndex a = 0; a < m; ++a) {
            if (hm >> a & 1) list.push_back(a);
          }
          dominated = strictly_dominates(engine, Subgraph::from_arcs(d, list), g);
        }
      } else {
        for (std::uint64_t wm = 1; wm < (std::uint64_t{1} << n) && !dominated; ++wm) {
          std::vector<ArcIndex> inside;
          for (ArcIndex a = 0; a < m; ++a) {
            if ((wm >> d.arc(a).from & 1) && (wm >> d.arc(a).to & 1)) inside.push_back(a);
          }
          std::vector<bool> vertices(n);
          for (VertexIndex v = 0; v < n; ++v) vertices[v] = wm >> v & 1;
          for (std::uint64_t sm = 0; sm < (std::uint64_t{1} << inside.size()) && !dominated; ++sm) {
            ++r.stats.h_candidates;
            ticker.tick();
            std::uint64_t hm = 0;
            for (std::size_t i = 0; i < inside.size(); ++i) {
              if (sm >> i & 1) hm |= std::uint64_t{1} << inside[i];
            }
            dominated = strictly_dominates(engine, subgraph_of(hm, vertices), g);
          }
        }
      }
      if (!dominated) {
        r.found = true;
        r.decision = Decision::kYes;
        r.arcs = g.arc_flags();
        return r;
      }
    }
  } catch (const Timeout&) {
    r.timed_out = true;
  }
  return r;
}

void add_stats(SearchStats& into, const SearchStats& s) {
  into.g_candidates += s.g_candidates;
  into.g_passing += s.g_passing;
  into.h_candidates += s.h_candidates;
}

}  // namespace

AtomicityVerdict decide_atomic(const SwapSystem& system, const SearchConfig& config) {
  const auto start = Clock::now();
  const auto& d = system.digraph();
  const auto forced = forced_states(d, config.frozen);
  const PreferenceEngine engine(system);
  std::optional<Clock::time_point> deadline;
  if (config.time_budget_seconds) {
    deadline = start + std::chrono::duration_cast<Clock::duration>(std::chrono::duration<double>(*config.time_budget_seconds));
  }

  AtomicityVerdict verdict;
  TaskResult best;
  bool timed_out = false;

  if (config.mode == SearchMode::kExhaustive) {
    Ticker ticker(deadline, nullptr);
    best = exhaustive_search(system, engine, forced, config.h_scope, ticker);
    timed_out = best.timed_out;
    verdict.stats = best.stats;
  } else {
    std::vector<UpperSet> deal_up;
    for (VertexIndex v = 0; v < d.vertex_count(); ++v) deal_up.push_back(engine.vertex(v).upper_set(full_deal(d, v)));

    const unsigned jobs = std::max(1u, config.jobs);
    // Split the first `depth` free decisions of the DFS order into tasks.
    std::vector<ArcIndex> split_arcs;
    if (jobs > 1) {
      for (std::size_t pos = 0; pos < d.arc_count() && (std::size_t{1} << split_arcs.size()) < jobs * 8u; ++pos) {
        const ArcIndex a = static_cast<ArcIndex>(d.arc_count() - 1 - pos);
        if (forced[a] < 0) split_arcs.push_back(a);
      }
    }
    const std::size_t tasks = std::size_t{1} << split_arcs.size();
    std::vector<TaskResult> results(tasks);
    std::atomic<std::size_t> next{0};
    std::atomic<std::size_t> best_found{std::numeric_limits<std::size_t>::max()};
    std::atomic<bool> stop{false};

    auto worker = [&]() {
      for (;;) {
        const std::size_t t = next.fetch_add(1);
        if (t >= tasks || t > best_found.load()) return;
        auto task_forced = forced;
        for (std::size_t i = 0; i < split_arcs.size(); ++i) {
          task_forced[split_arcs[i]] = static_cast<int>(t >> (split_arcs.size() - 1 - i) & 1);
        }
        WitnessSearch search(d, engine, deal_up, std::move(task_forced), config.h_scope, config.mode,
                             Ticker(deadline, &stop));
        results[t] = search.run();
        if (results[t].timed_out) stop = true;
        if (results[t].found) {
          std::size_t cur = best_found.load();
          while (t < cur && !best_found.compare_exchange_weak(cur, t)) {
          }
        }
      }
    };
    if (jobs == 1) {
      worker();
    } else {
      std::vector<std::thread> pool;
      for (unsigned i = 0; i < jobs; ++i) pool.emplace_back(worker);
      for (auto& th : pool) th.join();
    }
    // A result only counts if every earlier task finished without timing out.
    for (std::size_t t = 0; t < tasks; ++t) {
      add_stats(verdict.stats, results[t].stats);
      if (best.found || timed_out) continue;
      if (results[t].timed_out) {
        timed_out = true;
      } else if (results[t].found) {
        best = results[t];
      }
    }
  }

  verdict.stats.elapsed_seconds = std::chrono::duration<double>(Clock::now() - start).count();
  if (timed_out && !best.found) {
    verdict.decision = Decision::kInconclusive;
  } else if (best.found) {
    verdict.decision = best.decision;
  } else {
    verdict.decision = Decision::kNo;
  }
  if (best.found && best.decision == Decision::kYes) {
    verdict.witness = Subgraph(d, std::vector<bool>(d.vertex_count(), true), best.arcs);
    verdict.sccs = strongly_connected_components(d, *verdict.witness);
  }
  return verdict;
}

std::optional<Subgraph> find_strict_dominator(const PreferenceEngine& engine, const Subgraph& g, HScope scope) {
  require_spanning(g);
  const auto& d = engine.system().digraph();
  std::vector<Outcome> outcomes;
  for (VertexIndex v = 0; v < d.vertex_count(); ++v) outcomes.push_back(deal_outcome(d, g, v));
  DominatorSearch search(d, engine);
  std::uint64_t count = 0;
  Ticker ticker(std::nullopt, nullptr);
  if (!search.run(outcomes, scope, count, ticker)) return std::nullopt;
  return search.found();
}

WitnessCheck verify_witness(const SwapSystem& system, const Subgraph& g, std::uint64_t max_listed) {
  WitnessCheck check;
  const auto& d = system.digraph();
  const std::size_t n = d.vertex_count();
  const std::size_t m = d.arc_count();
  if (!g.is_spanning()) return check;
  check.piecewise_strong = is_piecewise_strongly_connected(d, g);

  const PreferenceEngine engine(system);
  std::vector<Outcome> outcomes;
  std::vector<UpperSet> up;
  check.dominates_d = true;
  for (VertexIndex v = 0; v < n; ++v) {
    outcomes.push_back(deal_outcome(d, g, v));
    up.push_back(engine.vertex(v).upper_set(outcomes.back()));
    if (!engine.vertex(v).upper_set(full_deal(d, v)).contains(outcomes.back())) check.dominates_d = false;
  }

  // Number of (W, arcs inside W) pairs.
  long double listed = 0;
  bool small = n < 40;
  if (small) {
    for (std::uint64_t wm = 1; wm < (std::uint64_t{1} << n); ++wm) {
      std::size_t inside = 0;
      for (const auto& arc : d.arcs()) inside += (wm >> arc.from & 1) && (wm >> arc.to & 1);
      listed += std::ldexp(1.0L, static_cast<int>(inside));
      if (listed > static_cast<long double>(max_listed)) {
        small = false;
        break;
      }
    }
  }

  if (!small) {
    auto dom = find_strict_dominator(engine, g, HScope::kFull);
    check.undominated = !dom.has_value();
    check.dominator = dom;
    return check;
  }

  check.exhaustive_h = true;
  check.undominated = true;
  for (std::uint64_t wm = 1; wm < (std::uint64_t{1} << n) && check.undominated; ++wm) {
    std::vector<ArcIndex> inside;
    for (ArcIndex a = 0; a < m; ++a) {
      if ((wm >> d.arc(a).from & 1) && (wm >> d.arc(a).to & 1)) inside.push_back(a);
    }
    for (std::uint64_t sm = 0; sm < (std::uint64_t{1} << inside.size()); ++sm) {
      std::vector<Mask> hin(n, 0), hout(n, 0);
      for (std::size_t i = 0; i < inside.size(); ++i) {
        if (sm >> i & 1) {
          const auto a = inside[i];
          hout[d.arc(a).from] |= Mask{1} << d.out_position(a);
          hin[d.arc(a).to] |= Mask{1} << d.in_position(a);
        }
      }
      bool all_geq = true;
      bool some_gt = false;
      for (VertexIndex v = 0; v < n && all_geq; ++v) {
        if (!(wm >> v & 1)) continue;
        const Outcome h{v, hin[v], hout[v]};
        all_geq = up[v].contains(h);
        some_gt = some_gt || h != outcomes[v];
      }
      if (all_geq && some_gt) {
        check.undominated = false;
        std::vector<bool> vertices(n), arcs(m, false);
        for (VertexIndex v = 0; v < n; ++v) vertices[v] = wm >> v & 1;
        for (std::size_t i = 0; i < inside.size(); ++i) arcs[inside[i]] = sm >> i & 1;
        check.dominator = Subgraph(d, std::move(vertices), std::move(arcs));
        break;
      }
    }
  }
  return check;
}

}  // namespace swapatomic
