#include "swapatomic/protocol.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <iomanip>
#include <random>
#include <sstream>

#include "json.hpp"
#include "swapatomic/graph_algorithms.hpp"

namespace swapatomic {

Bytes sha256_owner_tagged(const std::string& owner, const Bytes& value) {
  Bytes out(EVP_MAX_MD_SIZE);
  unsigned len = 0;
  EVP_MD_CTX* ctx = EVP_MD_CTX_new();
  if (ctx == nullptr) throw Error("EVP_MD_CTX_new failed");
  const std::uint8_t zero = 0;
  const bool ok = EVP_DigestInit_ex(ctx, EVP_sha256(), nullptr) == 1 &&
                  EVP_DigestUpdate(ctx, owner.data(), owner.size()) == 1 &&
                  EVP_DigestUpdate(ctx, &zero, 1) == 1 &&
                  EVP_DigestUpdate(ctx, value.data(), value.size()) == 1 &&
                  EVP_DigestFinal_ex(ctx, out.data(), &len) == 1;
  EVP_MD_CTX_free(ctx);
  if (!ok) throw Error("SHA-256 computation failed");
  out.resize(len);
  return out;
}

std::string to_hex(const Bytes& bytes) {
  std::ostringstream out;
  out << std::hex << std::setfill('0');
  for (auto b : bytes) out << std::setw(2) << static_cast<unsigned>(b);
  return out.str();
}

std::string to_string(LockState s) {
  switch (s) {
    case LockState::kLocked: return "locked";
    case LockState::kUnlocked: return "unlocked";
    case LockState::kExpired: return "expired";
  }
  return "?";
}

std::string to_string(Behavior b) {
  switch (b) {
    case Behavior::kHonest: return "honest";
    case Behavior::kSilent: return "silent";
    case Behavior::kScripted: return "scripted";
    case Behavior::kRandom: return "random";
  }
  return "?";
}

std::string to_string(SimEvent::Kind k) {
  switch (k) {
    case SimEvent::Kind::kCreate: return "create";
    case SimEvent::Kind::kPost: return "post";
    case SimEvent::Kind::kUnlock: return "unlock";
    case SimEvent::Kind::kTrigger: return "trigger";
    case SimEvent::Kind::kExpire: return "expire";
    case SimEvent::Kind::kReject: return "reject";
  }
  return "?";
}

std::vector<Strategy> all_honest(const SwapDigraph& d) { return std::vector<Strategy>(d.vertex_count()); }

namespace {

constexpr int kNone = -1;

struct Session {
  std::vector<VertexIndex> members;
  std::vector<Secret> secrets;  // member order
  int last_valid = 0;           // last round any key is accepted
};

class Simulator {
 public:
  Simulator(const PreferenceEngine& engine, const Subgraph& g, const std::vector<Strategy>& strategies,
            const SimConfig& config)
      : engine_(engine), d_(engine.system().digraph()), g_(g), strategies_(strategies), config_(config) {
    if (strategies.size() != d_.vertex_count()) throw ModelError("need one strategy per vertex");
    if (config.delta < 1) throw ModelError("delta must be at least 1");
    if (g.arc_count() > 0 && !is_piecewise_strongly_connected(d_, g)) {
      throw ModelError("the subgraph is not piece-wise strongly connected");
    }
    validate_scripts();
    setup();
  }

  SimReport run() {
    int last_round = 0;
    for (const auto& s : sessions_) last_round = std::max(last_round, s.last_valid + 1);
    if (config_.max_rounds > 0) last_round = config_.max_rounds;
    for (int t = 1; t <= last_round; ++t) {
      expire(t);
      for (VertexIndex v = 0; v < d_.vertex_count(); ++v) {
        if (session_of_[v] == kNone) continue;
        act(v, t);
      }
    }
    return report(last_round);
  }

 private:
  void validate_scripts() {
    for (VertexIndex v = 0; v < d_.vertex_count(); ++v) {
      const auto& st = strategies_[v];
      if (st.behavior != Behavior::kScripted) continue;
      for (const auto& a : st.script) {
        if (a.round < 1) throw ModelError("scripted action of " + d_.id(v) + " has round < 1");
        if (a.counterparty >= d_.vertex_count()) throw ModelError("scripted action names an unknown vertex");
        const auto arc = a.kind == ScriptedAction::Kind::kCreate ? d_.find_arc(v, a.counterparty)
                                                                 : d_.find_arc(a.counterparty, v);
        if (!arc || !g_.has_arc(*arc)) {
          throw ModelError("scripted action of " + d_.id(v) + " uses an arc with " + d_.id(a.counterparty) +
                           " that is not incident to it in the subgraph");
        }
        if (a.kind == ScriptedAction::Kind::kPost && a.secret_owner >= d_.vertex_count()) {
          throw ModelError("scripted action names an unknown secret owner");
        }
      }
    }
  }

  void setup() {
    session_of_.assign(d_.vertex_count(), kNone);
    local_.assign(d_.vertex_count(), kNone);
    std::mt19937_64 rng(config_.seed);
    for (const auto& comp : strongly_connected_components(d_, g_).components) {
      const bool has_arc = std::any_of(comp.begin(), comp.end(), [&](VertexIndex v) {
        return std::any_of(d_.out_arcs(v).begin(), d_.out_arcs(v).end(), [&](ArcIndex a) { return g_.has_arc(a); });
      });
      if (!has_arc) continue;
      Session s;
      s.members = comp;
      for (std::size_t i = 0; i < comp.size(); ++i) {
        session_of_[comp[i]] = static_cast<int>(sessions_.size());
        local_[comp[i]] = static_cast<int>(i);
        Secret secret{comp[i], Bytes(32), {}};
        for (std::size_t j = 0; j < secret.value.size(); j += 8) {
          const auto word = rng();
          for (std::size_t b = 0; b < 8; ++b) secret.value[j + b] = static_cast<std::uint8_t>(word >> (8 * b));
        }
        secret.hash = config_.digest(d_.id(comp[i]), secret.value);
        s.secrets.push_back(std::move(secret));
      }
      s.last_valid = 1 + config_.delta * static_cast<int>(comp.size());
      sessions_.push_back(std::move(s));
    }
    contract_of_.assign(d_.arc_count(), kNone);
    for (ArcIndex a = 0; a < d_.arc_count(); ++a) {
      if (!g_.has_arc(a)) continue;
      contract_of_[a] = static_cast<int>(contracts_.size());
      Contract c;
      c.arc = a;
      for (const auto& secret : sessions_[session_of_[d_.arc(a).from]].secrets) {
        c.locks.push_back({secret.owner, secret.hash, LockState::kLocked, 0});
      }
      contracts_.push_back(std::move(c));
      keys_.emplace_back(contracts_.back().locks.size());
    }
    phase2_.assign(d_.vertex_count(), false);
    forwarded_.resize(d_.vertex_count());
    rngs_.resize(d_.vertex_count());
    for (VertexIndex v = 0; v < d_.vertex_count(); ++v) {
      if (session_of_[v] == kNone) continue;
      forwarded_[v].assign(sessions_[session_of_[v]].members.size(), false);
      std::seed_seq seq{config_.seed, static_cast<std::uint64_t>(v), std::uint64_t{0x5eed}};
      rngs_[v].seed(seq);
    }
  }

  std::vector<ArcIndex> g_in(VertexIndex v) const {
    std::vector<ArcIndex> out;
    for (auto a : d_.in_arcs(v)) {
      if (g_.has_arc(a)) out.push_back(a);
    }
    return out;
  }
  std::vector<ArcIndex> g_out(VertexIndex v) const {
    std::vector<ArcIndex> out;
    for (auto a : d_.out_arcs(v)) {
      if (g_.has_arc(a)) out.push_back(a);
    }
    return out;
  }

  Contract& contract(ArcIndex a) { return contracts_[contract_of_[a]]; }
  bool created_before(ArcIndex a, int t) const {
    const auto& c = contracts_[contract_of_[a]];
    return c.created_round > 0 && c.created_round < t;
  }

  void log(SimEvent e) { trace_.push_back(std::move(e)); }

  void expire(int t) {
    for (auto& c : contracts_) {
      const auto& s = sessions_[session_of_[d_.arc(c.arc).from]];
      if (t != s.last_valid + 1 || c.triggered) continue;
      for (auto& lock : c.locks) {
        if (lock.state != LockState::kLocked) continue;
        lock.state = LockState::kExpired;
        lock.round = t;
        if (c.created_round > 0) {
          log({t, d_.arc(c.arc).from, SimEvent::Kind::kExpire, c.arc, lock.secret_owner, {}, "asset returned to sender"});
        }
      }
    }
  }

  // The key v can build at round t for s's secret from what it has seen.
  std::optional<Hashkey> key_for(VertexIndex v, VertexIndex s, int t) const {
    const auto& session = sessions_[session_of_[v]];
    const int ls = local_[s];
    if (ls == kNone || session_of_[s] != session_of_[v]) return std::nullopt;
    if (s == v) return Hashkey{v, session.secrets[ls].value, {v}, {v}};
    const Hashkey* best = nullptr;
    int best_round = 0;
    for (auto a : g_out(v)) {
      const auto& c = contracts_[contract_of_[a]];
      const auto& lock = c.locks[ls];
      if (lock.state != LockState::kUnlocked || lock.round >= t) continue;
      const auto& k = *keys_[contract_of_[a]][ls];
      if (std::find(k.path.begin(), k.path.end(), v) != k.path.end()) continue;
      if (best == nullptr || lock.round < best_round) {
        best = &k;
        best_round = lock.round;
      }
    }
    if (best == nullptr) return std::nullopt;
    Hashkey k{s, best->secret_value, {v}, best->sig_chain};
    k.path.insert(k.path.end(), best->path.begin(), best->path.end());
    k.sig_chain.push_back(v);
    return k;
  }

  bool valid_key(ArcIndex a, int ls, const Hashkey& k, int t) const {
    const auto& session = sessions_[session_of_[d_.arc(a).to]];
    const auto& secret = session.secrets[ls];
    if (k.secret_owner != secret.owner) return false;
    if (config_.digest(d_.id(k.secret_owner), k.secret_value) != secret.hash) return false;
    if (k.path.empty() || k.path.front() != d_.arc(a).to || k.path.back() != k.secret_owner) return false;
    std::vector<bool> seen(d_.vertex_count(), false);
    for (std::size_t i = 0; i < k.path.size(); ++i) {
      if (seen[k.path[i]]) return false;
      seen[k.path[i]] = true;
      if (i + 1 < k.path.size()) {
        const auto step = d_.find_arc(k.path[i], k.path[i + 1]);
        if (!step || !g_.has_arc(*step)) return false;
      }
    }
    if (!std::equal(k.path.rbegin(), k.path.rend(), k.sig_chain.begin(), k.sig_chain.end())) return false;
    return t <= 1 + config_.delta * static_cast<int>(k.path.size());
  }

  void create(VertexIndex v, ArcIndex a, int t) {
    auto& c = contract(a);
    if (c.created_round > 0) {
      log({t, v, SimEvent::Kind::kReject, a, std::nullopt, {}, "contract already exists"});
      return;
    }
    c.created_round = t;
    log({t, v, SimEvent::Kind::kCreate, a, std::nullopt, {}, ""});
  }

  void post(VertexIndex v, ArcIndex a, const Hashkey& k, int t) {
    auto& c = contract(a);
    const int ls = local_[k.secret_owner];
    auto reject = [&](const char* why) {
      log({t, v, SimEvent::Kind::kReject, a, k.secret_owner, k.path, why});
    };
    if (!created_before(a, t)) return reject("no contract observed on this arc");
    auto& lock = c.locks[ls];
    if (lock.state != LockState::kLocked) return reject("hashlock not locked");
    log({t, v, SimEvent::Kind::kPost, a, k.secret_owner, k.path, ""});
    if (!valid_key(a, ls, k, t)) return reject("invalid hashkey");
    lock.state = LockState::kUnlocked;
    lock.round = t;
    keys_[contract_of_[a]][ls] = k;
    log({t, v, SimEvent::Kind::kUnlock, a, k.secret_owner, k.path, ""});
    if (std::all_of(c.locks.begin(), c.locks.end(), [](const Hashlock& l) { return l.state == LockState::kUnlocked; })) {
      c.triggered = true;
      c.triggered_round = t;
      log({t, d_.arc(a).from, SimEvent::Kind::kTrigger, a, std::nullopt, {}, "asset sent to recipient"});
    }
  }

  bool locked(ArcIndex a, VertexIndex s) const {
    return contracts_[contract_of_[a]].locks[local_[s]].state == LockState::kLocked;
  }

  void act(VertexIndex v, int t) {
    switch (strategies_[v].behavior) {
      case Behavior::kHonest: return act_honest(v, t);
      case Behavior::kSilent: return;
      case Behavior::kScripted: return act_scripted(v, t);
      case Behavior::kRandom: return act_random(v, t);
    }
  }

  void act_honest(VertexIndex v, int t) {
    if (t == 1) {
      for (auto a : g_out(v)) create(v, a, t);
    }
    const auto in = g_in(v);
    if (!phase2_[v]) {
      if (!std::all_of(in.begin(), in.end(), [&](ArcIndex a) { return created_before(a, t); })) return;
      phase2_[v] = true;
    }
    if (!config_.keep_propagating) {
      bool received = true, timed_out = false;
      for (auto a : in) received = received && contracts_[contract_of_[a]].triggered;
      for (auto arcs : {in, g_out(v)}) {
        for (auto a : arcs) {
          for (const auto& l : contracts_[contract_of_[a]].locks) {
            timed_out = timed_out || (l.state == LockState::kExpired && l.round < t);
          }
        }
      }
      if (received || timed_out) return;
    }
    const auto& members = sessions_[session_of_[v]].members;
    for (std::size_t i = 0; i < members.size(); ++i) {
      if (forwarded_[v][i]) continue;
      const auto key = key_for(v, members[i], t);
      if (!key) continue;
      forwarded_[v][i] = true;
      for (auto a : in) {
        if (locked(a, members[i])) post(v, a, *key, t);
      }
    }
  }

  void act_scripted(VertexIndex v, int t) {
    for (const auto& action : strategies_[v].script) {
      if (action.round != t) continue;
      if (action.kind == ScriptedAction::Kind::kCreate) {
        create(v, *d_.find_arc(v, action.counterparty), t);
        continue;
      }
      const auto a = *d_.find_arc(action.counterparty, v);
      const auto key = key_for(v, action.secret_owner, t);
      if (!key) {
        log({t, v, SimEvent::Kind::kReject, a, action.secret_owner, {}, "secret not known"});
        continue;
      }
      post(v, a, *key, t);
    }
  }

  void act_random(VertexIndex v, int t) {
    std::bernoulli_distribution coin(strategies_[v].activity);
    auto& rng = rngs_[v];
    for (auto a : g_out(v)) {
      if (contracts_[contract_of_[a]].created_round == 0 && coin(rng)) create(v, a, t);
    }
    for (auto s : sessions_[session_of_[v]].members) {
      const auto key = key_for(v, s, t);
      if (!key) continue;
      for (auto a : g_in(v)) {
        if (created_before(a, t) && locked(a, s) && coin(rng)) post(v, a, *key, t);
      }
    }
  }

  SimReport report(int rounds) {
    SimReport r;
    r.g = g_;
    r.strategies = strategies_;
    r.rounds = rounds;
    r.triggered.assign(d_.arc_count(), false);
    for (const auto& c : contracts_) r.triggered[c.arc] = c.triggered;
    for (VertexIndex v = 0; v < d_.vertex_count(); ++v) {
      Outcome o = no_deal(v);
      for (auto a : d_.in_arcs(v)) {
        if (r.triggered[a]) o.in |= Mask{1} << d_.in_position(a);
      }
      for (auto a : d_.out_arcs(v)) {
        if (r.triggered[a]) o.out |= Mask{1} << d_.out_position(a);
      }
      r.outcomes.push_back(o);
      r.classes.push_back(classify_outcome(d_, o));
      r.acceptable.push_back(engine_.is_acceptable(o));
    }
    r.contracts = std::move(contracts_);
    r.trace = std::move(trace_);
    return r;
  }

  const PreferenceEngine& engine_;
  const SwapDigraph& d_;
  const Subgraph& g_;
  const std::vector<Strategy>& strategies_;
  const SimConfig& config_;

  std::vector<Session> sessions_;
  std::vector<int> session_of_;
  std::vector<int> local_;
  std::vector<int> contract_of_;
  std::vector<Contract> contracts_;
  std::vector<std::vector<std::optional<Hashkey>>> keys_;  // per contract, per lock
  std::vector<bool> phase2_;
  std::vector<std::vector<bool>> forwarded_;
  std::vector<std::mt19937_64> rngs_;
  std::vector<SimEvent> trace_;
};

}  // namespace

SimReport run_protocol(const PreferenceEngine& engine, const Subgraph& g, const std::vector<Strategy>& strategies,
                       const SimConfig& config) {
  return Simulator(engine, g, strategies, config).run();
}

SimReport run_protocol(const SwapSystem& system, const Subgraph& g, const std::vector<Strategy>& strategies,
                       const SimConfig& config) {
  const PreferenceEngine engine(system);
  return run_protocol(engine, g, strategies, config);
}

std::vector<Strategy> parse_strategy_spec(const SwapDigraph& d, std::string_view spec) {
  auto strategies = all_honest(d);
  if (spec.empty() || spec == "all-honest") return strategies;
  std::string text(spec);
  std::stringstream items(text);
  std::string item;
  while (std::getline(items, item, ',')) {
    const auto eq = item.find('=');
    if (eq == std::string::npos) throw ParseError("strategy item '" + item + "' is not id=behavior");
    const auto id = item.substr(0, eq);
    const auto behavior = item.substr(eq + 1);
    const auto v = d.find(id);
    if (!v) throw ParseError("strategy names unknown vertex '" + id + "'");
    auto& s = strategies[*v];
    if (behavior == "honest") {
      s.behavior = Behavior::kHonest;
    } else if (behavior == "silent") {
      s.behavior = Behavior::kSilent;
    } else if (behavior == "random") {
      s.behavior = Behavior::kRandom;
    } else if (behavior.rfind("random:", 0) == 0) {
      s.behavior = Behavior::kRandom;
      try {
        s.activity = std::stod(behavior.substr(7));
      } catch (const std::exception&) {
        throw ParseError("bad activity in '" + item + "'");
      }
      if (s.activity < 0 || s.activity > 1) throw ParseError("activity must lie in [0,1] in '" + item + "'");
    } else {
      throw ParseError("unknown strategy '" + behavior + "' for " + id);
    }
  }
  return strategies;
}

namespace {

std::vector<ArcIndex> path_arcs(const SwapDigraph& d, const std::vector<VertexIndex>& path) {
  std::vector<ArcIndex> arcs;
  for (std::size_t i = 0; i + 1 < path.size(); ++i) {
    const auto a = d.find_arc(path[i], path[i + 1]);
    if (!a) throw ModelError("no arc (" + d.id(path[i]) + "," + d.id(path[i + 1]) + ") on the path");
    arcs.push_back(*a);
  }
  return arcs;
}

}  // namespace

bool check_triggered_prefix(const SwapDigraph& d, const SimReport& report, const std::vector<VertexIndex>& path) {
  bool gap = false;
  for (auto a : path_arcs(d, path)) {
    if (!report.triggered.at(a)) {
      gap = true;
    } else if (gap) {
      return false;
    }
  }
  return true;
}

bool prefix_precondition(const SimReport& report, const std::vector<VertexIndex>& path) {
  for (std::size_t i = 1; i + 1 < path.size(); ++i) {
    if (!report.acceptable.at(path[i])) return false;
  }
  return true;
}

bool check_outgoing_guard(const SwapDigraph& d, const SimReport& report, VertexIndex v) {
  bool any_out = false;
  for (auto a : d.out_arcs(v)) any_out = any_out || (report.g.has_arc(a) && report.triggered.at(a));
  if (!any_out) return true;
  for (auto a : d.in_arcs(v)) {
    if (report.g.has_arc(a) && !report.triggered.at(a)) return false;
  }
  return true;
}

namespace {

nlohmann::json arc_json(const SwapDigraph& d, ArcIndex a) { return {d.id(d.arc(a).from), d.id(d.arc(a).to)}; }

nlohmann::json ids_json(const SwapDigraph& d, const std::vector<VertexIndex>& vs) {
  auto out = nlohmann::json::array();
  for (auto v : vs) out.push_back(d.id(v));
  return out;
}

}  // namespace

std::string serialize_sim_report(const SwapSystem& system, const SimReport& report) {
  const auto& d = system.digraph();
  nlohmann::json doc;
  doc["rounds"] = report.rounds;
  auto g_arcs = nlohmann::json::array();
  for (auto a : report.g.arc_list()) g_arcs.push_back(arc_json(d, a));
  doc["subgraph_arcs"] = g_arcs;
  auto parties = nlohmann::json::array();
  for (VertexIndex v = 0; v < d.vertex_count(); ++v) {
    const auto& o = report.outcomes[v];
    parties.push_back({{"id", d.id(v)},
                       {"strategy", to_string(report.strategies[v].behavior)},
                       {"outcome", {{"in", in_neighbors(d, o)}, {"out", out_neighbors(d, o)}}},
                       {"classes", class_names(report.classes[v])},
                       {"acceptable", static_cast<bool>(report.acceptable[v])}});
  }
  doc["parties"] = parties;
  auto contracts = nlohmann::json::array();
  for (const auto& c : report.contracts) {
    auto locks = nlohmann::json::array();
    for (const auto& l : c.locks) {
      locks.push_back({{"owner", d.id(l.secret_owner)},
                       {"hash", to_hex(l.hash)},
                       {"state", to_string(l.state)},
                       {"round", l.round}});
    }
    contracts.push_back({{"arc", arc_json(d, c.arc)},
                         {"created_round", c.created_round},
                         {"triggered", c.triggered},
                         {"triggered_round", c.triggered_round},
                         {"locks", locks}});
  }
  doc["contracts"] = contracts;
  auto trace = nlohmann::json::array();
  for (const auto& e : report.trace) {
    nlohmann::json item{{"round", e.round}, {"actor", d.id(e.actor)}, {"event", to_string(e.kind)}};
    if (e.arc) item["arc"] = arc_json(d, *e.arc);
    if (e.secret_owner) item["secret"] = d.id(*e.secret_owner);
    if (!e.path.empty()) item["path"] = ids_json(d, e.path);
    if (!e.note.empty()) item["note"] = e.note;
    trace.push_back(item);
  }
  doc["trace"] = trace;
  return doc.dump(2);
}

std::string render_sim_report(const SwapSystem& system, const SimReport& report) {
  const auto& d = system.digraph();
  std::ostringstream out;
  out << std::left << std::setw(6) << "round" << std::setw(10) << "actor" << std::setw(9) << "event"
      << "detail\n";
  for (const auto& e : report.trace) {
    std::string detail;
    if (e.arc) detail += "(" + d.id(d.arc(*e.arc).from) + "," + d.id(d.arc(*e.arc).to) + ")";
    if (e.secret_owner) detail += " s_" + d.id(*e.secret_owner);
    if (!e.path.empty()) {
      detail += " path ";
      for (std::size_t i = 0; i < e.path.size(); ++i) detail += (i ? "-" : "") + d.id(e.path[i]);
    }
    if (!e.note.empty()) detail += " [" + e.note + "]";
    out << std::setw(6) << e.round << std::setw(10) << d.id(e.actor) << std::setw(9) << to_string(e.kind) << detail
        << '\n';
  }
  out << '\n' << std::setw(10) << "party" << std::setw(10) << "strategy" << std::setw(22) << "outcome"
      << std::setw(11) << "acceptable" << "classes\n";
  for (VertexIndex v = 0; v < d.vertex_count(); ++v) {
    std::string classes;
    for (const auto& c : class_names(report.classes[v])) classes += (classes.empty() ? "" : ",") + c;
    out << std::setw(10) << d.id(v) << std::setw(10) << to_string(report.strategies[v].behavior) << std::setw(22)
        << format_outcome(d, report.outcomes[v]) << std::setw(11) << (report.acceptable[v] ? "yes" : "NO")
        << classes << '\n';
  }
  return out.str();
}

CoalitionReport coalition_deviation_demo(const SwapSystem& system, const Subgraph& g,
                                         const std::vector<VertexIndex>& coalition,
                                         const std::vector<ArcIndex>& side_deal, const SimConfig& config) {
  const auto& d = system.digraph();
  std::vector<bool> member(d.vertex_count(), false);
  for (auto v : coalition) member.at(v) = true;
  for (auto a : side_deal) {
    if (!member[d.arc(a).from] || !member[d.arc(a).to]) {
      throw ModelError("side-deal arc (" + d.id(d.arc(a).from) + "," + d.id(d.arc(a).to) + ") leaves the coalition");
    }
  }
  CoalitionReport report;
  report.side_deal = side_deal;
  if (coalition.empty()) return report;

  const PreferenceEngine engine(system);
  const auto honest = run_protocol(engine, g, all_honest(d), config);
  auto strategies = all_honest(d);
  for (auto v : coalition) strategies[v].behavior = Behavior::kSilent;
  const auto deviated = run_protocol(engine, g, strategies, config);

  bool all_weak = true, any_strict = false, all_strict = true;
  for (auto v : coalition) {
    CoalitionMember m;
    m.vertex = v;
    m.baseline = honest.outcomes[v];
    m.achieved = deviated.outcomes[v];
    for (auto a : side_deal) {
      if (d.arc(a).to == v) m.achieved.in |= Mask{1} << d.in_position(a);
      if (d.arc(a).from == v) m.achieved.out |= Mask{1} << d.out_position(a);
    }
    m.vs_baseline = engine.compare(m.baseline, m.achieved);
    m.vs_deal = engine.compare(full_deal(d, v), m.achieved);
    all_weak = all_weak && (m.vs_baseline == Ordering::kLess || m.vs_baseline == Ordering::kEqual);
    any_strict = any_strict || m.vs_baseline == Ordering::kLess;
    all_strict = all_strict && m.vs_baseline == Ordering::kLess;
    report.members.push_back(m);
  }
  report.strict_improvement = all_weak && any_strict;
  report.all_strictly_better = all_strict;
  return report;
}

std::vector<CoalitionReport> coalition_deviation_search(const SwapSystem& system, const Subgraph& g,
                                                        const std::vector<VertexIndex>& coalition,
                                                        const SimConfig& config) {
  const auto& d = system.digraph();
  std::vector<bool> member(d.vertex_count(), false);
  for (auto v : coalition) member.at(v) = true;
  std::vector<ArcIndex> inside;
  for (ArcIndex a = 0; a < d.arc_count(); ++a) {
    if (member[d.arc(a).from] && member[d.arc(a).to]) inside.push_back(a);
  }
  if (inside.size() > 20) throw ModelError("too many arcs inside the coalition to enumerate side deals");
  std::vector<CoalitionReport> reports;
  for (std::uint32_t mask = 0; mask < (1u << inside.size()); ++mask) {
    std::vector<ArcIndex> deal;
    for (std::size_t i = 0; i < inside.size(); ++i) {
      if (mask >> i & 1) deal.push_back(inside[i]);
    }
    reports.push_back(coalition_deviation_demo(system, g, coalition, deal, config));
  }
  return reports;
}

}  // namespace swapatomic
