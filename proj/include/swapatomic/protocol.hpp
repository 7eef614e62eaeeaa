#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "swapatomic/core_model.hpp"
#include "swapatomic/preference.hpp"

namespace swapatomic {

using Bytes = std::vector<std::uint8_t>;

// Digest of a secret. The owner is passed so that equal values held by
// different parties hash differently.
using DigestFn = std::function<Bytes(const std::string& owner, const Bytes& value)>;

// SHA-256 over owner id, a zero byte, then the value.
Bytes sha256_owner_tagged(const std::string& owner, const Bytes& value);
std::string to_hex(const Bytes& bytes);

struct Secret {
  VertexIndex owner = 0;
  Bytes value;
  Bytes hash;
};

enum class LockState { kLocked, kUnlocked, kExpired };
std::string to_string(LockState s);

struct Hashlock {
  VertexIndex secret_owner = 0;
  Bytes hash;
  LockState state = LockState::kLocked;
  int round = 0;  // of the unlock or expiry
};

struct Hashkey {
  VertexIndex secret_owner = 0;
  Bytes secret_value;
  // From the poster, who received the asset, to the secret's owner.
  std::vector<VertexIndex> path;
  // Signers, owner first: path reversed.
  std::vector<VertexIndex> sig_chain;
};

struct Contract {
  ArcIndex arc = 0;
  std::vector<Hashlock> locks;  // one per session member, member order
  int created_round = 0;
  bool triggered = false;
  int triggered_round = 0;
};

enum class Behavior { kHonest, kSilent, kScripted, kRandom };
std::string to_string(Behavior b);

struct ScriptedAction {
  enum class Kind { kCreate, kPost };
  int round = 1;
  Kind kind = Kind::kCreate;
  // kCreate: head of the out-arc. kPost: tail of the in-arc.
  VertexIndex counterparty = 0;
  // kPost: whose secret. The poster must know it at that round.
  VertexIndex secret_owner = 0;
};

struct Strategy {
  Behavior behavior = Behavior::kHonest;
  std::vector<ScriptedAction> script;
  double activity = 0.5;  // kRandom: chance of taking each available action
};

struct SimConfig {
  int delta = 1;             // rounds per protocol step
  std::uint64_t seed = 1;
  // Keep forwarding keys after all incoming assets arrived or a lock timed out.
  bool keep_propagating = true;
  int max_rounds = 0;        // 0: run until every lock has resolved
  DigestFn digest = sha256_owner_tagged;
};

struct SimEvent {
  enum class Kind { kCreate, kPost, kUnlock, kTrigger, kExpire, kReject };
  int round = 0;
  VertexIndex actor = 0;
  Kind kind = Kind::kCreate;
  std::optional<ArcIndex> arc;
  std::optional<VertexIndex> secret_owner;
  std::vector<VertexIndex> path;
  std::string note;
};
std::string to_string(SimEvent::Kind k);

struct SimReport {
  Subgraph g;
  std::vector<Strategy> strategies;
  std::vector<Outcome> outcomes;       // per vertex
  std::vector<bool> triggered;         // per arc of D
  std::vector<Contract> contracts;     // arcs of g, in arc order
  std::vector<SimEvent> trace;
  std::vector<ClassFlags> classes;
  std::vector<bool> acceptable;
  int rounds = 0;

  bool honest(VertexIndex v) const { return strategies.at(v).behavior == Behavior::kHonest; }
};

// Herlihy's protocol run independently on each strongly connected component of
// g. strategies has one entry per vertex of D; vertices outside g are ignored.
SimReport run_protocol(const SwapSystem& system, const Subgraph& g, const std::vector<Strategy>& strategies,
                       const SimConfig& config = {});
// Reuses the posets of an existing engine, for repeated runs.
SimReport run_protocol(const PreferenceEngine& engine, const Subgraph& g, const std::vector<Strategy>& strategies,
                       const SimConfig& config = {});

std::vector<Strategy> all_honest(const SwapDigraph& d);

// "all-honest", or comma-separated id=behavior with behavior one of honest,
// silent, random, random:<activity>. Unlisted vertices are honest.
std::vector<Strategy> parse_strategy_spec(const SwapDigraph& d, std::string_view spec);

// Triggered arcs of the path form a prefix of it.
bool check_triggered_prefix(const SwapDigraph& d, const SimReport& report, const std::vector<VertexIndex>& path);
// Internal path vertices all ended acceptable, the precondition of the prefix check.
bool prefix_precondition(const SimReport& report, const std::vector<VertexIndex>& path);
// A triggered out-arc of v in g implies all of v's in-arcs in g triggered.
bool check_outgoing_guard(const SwapDigraph& d, const SimReport& report, VertexIndex v);

std::string serialize_sim_report(const SwapSystem& system, const SimReport& report);
// Per-round event table followed by each party's final outcome and classes.
std::string render_sim_report(const SwapSystem& system, const SimReport& report);

struct CoalitionMember {
  VertexIndex vertex = 0;
  Outcome baseline;   // honest run on g
  Outcome achieved;   // coalition silent, side deal executed
  Ordering vs_baseline = Ordering::kEqual;  // compare(baseline, achieved)
  Ordering vs_deal = Ordering::kEqual;      // compare(Deal of D, achieved)
};

struct CoalitionReport {
  std::vector<ArcIndex> side_deal;
  std::vector<CoalitionMember> members;
  // Every member at least as well off as in the honest run, one strictly better.
  bool strict_improvement = false;
  bool all_strictly_better = false;
};

// Members take no part in the protocol on g and instead trigger side_deal
// among themselves. side_deal arcs must have both ends in the coalition.
CoalitionReport coalition_deviation_demo(const SwapSystem& system, const Subgraph& g,
                                         const std::vector<VertexIndex>& coalition,
                                         const std::vector<ArcIndex>& side_deal, const SimConfig& config = {});

// The demo for every subset of the arcs of D inside the coalition (at most 20).
std::vector<CoalitionReport> coalition_deviation_search(const SwapSystem& system, const Subgraph& g,
                                                        const std::vector<VertexIndex>& coalition,
                                                        const SimConfig& config = {});

}  // namespace swapatomic
