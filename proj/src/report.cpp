#include "swapatomic/report.hpp"

#include "json.hpp"

namespace swapatomic {

std::string serialize_verdict(const SwapSystem& system, const AtomicityVerdict& verdict) {
  const auto& d = system.digraph();
  nlohmann::json doc;
  doc["decision"] = to_string(verdict.decision);
  doc["arcs"] = d.arc_count();
  doc["generators"] = system.generator_count();
  if (verdict.witness) {
    auto arcs = nlohmann::json::array();
    for (auto a : verdict.witness->arc_list()) arcs.push_back({d.id(d.arc(a).from), d.id(d.arc(a).to)});
    doc["witness_arcs"] = arcs;
    doc["sccs"] = component_ids(d, verdict.sccs);
  } else {
    doc["witness_arcs"] = nullptr;
    doc["sccs"] = nlohmann::json::array();
  }
  doc["stats"] = {{"g_candidates", verdict.stats.g_candidates},
                  {"g_passing", verdict.stats.g_passing},
                  {"h_candidates", verdict.stats.h_candidates},
                  {"elapsed_seconds", verdict.stats.elapsed_seconds}};
  return doc.dump(2);
}

AtomicityVerdict parse_verdict(const SwapSystem& system, std::string_view text) {
  const auto& d = system.digraph();
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("verdict report: ") + e.what());
  }
  AtomicityVerdict v;
  try {
    const auto decision = doc.at("decision").get<std::string>();
    if (decision == "yes") {
      v.decision = Decision::kYes;
    } else if (decision == "no") {
      v.decision = Decision::kNo;
    } else if (decision == "inconclusive") {
      v.decision = Decision::kInconclusive;
    } else {
      throw ParseError("verdict report: unknown decision '" + decision + "'");
    }
    if (doc.at("arcs").get<std::size_t>() != d.arc_count() ||
        doc.at("generators").get<std::size_t>() != system.generator_count()) {
      throw ParseError("verdict report does not belong to this system");
    }
    if (!doc.at("witness_arcs").is_null()) {
      std::vector<ArcIndex> arcs;
      for (const auto& pair : doc.at("witness_arcs")) {
        const auto from = d.find(pair.at(0).get<std::string>());
        const auto to = d.find(pair.at(1).get<std::string>());
        const auto a = from && to ? d.find_arc(*from, *to) : std::nullopt;
        if (!a) throw ParseError("verdict report: witness arc " + pair.dump() + " is not in the system");
        arcs.push_back(*a);
      }
      v.witness = Subgraph::spanning(d, arcs);
      v.sccs = strongly_connected_components(d, *v.witness);
    }
    const auto& stats = doc.at("stats");
    v.stats.g_candidates = stats.at("g_candidates").get<std::uint64_t>();
    v.stats.g_passing = stats.at("g_passing").get<std::uint64_t>();
    v.stats.h_candidates = stats.at("h_candidates").get<std::uint64_t>();
    v.stats.elapsed_seconds = stats.at("elapsed_seconds").get<double>();
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("verdict report: ") + e.what());
  }
  return v;
}

}  // namespace swapatomic
