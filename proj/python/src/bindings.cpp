#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "swapatomic/atomicity.hpp"
#include "swapatomic/fixtures.hpp"
#include "swapatomic/preference.hpp"
#include "swapatomic/protocol.hpp"
#include "swapatomic/reductions.hpp"

namespace py = pybind11;
namespace sa = swapatomic;

namespace {

using ArcPair = std::pair<std::string, std::string>;

std::vector<ArcPair> arc_pairs(const sa::SwapDigraph& d, const std::vector<sa::ArcIndex>& arcs) {
  std::vector<ArcPair> out;
  for (auto a : arcs) out.emplace_back(d.id(d.arc(a).from), d.id(d.arc(a).to));
  return out;
}

std::vector<sa::ArcIndex> arc_indices(const sa::SwapDigraph& d, const std::vector<ArcPair>& arcs) {
  std::vector<sa::ArcIndex> out;
  for (const auto& [from, to] : arcs) {
    const auto a = d.find_arc(d.index_of(from), d.index_of(to));
    if (!a) throw sa::ModelError("no arc (" + from + "," + to + ")");
    out.push_back(*a);
  }
  return out;
}

py::tuple reduction_tuple(sa::Reduction r) {
  const auto& d = r.system.digraph();
  auto in = arc_pairs(d, r.gadgets.hints.in);
  auto out = arc_pairs(d, r.gadgets.hints.out);
  return py::make_tuple(std::move(r.system), in, out);
}

py::dict decide(const sa::SwapSystem& s, const std::string& mode, bool full_h_scope,
                const std::vector<ArcPair>& frozen_in, const std::vector<ArcPair>& frozen_out,
                std::optional<double> time_budget, unsigned jobs) {
  const auto& d = s.digraph();
  sa::SearchConfig cfg;
  if (mode == "pruned") {
    cfg.mode = sa::SearchMode::kPruned;
  } else if (mode == "literal") {
    cfg.mode = sa::SearchMode::kLiteral;
  } else if (mode == "exhaustive") {
    cfg.mode = sa::SearchMode::kExhaustive;
  } else {
    throw py::value_error("mode is one of pruned, literal, exhaustive");
  }
  cfg.h_scope = full_h_scope ? sa::HScope::kFull : sa::HScope::kArcSubsets;
  cfg.frozen.in = arc_indices(d, frozen_in);
  cfg.frozen.out = arc_indices(d, frozen_out);
  cfg.time_budget_seconds = time_budget;
  cfg.jobs = jobs;
  sa::AtomicityVerdict v;
  {
    py::gil_scoped_release release;
    v = sa::decide_atomic(s, cfg);
  }
  py::dict out;
  out["decision"] = sa::to_string(v.decision);
  if (v.witness) {
    out["witness"] = arc_pairs(d, v.witness->arc_list());
  } else {
    out["witness"] = py::none();
  }
  out["sccs"] = sa::component_ids(d, v.sccs);
  out["g_candidates"] = v.stats.g_candidates;
  out["g_passing"] = v.stats.g_passing;
  out["h_candidates"] = v.stats.h_candidates;
  out["elapsed_seconds"] = v.stats.elapsed_seconds;
  return out;
}

py::dict simulate(const sa::SwapSystem& s, const std::optional<std::vector<ArcPair>>& arcs,
                  const std::string& strategy, std::uint64_t seed, int delta, bool keep_propagating) {
  const auto& d = s.digraph();
  const auto g = arcs ? sa::Subgraph::from_arcs(d, arc_indices(d, *arcs)) : sa::Subgraph::full(d);
  sa::SimConfig cfg;
  cfg.seed = seed;
  cfg.delta = delta;
  cfg.keep_propagating = keep_propagating;
  const auto r = sa::run_protocol(s, g, sa::parse_strategy_spec(d, strategy), cfg);
  std::vector<sa::ArcIndex> triggered;
  for (sa::ArcIndex a = 0; a < d.arc_count(); ++a) {
    if (r.triggered[a]) triggered.push_back(a);
  }
  py::dict outcomes, acceptable, classes;
  for (auto v : g.vertex_list()) {
    outcomes[py::str(d.id(v))] = sa::format_outcome(d, r.outcomes[v]);
    acceptable[py::str(d.id(v))] = static_cast<bool>(r.acceptable[v]);
    classes[py::str(d.id(v))] = sa::class_names(r.classes[v]);
  }
  py::dict out;
  out["triggered"] = arc_pairs(d, triggered);
  out["outcomes"] = outcomes;
  out["acceptable"] = acceptable;
  out["classes"] = classes;
  out["rounds"] = r.rounds;
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Atomicity decisions, reductions and protocol simulation for cross-chain swap systems";

  py::register_exception<sa::ParseError>(m, "ParseError", PyExc_ValueError);
  py::register_exception<sa::ModelError>(m, "ModelError", PyExc_ValueError);

  py::class_<sa::SwapSystem>(m, "SwapSystem")
      .def_static("from_json", [](const std::string& text) { return sa::parse_swap_system(text); }, py::arg("text"))
      .def_static("load", [](const std::string& path) { return sa::load_swap_system(path); }, py::arg("path"))
      .def("to_json", [](const sa::SwapSystem& s) { return sa::serialize_swap_system(s); })
      .def_property_readonly("vertices", [](const sa::SwapSystem& s) { return s.digraph().ids(); })
      .def_property_readonly("arcs",
                             [](const sa::SwapSystem& s) {
                               std::vector<sa::ArcIndex> all(s.digraph().arc_count());
                               for (sa::ArcIndex a = 0; a < all.size(); ++a) all[a] = a;
                               return arc_pairs(s.digraph(), all);
                             })
      .def_property_readonly("generator_count", &sa::SwapSystem::generator_count)
      .def("validate",
           [](const sa::SwapSystem& s) {
             std::vector<std::string> out;
             for (const auto& v : sa::validate_system(s)) out.push_back(v.vertex.empty() ? v.message : v.vertex + ": " + v.message);
             return out;
           })
      .def("__repr__", [](const sa::SwapSystem& s) {
        return "<SwapSystem " + std::to_string(s.digraph().vertex_count()) + " vertices, " +
               std::to_string(s.digraph().arc_count()) + " arcs, " + std::to_string(s.generator_count()) +
               " generators>";
      });

  m.def("fixture", &sa::fixture, py::arg("index"), "Benchmark system s1..s5.");
  m.def("figure4_h_swap", &sa::figure4_h_swap, "The s2 digraph with h-swap preferences for every party.");
  m.def("h_swap_system", [](const sa::SwapSystem& s) { return sa::h_swap_system(s.digraph()); }, py::arg("system"),
        "Same digraph, preferences replaced by Underwater below NoDeal.");

  m.def("decide", &decide, py::arg("system"), py::arg("mode") = "pruned", py::arg("full_h_scope") = false,
        py::arg("frozen_in") = std::vector<ArcPair>{}, py::arg("frozen_out") = std::vector<ArcPair>{},
        py::arg("time_budget") = py::none(), py::arg("jobs") = 1u);
  m.def(
      "verify_witness",
      [](const sa::SwapSystem& s, const std::vector<ArcPair>& arcs) {
        return sa::verify_witness(s, sa::Subgraph::spanning(s.digraph(), arc_indices(s.digraph(), arcs))).ok();
      },
      py::arg("system"), py::arg("arcs"));
  m.def("simulate", &simulate, py::arg("system"), py::arg("arcs") = py::none(), py::arg("strategy") = "all-honest",
        py::arg("seed") = 1, py::arg("delta") = 1, py::arg("keep_propagating") = true,
        "Run the hashed-timelock protocol on the subgraph spanned by arcs (all of D when omitted).");

  m.def(
      "cnf_to_swap",
      [](const std::string& dimacs, bool detach_unused_literals) {
        sa::CnfReductionOptions o;
        o.detach_unused_literals = detach_unused_literals;
        return reduction_tuple(sa::cnf_to_swap(sa::parse_dimacs(dimacs), o));
      },
      py::arg("dimacs"), py::arg("detach_unused_literals") = true, "Returns (system, frozen_in, frozen_out).");
  m.def(
      "eadnf_to_swap",
      [](const std::string& text, bool normalize) {
        auto f = sa::parse_eadnf(text);
        if (normalize) f = sa::dnf1x_normalize(f);
        return reduction_tuple(sa::eadnf1x_to_swap(f));
      },
      py::arg("text"), py::arg("normalize") = false, "Returns (system, frozen_in, frozen_out).");
  m.def("sat_bruteforce", [](const std::string& dimacs) { return sa::sat_bruteforce(sa::parse_dimacs(dimacs)); },
        py::arg("dimacs"));
  m.def("eadnf_bruteforce", [](const std::string& text) { return sa::eadnf_bruteforce(sa::parse_eadnf(text)); },
        py::arg("text"));
}
