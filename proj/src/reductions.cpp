#include "swapatomic/reductions.hpp"

#include <algorithm>
#include <cstdlib>
#include <map>
#include <set>
#include <sstream>

#include "json.hpp"
#include "swapatomic/fixtures.hpp"

namespace swapatomic {

namespace {

std::vector<std::string> tokenize_lines(std::string_view text) {
  std::vector<std::string> lines;
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    lines.push_back(line);
  }
  return lines;
}

std::vector<long> parse_ints(const std::string& line, std::size_t line_no) {
  std::istringstream in(line);
  std::vector<long> out;
  std::string tok;
  while (in >> tok) {
    char* end = nullptr;
    const long value = std::strtol(tok.c_str(), &end, 10);
    if (end == tok.c_str() || *end != '\0') throw ParseError("expected an integer, got '" + tok + "'", line_no, 1);
    out.push_back(value);
  }
  return out;
}

bool is_comment(const std::string& line) {
  const auto pos = line.find_first_not_of(" \t");
  return pos == std::string::npos || line[pos] == 'c' || line[pos] == '#' || line[pos] == '%';
}

NamedOutcome both(std::vector<std::string> in, std::vector<std::string> out) { return {std::move(in), std::move(out)}; }

std::string literal_name(const CnfLiteral& lit) { return (lit.negated ? "nx" : "x") + std::to_string(lit.var); }

}  // namespace

void check_cnf(const CnfFormula& f) {
  if (f.num_vars < 1) throw ModelError("a CNF formula needs at least one variable");
  if (f.clauses.empty()) throw ModelError("a CNF formula needs at least one clause");
  for (std::size_t j = 0; j < f.clauses.size(); ++j) {
    const auto& c = f.clauses[j];
    if (c.empty()) throw ModelError("clause " + std::to_string(j + 1) + " is empty");
    std::set<int> vars;
    for (const auto& lit : c) {
      if (lit.var < 1 || lit.var > f.num_vars) {
        throw ModelError("clause " + std::to_string(j + 1) + " uses variable " + std::to_string(lit.var) +
                         " outside 1.." + std::to_string(f.num_vars));
      }
      if (!vars.insert(lit.var).second) {
        throw ModelError("clause " + std::to_string(j + 1) + " has two literals on variable " + std::to_string(lit.var));
      }
    }
  }
}

CnfFormula parse_dimacs(std::string_view text) {
  CnfFormula f;
  bool header = false;
  std::size_t declared = 0;
  std::vector<CnfLiteral> current;
  const auto lines = tokenize_lines(text);
  for (std::size_t i = 0; i < lines.size(); ++i) {
    const auto& line = lines[i];
    const auto pos = line.find_first_not_of(" \t");
    if (pos == std::string::npos || line[pos] == 'c' || line[pos] == '%') continue;
    if (line[pos] == 'p') {
      if (header) throw ParseError("second problem line", i + 1, pos + 1);
      std::istringstream in(line.substr(pos));
      std::string p, fmt;
      long n = -1, m = -1;
      if (!(in >> p >> fmt >> n >> m) || fmt != "cnf" || n < 0 || m < 0) {
        throw ParseError("malformed problem line, expected 'p cnf <vars> <clauses>'", i + 1, pos + 1);
      }
      header = true;
      f.num_vars = static_cast<int>(n);
      declared = static_cast<std::size_t>(m);
      continue;
    }
    if (!header) throw ParseError("clause before the problem line", i + 1, pos + 1);
    for (long v : parse_ints(line, i + 1)) {
      if (v == 0) {
        if (current.empty()) throw ParseError("empty clause", i + 1, 1);
        f.clauses.push_back(std::move(current));
        current.clear();
      } else {
        current.push_back({static_cast<int>(std::labs(v)), v < 0});
      }
    }
  }
  if (!header) throw ParseError("missing problem line 'p cnf <vars> <clauses>'");
  if (!current.empty()) f.clauses.push_back(std::move(current));
  if (f.clauses.size() != declared) {
    throw ParseError("problem line declares " + std::to_string(declared) + " clauses, found " +
                     std::to_string(f.clauses.size()));
  }
  try {
    check_cnf(f);
  } catch (const ModelError& e) {
    throw ParseError(e.what());
  }
  return f;
}

std::string to_dimacs(const CnfFormula& f) {
  std::ostringstream out;
  out << "p cnf " << f.num_vars << ' ' << f.clauses.size() << '\n';
  for (const auto& c : f.clauses) {
    for (const auto& lit : c) out << (lit.negated ? -lit.var : lit.var) << ' ';
    out << "0\n";
  }
  return out.str();
}

bool sat_bruteforce(const CnfFormula& f) {
  check_cnf(f);
  if (f.num_vars > 24) throw ModelError("sat_bruteforce supports at most 24 variables");
  for (std::uint32_t a = 0; a < (1u << f.num_vars); ++a) {
    const bool all = std::all_of(f.clauses.begin(), f.clauses.end(), [a](const auto& c) {
      return std::any_of(c.begin(), c.end(), [a](const CnfLiteral& lit) {
        return static_cast<bool>(a >> (lit.var - 1) & 1) != lit.negated;
      });
    });
    if (all) return true;
  }
  return false;
}

std::string serialize_gadget_map(const SwapDigraph& d, const GadgetMap& map) {
  nlohmann::json doc;
  nlohmann::json elements = nlohmann::json::array();
  for (const auto& [element, vertex] : map.elements) elements.push_back({element, vertex});
  doc["elements"] = elements;
  auto arcs = [&d](std::vector<ArcIndex> list) {
    std::sort(list.begin(), list.end());
    nlohmann::json out = nlohmann::json::array();
    for (auto a : list) out.push_back({d.id(d.arc(a).from), d.id(d.arc(a).to)});
    return out;
  };
  doc["frozen_in"] = arcs(map.hints.in);
  doc["frozen_out"] = arcs(map.hints.out);
  doc["notes"] = map.notes;
  return doc.dump(2) + "\n";
}

Reduction cnf_to_swap(const CnfFormula& f, const CnfReductionOptions& options) {
  check_cnf(f);
  SystemSpec spec;
  GadgetMap map;
  std::set<std::string> used;
  for (const auto& c : f.clauses) {
    for (const auto& lit : c) used.insert(literal_name(lit));
  }

  for (int i = 1; i <= f.num_vars; ++i) {
    const auto n = std::to_string(i);
    for (const auto* name : {"s", "t", "x", "nx"}) spec.vertices.push_back(name + n);
    map.elements.emplace_back("x" + n + " (selector)", "s" + n);
    map.elements.emplace_back("x" + n + " (partner)", "t" + n);
    map.elements.emplace_back("x" + n, "x" + n);
    map.elements.emplace_back("-x" + n, "nx" + n);
  }
  for (std::size_t j = 1; j <= f.clauses.size(); ++j) {
    const auto n = std::to_string(j);
    spec.vertices.push_back("c" + n);
    spec.vertices.push_back("a" + n);
    map.elements.emplace_back("clause " + n, "c" + n);
    map.elements.emplace_back("clause " + n + " (partner)", "a" + n);
  }
  spec.vertices.push_back("b");
  map.elements.emplace_back("core", "b");

  for (int i = 1; i <= f.num_vars; ++i) {
    const auto n = std::to_string(i);
    const auto s = "s" + n, t = "t" + n;
    spec.arcs.push_back({s, t});
    spec.arcs.push_back({t, s});
    std::vector<std::string> attached;
    for (const auto& lit : {"x" + n, "nx" + n}) {
      if (used.count(lit) || !options.detach_unused_literals) {
        spec.arcs.push_back({s, lit});
        attached.push_back(lit);
      } else {
        map.notes.push_back("literal " + lit + " occurs in no clause; arc (" + s + "," + lit + ") omitted");
      }
    }
    if (!attached.empty()) {
      // With one literal arc, <b,t_i|literal> would sit above <b|b,literal>
      // and close a cycle, so t_i stays on the paying side.
      NamedOutcome worse = both({"b", t}, {t, attached.front()});
      if (attached.size() == 2) worse = options.printed_s_pair ? both({"b", t}, {t, "nx" + n}) : both({"b", t}, attached);
      spec.generators.push_back({s, worse, both({t}, {t})});
      for (const auto& lit : attached) spec.generators.push_back({s, both({t}, {t}), both({"b"}, {"b", lit})});
    }
    spec.generators.push_back({t, kDealToken, both({"b"}, {"b"})});
    spec.generators.push_back({t, both({"b", s}, {"b"}), both({s}, {s})});
    for (const auto& lit : attached) spec.generators.push_back({lit, kDealToken, both({"b"}, {"b"})});
  }
  for (std::size_t j = 1; j <= f.clauses.size(); ++j) {
    const auto n = std::to_string(j);
    const auto c = "c" + n, a = "a" + n;
    spec.arcs.push_back({c, a});
    spec.arcs.push_back({a, c});
    for (const auto& lit : f.clauses[j - 1]) {
      spec.arcs.push_back({literal_name(lit), c});
      spec.generators.push_back({c, kDealToken, both({"b", literal_name(lit)}, {"b"})});
    }
    spec.generators.push_back({a, kDealToken, both({"b"}, {"b"})});
  }
  for (const auto& v : spec.vertices) {
    if (v == "b") continue;
    spec.arcs.push_back({"b", v});
    spec.arcs.push_back({v, "b"});
  }
  spec.h_vertices = {"b"};

  Reduction r{spec.build(), std::move(map)};
  const auto& d = r.system.digraph();
  const auto b = d.index_of("b");
  for (auto a : d.out_arcs(b)) r.gadgets.hints.in.push_back(a);
  for (auto a : d.in_arcs(b)) r.gadgets.hints.in.push_back(a);
  std::sort(r.gadgets.hints.in.begin(), r.gadgets.hints.in.end());
  return r;
}

void check_eadnf(const EadnfFormula& f) {
  if (f.k < 0 || f.l < 0) throw ModelError("variable counts must be nonnegative");
  if (f.terms.empty()) throw ModelError("an EADNF formula needs at least one term");
  for (std::size_t g = 0; g < f.terms.size(); ++g) {
    const auto& t = f.terms[g];
    if (t.empty()) throw ModelError("term " + std::to_string(g + 1) + " is empty");
    std::set<std::pair<bool, int>> vars;
    for (const auto& lit : t) {
      const int limit = lit.is_x ? f.k : f.l;
      if (lit.var < 1 || lit.var > limit) throw ModelError("term " + std::to_string(g + 1) + " has a variable out of range");
      if (!vars.insert({lit.is_x, lit.var}).second) {
        throw ModelError("term " + std::to_string(g + 1) + " has two literals on one variable");
      }
    }
  }
}

EadnfFormula parse_eadnf(std::string_view text) {
  EadnfFormula f;
  bool header = false;
  const auto lines = tokenize_lines(text);
  for (std::size_t i = 0; i < lines.size(); ++i) {
    const auto& line = lines[i];
    if (is_comment(line)) continue;
    if (!header) {
      std::istringstream in(line);
      std::string ex, fa;
      long k = -1, l = -1;
      std::string rest;
      if (!(in >> ex >> k >> fa >> l) || ex != "exists" || fa != "forall" || k < 0 || l < 0 || (in >> rest)) {
        throw ParseError("expected header 'exists <k> forall <l>'", i + 1, 1);
      }
      f.k = static_cast<int>(k);
      f.l = static_cast<int>(l);
      header = true;
      continue;
    }
    auto ints = parse_ints(line, i + 1);
    if (!ints.empty() && ints.back() == 0) ints.pop_back();
    if (std::find(ints.begin(), ints.end(), 0) != ints.end()) throw ParseError("0 inside a term", i + 1, 1);
    std::vector<EadnfLiteral> term;
    for (long v : ints) {
      const long a = std::labs(v);
      if (a > f.k + f.l) throw ParseError("literal " + std::to_string(v) + " out of range", i + 1, 1);
      if (a <= f.k) {
        term.push_back({true, static_cast<int>(a), v < 0});
      } else {
        term.push_back({false, static_cast<int>(a - f.k), v < 0});
      }
    }
    if (term.empty()) throw ParseError("empty term", i + 1, 1);
    f.terms.push_back(std::move(term));
  }
  if (!header) throw ParseError("missing header 'exists <k> forall <l>'");
  try {
    check_eadnf(f);
  } catch (const ModelError& e) {
    throw ParseError(e.what());
  }
  return f;
}

std::string to_eadnf_text(const EadnfFormula& f) {
  std::ostringstream out;
  out << "exists " << f.k << " forall " << f.l << '\n';
  for (const auto& t : f.terms) {
    for (std::size_t i = 0; i < t.size(); ++i) {
      const int index = t[i].is_x ? t[i].var : f.k + t[i].var;
      out << (i ? " " : "") << (t[i].negated ? -index : index);
    }
    out << '\n';
  }
  return out.str();
}

bool is_1x(const EadnfFormula& f) {
  return std::all_of(f.terms.begin(), f.terms.end(), [](const auto& t) {
    const auto xs = std::count_if(t.begin(), t.end(), [](const EadnfLiteral& l) { return l.is_x; });
    return xs == 1 && t.size() >= 2;
  });
}

namespace {

bool term_true(const std::vector<EadnfLiteral>& t, std::uint64_t x, std::uint64_t y) {
  return std::all_of(t.begin(), t.end(), [x, y](const EadnfLiteral& lit) {
    const auto bits = lit.is_x ? x : y;
    return static_cast<bool>(bits >> (lit.var - 1) & 1) != lit.negated;
  });
}

}  // namespace

bool eadnf_holds_for(const EadnfFormula& f, std::uint64_t x) {
  if (f.l > 30) throw ModelError("too many universal variables to enumerate");
  for (std::uint64_t y = 0; y < (std::uint64_t{1} << f.l); ++y) {
    const bool some = std::any_of(f.terms.begin(), f.terms.end(), [x, y](const auto& t) { return term_true(t, x, y); });
    if (!some) return false;
  }
  return true;
}

bool eadnf_bruteforce(const EadnfFormula& f) {
  check_eadnf(f);
  if (f.k + f.l > 30) throw ModelError("eadnf_bruteforce supports k + l <= 30");
  for (std::uint64_t x = 0; x < (std::uint64_t{1} << f.k); ++x) {
    if (eadnf_holds_for(f, x)) return true;
  }
  return false;
}

EadnfFormula dnf1x_normalize(const EadnfFormula& f) {
  check_eadnf(f);
  EadnfFormula out{f.k, f.l, {}};
  std::vector<std::vector<EadnfLiteral>> pending(f.terms.begin(), f.terms.end());
  for (std::size_t i = 0; i < pending.size(); ++i) {
    auto term = pending[i];
    std::vector<EadnfLiteral> xs, ys;
    for (const auto& lit : term) (lit.is_x ? xs : ys).push_back(lit);
    if (ys.empty()) throw ModelError("a term with only x-literals makes the formula trivially true");
    if (xs.size() == 1) {
      out.terms.push_back(std::move(term));
      continue;
    }
    if (xs.empty()) {
      const EadnfLiteral fresh{true, ++out.k, false};
      auto pos = ys, neg = ys;
      pos.insert(pos.begin(), fresh);
      neg.insert(neg.begin(), EadnfLiteral{true, fresh.var, true});
      out.terms.push_back(std::move(pos));
      out.terms.push_back(std::move(neg));
      continue;
    }
    // x_p AND rest -> (x_p AND ys AND y') OR (NOT y' AND rest), rest keeps the other x-literals.
    const EadnfLiteral fresh{false, ++out.l, false};
    std::vector<EadnfLiteral> first{xs.front()};
    first.insert(first.end(), ys.begin(), ys.end());
    first.push_back(fresh);
    std::vector<EadnfLiteral> second{EadnfLiteral{false, fresh.var, true}};
    second.insert(second.end(), xs.begin() + 1, xs.end());
    second.insert(second.end(), ys.begin(), ys.end());
    out.terms.push_back(std::move(first));
    pending.push_back(std::move(second));
  }
  return out;
}

EadnfFormula pad_unused_x_literals(const EadnfFormula& f) {
  check_eadnf(f);
  EadnfFormula out = f;
  for (int i = 1; i <= f.k; ++i) {
    for (bool neg : {false, true}) {
      const EadnfLiteral lit{true, i, neg};
      const bool used = std::any_of(f.terms.begin(), f.terms.end(), [&lit](const auto& t) {
        return std::find(t.begin(), t.end(), lit) != t.end();
      });
      if (used) continue;
      if (out.l == f.l) ++out.l;
      out.terms.push_back({lit, EadnfLiteral{false, out.l, false}});
    }
  }
  return out;
}

namespace {

std::string x_name(const EadnfLiteral& lit) { return (lit.negated ? "nx" : "x") + std::to_string(lit.var); }
std::string z_name(const EadnfLiteral& lit) { return (lit.negated ? "nz" : "z") + std::to_string(lit.var); }
std::string y_name(const EadnfLiteral& lit) { return (lit.negated ? "ny" : "y") + std::to_string(lit.var); }

}  // namespace

Reduction eadnf1x_to_swap(const EadnfFormula& input, const EadnfReductionOptions& options) {
  check_eadnf(input);
  if (!is_1x(input)) throw ModelError("eadnf1x_to_swap needs exactly one x-literal and some y-literal per term");
  EadnfFormula f = options.pad_unused_x_literals ? pad_unused_x_literals(input) : input;

  SystemSpec spec;
  GadgetMap map;
  for (std::size_t g = input.terms.size(); g < f.terms.size(); ++g) {
    map.notes.push_back("x-literal " + x_name(f.terms[g][0]) + " occurs in no term; added term tau" +
                        std::to_string(g + 1) + " = " + x_name(f.terms[g][0]) + " AND y" + std::to_string(f.terms[g][1].var) +
                        " over a fresh universal variable");
  }
  const int m = static_cast<int>(f.terms.size());
  auto tau = [](int g) { return "tau" + std::to_string(g); };
  auto p = [](int g) { return "p" + std::to_string(g); };
  auto q = [](int j) { return "q" + std::to_string(j); };

  spec.vertices = {"a", "aprime", "b"};
  map.elements = {{"auxiliary", "a"}, {"auxiliary partner", "aprime"}, {"core", "b"}};
  for (int i = 1; i <= f.k; ++i) {
    for (bool neg : {false, true}) {
      const EadnfLiteral lit{true, i, neg};
      spec.vertices.push_back(x_name(lit));
      map.elements.emplace_back(std::string(neg ? "-" : "") + "x" + std::to_string(i), x_name(lit));
    }
    for (bool neg : {false, true}) {
      const EadnfLiteral lit{true, i, neg};
      spec.vertices.push_back(z_name(lit));
      map.elements.emplace_back(std::string(neg ? "-" : "") + "x" + std::to_string(i) + " (witness)", z_name(lit));
    }
  }
  spec.vertices.push_back(q(0));
  for (int j = 1; j <= f.l; ++j) {
    for (bool neg : {false, true}) {
      const EadnfLiteral lit{false, j, neg};
      spec.vertices.push_back(y_name(lit));
      map.elements.emplace_back(std::string(neg ? "-" : "") + "y" + std::to_string(j), y_name(lit));
    }
    spec.vertices.push_back(q(j));
  }
  spec.vertices.push_back(p(0));
  for (int g = 1; g <= m; ++g) {
    spec.vertices.push_back(tau(g));
    spec.vertices.push_back(p(g));
    map.elements.emplace_back("term " + std::to_string(g), tau(g));
  }

  // Terms containing each literal vertex.
  std::map<std::string, std::vector<std::string>> terms_of;
  std::vector<EadnfLiteral> x_of(m + 1);
  std::vector<std::vector<std::string>> ys_of(m + 1);
  for (int g = 1; g <= m; ++g) {
    for (const auto& lit : f.terms[g - 1]) {
      if (lit.is_x) {
        x_of[g] = lit;
        terms_of[x_name(lit)].push_back(tau(g));
      } else {
        ys_of[g].push_back(y_name(lit));
        terms_of[y_name(lit)].push_back(tau(g));
      }
    }
  }
  auto with = [](std::vector<std::string> base, const std::vector<std::string>& more) {
    base.insert(base.end(), more.begin(), more.end());
    return base;
  };

  spec.arcs = {{"a", "aprime"}, {"aprime", "a"}};
  for (int i = 1; i <= f.k; ++i) {
    const EadnfLiteral pos{true, i, false}, neg{true, i, true};
    for (const auto& lit : {pos, neg}) {
      spec.arcs.push_back({"a", x_name(lit)});
      if (options.arcs_from_a_to_z) spec.arcs.push_back({"a", z_name(lit)});
      spec.arcs.push_back({x_name(lit), z_name(lit)});
    }
    spec.arcs.push_back({x_name(pos), x_name(neg)});
    spec.arcs.push_back({x_name(neg), x_name(pos)});
  }
  for (int j = 1; j <= f.l; ++j) {
    for (bool neg : {false, true}) {
      const auto y = y_name({false, j, neg});
      spec.arcs.push_back({q(j - 1), y});
      spec.arcs.push_back({y, q(j)});
    }
  }
  for (int g = 1; g <= m; ++g) {
    spec.arcs.push_back({p(g - 1), tau(g)});
    spec.arcs.push_back({tau(g), p(g)});
    for (const auto& y : ys_of[g]) spec.arcs.push_back({y, tau(g)});
    spec.arcs.push_back({x_name(x_of[g]), tau(g)});
    spec.arcs.push_back({z_name(x_of[g]), tau(g)});
  }
  spec.arcs.push_back({q(f.l), p(0)});
  spec.arcs.push_back({p(m), q(0)});
  for (const auto& v : spec.vertices) {
    if (v == "a" || v == "aprime" || v == "b") continue;
    spec.arcs.push_back({"b", v});
    spec.arcs.push_back({v, "b"});
  }

  const NamedOutcome bb = both({"b"}, {"b"});
  for (int i = 1; i <= f.k; ++i) {
    for (bool neg : {false, true}) {
      const EadnfLiteral lit{true, i, neg}, other{true, i, !neg};
      const auto x = x_name(lit), nx = x_name(other), z = z_name(lit);
      const auto& t = terms_of[x];
      spec.generators.push_back({x, kDealToken, both({"b"}, with({"b", nx}, t))});
      spec.generators.push_back({x, kDealToken, both({"b", nx}, {"b", z})});
      spec.generators.push_back({z, kDealToken, bb});
      // Without (a,z) this pair would read Deal < Deal.
      if (options.arcs_from_a_to_z) spec.generators.push_back({z, kDealToken, both({"b", x}, with({"b"}, t))});
    }
  }
  for (int j = 1; j <= f.l; ++j) {
    for (bool neg : {false, true}) {
      const auto y = y_name({false, j, neg});
      spec.generators.push_back({y, kDealToken, bb});
      spec.generators.push_back({y, bb, both({q(j - 1)}, with({q(j)}, terms_of[y]))});
    }
  }
  for (int j = 0; j <= f.l; ++j) {
    spec.generators.push_back({q(j), kDealToken, bb});
    std::vector<std::string> ins, outs;
    if (j == 0) {
      ins = {p(m)};
    } else {
      ins = {y_name({false, j, false}), y_name({false, j, true})};
    }
    if (j == f.l) {
      outs = {p(0)};
    } else {
      outs = {y_name({false, j + 1, false}), y_name({false, j + 1, true})};
    }
    for (const auto& in : ins) {
      for (const auto& out : outs) spec.generators.push_back({q(j), bb, both({in}, {out})});
    }
  }
  for (int g = 0; g <= m; ++g) {
    spec.generators.push_back({p(g), kDealToken, bb});
    const auto in = g == 0 ? q(f.l) : tau(g);
    const auto out = g == m ? q(0) : tau(g + 1);
    spec.generators.push_back({p(g), bb, both({in}, {out})});
  }
  for (int g = 1; g <= m; ++g) {
    const auto x = x_name(x_of[g]);
    const auto z = z_name(x_of[g]);
    const auto& ys = ys_of[g];
    spec.generators.push_back({tau(g), kDealToken, both({"b", x}, {"b"})});
    spec.generators.push_back({tau(g), kDealToken, both({"b", z}, {"b"})});
    for (std::uint32_t mask = 0; mask < (1u << ys.size()); ++mask) {
      std::vector<std::string> ins{p(g - 1)};
      for (std::size_t i = 0; i < ys.size(); ++i) {
        if (mask >> i & 1) ins.push_back(ys[i]);
      }
      spec.generators.push_back({tau(g), both({"b", x}, {"b"}), both(ins, {p(g)})});
      if (mask != 0) spec.generators.push_back({tau(g), both({"b", z}, {"b"}), both(ins, {p(g)})});
    }
  }

  Reduction r{spec.build(), std::move(map)};
  const auto& d = r.system.digraph();
  const auto b = d.index_of("b");
  for (auto a : d.out_arcs(b)) r.gadgets.hints.in.push_back(a);
  for (auto a : d.in_arcs(b)) r.gadgets.hints.in.push_back(a);
  for (auto a : d.out_arcs(d.index_of("a"))) {
    if (d.arc(a).to != d.index_of("aprime")) r.gadgets.hints.out.push_back(a);
  }
  std::sort(r.gadgets.hints.in.begin(), r.gadgets.hints.in.end());
  std::sort(r.gadgets.hints.out.begin(), r.gadgets.hints.out.end());
  return r;
}

}  // namespace swapatomic
