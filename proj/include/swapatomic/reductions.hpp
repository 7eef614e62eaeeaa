#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "swapatomic/core_model.hpp"

namespace swapatomic {

struct CnfLiteral {
  int var = 1;  // 1-based
  bool negated = false;
  friend bool operator==(const CnfLiteral&, const CnfLiteral&) = default;
};

struct CnfFormula {
  int num_vars = 0;
  std::vector<std::vector<CnfLiteral>> clauses;
};

// Throws ModelError unless every clause is nonempty, in range and free of
// repeated variables.
void check_cnf(const CnfFormula& f);
CnfFormula parse_dimacs(std::string_view text);
std::string to_dimacs(const CnfFormula& f);

// Exhaustive, n <= 24.
bool sat_bruteforce(const CnfFormula& f);

struct GadgetMap {
  // (formula element, vertex id), e.g. ("-x2", "nx2") or ("clause 1", "c1").
  std::vector<std::pair<std::string, std::string>> elements;
  FrozenArcs hints;
  std::vector<std::string> notes;
};

std::string serialize_gadget_map(const SwapDigraph& d, const GadgetMap& map);

struct CnfReductionOptions {
  // A literal that occurs in no clause gets no (s_i, literal) arc. With this
  // off, the arc is kept and that literal's preferences become cyclic.
  bool detach_unused_literals = true;
  // Use <b,t_i|t_i,nx_i> as the worse side of s_i's first pair instead of
  // <b,t_i|x_i,nx_i>.
  bool printed_s_pair = false;
};

struct Reduction {
  SwapSystem system;
  GadgetMap gadgets;
};

Reduction cnf_to_swap(const CnfFormula& f, const CnfReductionOptions& options = {});

struct EadnfLiteral {
  bool is_x = true;
  int var = 1;  // 1-based within its block
  bool negated = false;
  friend bool operator==(const EadnfLiteral&, const EadnfLiteral&) = default;
};

// exists x_1..x_k forall y_1..y_l: OR of terms, each an AND of literals.
struct EadnfFormula {
  int k = 0;
  int l = 0;
  std::vector<std::vector<EadnfLiteral>> terms;
};

void check_eadnf(const EadnfFormula& f);
// First line "exists k forall l", then one term per line as signed indices,
// x-variables 1..k and y-variables k+1..k+l. A trailing 0 is allowed.
EadnfFormula parse_eadnf(std::string_view text);
std::string to_eadnf_text(const EadnfFormula& f);

// Every term has exactly one x-literal and at least one y-literal.
bool is_1x(const EadnfFormula& f);

bool eadnf_holds_for(const EadnfFormula& f, std::uint64_t x_assignment);
bool eadnf_bruteforce(const EadnfFormula& f);  // k + l <= 30

// Rewrites into 1x form preserving the truth value for every x-assignment.
// Terms with two or more x-literals are split with a fresh y per split; terms
// without x-literals are duplicated over a fresh x. Throws on terms with only
// x-literals.
EadnfFormula dnf1x_normalize(const EadnfFormula& f);

// For each x-literal in no term adds (literal AND y_fresh), one fresh y shared by
// all such terms. Setting y_fresh false recovers the input, so the truth value
// is kept for every x-assignment.
EadnfFormula pad_unused_x_literals(const EadnfFormula& f);

struct EadnfReductionOptions {
  bool pad_unused_x_literals = true;
  // Adds arcs (a,z_i) and (a,nz_i). Then <b,x_i|b,T(x_i)> lies below Deal of z_i
  // by monotonicity while its generator puts it above, so z_i's preferences are
  // cyclic.
  bool arcs_from_a_to_z = false;
};

Reduction eadnf1x_to_swap(const EadnfFormula& f, const EadnfReductionOptions& options = {});

}  // namespace swapatomic
