#pragma once

#include <string>
#include <string_view>

#include "swapatomic/atomicity.hpp"

namespace swapatomic {

// JSON document with the decision, witness arcs, SCCs of the witness, the
// system's arc and generator counts, candidate counts and wall time.
std::string serialize_verdict(const SwapSystem& system, const AtomicityVerdict& verdict);
// Inverse of serialize_verdict for the same system. Throws ParseError.
AtomicityVerdict parse_verdict(const SwapSystem& system, std::string_view text);

}  // namespace swapatomic
