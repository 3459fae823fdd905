#pragma once

#include <cstdint>
#include <optional>
#include <string_view>

#include "napoly/wfa.hpp"

namespace napoly {

/// Hard caps for the path-enumeration oracle. Enumeration is exponential;
/// anything beyond these sizes throws TooLargeError instead of hanging.
inline constexpr StateId kEnumMaxStates = 12;
inline constexpr size_t kEnumMaxInput = 8;

/// Brute-force best-match score by explicit path enumeration, including
/// epsilon moves (at most num_states consecutive ones per run, which covers
/// every simple-cycle-free prefix; longer runs only repeat states and, with
/// non-positive cycles, never improve).
///
/// Local mode tries every start offset and every accept point; Global mode
/// anchors at offset 0 and accepts only after the full input. Returns
/// nullopt when no accepting path exists. Scores accumulate in int64 so the
/// oracle itself never overflows int32 silently.
std::optional<int64_t> enumerate_best_score(const WeightedAutomaton& wfa,
                                            std::string_view input,
                                            ScoreMode mode);

}  // namespace napoly
