#pragma once

#include <optional>
#include <string_view>

#include "napoly/wfa.hpp"

namespace napoly {

/// Max-plus Viterbi best-match score. Requires an epsilon-free automaton
/// (throws EpsilonPresentError otherwise).
///
/// Global: state scores start at {start: 0}, everything else unreachable;
/// answer is the best accept-state score after the whole input.
/// Local: the start state is re-seeded to max(current, 0) before every
/// symbol, so a match may begin at any offset; answer is the best accept
/// score seen after any symbol, ties broken toward the smallest offset.
///
/// Scores latch in int32 like the hardware model: after each symbol, any
/// reachable state whose max-plus value leaves [INT32_MIN, INT32_MAX]
/// throws ScoreOverflowError (losing candidate sums may fall outside).
std::optional<BestScore> viterbi_best_score(const WeightedAutomaton& wfa,
                                            std::string_view input,
                                            ScoreMode mode);

}  // namespace napoly
