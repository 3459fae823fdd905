#pragma once

#include "napoly/wfa.hpp"

namespace napoly {

/// Removes all epsilon transitions while preserving every best-match score
/// for non-empty inputs, in both Local and Global modes.
///
/// Each labeled edge u --a/w--> v is recomposed with the max-plus epsilon
/// closure on both sides: for every p that epsilon-reaches u (cost d(p,u))
/// and every q epsilon-reachable from v (cost d(v,q)), the result gains
/// p --a/(d(p,u)+w+d(v,q))--> q. Parallel edges between a state pair
/// are then canonicalized: per symbol keep the max weight, regroup into
/// classes by weight. States unreachable from the start are dropped and the
/// rest renumbered (only when epsilons were present; an epsilon-free input
/// is returned unchanged).
///
/// A strictly positive-weight epsilon cycle makes scores unbounded and
/// throws UnboundedScoreError.
///
/// Not preserved: acceptance of the empty input via epsilon paths
/// (the overlay consumes at least one symbol per report, so the empty
/// input has no best match either way).
WeightedAutomaton eliminate_epsilon(const WeightedAutomaton& wfa);

}  // namespace napoly
