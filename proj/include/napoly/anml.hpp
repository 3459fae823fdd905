#pragma once

#include <cstdint>
#include <vector>

#include "napoly/symbol_class.hpp"
#include "napoly/wfa.hpp"

namespace napoly {

using NodeId = int32_t;

/// State-labeled automaton node: exactly one NFA transition folded into a
/// state. It activates when its symbol class matches and a predecessor was
/// active (or it is start-enabled), and contributes its weight on match.
struct AnmlNode {
    NodeId id = 0;
    SymbolClass symbols;
    Weight weight = 0;
    bool start_enabled = false;  // NFA transition leaves the start state
    bool accept = false;         // NFA transition enters a final state
    std::vector<NodeId> successors;  // sorted, unique

    bool operator==(const AnmlNode&) const = default;
};

/// Homogeneous (state-labeled) automaton. Nodes are dense 0..n-1 and each
/// node's id equals its index.
struct AnmlAutomaton {
    std::vector<AnmlNode> nodes;
    /// True when the source automaton's start state is itself accepting:
    /// the empty match scores 0 before any node fires. No node can encode
    /// that, so it rides along as a flag for the simulator's bookkeeping.
    bool start_state_accepting = false;

    void check() const;

    bool operator==(const AnmlAutomaton&) const = default;
};

/// Converts an epsilon-free edge-weighted NFA to the state-labeled form:
/// one node per transition, adjacency iff the transitions are consecutive
/// (node u.to == node v.from). Throws EpsilonPresentError on epsilon edges
/// and EmptyAutomatonError when there are no transitions.
AnmlAutomaton wfa_to_anml(const WeightedAutomaton& wfa);

/// Inverse direction for oracle checks: rebuilds an edge-weighted NFA whose
/// best-match scores equal the node automaton's. State 0 is the start;
/// node i becomes state i+1 with edges from 0 (if start-enabled) and from
/// every predecessor. Accept nodes' states form the final set (plus state 0
/// when start_state_accepting).
WeightedAutomaton anml_to_wfa(const AnmlAutomaton& anml);

}  // namespace napoly
