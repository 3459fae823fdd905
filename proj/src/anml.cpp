#include "napoly/anml.hpp"

#include <algorithm>

namespace napoly {

void AnmlAutomaton::check() const {
    const auto n = static_cast<NodeId>(nodes.size());
    for (NodeId i = 0; i < n; ++i) {
        const auto& node = nodes[static_cast<size_t>(i)];
        if (node.id != i)
            throw InvalidArgumentError("node at index " + std::to_string(i) +
                                       " carries id " + std::to_string(node.id));
        if (node.symbols.empty())
            throw InvalidArgumentError("node " + std::to_string(i) +
                                       " has an empty symbol class");
        for (size_t k = 0; k < node.successors.size(); ++k) {
            const NodeId s = node.successors[k];
            if (s < 0 || s >= n)
                throw InvalidArgumentError("node " + std::to_string(i) +
                                           " successor " + std::to_string(s) +
                                           " out of range");
            if (k > 0 && s <= node.successors[k - 1])
                throw InvalidArgumentError("node " + std::to_string(i) +
                                           " successors must be sorted and unique");
        }
    }
}

AnmlAutomaton wfa_to_anml(const WeightedAutomaton& wfa) {
    wfa.check();
    if (wfa.has_epsilon())
        throw EpsilonPresentError("state-labeled conversion needs an epsilon-free automaton");
    if (wfa.transitions.empty())
        throw EmptyAutomatonError("automaton has no transitions to convert");

    AnmlAutomaton out;
    out.start_state_accepting = wfa.is_accept(wfa.start);
    out.nodes.reserve(wfa.transitions.size());

    // by_from[s]: nodes whose transition leaves state s, ascending by id.
    std::vector<std::vector<NodeId>> by_from(static_cast<size_t>(wfa.num_states));
    for (size_t i = 0; i < wfa.transitions.size(); ++i)
        by_from[static_cast<size_t>(wfa.transitions[i].from)].push_back(
            static_cast<NodeId>(i));

    for (size_t i = 0; i < wfa.transitions.size(); ++i) {
        const auto& t = wfa.transitions[i];
        AnmlNode node;
        node.id = static_cast<NodeId>(i);
        node.symbols = *t.label;
        node.weight = t.weight;
        node.start_enabled = t.from == wfa.start;
        node.accept = wfa.is_accept(t.to);
        node.successors = by_from[static_cast<size_t>(t.to)];
        out.nodes.push_back(std::move(node));
    }
    return out;
}

WeightedAutomaton anml_to_wfa(const AnmlAutomaton& anml) {
    anml.check();
    const auto n = static_cast<NodeId>(anml.nodes.size());

    WeightedAutomaton out;
    out.num_states = n + 1;
    out.start = 0;
    for (const auto& node : anml.nodes) out.alphabet |= node.symbols;

    // Start edges first, then adjacency edges in (source, target) order.
    for (const auto& node : anml.nodes)
        if (node.start_enabled)
            out.transitions.push_back({0, node.id + 1, node.symbols, node.weight});
    for (const auto& node : anml.nodes)
        for (NodeId s : node.successors) {
            const auto& succ = anml.nodes[static_cast<size_t>(s)];
            out.transitions.push_back({node.id + 1, s + 1, succ.symbols, succ.weight});
        }

    if (anml.start_state_accepting) out.accepts.push_back(0);
    for (const auto& node : anml.nodes)
        if (node.accept) out.accepts.push_back(node.id + 1);
    return out;
}

}  // namespace napoly
