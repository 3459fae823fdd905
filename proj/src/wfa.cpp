#include "napoly/wfa.hpp"

#include <algorithm>

namespace napoly {

std::string to_string(ScoreMode mode) {
    return mode == ScoreMode::Local ? "local" : "global";
}

std::optional<ScoreMode> score_mode_from_string(std::string_view s) {
    if (s == "local") return ScoreMode::Local;
    if (s == "global") return ScoreMode::Global;
    return std::nullopt;
}

bool WeightedAutomaton::has_epsilon() const {
    for (const auto& t : transitions)
        if (t.is_epsilon()) return true;
    return false;
}

bool WeightedAutomaton::is_accept(StateId q) const {
    return std::binary_search(accepts.begin(), accepts.end(), q);
}

SymbolClass WeightedAutomaton::label_union() const {
    SymbolClass u;
    for (const auto& t : transitions)
        if (t.label) u |= *t.label;
    return u;
}

void WeightedAutomaton::check() const {
    if (num_states <= 0)
        throw InvalidArgumentError("automaton needs at least one state");
    if (start < 0 || start >= num_states)
        throw InvalidArgumentError("start state " + std::to_string(start) +
                                   " out of range [0, " + std::to_string(num_states) + ")");
    for (size_t i = 0; i < accepts.size(); ++i) {
        if (accepts[i] < 0 || accepts[i] >= num_states)
            throw InvalidArgumentError("accept state " + std::to_string(accepts[i]) +
                                       " out of range");
        if (i > 0 && accepts[i] <= accepts[i - 1])
            throw InvalidArgumentError("accept states must be sorted and unique");
    }
    for (size_t i = 0; i < transitions.size(); ++i) {
        const auto& t = transitions[i];
        if (t.from < 0 || t.from >= num_states || t.to < 0 || t.to >= num_states)
            throw InvalidArgumentError("transition " + std::to_string(i) +
                                       " endpoint out of range");
        if (t.label && t.label->empty())
            throw InvalidArgumentError("transition " + std::to_string(i) +
                                       " has an empty symbol class");
    }
}

}  // namespace napoly
