#include "napoly/align.hpp"

namespace napoly {

WeightedAutomaton build_alignment_wfa(std::string_view pattern,
                                      const ScoringScheme& scheme,
                                      const SymbolClass& alphabet) {
    if (pattern.empty())
        throw EmptyPatternError("alignment pattern must be non-empty");
    if (alphabet.empty())
        throw InvalidArgumentError("alignment alphabet must be non-empty");

    const auto m = static_cast<StateId>(pattern.size());
    WeightedAutomaton out;
    out.num_states = m + 1;
    out.alphabet = alphabet;
    out.start = 0;
    out.accepts = {m};

    for (StateId i = 0; i < m; ++i) {
        const auto c = static_cast<uint8_t>(pattern[static_cast<size_t>(i)]);
        if (!alphabet.contains(c))
            throw SymbolOutsideAlphabetError("pattern symbol at position " +
                                             std::to_string(i) +
                                             " is outside the alphabet");
        const SymbolClass hit = SymbolClass::single(c);
        const SymbolClass miss = alphabet & ~hit;
        out.transitions.push_back({i, i + 1, hit, scheme.match});
        if (!miss.empty())
            out.transitions.push_back({i, i + 1, miss, scheme.mismatch});
        out.transitions.push_back({i, i, alphabet, scheme.gap});  // insertion
        out.transitions.push_back({i, i + 1, std::nullopt, scheme.gap});  // deletion
    }
    return out;
}

}  // namespace napoly
