#pragma once

#include <string_view>

#include "napoly/wfa.hpp"

namespace napoly {

/// Affine-free alignment scoring: fixed reward/penalty per column.
struct ScoringScheme {
    Weight match = 2;
    Weight mismatch = -1;
    Weight gap = -2;
};

/// Builds the weighted automaton that scores alignments of an input text
/// against `pattern` (alphabet ACGT unless the pattern says otherwise).
///
/// States 0..m track how much of the pattern is matched. For each position
/// i: a match edge i --p[i]/match--> i+1, a mismatch edge for the rest of
/// the alphabet at `mismatch`, a self-loop i --Σ/gap--> i (insertion into
/// the text), and an epsilon edge i --ε/gap--> i+1 (deletion: pattern
/// symbol skipped). State m is the only accept.
///
/// The same automaton serves both modes; Local vs Global is chosen at
/// scoring time. Throws EmptyPatternError on an empty pattern and
/// SymbolOutsideAlphabetError when the pattern leaves the alphabet.
WeightedAutomaton build_alignment_wfa(std::string_view pattern,
                                      const ScoringScheme& scheme,
                                      const SymbolClass& alphabet = dna_alphabet());

}  // namespace napoly
