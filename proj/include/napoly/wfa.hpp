#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "napoly/errors.hpp"
#include "napoly/symbol_class.hpp"

namespace napoly {

using Weight = int32_t;
using StateId = int32_t;

/// Best-match reporting mode.
///   Local:  best score over all accept activations at any offset
///           (fresh matches may begin at every offset).
///   Global: score at accept activation exactly when the final input
///           symbol is consumed (match anchored at offset 0).
enum class ScoreMode { Local, Global };

std::string to_string(ScoreMode mode);
std::optional<ScoreMode> score_mode_from_string(std::string_view s);

/// One weighted transition. An absent label is an EPSILON move (consumes
/// no input symbol); otherwise the label is a non-empty byte class.
struct Transition {
    StateId from = 0;
    StateId to = 0;
    std::optional<SymbolClass> label;  // nullopt = EPSILON
    Weight weight = 0;

    bool is_epsilon() const { return !label.has_value(); }
    bool operator==(const Transition&) const = default;
};

/// Edge-weighted NFA over byte symbols, evaluated in the max-plus semiring.
/// States are dense integers 0..num_states-1; `start` is the single initial
/// state and `accepts` the final set.
struct WeightedAutomaton {
    StateId num_states = 0;
    SymbolClass alphabet;  // Σ; metadata for builders/generators, not consulted by scoring
    std::vector<Transition> transitions;
    StateId start = 0;
    std::vector<StateId> accepts;  // sorted, unique

    bool has_epsilon() const;
    bool is_accept(StateId q) const;

    /// Union of all transition labels (epsilon excluded).
    SymbolClass label_union() const;

    /// Verifies the structural invariants: endpoints and accepts in range,
    /// start in range, non-empty labels, sorted unique accepts.
    /// Throws InvalidArgumentError on the first breach.
    void check() const;

    bool operator==(const WeightedAutomaton&) const = default;
};

/// A best score plus the 1-based input offset at which it was achieved
/// (offset == input length in Global mode).
struct BestScore {
    Weight score = 0;
    int64_t offset = 0;

    bool operator==(const BestScore&) const = default;
};

}  // namespace napoly
