#include "napoly/enumerate.hpp"

#include <limits>
#include <vector>

namespace napoly {

namespace {

constexpr int64_t kNegInf = std::numeric_limits<int64_t>::min() / 4;
constexpr int64_t kMaxExpansions = 50'000'000;

// Max-plus closure over epsilon edges only; a state with a positive-weight
// cycle through it would admit unboundedly improving runs.
void reject_positive_epsilon_cycles(const WeightedAutomaton& a) {
    const int n = a.num_states;
    std::vector<int64_t> d(static_cast<size_t>(n) * n, kNegInf);
    for (const auto& t : a.transitions) {
        if (!t.is_epsilon()) continue;
        int64_t& cell = d[static_cast<size_t>(t.from) * n + t.to];
        if (t.weight > cell) cell = t.weight;
    }
    for (int k = 0; k < n; ++k)
        for (int i = 0; i < n; ++i) {
            const int64_t dik = d[static_cast<size_t>(i) * n + k];
            if (dik == kNegInf) continue;
            for (int j = 0; j < n; ++j) {
                const int64_t dkj = d[static_cast<size_t>(k) * n + j];
                if (dkj == kNegInf) continue;
                int64_t& cell = d[static_cast<size_t>(i) * n + j];
                if (dik + dkj > cell) cell = dik + dkj;
            }
        }
    for (int i = 0; i < n; ++i)
        if (d[static_cast<size_t>(i) * n + i] > 0)
            throw UnboundedScoreError("positive-weight epsilon cycle through state " +
                                      std::to_string(i));
}

struct Enumerator {
    const WeightedAutomaton& a;
    std::string_view input;
    bool global;
    std::vector<std::vector<int>> out;  // state -> indices into a.transitions
    int64_t expansions = 0;
    std::optional<int64_t> best;

    Enumerator(const WeightedAutomaton& wfa, std::string_view in, bool g)
        : a(wfa), input(in), global(g), out(static_cast<size_t>(wfa.num_states)) {
        for (size_t i = 0; i < a.transitions.size(); ++i)
            out[static_cast<size_t>(a.transitions[i].from)].push_back(static_cast<int>(i));
    }

    void record(int64_t score) {
        if (!best || score > *best) best = score;
    }

    // consumed counts input symbols taken so far; eps_run counts epsilon moves
    // since the last symbol (capped, see header).
    void dfs(StateId q, size_t pos, int64_t score, int64_t consumed, int eps_run) {
        if (++expansions > kMaxExpansions)
            throw TooLargeError("path enumeration exceeded its expansion budget");
        if (consumed >= 1 && a.is_accept(q) && (!global || pos == input.size()))
            record(score);
        for (int ti : out[static_cast<size_t>(q)]) {
            const auto& t = a.transitions[static_cast<size_t>(ti)];
            if (t.is_epsilon()) {
                if (eps_run >= a.num_states) continue;
                dfs(t.to, pos, score + t.weight, consumed, eps_run + 1);
            } else if (pos < input.size() &&
                       t.label->contains(static_cast<uint8_t>(input[pos]))) {
                dfs(t.to, pos + 1, score + t.weight, consumed + 1, 0);
            }
        }
    }
};

}  // namespace

std::optional<int64_t> enumerate_best_score(const WeightedAutomaton& wfa,
                                            std::string_view input,
                                            ScoreMode mode) {
    wfa.check();
    if (wfa.num_states > kEnumMaxStates)
        throw TooLargeError("enumeration oracle capped at " +
                            std::to_string(kEnumMaxStates) + " states, got " +
                            std::to_string(wfa.num_states));
    if (input.size() > kEnumMaxInput)
        throw TooLargeError("enumeration oracle capped at " +
                            std::to_string(kEnumMaxInput) + " input symbols, got " +
                            std::to_string(input.size()));
    reject_positive_epsilon_cycles(wfa);

    Enumerator e(wfa, input, mode == ScoreMode::Global);
    if (mode == ScoreMode::Global) {
        e.dfs(wfa.start, 0, 0, 0, 0);
        if (wfa.is_accept(wfa.start) && input.empty()) e.record(0);
    } else {
        for (size_t s = 0; s < input.size(); ++s) e.dfs(wfa.start, s, 0, 0, 0);
        if (wfa.is_accept(wfa.start)) e.record(0);  // empty match at any offset
    }
    return e.best;
}

}  // namespace napoly
