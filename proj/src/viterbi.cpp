#include "napoly/viterbi.hpp"

#include <limits>
#include <vector>

namespace napoly {

namespace {

constexpr int64_t kUnreach = std::numeric_limits<int64_t>::min();

}  // namespace

std::optional<BestScore> viterbi_best_score(const WeightedAutomaton& wfa,
                                            std::string_view input,
                                            ScoreMode mode) {
    wfa.check();
    if (wfa.has_epsilon())
        throw EpsilonPresentError("viterbi needs an epsilon-free automaton");

    const bool local = mode == ScoreMode::Local;
    std::vector<int64_t> d(static_cast<size_t>(wfa.num_states), kUnreach);
    std::vector<int64_t> nd(static_cast<size_t>(wfa.num_states), kUnreach);
    d[static_cast<size_t>(wfa.start)] = 0;

    std::optional<BestScore> best;
    if (local && wfa.is_accept(wfa.start)) best = BestScore{0, 0};  // empty match

    for (size_t i = 0; i < input.size(); ++i) {
        if (local) {
            int64_t& s = d[static_cast<size_t>(wfa.start)];
            if (s < 0) s = 0;  // restart lane: a fresh match may begin here
        }
        const auto c = static_cast<uint8_t>(input[i]);
        std::fill(nd.begin(), nd.end(), kUnreach);
        for (const auto& t : wfa.transitions) {
            const int64_t from = d[static_cast<size_t>(t.from)];
            if (from == kUnreach || !t.label->contains(c)) continue;
            const int64_t sum = from + t.weight;
            int64_t& cell = nd[static_cast<size_t>(t.to)];
            if (sum > cell) cell = sum;
        }
        d.swap(nd);
        // Like the hardware, only the latched (max) value per state must fit
        // 32 bits; losing candidate sums may fall outside without harm.
        for (StateId q = 0; q < wfa.num_states; ++q) {
            const int64_t s = d[static_cast<size_t>(q)];
            if (s != kUnreach && (s < std::numeric_limits<int32_t>::min() ||
                                  s > std::numeric_limits<int32_t>::max()))
                throw ScoreOverflowError("state " + std::to_string(q) + " score " +
                                         std::to_string(s) +
                                         " leaves the 32-bit range");
        }
        if (local) {
            for (StateId q : wfa.accepts) {
                const int64_t s = d[static_cast<size_t>(q)];
                if (s == kUnreach) continue;
                if (!best || s > best->score)
                    best = BestScore{static_cast<Weight>(s),
                                     static_cast<int64_t>(i) + 1};
            }
        }
    }

    if (!local) {
        for (StateId q : wfa.accepts) {
            const int64_t s = d[static_cast<size_t>(q)];
            if (s == kUnreach) continue;
            if (!best || s > best->score)
                best = BestScore{static_cast<Weight>(s),
                                 static_cast<int64_t>(input.size())};
        }
    }
    return best;
}

}  // namespace napoly
