#include "napoly/epsilon.hpp"

#include <array>
#include <limits>
#include <map>
#include <utility>
#include <vector>

namespace napoly {

namespace {

constexpr int64_t kNegInf = std::numeric_limits<int64_t>::min() / 4;

// Max-plus all-pairs closure over the epsilon edges alone. Throws on a
// strictly positive cycle, then adds the zero-cost identity paths.
std::vector<int64_t> epsilon_closure(const WeightedAutomaton& a) {
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
    for (int i = 0; i < n; ++i) {
        int64_t& diag = d[static_cast<size_t>(i) * n + i];
        if (diag > 0)
            throw UnboundedScoreError("positive-weight epsilon cycle through state " +
                                      std::to_string(i));
        diag = 0;
    }
    return d;
}

template <typename Fn>
void for_each_member(const SymbolClass& cls, Fn&& fn) {
    for (int w = 0; w < 4; ++w) {
        uint64_t bits = cls.word(w);
        while (bits) {
            const int b = __builtin_ctzll(bits);
            bits &= bits - 1;
            fn(static_cast<uint8_t>(w * 64 + b));
        }
    }
}

}  // namespace

WeightedAutomaton eliminate_epsilon(const WeightedAutomaton& wfa) {
    wfa.check();
    if (!wfa.has_epsilon()) return wfa;

    const int n = wfa.num_states;
    const std::vector<int64_t> d = epsilon_closure(wfa);
    const auto closure = [&](StateId from, StateId to) {
        return d[static_cast<size_t>(from) * n + to];
    };

    // pred[u]: states that epsilon-reach u; succ[v]: states epsilon-reachable
    // from v. Both include the state itself (identity path).
    std::vector<std::vector<StateId>> pred(static_cast<size_t>(n));
    std::vector<std::vector<StateId>> succ(static_cast<size_t>(n));
    for (StateId i = 0; i < n; ++i)
        for (StateId j = 0; j < n; ++j)
            if (closure(i, j) > kNegInf) {
                succ[static_cast<size_t>(i)].push_back(j);
                pred[static_cast<size_t>(j)].push_back(i);
            }

    // Dense symbol index over the symbols that actually occur, so the
    // per-pair best table stays small for narrow alphabets.
    std::vector<uint8_t> used;
    std::array<int, 256> sym_idx;
    sym_idx.fill(-1);
    for_each_member(wfa.label_union(), [&](uint8_t s) {
        sym_idx[s] = static_cast<int>(used.size());
        used.push_back(s);
    });

    // best[(p,q)][sym] = max weight of any composed edge p --sym--> q.
    std::map<std::pair<StateId, StateId>, std::vector<int64_t>> best;
    for (const auto& t : wfa.transitions) {
        if (t.is_epsilon()) continue;
        for (StateId p : pred[static_cast<size_t>(t.from)]) {
            const int64_t lead = closure(p, t.from);
            for (StateId q : succ[static_cast<size_t>(t.to)]) {
                const int64_t w = lead + t.weight + closure(t.to, q);
                auto [it, fresh] = best.try_emplace(std::pair{p, q});
                if (fresh) it->second.assign(used.size(), kNegInf);
                auto& row = it->second;
                for_each_member(*t.label, [&](uint8_t s) {
                    int64_t& cell = row[static_cast<size_t>(sym_idx[s])];
                    if (w > cell) cell = w;
                });
            }
        }
    }

    WeightedAutomaton out;
    out.num_states = n;
    out.alphabet = wfa.alphabet;
    out.start = wfa.start;
    out.accepts = wfa.accepts;
    for (const auto& [pq, row] : best) {
        // Regroup the per-symbol maxima into classes, widest weight first.
        std::map<int64_t, SymbolClass, std::greater<>> by_weight;
        for (size_t i = 0; i < row.size(); ++i)
            if (row[i] > kNegInf) by_weight[row[i]].insert(used[i]);
        for (const auto& [w, cls] : by_weight) {
            if (w < std::numeric_limits<Weight>::min() ||
                w > std::numeric_limits<Weight>::max())
                throw ScoreOverflowError("composed transition weight " +
                                         std::to_string(w) +
                                         " leaves the 32-bit range");
            out.transitions.push_back({pq.first, pq.second, cls,
                                       static_cast<Weight>(w)});
        }
    }

    // Drop states the start can no longer reach and renumber the rest,
    // preserving relative order.
    std::vector<std::vector<StateId>> adj(static_cast<size_t>(n));
    for (const auto& t : out.transitions)
        adj[static_cast<size_t>(t.from)].push_back(t.to);
    std::vector<bool> keep(static_cast<size_t>(n), false);
    std::vector<StateId> stack{out.start};
    keep[static_cast<size_t>(out.start)] = true;
    while (!stack.empty()) {
        const StateId u = stack.back();
        stack.pop_back();
        for (StateId v : adj[static_cast<size_t>(u)])
            if (!keep[static_cast<size_t>(v)]) {
                keep[static_cast<size_t>(v)] = true;
                stack.push_back(v);
            }
    }
    std::vector<StateId> renum(static_cast<size_t>(n), -1);
    StateId next = 0;
    for (StateId i = 0; i < n; ++i)
        if (keep[static_cast<size_t>(i)]) renum[static_cast<size_t>(i)] = next++;

    WeightedAutomaton trimmed;
    trimmed.num_states = next;
    trimmed.alphabet = out.alphabet;
    trimmed.start = renum[static_cast<size_t>(out.start)];
    for (StateId q : out.accepts)
        if (keep[static_cast<size_t>(q)])
            trimmed.accepts.push_back(renum[static_cast<size_t>(q)]);
    for (const auto& t : out.transitions)
        if (keep[static_cast<size_t>(t.from)])
            trimmed.transitions.push_back({renum[static_cast<size_t>(t.from)],
                                           renum[static_cast<size_t>(t.to)],
                                           t.label, t.weight});
    return trimmed;
}

}  // namespace napoly
