#include <algorithm>
#include <limits>

#include "napoly/kernel.hpp"

namespace napoly {

// Reference kernel: bit-granular walk of the active cells' enabled edges.
// Shares the buffer protocol with the vector kernel: stale frame words are
// zeroed via their active_words list, candidate words are tracked in
// `touched`, and cand_mask returns to all-zero before the step ends.
void step_scalar(const KernelTables& t, KernelBuffers& buf, uint8_t symbol,
                 bool lane_on, std::vector<StepHit>& hits) {
    const int nxt = 1 - buf.cur;
    for (int32_t w : buf.active_words[nxt]) {
        buf.active[nxt][static_cast<size_t>(w)] = 0;
        std::fill_n(buf.scores_base(nxt) + static_cast<size_t>(w) * 64, 64, 0);
    }
    buf.active_words[nxt].clear();
    buf.touched.clear();

    const Weight* cur_scores = buf.scores_base(buf.cur);
    Weight* cand = buf.cand.data() + buf.lane_base;

    for (int32_t w : buf.active_words[buf.cur]) {
        uint64_t bits = buf.active[buf.cur][static_cast<size_t>(w)];
        while (bits) {
            const int32_t j = w * 64 + __builtin_ctzll(bits);
            bits &= bits - 1;
            const Weight s = cur_scores[j];
            const int32_t end = t.out_offsets[static_cast<size_t>(j) + 1];
            for (int32_t e = t.out_offsets[static_cast<size_t>(j)]; e < end; ++e) {
                const int32_t tgt = t.out_targets[static_cast<size_t>(e)];
                const auto wt = static_cast<size_t>(tgt >> 6);
                const uint64_t bit = uint64_t{1} << (tgt & 63);
                if (buf.cand_mask[wt] == 0) buf.touched.push_back(static_cast<int32_t>(wt));
                if (buf.cand_mask[wt] & bit) {
                    if (s > cand[tgt]) cand[tgt] = s;
                } else {
                    buf.cand_mask[wt] |= bit;
                    cand[tgt] = s;
                }
            }
        }
    }

    if (lane_on) {
        for (int32_t w : t.lane_word_list) {
            uint64_t bits = t.lane[static_cast<size_t>(w)];
            if (buf.cand_mask[static_cast<size_t>(w)] == 0) buf.touched.push_back(w);
            while (bits) {
                const int b = __builtin_ctzll(bits);
                bits &= bits - 1;
                const int32_t i = w * 64 + b;
                const uint64_t bit = uint64_t{1} << b;
                if (buf.cand_mask[static_cast<size_t>(w)] & bit) {
                    if (cand[i] < 0) cand[i] = 0;
                } else {
                    buf.cand_mask[static_cast<size_t>(w)] |= bit;
                    cand[i] = 0;
                }
            }
        }
    }

    std::sort(buf.touched.begin(), buf.touched.end());
    const uint64_t* symrow = t.sym_row(symbol);
    Weight* nxt_scores = buf.scores_base(nxt);
    size_t ti = 0;
    size_t si = 0;
    while (ti < buf.touched.size() || si < t.start_word_list.size()) {
        int32_t w;
        bool from_touched;
        if (si >= t.start_word_list.size() ||
            (ti < buf.touched.size() && buf.touched[ti] <= t.start_word_list[si])) {
            w = buf.touched[ti++];
            from_touched = true;
            if (si < t.start_word_list.size() && t.start_word_list[si] == w) ++si;
        } else {
            w = t.start_word_list[si++];
            from_touched = false;
        }
        const auto wi = static_cast<size_t>(w);
        if (!from_touched) {
            // No candidates reached this word; its start cells persist at 0.
            buf.active[nxt][wi] = t.start_bits[wi];
            buf.active_words[nxt].push_back(w);
            continue;
        }
        const uint64_t match = buf.cand_mask[wi] & symrow[wi];
        const uint64_t na = match | t.start_bits[wi];
        uint64_t mbits = match;
        while (mbits) {
            const int b = __builtin_ctzll(mbits);
            mbits &= mbits - 1;
            const int32_t i = w * 64 + b;
            const int64_t sum = static_cast<int64_t>(cand[i]) +
                                t.weight[static_cast<size_t>(i)];
            if (sum < std::numeric_limits<int32_t>::min() ||
                sum > std::numeric_limits<int32_t>::max())
                throw ScoreOverflowError("activated cell " + std::to_string(i) +
                                         " score leaves the 32-bit range");
            nxt_scores[i] = static_cast<Weight>(sum);
            if ((t.accept[wi] >> b) & 1)
                hits.push_back({i, static_cast<Weight>(sum)});
        }
        buf.active[nxt][wi] = na;
        if (na) buf.active_words[nxt].push_back(w);
        buf.cand_mask[wi] = 0;
    }

    buf.cur = nxt;
    buf.cycle += 1;
}

}  // namespace napoly
