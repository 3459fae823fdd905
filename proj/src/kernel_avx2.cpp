#include "napoly/kernel.hpp"

#ifdef NAPOLY_HAVE_AVX2

#include <immintrin.h>

#include <algorithm>
#include <limits>

namespace napoly {

namespace {

// Lane k of the result is all-ones iff bit k of `byte` is set.
inline __m256i expand_byte(uint32_t byte) {
    const __m256i sel = _mm256_setr_epi32(1, 2, 4, 8, 16, 32, 64, 128);
    return _mm256_cmpeq_epi32(_mm256_and_si256(_mm256_set1_epi32(static_cast<int>(byte)), sel), sel);
}

}  // namespace

// Vector kernel. Candidates flow per delta: the active-source mask ANDed
// with that delta's edge row, shifted into target bit positions, selects
// 8-lane groups whose source scores are max-blended into the cand lanes.
// First touch of a word sentinel-fills its cand lanes with INT32_MIN, which
// max() treats as no-candidate-yet.
void step_avx2(const KernelTables& t, KernelBuffers& buf, uint8_t symbol,
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
    const __m256i sentinel = _mm256_set1_epi32(std::numeric_limits<int32_t>::min());

    const auto touch = [&](int32_t w) {
        if (buf.cand_mask[static_cast<size_t>(w)] != 0) return;
        for (int g = 0; g < 8; ++g)
            _mm256_storeu_si256(reinterpret_cast<__m256i*>(cand + w * 64 + g * 8),
                                sentinel);
        buf.touched.push_back(w);
    };
    // Max-blend 8-lane groups of `src_base` into word w's cand lanes, for
    // the target bits in `part`.
    const auto accumulate = [&](int32_t w, uint64_t part, const Weight* src_base) {
        touch(w);
        buf.cand_mask[static_cast<size_t>(w)] |= part;
        for (int g = 0; g < 8; ++g) {
            const uint32_t byte = (part >> (g * 8)) & 0xff;
            if (!byte) continue;
            const __m256i mask = expand_byte(byte);
            const __m256i src = src_base
                ? _mm256_loadu_si256(reinterpret_cast<const __m256i*>(src_base + g * 8))
                : _mm256_setzero_si256();
            const __m256i masked = _mm256_blendv_epi8(sentinel, src, mask);
            auto* lanes = reinterpret_cast<__m256i*>(cand + w * 64 + g * 8);
            _mm256_storeu_si256(lanes,
                                _mm256_max_epi32(_mm256_loadu_si256(lanes), masked));
        }
    };

    for (int32_t d = t.delta_lo; d <= t.delta_hi; ++d) {
        const uint64_t* erow = t.edge_row(d);
        const int32_t woff = d >> 6;       // floor(d / 64)
        const int32_t s = d & 63;
        for (int32_t k : buf.active_words[buf.cur]) {
            const uint64_t m = buf.active[buf.cur][static_cast<size_t>(k)] &
                               erow[static_cast<size_t>(k)];
            if (!m) continue;
            const int32_t w0 = k + woff;
            const uint64_t lo = s ? m << s : m;
            const uint64_t hi = s ? m >> (64 - s) : 0;
            // Source lane for target lane i is i - d; the score arrays carry
            // pad_words guard words so the shifted loads stay in bounds.
            if (lo && w0 >= 0 && w0 < t.words)
                accumulate(w0, lo, cur_scores + w0 * 64 - d);
            if (hi && w0 + 1 >= 0 && w0 + 1 < t.words)
                accumulate(w0 + 1, hi, cur_scores + (w0 + 1) * 64 - d);
        }
    }

    if (lane_on)
        for (int32_t w : t.lane_word_list)
            accumulate(w, t.lane[static_cast<size_t>(w)], nullptr);  // candidate 0

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
            buf.active[nxt][wi] = t.start_bits[wi];
            buf.active_words[nxt].push_back(w);
            continue;
        }
        const uint64_t match = buf.cand_mask[wi] & symrow[wi];
        const uint64_t na = match | t.start_bits[wi];
        for (int g = 0; g < 8; ++g) {
            const uint32_t byte = (match >> (g * 8)) & 0xff;
            if (!byte) continue;
            const __m256i mask = expand_byte(byte);
            const __m256i cv =
                _mm256_loadu_si256(reinterpret_cast<const __m256i*>(cand + w * 64 + g * 8));
            const __m256i wv = _mm256_loadu_si256(
                reinterpret_cast<const __m256i*>(t.weight.data() + wi * 64 + g * 8));
            const __m256i sum = _mm256_add_epi32(cv, wv);
            // Signed-add overflow: operands agree in sign, sum does not.
            const __m256i ov = _mm256_and_si256(_mm256_xor_si256(cv, sum),
                                                _mm256_xor_si256(wv, sum));
            const uint32_t ovbits =
                static_cast<uint32_t>(_mm256_movemask_ps(_mm256_castsi256_ps(ov))) & byte;
            if (ovbits)
                throw ScoreOverflowError(
                    "activated cell " +
                    std::to_string(w * 64 + g * 8 +
                                   __builtin_ctz(ovbits)) +
                    " score leaves the 32-bit range");
            _mm256_maskstore_epi32(nxt_scores + w * 64 + g * 8, mask, sum);
        }
        uint64_t hbits = match & t.accept[wi];
        while (hbits) {
            const int32_t i = w * 64 + __builtin_ctzll(hbits);
            hbits &= hbits - 1;
            hits.push_back({i, nxt_scores[i]});
        }
        buf.active[nxt][wi] = na;
        if (na) buf.active_words[nxt].push_back(w);
        buf.cand_mask[wi] = 0;
    }

    buf.cur = nxt;
    buf.cycle += 1;
}

}  // namespace napoly

#endif  // NAPOLY_HAVE_AVX2
