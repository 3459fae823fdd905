#include "napoly/kernel.hpp"

#include <algorithm>

#include "napoly/overlay.hpp"

namespace napoly {

std::string to_string(KernelKind kind) {
    switch (kind) {
        case KernelKind::Auto: return "auto";
        case KernelKind::Scalar: return "scalar";
        case KernelKind::Avx2: return "avx2";
    }
    return "unknown";
}

std::optional<KernelKind> kernel_kind_from_string(std::string_view s) {
    if (s == "auto") return KernelKind::Auto;
    if (s == "scalar") return KernelKind::Scalar;
    if (s == "avx2") return KernelKind::Avx2;
    return std::nullopt;
}

bool avx2_supported() {
#ifdef NAPOLY_HAVE_AVX2
    return __builtin_cpu_supports("avx2");
#else
    return false;
#endif
}

KernelKind resolve_kernel(KernelKind pref) {
    switch (pref) {
        case KernelKind::Auto:
            return avx2_supported() ? KernelKind::Avx2 : KernelKind::Scalar;
        case KernelKind::Scalar:
            return KernelKind::Scalar;
        case KernelKind::Avx2:
            if (!avx2_supported())
                throw InvalidArgumentError(
                    "avx2 kernel requested but this build or machine lacks AVX2");
            return KernelKind::Avx2;
    }
    throw InvalidArgumentError("unknown kernel kind");
}

StepFn kernel_step_fn(KernelKind resolved) {
    switch (resolve_kernel(resolved)) {
        case KernelKind::Scalar:
            return &step_scalar;
        case KernelKind::Avx2:
#ifdef NAPOLY_HAVE_AVX2
            return &step_avx2;
#else
            break;
#endif
        case KernelKind::Auto:
            break;  // resolve_kernel never returns Auto
    }
    throw InvalidArgumentError("no kernel available for the requested kind");
}

KernelTables build_tables(const PlacedDesign& design) {
    design.params.check();
    const auto n = static_cast<int32_t>(design.cells.size());
    if (n != design.params.array_size)
        throw InvalidArgumentError("design has " + std::to_string(n) +
                                   " cells, parameters say " +
                                   std::to_string(design.params.array_size));

    KernelTables t;
    t.n_cells = n;
    t.words = (n + 63) / 64;
    t.delta_lo = -((design.params.fanout - 1) / 2);
    t.delta_hi = design.params.fanout / 2;
    t.pad_words = (std::max(-t.delta_lo, t.delta_hi) + 63) / 64;

    const auto w = static_cast<size_t>(t.words);
    t.sym.assign(256 * w, 0);
    t.edge.assign(static_cast<size_t>(t.delta_hi - t.delta_lo + 1) * w, 0);
    t.lane.assign(w, 0);
    t.start_bits.assign(w, 0);
    t.accept.assign(w, 0);
    t.weight.assign(w * 64, 0);
    t.out_offsets.assign(static_cast<size_t>(n) + 1, 0);

    const auto set_bit = [w](std::vector<uint64_t>& mask, size_t row, int32_t i) {
        mask[row * w + static_cast<size_t>(i / 64)] |= uint64_t{1} << (i % 64);
    };

    for (int32_t c = 0; c < n; ++c) {
        const SteCell& cell = design.cells[static_cast<size_t>(c)];
        for (int word = 0; word < 4; ++word) {
            uint64_t bits = cell.symbols.word(word);
            while (bits) {
                const int b = __builtin_ctzll(bits);
                bits &= bits - 1;
                set_bit(t.sym, static_cast<size_t>(word * 64 + b), c);
            }
        }
        if (cell.start_connected) set_bit(t.lane, 0, c);
        if (cell.start_bit) set_bit(t.start_bits, 0, c);
        if (cell.accept_bit) set_bit(t.accept, 0, c);
        t.weight[static_cast<size_t>(c)] = cell.weight;

        for (CellId target : cell.out) {
            if (target < 0 || target >= n)
                throw InvalidArgumentError("cell " + std::to_string(c) +
                                           " targets cell " + std::to_string(target) +
                                           ", outside the array");
            const int32_t delta = target - c;
            if (delta < t.delta_lo || delta > t.delta_hi)
                throw InvalidArgumentError("cell " + std::to_string(c) +
                                           " targets cell " + std::to_string(target) +
                                           ", outside its fanout window");
            set_bit(t.edge, static_cast<size_t>(delta - t.delta_lo), c);
        }
        t.out_offsets[static_cast<size_t>(c) + 1] =
            t.out_offsets[static_cast<size_t>(c)] +
            static_cast<int32_t>(cell.out.size());
    }
    t.out_targets.reserve(static_cast<size_t>(t.out_offsets.back()));
    for (const SteCell& cell : design.cells)
        t.out_targets.insert(t.out_targets.end(), cell.out.begin(), cell.out.end());

    for (int32_t word = 0; word < t.words; ++word) {
        if (t.start_bits[static_cast<size_t>(word)]) t.start_word_list.push_back(word);
        if (t.lane[static_cast<size_t>(word)]) t.lane_word_list.push_back(word);
    }
    return t;
}

void KernelBuffers::init(const KernelTables& tables) {
    words = tables.words;
    lane_base = tables.pad_words * 64;
    const auto padded = static_cast<size_t>(tables.words + 2 * tables.pad_words) * 64;
    for (int b : {0, 1}) {
        active[b].assign(static_cast<size_t>(words), 0);
        scores[b].assign(padded, 0);
        active_words[b].clear();
    }
    cand_mask.assign(static_cast<size_t>(words), 0);
    cand.assign(padded, 0);
    touched.clear();
    reset(tables);
}

void KernelBuffers::reset(const KernelTables& tables) {
    // Full re-zero: a step that threw mid-way leaves scratch dirty, and
    // reset must restore the inactive-lanes-are-zero invariant regardless.
    for (int b : {0, 1}) {
        std::fill(active[b].begin(), active[b].end(), 0);
        std::fill(scores[b].begin(), scores[b].end(), 0);
        active_words[b].clear();
    }
    std::fill(cand_mask.begin(), cand_mask.end(), 0);
    touched.clear();
    cycle = 0;
    cur = 0;
    std::copy(tables.start_bits.begin(), tables.start_bits.end(), active[0].begin());
    active_words[0] = tables.start_word_list;
}

}  // namespace napoly
