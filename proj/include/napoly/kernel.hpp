#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "napoly/wfa.hpp"

namespace napoly {

struct PlacedDesign;

enum class KernelKind { Auto, Scalar, Avx2 };

std::string to_string(KernelKind kind);
std::optional<KernelKind> kernel_kind_from_string(std::string_view s);
bool avx2_supported();

/// Auto resolves to the fastest supported kernel. Requesting Avx2 on a
/// machine without it throws InvalidArgumentError.
KernelKind resolve_kernel(KernelKind pref);

/// Precomputed per-design simulation tables. All masks are `words` 64-bit
/// words; bits at or past n_cells are zero everywhere, so whole-word
/// operations never activate ghost cells.
struct KernelTables {
    int32_t n_cells = 0;
    int32_t words = 0;
    int32_t delta_lo = 0;   // -(f-1)/2: most negative cell-index hop
    int32_t delta_hi = 0;   // f/2: most positive hop
    int32_t pad_words = 0;  // score-array guard words on each side

    std::vector<uint64_t> sym;         // 256 rows; bit i = cell i matches byte
    std::vector<uint64_t> edge;        // one row per delta; bit j = cell j drives j+delta
    std::vector<uint64_t> lane;        // start-connected cells
    std::vector<uint64_t> start_bits;  // always-active cells
    std::vector<uint64_t> accept;      // accept cells

    std::vector<Weight> weight;  // one lane per cell, padded with zeros

    // Per-cell enabled out targets (CSR), the scalar kernel's edge view.
    std::vector<int32_t> out_targets;
    std::vector<int32_t> out_offsets;  // n_cells + 1 entries

    std::vector<int32_t> start_word_list;  // sorted words holding start bits
    std::vector<int32_t> lane_word_list;   // sorted words holding lane bits

    const uint64_t* sym_row(uint8_t b) const { return sym.data() + size_t(b) * words; }
    const uint64_t* edge_row(int32_t delta) const {
        return edge.data() + size_t(delta - delta_lo) * words;
    }
};

KernelTables build_tables(const PlacedDesign& design);

/// Double-buffered mutable simulation state plus per-cycle scratch. Score
/// arrays carry pad_words guard words on both sides so shifted vector loads
/// stay in bounds; lane index i lives at scores_base()[i].
///
/// Invariants between steps (both buffers): score lanes of inactive cells
/// are zero, and active_words lists exactly the nonzero words of the
/// corresponding activation mask, sorted ascending.
struct KernelBuffers {
    int32_t words = 0;
    int32_t lane_base = 0;  // pad_words * 64
    uint64_t cycle = 0;
    int cur = 0;

    std::vector<uint64_t> active[2];
    std::vector<Weight> scores[2];
    std::vector<int32_t> active_words[2];

    std::vector<uint64_t> cand_mask;
    std::vector<Weight> cand;         // padded like scores
    std::vector<int32_t> touched;     // words with candidate bits this cycle

    void init(const KernelTables& tables);
    void reset(const KernelTables& tables);  // start-bit cells active at 0

    Weight* scores_base(int which) { return scores[which].data() + lane_base; }
    const Weight* scores_base(int which) const { return scores[which].data() + lane_base; }
};

/// One accept activation inside a step: cell id plus its new score.
struct StepHit {
    int32_t cell = 0;
    Weight score = 0;
};

/// Advances the buffers one cycle on `symbol`. lane_on gates the restart
/// lane (candidate score 0 for start-connected cells). Hits append in
/// ascending cell order. Throws ScoreOverflowError when an activated cell's
/// score leaves the signed 32-bit range; buffers are unusable afterwards.
using StepFn = void (*)(const KernelTables&, KernelBuffers&, uint8_t symbol,
                        bool lane_on, std::vector<StepHit>& hits);

StepFn kernel_step_fn(KernelKind resolved);

void step_scalar(const KernelTables& tables, KernelBuffers& buf, uint8_t symbol,
                 bool lane_on, std::vector<StepHit>& hits);
#ifdef NAPOLY_HAVE_AVX2
void step_avx2(const KernelTables& tables, KernelBuffers& buf, uint8_t symbol,
               bool lane_on, std::vector<StepHit>& hits);
#endif

}  // namespace napoly
