#pragma once

#include <cstdint>
#include <optional>
#include <string_view>
#include <utility>
#include <vector>

#include "napoly/bits.hpp"
#include "napoly/kernel.hpp"
#include "napoly/overlay.hpp"
#include "napoly/wfa.hpp"

namespace napoly {

/// Cycle-t activation bits and score registers. A score is meaningful only
/// where the activation bit is set; inactive lanes read 0.
struct SimState {
    BitVec active;
    std::vector<Weight> scores;
    uint64_t cycle = 0;

    bool operator==(const SimState&) const = default;
};

/// Emitted when an accept cell activates: offset is the 1-based count of
/// symbols consumed at that point.
struct MatchRecord {
    CellId cell = 0;
    uint64_t offset = 0;
    Weight score = 0;

    bool operator==(const MatchRecord&) const = default;
};

struct RunResult {
    std::vector<MatchRecord> records;
    std::optional<BestScore> best;
    bool exact = true;
    uint64_t cycles = 0;
};

/// Incremental simulation over one design; run() and step() are built on
/// this. Not thread-safe per instance; instances over the same design are
/// independent.
class Simulator {
public:
    explicit Simulator(const PlacedDesign& design, KernelKind kind = KernelKind::Auto);

    void reset();
    void load(const SimState& state);
    std::vector<MatchRecord> step(uint8_t symbol);
    SimState state() const;
    uint64_t cycle() const { return buffers_.cycle; }

private:
    const PlacedDesign* design_;
    const KernelTables* tables_;
    StepFn fn_;
    KernelBuffers buffers_;
    std::vector<StepHit> hits_;
};

/// Cycle 0: exactly the start-bit cells are active, at score 0.
SimState initial_state(const PlacedDesign& design);

/// Pure one-cycle transition; reads state at cycle t, returns cycle t+1
/// plus the match records emitted on accept activations.
std::pair<SimState, std::vector<MatchRecord>> step(const PlacedDesign& design,
                                                   const SimState& state, uint8_t symbol,
                                                   KernelKind kind = KernelKind::Auto);

/// Folds step over the input. Best: Global takes the top score among
/// records at offset == input length; Local takes the top score anywhere,
/// smallest offset on ties. exact mirrors the design's exactness flag.
RunResult run(const PlacedDesign& design, std::string_view input,
              KernelKind kind = KernelKind::Auto);

/// Best-record selection alone, for callers that stream records.
std::optional<BestScore> best_of_records(const std::vector<MatchRecord>& records,
                                         ScoreMode mode, uint64_t input_len);

}  // namespace napoly
