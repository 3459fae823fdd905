#include "napoly/sim.hpp"

#include <algorithm>

namespace napoly {

Simulator::Simulator(const PlacedDesign& design, KernelKind kind)
    : design_(&design),
      tables_(design.tables.get()),
      fn_(kernel_step_fn(resolve_kernel(kind))) {
    if (!tables_)
        throw InvalidArgumentError(
            "design has no simulation tables; call rebuild_tables() first");
    buffers_.init(*tables_);
}

void Simulator::reset() { buffers_.reset(*tables_); }

void Simulator::load(const SimState& state) {
    const auto n = static_cast<size_t>(tables_->n_cells);
    if (state.active.size() != n || state.scores.size() != n)
        throw InvalidArgumentError("state shape does not match the design (" +
                                   std::to_string(n) + " cells)");
    buffers_.reset(*tables_);
    std::copy(state.active.data(), state.active.data() + state.active.num_words(),
              buffers_.active[0].begin());
    buffers_.active_words[0].clear();
    Weight* scores = buffers_.scores_base(0);
    for (int32_t w = 0; w < buffers_.words; ++w)
        if (buffers_.active[0][static_cast<size_t>(w)])
            buffers_.active_words[0].push_back(w);
    // Inactive lanes stay zero whatever the caller put there; the kernels
    // rely on that invariant.
    for_each_set_bit(state.active,
                     [&](size_t i) { scores[i] = state.scores[i]; });
    buffers_.cycle = state.cycle;
    buffers_.cur = 0;
}

std::vector<MatchRecord> Simulator::step(uint8_t symbol) {
    const bool lane_on =
        design_->mode == ScoreMode::Local || buffers_.cycle == 0;
    hits_.clear();
    fn_(*tables_, buffers_, symbol, lane_on, hits_);
    std::vector<MatchRecord> records;
    records.reserve(hits_.size());
    for (const StepHit& h : hits_)
        records.push_back({h.cell, buffers_.cycle, h.score});
    return records;
}

SimState Simulator::state() const {
    const auto n = static_cast<size_t>(tables_->n_cells);
    SimState s;
    s.active = BitVec(n);
    std::copy(buffers_.active[buffers_.cur].begin(),
              buffers_.active[buffers_.cur].end(), s.active.data());
    const Weight* scores = buffers_.scores_base(buffers_.cur);
    s.scores.assign(scores, scores + n);
    s.cycle = buffers_.cycle;
    return s;
}

SimState initial_state(const PlacedDesign& design) {
    if (!design.tables)
        throw InvalidArgumentError(
            "design has no simulation tables; call rebuild_tables() first");
    SimState s;
    const auto n = static_cast<size_t>(design.tables->n_cells);
    s.active = BitVec(n);
    std::copy(design.tables->start_bits.begin(), design.tables->start_bits.end(),
              s.active.data());
    s.scores.assign(n, 0);
    s.cycle = 0;
    return s;
}

std::pair<SimState, std::vector<MatchRecord>> step(const PlacedDesign& design,
                                                   const SimState& state,
                                                   uint8_t symbol, KernelKind kind) {
    Simulator sim(design, kind);
    sim.load(state);
    std::vector<MatchRecord> records = sim.step(symbol);
    return {sim.state(), std::move(records)};
}

RunResult run(const PlacedDesign& design, std::string_view input, KernelKind kind) {
    Simulator sim(design, kind);
    RunResult result;
    result.exact = design.exact;
    for (const char c : input) {
        std::vector<MatchRecord> batch = sim.step(static_cast<uint8_t>(c));
        result.records.insert(result.records.end(), batch.begin(), batch.end());
    }
    result.best = best_of_records(result.records, design.mode, input.size());
    result.cycles = sim.cycle();
    return result;
}

std::optional<BestScore> best_of_records(const std::vector<MatchRecord>& records,
                                         ScoreMode mode, uint64_t input_len) {
    std::optional<BestScore> best;
    for (const MatchRecord& r : records) {
        if (mode == ScoreMode::Global && r.offset != input_len) continue;
        // Strict improvement keeps the earliest offset among equal scores
        // (records arrive in offset order).
        if (!best || r.score > best->score)
            best = BestScore{r.score, static_cast<int64_t>(r.offset)};
    }
    return best;
}

}  // namespace napoly
