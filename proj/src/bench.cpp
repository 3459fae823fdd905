#include "napoly/bench.hpp"

#include <algorithm>
#include <chrono>
#include <random>

namespace napoly {

AnmlAutomaton make_bench_chain(int32_t nodes, uint64_t seed) {
    if (nodes < 1)
        throw InvalidArgumentError("bench chain needs at least one node");
    std::mt19937_64 rng(seed);
    const char bases[4] = {'A', 'C', 'G', 'T'};
    AnmlAutomaton anml;
    anml.nodes.reserve(static_cast<size_t>(nodes));
    for (NodeId i = 0; i < nodes; ++i) {
        AnmlNode node;
        node.id = i;
        // Two of four bases: a uniform symbol advances this hop half the time.
        const auto a = static_cast<int>(rng() % 4);
        const auto b = static_cast<int>((a + 1 + rng() % 3) % 4);
        node.symbols.insert(static_cast<uint8_t>(bases[a]));
        node.symbols.insert(static_cast<uint8_t>(bases[b]));
        node.weight = 1;
        node.start_enabled = i == 0;
        node.accept = i >= 3 && (i - 3) % 128 == 0;
        if (i + 1 < nodes) node.successors.push_back(i + 1);
        anml.nodes.push_back(std::move(node));
    }
    return anml;
}

std::string make_bench_input(const PlacedDesign& design, uint64_t count,
                             uint64_t seed) {
    SymbolClass all;
    for (const SteCell& cell : design.cells) all |= cell.symbols;
    std::vector<uint8_t> members;
    for (int w = 0; w < 4; ++w) {
        uint64_t bits = all.word(w);
        while (bits) {
            members.push_back(static_cast<uint8_t>(w * 64 + __builtin_ctzll(bits)));
            bits &= bits - 1;
        }
    }
    if (members.empty())
        throw InvalidArgumentError("design matches no symbols; nothing to draw");
    std::mt19937_64 rng(seed);
    std::string input(count, '\0');
    for (auto& c : input)
        c = static_cast<char>(members[rng() % members.size()]);
    return input;
}

BenchRow bench_design(const PlacedDesign& design, uint64_t symbols, int reps,
                      uint64_t seed, KernelKind kind) {
    if (reps < 1) throw InvalidArgumentError("bench needs at least one rep");
    if (!design.tables)
        throw InvalidArgumentError(
            "design has no simulation tables; call rebuild_tables() first");
    const std::string input = make_bench_input(design, symbols, seed);
    const StepFn fn = kernel_step_fn(resolve_kernel(kind));
    const KernelTables& tables = *design.tables;
    const bool local = design.mode == ScoreMode::Local;

    KernelBuffers buf;
    buf.init(tables);
    std::vector<StepHit> hits;
    hits.reserve(64);

    std::vector<double> times;
    times.reserve(static_cast<size_t>(reps));
    uint64_t records = 0;
    for (int rep = 0; rep < reps; ++rep) {
        buf.reset(tables);
        uint64_t rep_records = 0;
        const auto t0 = std::chrono::steady_clock::now();
        for (const char c : input) {
            const bool lane_on = local || buf.cycle == 0;
            hits.clear();
            fn(tables, buf, static_cast<uint8_t>(c), lane_on, hits);
            rep_records += hits.size();
        }
        const auto t1 = std::chrono::steady_clock::now();
        times.push_back(std::chrono::duration<double>(t1 - t0).count());
        records = rep_records;  // deterministic: identical every rep
    }
    std::sort(times.begin(), times.end());

    BenchRow row;
    row.cells = tables.n_cells;
    row.symbols = symbols;
    row.reps = reps;
    row.median_seconds = times[times.size() / 2];
    row.symbols_per_second =
        row.median_seconds > 0 ? static_cast<double>(symbols) / row.median_seconds : 0;
    row.records = records;
    row.exact = design.exact;
    return row;
}

std::vector<BenchRow> bench_sweep(const std::vector<int32_t>& sizes, uint64_t symbols,
                                  int reps, uint64_t seed, KernelKind kind) {
    std::vector<BenchRow> rows;
    rows.reserve(sizes.size());
    for (int32_t n : sizes) {
        const AnmlAutomaton anml = make_bench_chain(n - 1, seed);
        const OverlayParams params{n, 8};
        const Placement p = place(anml, params, seed);
        const PlacedDesign design = configure(anml, p, params, ScoreMode::Local);
        rows.push_back(bench_design(design, symbols, reps, seed, kind));
    }
    return rows;
}

}  // namespace napoly
