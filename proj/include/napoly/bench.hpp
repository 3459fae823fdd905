#pragma once

#include <cstdint>
#include <vector>

#include "napoly/anml.hpp"
#include "napoly/kernel.hpp"
#include "napoly/overlay.hpp"

namespace napoly {

struct BenchRow {
    int32_t cells = 0;
    uint64_t symbols = 0;
    int reps = 0;
    double median_seconds = 0.0;
    double symbols_per_second = 0.0;
    uint64_t records = 0;  // identical across reps (same seeded input)
    bool exact = true;
};

/// Synthetic chain automaton for throughput runs: a linear backbone over
/// ACGT where each node matches 2 of the 4 bases (so a uniform random
/// input advances the frontier with probability 1/2 per hop), node 0
/// start-enabled, accepts at depth 3 and then every 128 nodes.
AnmlAutomaton make_bench_chain(int32_t nodes, uint64_t seed);

/// Seeded uniform draw over the design's symbol-table union.
std::string make_bench_input(const PlacedDesign& design, uint64_t count, uint64_t seed);

/// Runs the same seeded input `reps` times; reports the median wall time.
/// Never asserts a throughput threshold.
BenchRow bench_design(const PlacedDesign& design, uint64_t symbols, int reps,
                      uint64_t seed, KernelKind kind = KernelKind::Auto);

/// Chain-backbone sweep across array sizes (fanout 8, Local mode).
std::vector<BenchRow> bench_sweep(const std::vector<int32_t>& sizes, uint64_t symbols,
                                  int reps, uint64_t seed,
                                  KernelKind kind = KernelKind::Auto);

}  // namespace napoly
