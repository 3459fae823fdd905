#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "napoly/anml.hpp"
#include "napoly/symbol_class.hpp"
#include "napoly/wfa.hpp"

namespace napoly {

struct KernelTables;  // built per design, see kernel.hpp

using CellId = int32_t;

/// Linear STE+ array shape: N cells, each allowed to drive the f cells
/// in [c - (f-1)/2, c + f/2] (its own index included).
struct OverlayParams {
    CellId array_size = 0;
    int32_t fanout = 0;

    /// f >= 2 (a node needs a self slot plus one successor slot) and
    /// N >= nodes + 1 is checked at place time (cell 0 is the start cell).
    void check() const;

    bool operator==(const OverlayParams&) const = default;
};

inline CellId window_lo(CellId cell, int32_t fanout) {
    return cell - (fanout - 1) / 2;
}
inline CellId window_hi(CellId cell, int32_t fanout) {
    return cell + fanout / 2;
}
inline bool in_window(CellId src, CellId dst, int32_t fanout) {
    return dst >= window_lo(src, fanout) && dst <= window_hi(src, fanout);
}

/// Injective node-to-cell map; cell 0 is reserved for the start STE+.
struct Placement {
    std::vector<CellId> cell_of_node;
    CellId start_cell = 0;

    bool operator==(const Placement&) const = default;
};

/// One configured STE+: symbol membership table, score weight, flags, and
/// the enabled outgoing connections (sorted targets, at most f, all within
/// the cell's window). Unmapped cells keep an empty table and no outs.
struct SteCell {
    SymbolClass symbols;
    Weight weight = 0;
    bool start_bit = false;        // always-active (the start cell)
    bool accept_bit = false;
    bool start_connected = false;  // receives the zero-score restart lane
    std::vector<CellId> out;

    bool operator==(const SteCell&) const = default;
};

struct ValidationIssue {
    enum class Kind { Window, AcceptStart, Fanout, BadTarget };
    Kind kind;
    std::string detail;
};

std::string to_string(ValidationIssue::Kind kind);

/// A fully configured overlay. `exact` is false when the compiled design
/// provably may undershoot the Viterbi score: some start-enabled node is
/// also an accept (accept cells never take the restart lane), or, in Local
/// mode, some start-enabled node sits outside the start cell's forward
/// window or the source automaton accepts the empty string.
struct PlacedDesign {
    OverlayParams params;
    ScoreMode mode = ScoreMode::Global;
    std::vector<SteCell> cells;
    CellId start_cell = 0;
    bool exact = true;
    std::vector<CellId> node_cell;  // node id -> cell id

    /// Simulation tables derived from the fields above; rebuilt on load.
    std::shared_ptr<const KernelTables> tables;

    void rebuild_tables();
};

bool same_configuration(const PlacedDesign& a, const PlacedDesign& b);

/// BFS ordering from start-enabled nodes assigns consecutive cells from 1,
/// then a seeded local search swaps cells to repair window violations until
/// none remain or `budget` swaps are spent. Nodes whose non-self out- or
/// in-degree exceeds f-1 are rejected up front (pigeonhole: a window holds
/// f cells including the node's own).
///
/// Throws TooManyNodesError when nodes + 1 > N and InfeasibleError (with
/// one violation line per unplaceable edge) when repair fails.
Placement place(const AnmlAutomaton& anml, const OverlayParams& params,
                uint64_t seed = 0, int64_t budget = 20000);

/// Emits the cell configuration for a legal placement. Start connections:
/// Global mode start-connects exactly the start-enabled non-accept nodes
/// (the restart lane reaches every cell but is asserted only for the first
/// symbol); Local mode start-connects the start-enabled non-accept nodes
/// whose cells lie in the start cell's forward window (the lane re-asserts
/// every symbol, so it is modeled as a real connection from cell 0).
/// Accept cells are never start-connected.
///
/// Throws IllegalPlacementError if the placement breaks any invariant.
PlacedDesign configure(const AnmlAutomaton& anml, const Placement& placement,
                       const OverlayParams& params, ScoreMode mode);

/// Checks every PlacedDesign invariant; returns all breaches, empty = valid.
std::vector<ValidationIssue> validate(const PlacedDesign& design);

/// Full pipeline: epsilon elimination, ANML conversion, place, configure.
PlacedDesign compile_design(const WeightedAutomaton& wfa, const OverlayParams& params,
                            ScoreMode mode, uint64_t seed = 0, int64_t budget = 20000);

}  // namespace napoly
