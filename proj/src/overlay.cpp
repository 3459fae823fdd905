#include "napoly/overlay.hpp"

#include <algorithm>
#include <deque>
#include <random>

#include "napoly/epsilon.hpp"
#include "napoly/kernel.hpp"

namespace napoly {

void OverlayParams::check() const {
    if (fanout < 2)
        throw InvalidArgumentError("fanout must be at least 2, got " +
                                   std::to_string(fanout));
    if (array_size < 1)
        throw InvalidArgumentError("array size must be at least 1, got " +
                                   std::to_string(array_size));
}

std::string to_string(ValidationIssue::Kind kind) {
    switch (kind) {
        case ValidationIssue::Kind::Window: return "window";
        case ValidationIssue::Kind::AcceptStart: return "accept-start";
        case ValidationIssue::Kind::Fanout: return "fanout";
        case ValidationIssue::Kind::BadTarget: return "bad-target";
    }
    return "unknown";
}

void PlacedDesign::rebuild_tables() {
    tables = std::make_shared<const KernelTables>(build_tables(*this));
}

bool same_configuration(const PlacedDesign& a, const PlacedDesign& b) {
    return a.params == b.params && a.mode == b.mode && a.cells == b.cells &&
           a.start_cell == b.start_cell && a.exact == b.exact &&
           a.node_cell == b.node_cell;
}

namespace {

// Deterministic Fisher-Yates; std::shuffle leaves the draw sequence
// implementation-defined, and placements must reproduce by seed alone.
template <typename T>
void shuffle_det(std::vector<T>& v, std::mt19937_64& rng) {
    for (size_t i = v.size(); i > 1; --i)
        std::swap(v[i - 1], v[rng() % i]);
}

struct RepairState {
    const AnmlAutomaton& anml;
    OverlayParams params;
    std::vector<std::vector<NodeId>> preds;     // reverse adjacency
    std::vector<std::pair<NodeId, NodeId>> edges;  // non-self edges only
    std::vector<CellId> cell_of;                // node -> cell
    std::vector<NodeId> node_at;                // cell -> node, -1 when empty
    int64_t total_bad = 0;

    RepairState(const AnmlAutomaton& a, const OverlayParams& p)
        : anml(a), params(p), preds(a.nodes.size()) {
        for (const auto& node : a.nodes)
            for (NodeId s : node.successors) {
                if (s == node.id) continue;  // self-loops sit in their own window
                preds[static_cast<size_t>(s)].push_back(node.id);
                edges.emplace_back(node.id, s);
            }
    }

    bool bad(NodeId u, NodeId v) const {
        return !in_window(cell_of[static_cast<size_t>(u)],
                          cell_of[static_cast<size_t>(v)], params.fanout);
    }

    void load_order(const std::vector<NodeId>& order) {
        cell_of.assign(anml.nodes.size(), 0);
        node_at.assign(static_cast<size_t>(params.array_size), -1);
        for (size_t i = 0; i < order.size(); ++i) {
            const auto cell = static_cast<CellId>(i) + 1;
            cell_of[static_cast<size_t>(order[i])] = cell;
            node_at[static_cast<size_t>(cell)] = order[i];
        }
        total_bad = 0;
        for (const auto& [u, v] : edges) total_bad += bad(u, v);
    }

    // Violated edges touching a or b, each edge counted once.
    int64_t incident_bad(NodeId a, NodeId b) const {
        int64_t cnt = 0;
        for (NodeId x : {a, b}) {
            if (x < 0 || (x == b && a == b)) continue;
            for (NodeId y : anml.nodes[static_cast<size_t>(x)].successors)
                if (y != x && bad(x, y)) ++cnt;
            for (NodeId y : preds[static_cast<size_t>(x)])
                if (y != a && y != b && bad(y, x)) ++cnt;
        }
        return cnt;
    }

    // Moves `m` to cell t, swapping with the occupant if any; returns the
    // change in total violations. Caller may call again to undo.
    int64_t swap_to(NodeId m, CellId t) {
        const NodeId other = node_at[static_cast<size_t>(t)];
        const CellId from = cell_of[static_cast<size_t>(m)];
        const int64_t before = incident_bad(m, other);
        node_at[static_cast<size_t>(t)] = m;
        cell_of[static_cast<size_t>(m)] = t;
        node_at[static_cast<size_t>(from)] = other;
        if (other >= 0) cell_of[static_cast<size_t>(other)] = from;
        const int64_t delta = incident_bad(m, other) - before;
        total_bad += delta;
        return delta;
    }

    std::vector<std::string> violation_lines() const {
        std::vector<std::string> lines;
        for (const auto& [u, v] : edges)
            if (bad(u, v)) {
                const CellId cu = cell_of[static_cast<size_t>(u)];
                lines.push_back("node " + std::to_string(u) + " (cell " +
                                std::to_string(cu) + ") -> node " + std::to_string(v) +
                                " (cell " + std::to_string(cell_of[static_cast<size_t>(v)]) +
                                "): target outside window [" +
                                std::to_string(window_lo(cu, params.fanout)) + ", " +
                                std::to_string(window_hi(cu, params.fanout)) + "]");
            }
        return lines;
    }
};

std::vector<NodeId> bfs_order(const AnmlAutomaton& anml) {
    const auto n = static_cast<NodeId>(anml.nodes.size());
    std::vector<NodeId> order;
    order.reserve(static_cast<size_t>(n));
    std::vector<bool> seen(static_cast<size_t>(n), false);
    std::deque<NodeId> queue;
    for (NodeId i = 0; i < n; ++i)
        if (anml.nodes[static_cast<size_t>(i)].start_enabled) {
            seen[static_cast<size_t>(i)] = true;
            queue.push_back(i);
        }
    while (!queue.empty()) {
        const NodeId u = queue.front();
        queue.pop_front();
        order.push_back(u);
        for (NodeId s : anml.nodes[static_cast<size_t>(u)].successors)
            if (!seen[static_cast<size_t>(s)]) {
                seen[static_cast<size_t>(s)] = true;
                queue.push_back(s);
            }
    }
    for (NodeId i = 0; i < n; ++i)
        if (!seen[static_cast<size_t>(i)]) order.push_back(i);
    return order;
}

}  // namespace

Placement place(const AnmlAutomaton& anml, const OverlayParams& params,
                uint64_t seed, int64_t budget) {
    anml.check();
    params.check();
    const auto n = static_cast<NodeId>(anml.nodes.size());
    if (n + 1 > params.array_size)
        throw TooManyNodesError("automaton needs " + std::to_string(n + 1) +
                                " cells (nodes plus the start cell), array has " +
                                std::to_string(params.array_size));

    // Pigeonhole: a window holds fanout cells including the node's own, so
    // more than fanout-1 distinct non-self neighbors on either side can
    // never be placed, whatever the ordering.
    std::vector<int32_t> in_deg(static_cast<size_t>(n), 0);
    std::vector<std::string> pigeonhole;
    for (const auto& node : anml.nodes) {
        int32_t out_deg = 0;
        for (NodeId s : node.successors) {
            if (s == node.id) continue;
            ++out_deg;
            ++in_deg[static_cast<size_t>(s)];
        }
        if (out_deg > params.fanout - 1)
            pigeonhole.push_back("node " + std::to_string(node.id) + " has " +
                                 std::to_string(out_deg) +
                                 " non-self successors, window provides " +
                                 std::to_string(params.fanout - 1) + " slots");
    }
    for (NodeId i = 0; i < n; ++i)
        if (in_deg[static_cast<size_t>(i)] > params.fanout - 1)
            pigeonhole.push_back("node " + std::to_string(i) + " has " +
                                 std::to_string(in_deg[static_cast<size_t>(i)]) +
                                 " non-self predecessors, window provides " +
                                 std::to_string(params.fanout - 1) + " slots");
    if (!pigeonhole.empty())
        throw InfeasibleError("automaton cannot satisfy the fanout window on any ordering",
                              std::move(pigeonhole));

    RepairState st(anml, params);
    const std::vector<NodeId> base_order = bfs_order(anml);

    constexpr int kRestarts = 8;
    const int64_t per_restart = std::max<int64_t>(budget / kRestarts, 1);
    int64_t best_bad = -1;
    std::vector<CellId> best_cells;

    for (int restart = 0; restart < kRestarts; ++restart) {
        std::mt19937_64 rng(seed * 0x9e3779b97f4a7c15ULL + static_cast<uint64_t>(restart));
        std::vector<NodeId> order = base_order;
        if (restart > 0) shuffle_det(order, rng);
        st.load_order(order);

        for (int64_t iter = 0; iter < per_restart && st.total_bad > 0; ++iter) {
            // Pick a violated edge, scanning from a random point.
            const size_t e0 = st.edges.empty() ? 0 : rng() % st.edges.size();
            size_t ei = e0;
            while (!st.bad(st.edges[ei].first, st.edges[ei].second))
                ei = (ei + 1) % st.edges.size();
            const auto [u, v] = st.edges[ei];

            // Move one endpoint so the edge lands inside the window; among
            // the candidate cells commit the one breaking fewest other edges.
            const bool move_target = rng() & 1;
            const NodeId m = move_target ? v : u;
            const CellId anchor = st.cell_of[static_cast<size_t>(move_target ? u : v)];
            // Cells that satisfy this edge for the mover: the anchor's window
            // when moving the target, its mirror when moving the source.
            const CellId lo = move_target ? window_lo(anchor, params.fanout)
                                          : anchor - params.fanout / 2;
            const CellId hi = move_target ? window_hi(anchor, params.fanout)
                                          : anchor + (params.fanout - 1) / 2;
            const CellId home = st.cell_of[static_cast<size_t>(m)];
            CellId best_cell = -1;
            int64_t best_delta = 0;
            uint64_t ties = 0;
            for (CellId t = std::max<CellId>(lo, 1);
                 t <= std::min<CellId>(hi, params.array_size - 1); ++t) {
                if (t == home) continue;
                const int64_t delta = st.swap_to(m, t);  // trial
                st.swap_to(m, home);                     // revert
                if (best_cell < 0 || delta < best_delta) {
                    best_cell = t;
                    best_delta = delta;
                    ties = 1;
                } else if (delta == best_delta && rng() % ++ties == 0) {
                    best_cell = t;
                }
            }
            if (best_cell >= 0) st.swap_to(m, best_cell);
        }

        if (best_bad < 0 || st.total_bad < best_bad) {
            best_bad = st.total_bad;
            best_cells = st.cell_of;
        }
        if (st.total_bad == 0) break;
    }

    if (best_bad != 0) {
        st.cell_of = best_cells;
        throw InfeasibleError("placement repair failed: " + std::to_string(best_bad) +
                                  " edges remain outside their fanout windows",
                              st.violation_lines());
    }

    Placement p;
    p.cell_of_node = best_cells;
    p.start_cell = 0;
    return p;
}

PlacedDesign configure(const AnmlAutomaton& anml, const Placement& placement,
                       const OverlayParams& params, ScoreMode restart) {
    anml.check();
    params.check();
    const auto n = static_cast<NodeId>(anml.nodes.size());
    if (static_cast<NodeId>(placement.cell_of_node.size()) != n)
        throw IllegalPlacementError("placement maps " +
                                    std::to_string(placement.cell_of_node.size()) +
                                    " nodes, automaton has " + std::to_string(n));
    if (placement.start_cell != 0)
        throw IllegalPlacementError("start cell is pinned to index 0");

    std::vector<NodeId> node_at(static_cast<size_t>(params.array_size), -1);
    for (NodeId i = 0; i < n; ++i) {
        const CellId c = placement.cell_of_node[static_cast<size_t>(i)];
        if (c < 1 || c >= params.array_size)
            throw IllegalPlacementError("node " + std::to_string(i) + " placed at cell " +
                                        std::to_string(c) + ", valid range is [1, " +
                                        std::to_string(params.array_size - 1) + "]");
        if (node_at[static_cast<size_t>(c)] >= 0)
            throw IllegalPlacementError("cell " + std::to_string(c) +
                                        " holds both node " +
                                        std::to_string(node_at[static_cast<size_t>(c)]) +
                                        " and node " + std::to_string(i));
        node_at[static_cast<size_t>(c)] = i;
    }
    for (const auto& node : anml.nodes) {
        const CellId cu = placement.cell_of_node[static_cast<size_t>(node.id)];
        for (NodeId s : node.successors) {
            const CellId cv = placement.cell_of_node[static_cast<size_t>(s)];
            if (!in_window(cu, cv, params.fanout))
                throw IllegalPlacementError(
                    "edge " + std::to_string(node.id) + " -> " + std::to_string(s) +
                    " spans cells " + std::to_string(cu) + " -> " + std::to_string(cv) +
                    ", outside window [" + std::to_string(window_lo(cu, params.fanout)) +
                    ", " + std::to_string(window_hi(cu, params.fanout)) + "]");
        }
    }

    PlacedDesign d;
    d.params = params;
    d.mode = restart;
    d.start_cell = 0;
    d.node_cell = placement.cell_of_node;
    d.cells.resize(static_cast<size_t>(params.array_size));
    d.cells[0].start_bit = true;  // always-active, all-zero symbol table

    d.exact = !(restart == ScoreMode::Local && anml.start_state_accepting);
    for (const auto& node : anml.nodes) {
        const CellId c = placement.cell_of_node[static_cast<size_t>(node.id)];
        SteCell& cell = d.cells[static_cast<size_t>(c)];
        cell.symbols = node.symbols;
        cell.weight = node.weight;
        cell.accept_bit = node.accept;
        for (NodeId s : node.successors)
            cell.out.push_back(placement.cell_of_node[static_cast<size_t>(s)]);
        std::sort(cell.out.begin(), cell.out.end());

        if (node.start_enabled) {
            if (node.accept) {
                // Accept cells never take the restart lane; a one-symbol
                // match from the start is lost, so the design may undershoot.
                d.exact = false;
            } else if (restart == ScoreMode::Global) {
                cell.start_connected = true;  // broadcast lane, first cycle only
            } else if (in_window(0, c, params.fanout)) {
                cell.start_connected = true;  // modeled as a wire from cell 0
            } else {
                d.exact = false;  // restart never reaches this node
            }
        }
    }
    d.rebuild_tables();
    return d;
}

std::vector<ValidationIssue> validate(const PlacedDesign& design) {
    std::vector<ValidationIssue> issues;
    const auto N = static_cast<CellId>(design.cells.size());
    for (CellId c = 0; c < N; ++c) {
        const SteCell& cell = design.cells[static_cast<size_t>(c)];
        if (cell.accept_bit && cell.start_connected)
            issues.push_back({ValidationIssue::Kind::AcceptStart,
                              "cell " + std::to_string(c) +
                                  " is accept yet start-connected"});
        if (static_cast<int32_t>(cell.out.size()) > design.params.fanout)
            issues.push_back({ValidationIssue::Kind::Fanout,
                              "cell " + std::to_string(c) + " drives " +
                                  std::to_string(cell.out.size()) +
                                  " targets, fanout is " +
                                  std::to_string(design.params.fanout)});
        for (size_t k = 0; k < cell.out.size(); ++k) {
            const CellId t = cell.out[k];
            if (t < 0 || t >= N) {
                issues.push_back({ValidationIssue::Kind::BadTarget,
                                  "cell " + std::to_string(c) + " targets cell " +
                                      std::to_string(t) + ", array has " +
                                      std::to_string(N) + " cells"});
                continue;
            }
            if (k > 0 && t <= cell.out[k - 1])
                issues.push_back({ValidationIssue::Kind::BadTarget,
                                  "cell " + std::to_string(c) +
                                      " has unsorted or duplicate targets"});
            if (!in_window(c, t, design.params.fanout))
                issues.push_back({ValidationIssue::Kind::Window,
                                  "cell " + std::to_string(c) + " targets cell " +
                                      std::to_string(t) + " outside window [" +
                                      std::to_string(window_lo(c, design.params.fanout)) +
                                      ", " +
                                      std::to_string(window_hi(c, design.params.fanout)) +
                                      "]"});
        }
    }
    return issues;
}

PlacedDesign compile_design(const WeightedAutomaton& wfa, const OverlayParams& params,
                            ScoreMode mode, uint64_t seed, int64_t budget) {
    const WeightedAutomaton flat = eliminate_epsilon(wfa);
    const AnmlAutomaton anml = wfa_to_anml(flat);
    const Placement p = place(anml, params, seed, budget);
    return configure(anml, p, params, mode);
}

}  // namespace napoly
