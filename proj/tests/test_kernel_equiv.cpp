#include <doctest.h>

#include <algorithm>
#include <random>
#include <string>

#include "napoly/anml.hpp"
#include "napoly/errors.hpp"
#include "napoly/kernel.hpp"
#include "napoly/overlay.hpp"
#include "napoly/sim.hpp"
#include "support/generators.hpp"

using namespace napoly;

namespace {

AnmlNode node(NodeId id, SymbolClass syms, Weight w, bool start, bool accept,
              std::vector<NodeId> succ) {
    return {id, syms, w, start, accept, std::move(succ)};
}

/// Steps both kernels over the same input and requires identical states and
/// records after every cycle.
void lockstep(const PlacedDesign& design, std::string_view input) {
    Simulator scalar(design, KernelKind::Scalar);
    Simulator vec(design, KernelKind::Avx2);
    uint64_t cycle = 0;
    for (char c : input) {
        ++cycle;
        CAPTURE(cycle);
        auto rs = scalar.step(static_cast<uint8_t>(c));
        auto rv = vec.step(static_cast<uint8_t>(c));
        REQUIRE(rs == rv);
        REQUIRE(scalar.state() == vec.state());
    }
    auto a = run(design, input, KernelKind::Scalar);
    auto b = run(design, input, KernelKind::Avx2);
    CHECK(a.records == b.records);
    CHECK(a.best == b.best);
}

std::string noisy_input(std::mt19937_64& rng, size_t len) {
    std::string s;
    s.reserve(len);
    for (size_t i = 0; i < len; ++i)
        s += rng() % 10 == 0 ? 'X' : "ACGT"[rng() % 4];  // X misses every table
    return s;
}

}  // namespace

TEST_CASE("kernel kind plumbing") {
    CHECK(to_string(KernelKind::Scalar) == "scalar");
    CHECK(to_string(KernelKind::Avx2) == "avx2");
    CHECK(to_string(KernelKind::Auto) == "auto");
    CHECK(kernel_kind_from_string("scalar") == KernelKind::Scalar);
    CHECK(kernel_kind_from_string("avx2") == KernelKind::Avx2);
    CHECK(kernel_kind_from_string("auto") == KernelKind::Auto);
    CHECK(kernel_kind_from_string("fast") == std::nullopt);

    CHECK(resolve_kernel(KernelKind::Scalar) == KernelKind::Scalar);
    auto resolved = resolve_kernel(KernelKind::Auto);
    CHECK((resolved == KernelKind::Scalar || resolved == KernelKind::Avx2));
    if (avx2_supported())
        CHECK(resolved == KernelKind::Avx2);
    else
        CHECK_THROWS_AS(resolve_kernel(KernelKind::Avx2), InvalidArgumentError);
}

TEST_CASE("kernels agree on random placed designs") {
    if (!avx2_supported()) {
        MESSAGE("AVX2 unavailable; skipping");
        return;
    }
    std::mt19937_64 rng(60606);
    int checked = 0;
    for (int iter = 0; iter < 16; ++iter) {
        int32_t f = std::vector<int32_t>{4, 8, 16}[rng() % 3];
        auto anml = testgen::random_anml(rng, {60, f, iter % 2 == 0});
        OverlayParams params{static_cast<CellId>(anml.nodes.size() + 1 + rng() % 40), f};
        Placement p;
        try {
            p = place(anml, params, rng());
        } catch (const InfeasibleError&) {
            continue;
        }
        for (auto mode : {ScoreMode::Global, ScoreMode::Local}) {
            auto design = configure(anml, p, params, mode);
            lockstep(design, noisy_input(rng, 200));
            ++checked;
        }
    }
    MESSAGE("designs checked: ", checked);
    CHECK(checked >= 16);
}

TEST_CASE("kernels agree across word-boundary hops") {
    if (!avx2_supported()) {
        MESSAGE("AVX2 unavailable; skipping");
        return;
    }
    // Fanout 132 allows hops of -65..+66 cells: every shifted-word path in
    // the vector kernel (word offsets -2..+1, including shift-by-zero at
    // exactly +-64) gets traffic.
    const int n = 180;
    AnmlAutomaton a;
    const SymbolClass classes[3] = {SymbolClass::of("AC"), SymbolClass::of("GT"),
                                    SymbolClass::all()};
    for (NodeId i = 0; i < n; ++i) {
        std::vector<NodeId> succ{i};
        for (int d : {-65, -64, 64, 65, 66}) {
            int j = i + d;
            if (j >= 0 && j < n) succ.push_back(j);
        }
        std::sort(succ.begin(), succ.end());
        a.nodes.push_back(node(i, classes[i % 3], (i % 7) - 3, i % 3 == 0, i % 11 == 0,
                               std::move(succ)));
    }
    Placement p;
    for (NodeId i = 0; i < n; ++i) p.cell_of_node.push_back(i + 1);
    OverlayParams params{260, 132};
    std::mt19937_64 rng(11);
    for (auto mode : {ScoreMode::Global, ScoreMode::Local}) {
        auto design = configure(a, p, params, mode);
        lockstep(design, noisy_input(rng, 300));
    }
}

TEST_CASE("kernels agree on a fully dense array") {
    if (!avx2_supported()) {
        MESSAGE("AVX2 unavailable; skipping");
        return;
    }
    // Every cell matches every symbol and chains forward with a self loop:
    // the whole array stays active, stressing the merge/maximum path.
    const int n = 150;
    AnmlAutomaton a;
    for (NodeId i = 0; i < n; ++i) {
        std::vector<NodeId> succ{i};
        if (i + 1 < n) succ.push_back(i + 1);
        a.nodes.push_back(node(i, SymbolClass::all(), (i % 5) - 2, i < 8, i % 13 == 0,
                               std::move(succ)));
    }
    Placement p;
    for (NodeId i = 0; i < n; ++i) p.cell_of_node.push_back(i + 1);
    OverlayParams params{160, 4};
    std::mt19937_64 rng(12);
    for (auto mode : {ScoreMode::Global, ScoreMode::Local}) {
        auto design = configure(a, p, params, mode);
        lockstep(design, noisy_input(rng, 250));
    }
}

TEST_CASE("kernels throw the same overflow diagnostic") {
    if (!avx2_supported()) {
        MESSAGE("AVX2 unavailable; skipping");
        return;
    }
    AnmlAutomaton a;
    a.nodes = {node(0, SymbolClass::of("A"), 1'500'000'000, true, false, {1}),
               node(1, SymbolClass::of("G"), 1'500'000'000, false, true, {})};
    auto design = configure(a, {{1, 2}, 0}, {4, 4}, ScoreMode::Global);

    std::string scalar_msg, vec_msg;
    try {
        run(design, "AG", KernelKind::Scalar);
    } catch (const ScoreOverflowError& e) {
        scalar_msg = e.what();
    }
    try {
        run(design, "AG", KernelKind::Avx2);
    } catch (const ScoreOverflowError& e) {
        vec_msg = e.what();
    }
    REQUIRE(!scalar_msg.empty());
    CHECK(scalar_msg == vec_msg);
}
