#include <doctest.h>

#include <random>
#include <string>

#include "napoly/align.hpp"
#include "napoly/enumerate.hpp"
#include "napoly/epsilon.hpp"
#include "napoly/errors.hpp"
#include "napoly/viterbi.hpp"
#include "support/generators.hpp"

using namespace napoly;

namespace {

ScoringScheme random_scheme(std::mt19937_64& rng) {
    // The sane alignment domain: match >= 0 > gap, mismatch < match.
    ScoringScheme s;
    s.match = static_cast<Weight>(rng() % 4);
    s.mismatch = s.match - 1 - static_cast<Weight>(rng() % 3);
    s.gap = -1 - static_cast<Weight>(rng() % 4);
    return s;
}

std::string random_pattern(std::mt19937_64& rng, size_t max_len) {
    return testgen::random_input(rng, 1, max_len);
}

}  // namespace

TEST_CASE("single-position pattern lays out match, mismatch, insert, delete") {
    auto a = build_alignment_wfa("A", {2, -1, -2});
    CHECK(a.num_states == 2);
    CHECK(a.start == 0);
    CHECK(a.accepts == std::vector<StateId>{1});
    REQUIRE(a.transitions.size() == 4);
    CHECK(a.transitions[0] == Transition{0, 1, SymbolClass::of("A"), 2});
    CHECK(a.transitions[1] == Transition{0, 1, SymbolClass::of("CGT"), -1});
    CHECK(a.transitions[2] == Transition{0, 0, SymbolClass::of("ACGT"), -2});
    CHECK(a.transitions[3] == Transition{0, 1, std::nullopt, -2});

    CHECK(viterbi_best_score(eliminate_epsilon(a), "A", ScoreMode::Global) ==
          BestScore{2, 1});
}

TEST_CASE("mismatch edges are omitted for a single-symbol alphabet") {
    auto a = build_alignment_wfa("A", {2, -1, -2}, SymbolClass::of("A"));
    REQUIRE(a.transitions.size() == 3);
    CHECK(a.transitions[0] == Transition{0, 1, SymbolClass::of("A"), 2});
    CHECK(a.transitions[1] == Transition{0, 0, SymbolClass::of("A"), -2});
    CHECK(a.transitions[2] == Transition{0, 1, std::nullopt, -2});
}

TEST_CASE("paper scores for the AGC pattern") {
    auto flat = eliminate_epsilon(build_alignment_wfa("AGC", {2, -1, -2}));
    CHECK(viterbi_best_score(flat, "AGC", ScoreMode::Global) == BestScore{6, 3});
    CHECK(viterbi_best_score(flat, "AGATG", ScoreMode::Global) == BestScore{-1, 5});
}

TEST_CASE("builder rejects bad inputs") {
    CHECK_THROWS_AS(build_alignment_wfa("", {2, -1, -2}), EmptyPatternError);
    CHECK_THROWS_AS(build_alignment_wfa("AXC", {2, -1, -2}), SymbolOutsideAlphabetError);
    CHECK_THROWS_AS(build_alignment_wfa("A", {2, -1, -2}, SymbolClass::none()),
                    InvalidArgumentError);
}

TEST_CASE("exact self-alignment scores pattern length times match") {
    std::mt19937_64 rng(808);
    for (int iter = 0; iter < 100; ++iter) {
        auto scheme = random_scheme(rng);
        auto pattern = random_pattern(rng, 8);
        CAPTURE(pattern);
        auto flat = eliminate_epsilon(build_alignment_wfa(pattern, scheme));
        auto v = viterbi_best_score(flat, pattern, ScoreMode::Global);
        REQUIRE(v.has_value());
        CHECK(v->score == static_cast<Weight>(pattern.size()) * scheme.match);
    }
}

TEST_CASE("one deleted symbol costs at most match minus gap") {
    std::mt19937_64 rng(809);
    for (int iter = 0; iter < 100; ++iter) {
        auto scheme = random_scheme(rng);
        auto pattern = random_pattern(rng, 8);
        if (pattern.size() < 2) continue;
        auto cut = pattern;
        cut.erase(rng() % cut.size(), 1);
        CAPTURE(pattern);
        auto flat = eliminate_epsilon(build_alignment_wfa(pattern, scheme));
        auto v = viterbi_best_score(flat, cut, ScoreMode::Global);
        REQUIRE(v.has_value());
        auto full = static_cast<int64_t>(pattern.size()) * scheme.match;
        CHECK(v->score >= full - (scheme.match - scheme.gap));
    }
}

TEST_CASE("anchored scores sit between all-gaps and all-matches") {
    std::mt19937_64 rng(810);
    for (int iter = 0; iter < 100; ++iter) {
        auto scheme = random_scheme(rng);
        auto pattern = random_pattern(rng, 6);
        // Length >= 1: a global match must consume at least one symbol, so an
        // empty input has no match at all.
        auto input = testgen::random_input(rng, 1, 10);
        CAPTURE(pattern);
        CAPTURE(input);
        auto flat = eliminate_epsilon(build_alignment_wfa(pattern, scheme));
        auto v = viterbi_best_score(flat, input, ScoreMode::Global);
        REQUIRE(v.has_value());  // the all-gaps path always exists
        auto m = static_cast<int64_t>(pattern.size());
        auto len = static_cast<int64_t>(input.size());
        CHECK(v->score >= (len + m) * scheme.gap);
        CHECK(v->score <= m * scheme.match);
    }
}

TEST_CASE("epsilon elimination preserves alignment scores") {
    std::mt19937_64 rng(811);
    for (int iter = 0; iter < 60; ++iter) {
        auto scheme = random_scheme(rng);
        auto pattern = random_pattern(rng, 4);
        auto raw = build_alignment_wfa(pattern, scheme);
        auto flat = eliminate_epsilon(raw);
        for (int k = 0; k < 3; ++k) {
            auto input = testgen::random_input(rng, 0, 6);
            for (auto mode : {ScoreMode::Global, ScoreMode::Local}) {
                CAPTURE(pattern);
                CAPTURE(input);
                auto e = enumerate_best_score(raw, input, mode);
                auto v = viterbi_best_score(flat, input, mode);
                REQUIRE(e.has_value() == v.has_value());
                if (e) CHECK(static_cast<int64_t>(v->score) == *e);
            }
        }
    }
}
