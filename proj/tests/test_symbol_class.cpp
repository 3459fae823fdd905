#include <doctest.h>

#include <random>

#include "napoly/errors.hpp"
#include "napoly/symbol_class.hpp"

using namespace napoly;

TEST_CASE("membership basics") {
    SymbolClass c;
    CHECK(c.empty());
    CHECK(c.count() == 0);
    c.insert('A');
    CHECK(c.contains('A'));
    CHECK_FALSE(c.contains('B'));
    CHECK(c.count() == 1);
    c.erase('A');
    CHECK(c.empty());

    CHECK(SymbolClass::all().count() == 256);
    CHECK(SymbolClass::none().empty());
    CHECK(SymbolClass::single(0xFF).contains(0xFF));
    CHECK(SymbolClass::single(0).contains(0));
}

TEST_CASE("of builds exactly the listed bytes") {
    auto c = SymbolClass::of("ACGT");
    CHECK(c.count() == 4);
    for (char ch : std::string("ACGT")) CHECK(c.contains(static_cast<uint8_t>(ch)));
    CHECK_FALSE(c.contains('a'));
    CHECK(c == dna_alphabet());
}

TEST_CASE("set algebra") {
    auto a = SymbolClass::of("AC");
    auto b = SymbolClass::of("CG");
    CHECK((a | b) == SymbolClass::of("ACG"));
    CHECK((a & b) == SymbolClass::of("C"));
    CHECK((~a).count() == 254);
    CHECK(a.is_subset_of(SymbolClass::of("ACGT")));
    CHECK_FALSE(SymbolClass::of("ACGT").is_subset_of(a));
    auto acc = a;
    acc |= b;
    CHECK(acc == (a | b));
}

TEST_CASE("hex round-trip and bit layout") {
    // 'A' = 65 = 8*8 + 1: byte 8 of the table holds bit 1 -> "02".
    auto a = SymbolClass::single('A');
    std::string hex = a.to_hex();
    REQUIRE(hex.size() == 64);
    CHECK(hex.substr(16, 2) == "02");
    CHECK(hex.substr(0, 16) == "0000000000000000");
    CHECK(SymbolClass::from_hex(hex) == a);

    CHECK(SymbolClass::from_hex(SymbolClass::none().to_hex()) == SymbolClass::none());
    CHECK(SymbolClass::from_hex(SymbolClass::all().to_hex()) == SymbolClass::all());
    CHECK(SymbolClass::all().to_hex() == std::string(64, 'f'));

    std::mt19937_64 rng(7);
    for (int i = 0; i < 200; ++i) {
        SymbolClass c;
        for (int k = 0; k < 12; ++k) c.insert(static_cast<uint8_t>(rng() % 256));
        CHECK(SymbolClass::from_hex(c.to_hex()) == c);
    }
}

TEST_CASE("from_hex rejects malformed strings") {
    CHECK_THROWS_AS(SymbolClass::from_hex(""), ParseError);
    CHECK_THROWS_AS(SymbolClass::from_hex(std::string(63, '0')), ParseError);
    CHECK_THROWS_AS(SymbolClass::from_hex(std::string(65, '0')), ParseError);
    std::string bad(64, '0');
    bad[10] = 'g';
    CHECK_THROWS_AS(SymbolClass::from_hex(bad), ParseError);
}

TEST_CASE("describe names small classes") {
    CHECK(SymbolClass::of("AC").describe() == SymbolClass::of("AC").describe());
    auto d = SymbolClass::of("A").describe();
    CHECK(d.find('A') != std::string::npos);
    CHECK(SymbolClass::none().describe() == "{}");
    CHECK(SymbolClass::all().describe() == "{*}");
    // Large classes fall back to a count, not a 200-byte dump.
    SymbolClass big;
    for (int b = 0; b < 20; ++b) big.insert(static_cast<uint8_t>(b));
    CHECK(big.describe() == "{20 symbols}");
}

TEST_CASE("word exposes the raw table") {
    auto c = SymbolClass::single('A');  // bit 65 -> word 1, bit 1
    CHECK(c.word(0) == 0);
    CHECK(c.word(1) == (uint64_t{1} << 1));
    CHECK(c.word(2) == 0);
    CHECK(c.word(3) == 0);
}
