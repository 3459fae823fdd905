#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <string_view>

#include "napoly/errors.hpp"

namespace napoly {

/// Membership set over the 256 byte values. This is the semantic form of an
/// STE symbol table: one bit per input byte, set iff the byte matches.
class SymbolClass {
public:
    constexpr SymbolClass() = default;

    static constexpr SymbolClass none() { return SymbolClass{}; }

    static constexpr SymbolClass all() {
        SymbolClass c;
        for (auto& w : c.words_) w = ~uint64_t{0};
        return c;
    }

    static constexpr SymbolClass single(uint8_t b) {
        SymbolClass c;
        c.insert(b);
        return c;
    }

    /// Class containing exactly the bytes of `s`.
    static constexpr SymbolClass of(std::string_view s) {
        SymbolClass c;
        for (char ch : s) c.insert(static_cast<uint8_t>(ch));
        return c;
    }

    constexpr void insert(uint8_t b) { words_[b >> 6] |= uint64_t{1} << (b & 63); }
    constexpr void erase(uint8_t b) { words_[b >> 6] &= ~(uint64_t{1} << (b & 63)); }

    constexpr bool contains(uint8_t b) const {
        return (words_[b >> 6] >> (b & 63)) & 1;
    }

    constexpr bool empty() const {
        return (words_[0] | words_[1] | words_[2] | words_[3]) == 0;
    }

    int count() const {
        int n = 0;
        for (auto w : words_) n += __builtin_popcountll(w);
        return n;
    }

    constexpr SymbolClass operator|(const SymbolClass& o) const {
        SymbolClass r;
        for (int i = 0; i < 4; ++i) r.words_[i] = words_[i] | o.words_[i];
        return r;
    }

    constexpr SymbolClass operator&(const SymbolClass& o) const {
        SymbolClass r;
        for (int i = 0; i < 4; ++i) r.words_[i] = words_[i] & o.words_[i];
        return r;
    }

    constexpr SymbolClass operator~() const {
        SymbolClass r;
        for (int i = 0; i < 4; ++i) r.words_[i] = ~words_[i];
        return r;
    }

    constexpr SymbolClass& operator|=(const SymbolClass& o) {
        for (int i = 0; i < 4; ++i) words_[i] |= o.words_[i];
        return *this;
    }

    constexpr bool operator==(const SymbolClass&) const = default;

    constexpr uint64_t word(int i) const { return words_[i]; }

    bool is_subset_of(const SymbolClass& o) const {
        for (int i = 0; i < 4; ++i)
            if (words_[i] & ~o.words_[i]) return false;
        return true;
    }

    /// 64 hex chars; chars 2j..2j+1 encode the byte whose bit k (LSB first)
    /// is the membership of symbol 8j+k. This is the design-file encoding.
    std::string to_hex() const;
    static SymbolClass from_hex(std::string_view hex);

    /// Printable form used in reports: bytes listed when small, else a count.
    std::string describe() const;

private:
    std::array<uint64_t, 4> words_{};
};

inline SymbolClass dna_alphabet() { return SymbolClass::of("ACGT"); }

}  // namespace napoly
