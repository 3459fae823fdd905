#include "napoly/symbol_class.hpp"

namespace napoly {

std::string SymbolClass::to_hex() const {
    static constexpr char kDigits[] = "0123456789abcdef";
    std::string out(64, '0');
    for (int j = 0; j < 32; ++j) {
        auto byte = static_cast<uint8_t>(words_[j >> 3] >> ((j & 7) * 8));
        out[2 * j] = kDigits[byte >> 4];
        out[2 * j + 1] = kDigits[byte & 0xF];
    }
    return out;
}

namespace {

int hex_nibble(char c) {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    if (c >= 'A' && c <= 'F') return c - 'A' + 10;
    return -1;
}

}  // namespace

SymbolClass SymbolClass::from_hex(std::string_view hex) {
    if (hex.size() != 64)
        throw ParseError("symbol table must be 64 hex chars, got " +
                         std::to_string(hex.size()));
    SymbolClass c;
    for (int j = 0; j < 32; ++j) {
        int hi = hex_nibble(hex[2 * j]);
        int lo = hex_nibble(hex[2 * j + 1]);
        if (hi < 0 || lo < 0)
            throw ParseError("bad hex digit in symbol table at position " +
                             std::to_string(2 * j));
        auto byte = static_cast<uint64_t>(hi << 4 | lo);
        c.words_[j >> 3] |= byte << ((j & 7) * 8);
    }
    return c;
}

std::string SymbolClass::describe() const {
    if (empty()) return "{}";
    if (*this == all()) return "{*}";
    int n = count();
    if (n > 8) return "{" + std::to_string(n) + " symbols}";
    std::string out = "{";
    bool first = true;
    for (int b = 0; b < 256; ++b) {
        if (!contains(static_cast<uint8_t>(b))) continue;
        if (!first) out += ',';
        first = false;
        if (b >= 0x20 && b <= 0x7E) {
            out += static_cast<char>(b);
        } else {
            static constexpr char kDigits[] = "0123456789abcdef";
            out += "0x";
            out += kDigits[b >> 4];
            out += kDigits[b & 0xF];
        }
    }
    return out + "}";
}

}  // namespace napoly
