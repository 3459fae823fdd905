#pragma once

#include <bit>
#include <cstdint>
#include <cstring>
#include <vector>

namespace napoly {

/// Dense dynamic bitset over 64-bit words. Padding bits past `size()` are
/// kept zero by every mutator, so whole-word scans never see ghosts.
class BitVec {
public:
    BitVec() = default;
    explicit BitVec(size_t nbits) : nbits_(nbits), words_((nbits + 63) / 64, 0) {}

    size_t size() const { return nbits_; }
    size_t num_words() const { return words_.size(); }

    bool test(size_t i) const { return (words_[i >> 6] >> (i & 63)) & 1u; }
    void set(size_t i) { words_[i >> 6] |= uint64_t{1} << (i & 63); }
    void reset(size_t i) { words_[i >> 6] &= ~(uint64_t{1} << (i & 63)); }

    void clear() { std::memset(words_.data(), 0, words_.size() * sizeof(uint64_t)); }

    bool any() const {
        for (uint64_t w : words_)
            if (w) return true;
        return false;
    }

    size_t count() const {
        size_t n = 0;
        for (uint64_t w : words_) n += std::popcount(w);
        return n;
    }

    uint64_t* data() { return words_.data(); }
    const uint64_t* data() const { return words_.data(); }
    uint64_t word(size_t k) const { return words_[k]; }

    bool operator==(const BitVec&) const = default;

private:
    size_t nbits_ = 0;
    std::vector<uint64_t> words_;
};

/// Iterates set bits low to high: fn(size_t index).
template <typename Fn>
void for_each_set_bit(const BitVec& bv, Fn&& fn) {
    const uint64_t* w = bv.data();
    for (size_t k = 0; k < bv.num_words(); ++k) {
        uint64_t word = w[k];
        while (word) {
            unsigned bit = std::countr_zero(word);
            fn(k * 64 + bit);
            word &= word - 1;
        }
    }
}

}  // namespace napoly
