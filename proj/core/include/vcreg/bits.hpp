#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

namespace vcreg {

/**
 * Fixed-length dynamic bitset backed by 64-bit words.
 *
 * Bits past size() in the last word are kept zero so that word-wise
 * equality, hashing and popcount never see garbage.
 */
class Bits {
public:
    using word_type = std::uint64_t;
    static constexpr std::size_t word_bits = 64;

    Bits() = default;
    explicit Bits(std::size_t n, bool value = false);

    std::size_t size() const { return size_; }
    std::size_t word_count() const { return words_.size(); }
    std::span<const word_type> words() const { return words_; }

    bool test(std::size_t i) const { return (words_[i / word_bits] >> (i % word_bits)) & 1U; }
    void set(std::size_t i) { words_[i / word_bits] |= word_type{1} << (i % word_bits); }
    void reset(std::size_t i) { words_[i / word_bits] &= ~(word_type{1} << (i % word_bits)); }
    void fill(bool value);

    std::size_t count() const;
    bool none() const;
    bool any() const { return !none(); }

    Bits& operator&=(const Bits& other);
    Bits& operator|=(const Bits& other);
    Bits& operator^=(const Bits& other);
    /// this &= ~other
    Bits& subtract(const Bits& other);
    Bits complement() const;

    bool is_subset_of(const Bits& other) const;
    bool intersects(const Bits& other) const;

    /// Index of the lowest set bit, or size() if none.
    std::size_t first() const;

    /// Calls fn(i) for every set bit in increasing order.
    template <class Fn>
    void for_each(Fn&& fn) const
    {
        for (std::size_t w = 0; w < words_.size(); ++w) {
            word_type word = words_[w];
            while (word) {
                const auto bit = static_cast<std::size_t>(std::countr_zero(word));
                fn(w * word_bits + bit);
                word &= word - 1;
            }
        }
    }

    std::vector<std::size_t> indices() const;
    std::size_t hash() const;

    friend bool operator==(const Bits& a, const Bits& b) = default;

private:
    void trim();

    std::size_t size_ = 0;
    std::vector<word_type> words_;
};

inline Bits operator&(Bits a, const Bits& b) { return a &= b; }
inline Bits operator|(Bits a, const Bits& b) { return a |= b; }
inline Bits operator^(Bits a, const Bits& b) { return a ^= b; }

/// |a & b| without materializing the intersection.
std::size_t intersection_count(const Bits& a, const Bits& b);
/// |(a ^ b) & mask| without materializing.
std::size_t masked_xor_count(const Bits& a, const Bits& b, const Bits& mask);

struct BitsHash {
    std::size_t operator()(const Bits& b) const { return b.hash(); }
};

} // namespace vcreg
