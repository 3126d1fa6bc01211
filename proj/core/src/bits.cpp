#include "vcreg/bits.hpp"

#include <algorithm>
#include <cassert>

namespace vcreg {

Bits::Bits(std::size_t n, bool value)
    : size_(n), words_((n + word_bits - 1) / word_bits, value ? ~word_type{0} : word_type{0})
{
    trim();
}

void Bits::trim()
{
    const std::size_t tail = size_ % word_bits;
    if (tail != 0 && !words_.empty())
        words_.back() &= (word_type{1} << tail) - 1;
}

void Bits::fill(bool value)
{
    std::fill(words_.begin(), words_.end(), value ? ~word_type{0} : word_type{0});
    trim();
}

std::size_t Bits::count() const
{
    std::size_t c = 0;
    for (auto w : words_)
        c += static_cast<std::size_t>(std::popcount(w));
    return c;
}

bool Bits::none() const
{
    return std::all_of(words_.begin(), words_.end(), [](word_type w) { return w == 0; });
}

Bits& Bits::operator&=(const Bits& other)
{
    assert(size_ == other.size_);
    for (std::size_t i = 0; i < words_.size(); ++i)
        words_[i] &= other.words_[i];
    return *this;
}

Bits& Bits::operator|=(const Bits& other)
{
    assert(size_ == other.size_);
    for (std::size_t i = 0; i < words_.size(); ++i)
        words_[i] |= other.words_[i];
    return *this;
}

Bits& Bits::operator^=(const Bits& other)
{
    assert(size_ == other.size_);
    for (std::size_t i = 0; i < words_.size(); ++i)
        words_[i] ^= other.words_[i];
    return *this;
}

Bits& Bits::subtract(const Bits& other)
{
    assert(size_ == other.size_);
    for (std::size_t i = 0; i < words_.size(); ++i)
        words_[i] &= ~other.words_[i];
    return *this;
}

Bits Bits::complement() const
{
    Bits out = *this;
    for (auto& w : out.words_)
        w = ~w;
    out.trim();
    return out;
}

bool Bits::is_subset_of(const Bits& other) const
{
    assert(size_ == other.size_);
    for (std::size_t i = 0; i < words_.size(); ++i)
        if (words_[i] & ~other.words_[i])
            return false;
    return true;
}

bool Bits::intersects(const Bits& other) const
{
    assert(size_ == other.size_);
    for (std::size_t i = 0; i < words_.size(); ++i)
        if (words_[i] & other.words_[i])
            return true;
    return false;
}

std::size_t Bits::first() const
{
    for (std::size_t w = 0; w < words_.size(); ++w)
        if (words_[w])
            return w * word_bits + static_cast<std::size_t>(std::countr_zero(words_[w]));
    return size_;
}

std::vector<std::size_t> Bits::indices() const
{
    std::vector<std::size_t> out;
    out.reserve(count());
    for_each([&](std::size_t i) { out.push_back(i); });
    return out;
}

std::size_t Bits::hash() const
{
    // FNV-1a over words, mixed with the length.
    std::uint64_t h = 0xcbf29ce484222325ULL ^ size_;
    for (auto w : words_) {
        h ^= w;
        h *= 0x100000001b3ULL;
        h ^= h >> 29;
    }
    return static_cast<std::size_t>(h);
}

std::size_t intersection_count(const Bits& a, const Bits& b)
{
    assert(a.size() == b.size());
    const auto aw = a.words();
    const auto bw = b.words();
    std::size_t c = 0;
    for (std::size_t i = 0; i < aw.size(); ++i)
        c += static_cast<std::size_t>(std::popcount(aw[i] & bw[i]));
    return c;
}

std::size_t masked_xor_count(const Bits& a, const Bits& b, const Bits& mask)
{
    assert(a.size() == b.size() && a.size() == mask.size());
    const auto aw = a.words();
    const auto bw = b.words();
    const auto mw = mask.words();
    std::size_t c = 0;
    for (std::size_t i = 0; i < aw.size(); ++i)
        c += static_cast<std::size_t>(std::popcount((aw[i] ^ bw[i]) & mw[i]));
    return c;
}

} // namespace vcreg
