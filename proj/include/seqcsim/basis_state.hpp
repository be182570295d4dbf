#ifndef SEQCSIM_BASIS_STATE_HPP
#define SEQCSIM_BASIS_STATE_HPP

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>

namespace seqcsim {

/// Classical computational-basis label: a bit pattern of `width` bits packed
/// into one machine word. Bit position 0 is the least significant bit; all
/// bits at positions >= width are zero.
struct BasisState {
    std::uint64_t bits = 0;
    std::uint32_t width = 1;

    BasisState() = default;
    BasisState(std::uint64_t b, std::uint32_t w) : bits(b), width(w) {
        if (w < 1 || w > 64)
            throw std::invalid_argument("basis state width must be in [1, 64]");
        if (w < 64 && (b >> w) != 0)
            throw std::invalid_argument("basis state has bits set beyond its width");
    }

    int bit(std::uint32_t pos) const { return static_cast<int>((bits >> pos) & 1u); }

    friend bool operator==(const BasisState& a, const BasisState& b) {
        return a.bits == b.bits && a.width == b.width;
    }

    /// Most-significant bit leftmost, e.g. width 8, value 0x11 -> "00010001".
    std::string to_binary() const {
        std::string s(width, '0');
        for (std::uint32_t i = 0; i < width; ++i)
            s[width - 1 - i] = bit(i) ? '1' : '0';
        return s;
    }

    /// Parses the display form (MSB leftmost). The literal must have exactly
    /// `width` characters, all '0' or '1'.
    static BasisState from_binary(const std::string& text, std::uint32_t width) {
        if (text.size() != width)
            throw std::invalid_argument("state literal length does not match circuit width");
        std::uint64_t b = 0;
        for (std::uint32_t i = 0; i < width; ++i) {
            char c = text[width - 1 - i];
            if (c != '0' && c != '1')
                throw std::invalid_argument("state literal must contain only 0/1");
            if (c == '1')
                b |= std::uint64_t{1} << i;
        }
        return BasisState(b, width);
    }
};

/// Local index of `bits` with respect to an operand list: bit j of the result
/// (j = 0 least significant) is the state's bit at operands[m-1-j], so the
/// first-listed operand becomes the most significant bit of the index.
inline std::uint64_t local_index_bits(std::uint64_t bits, std::span<const std::uint32_t> operands) {
    std::uint64_t idx = 0;
    const std::size_t m = operands.size();
    for (std::size_t j = 0; j < m; ++j)
        idx |= ((bits >> operands[m - 1 - j]) & 1u) << j;
    return idx;
}

/// Replaces the operand bits of `bits` according to local index `idx`
/// (inverse of local_index_bits on the operand positions).
inline std::uint64_t with_local_index_bits(std::uint64_t bits, std::span<const std::uint32_t> operands,
                                           std::uint64_t idx) {
    const std::size_t m = operands.size();
    for (std::size_t j = 0; j < m; ++j) {
        std::uint64_t mask = std::uint64_t{1} << operands[m - 1 - j];
        if ((idx >> j) & 1u)
            bits |= mask;
        else
            bits &= ~mask;
    }
    return bits;
}

inline std::uint64_t local_index(const BasisState& state, std::span<const std::uint32_t> operands) {
    for (auto p : operands)
        if (p >= state.width)
            throw std::out_of_range("operand bit position exceeds state width");
    return local_index_bits(state.bits, operands);
}

inline BasisState with_local_index(const BasisState& state, std::span<const std::uint32_t> operands,
                                   std::uint64_t idx) {
    for (auto p : operands)
        if (p >= state.width)
            throw std::out_of_range("operand bit position exceeds state width");
    if (idx >= (std::uint64_t{1} << operands.size()))
        throw std::out_of_range("local index exceeds operand count range");
    return BasisState(with_local_index_bits(state.bits, operands, idx), state.width);
}

} // namespace seqcsim

#endif
