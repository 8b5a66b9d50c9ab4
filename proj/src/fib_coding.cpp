#include "tec/fib_coding.hpp"

#include "tec/errors.hpp"

namespace tec {

BitBuffer fib_encode_value(unsigned v) {
    if (v < 1 || v > kFibMaxValue)
        throw ValueOutOfRange("fib_encode_value: value " + std::to_string(v) +
                              " outside [1, " + std::to_string(kFibMaxValue) + "]");

    // Greedy Zeckendorf decomposition, highest term first.
    std::array<bool, kFibTable.size()> used{};
    int high = -1;
    unsigned rest = v;
    for (int i = static_cast<int>(kFibTable.size()) - 1; i >= 0 && rest > 0; --i) {
        if (kFibTable[static_cast<std::size_t>(i)] <= rest) {
            used[static_cast<std::size_t>(i)] = true;
            rest -= kFibTable[static_cast<std::size_t>(i)];
            if (high < 0)
                high = i;
        }
    }

    BitBuffer out;
    for (int i = 0; i <= high; ++i)
        out.push_bit(used[static_cast<std::size_t>(i)]);
    out.push_bit(true);  // terminator; yields the unique "11" suffix
    return out;
}

BitBuffer fib_encode_bytes(std::span<const std::uint8_t> data) {
    BitBuffer out;
    for (std::uint8_t b : data)
        out.append(fib_encode_value(static_cast<unsigned>(b) + 1));
    return out;
}

Bytes fib_decode_bytes(const BitBuffer& bits) {
    Bytes out;
    unsigned value = 0;
    std::size_t local = 0;  // bit index within the current codeword
    bool prev = false;
    for (std::size_t i = 0; i < bits.size(); ++i) {
        const bool b = bits.bit(i);
        if (b && prev) {
            // terminator bit; `value` already holds the data bits
            if (value > kFibMaxValue - 1)
                throw FibDecodeError("fib_decode_bytes: decoded value " +
                                     std::to_string(value) + " exceeds a byte");
            out.push_back(static_cast<std::uint8_t>(value - 1));
            value = 0;
            local = 0;
            prev = false;
            continue;
        }
        if (b) {
            if (local >= kFibTable.size())
                throw FibDecodeError("fib_decode_bytes: codeword too long");
            value += kFibTable[local];
        }
        prev = b;
        ++local;
    }
    if (value != 0)
        throw FibDecodeError("fib_decode_bytes: dangling unterminated codeword");
    return out;
}

}  // namespace tec
