#pragma once

#include <array>
#include <cstdint>
#include <span>

#include "tec/bits.hpp"

namespace tec {

// F(2)=1, F(3)=2, ... ascending; last entry is the first Fibonacci >= 258
// so every value in [1, 257] is representable.
inline constexpr std::array<unsigned, 13> kFibTable = {
    1, 2, 3, 5, 8, 13, 21, 34, 55, 89, 144, 233, 377};

inline constexpr unsigned kFibMaxValue = 257;

// Fibonacci universal code for v in [1, 257]: Zeckendorf bits written
// lowest index first, then a closing 1, so every codeword ends in "11".
BitBuffer fib_encode_value(unsigned v);

// Per-byte encoding of b as value b+1; concatenated codewords.
BitBuffer fib_encode_bytes(std::span<const std::uint8_t> data);

// Inverse of fib_encode_bytes. A trailing all-zero remainder is treated
// as padding and discarded; any other leftover is FibDecodeError.
Bytes fib_decode_bytes(const BitBuffer& bits);

}  // namespace tec
