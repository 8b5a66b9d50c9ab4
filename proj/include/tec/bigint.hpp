#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace tec {

using BigInt = mpz_class;
using Bytes = std::vector<std::uint8_t>;

// Interprets bytes as a base-256 big-endian integer. Empty input yields 0.
inline BigInt bigint_from_bytes_be(std::span<const std::uint8_t> bytes) {
    BigInt v = 0;
    if (!bytes.empty())
        mpz_import(v.get_mpz_t(), bytes.size(), 1, 1, 0, 0, bytes.data());
    return v;
}

// Parses a non-negative decimal integer; throws std::invalid_argument on junk.
inline BigInt bigint_from_decimal(const std::string& text) {
    return BigInt(text, 10);
}

inline std::string to_decimal(const BigInt& v) {
    return v.get_str(10);
}

inline std::size_t bit_length(const BigInt& v) {
    return v == 0 ? 0 : mpz_sizeinbase(v.get_mpz_t(), 2);
}

}  // namespace tec
