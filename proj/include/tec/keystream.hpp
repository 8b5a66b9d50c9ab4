#pragma once

#include <cstdint>
#include <set>
#include <span>
#include <vector>

#include "tec/bigint.hpp"
#include "tec/errors.hpp"

namespace tec {

// Fixed transcendental constants usable as the base T of a keystream.
// Each tag maps to exactly one real; the mapping never changes.
enum class TranscendentalBase : std::uint8_t { PI = 0, E = 1, LN2 = 2 };

const char* base_name(TranscendentalBase b);
TranscendentalBase base_from_name(std::string_view name);  // throws std::invalid_argument

inline constexpr unsigned kDefaultMinPrecisionBits = 4096;
inline constexpr std::size_t kMaxPrecisionBits = std::size_t{1} << 26;

// Selects the keystream: base constant T, integer seed x >= 1, and the
// precision floor used when first materializing digits.
struct KeySpec {
    TranscendentalBase base = TranscendentalBase::PI;
    BigInt seed_x;
    unsigned min_precision_bits = kDefaultMinPrecisionBits;
};

// x = identifier-bytes (base-256, big-endian) * 2^64 + timestamp_ms.
// Identifier must be non-empty.
BigInt derive_seed(std::span<const std::uint8_t> identifier, std::uint64_t timestamp_ms);
BigInt derive_seed(std::string_view identifier, std::uint64_t timestamp_ms);

// floor(T * 2^precision) for the chosen constant. Values are cached and
// reused across calls; thread safe.
BigInt fixed_point_constant(TranscendentalBase base, std::size_t precision);

// Cursor over the binary fraction digits of T' = frac(seed_x * T).
// Single-owner mutable state; re-reading from offset 0 with the same spec
// reproduces identical bits.
class DigitStream {
public:
    explicit DigitStream(KeySpec spec);

    bool next_bit();
    // Next `bits` stream bits assembled MSB-first into an integer (bits in [1,64]).
    std::uint64_t next_uint(unsigned bits);
    std::vector<bool> next_bits(std::size_t count);

    std::size_t cursor() const { return cursor_; }
    std::size_t cached_precision_bits() const { return precision_; }
    const KeySpec& spec() const { return spec_; }

private:
    void ensure(std::size_t bits_needed);

    KeySpec spec_;
    std::size_t cursor_ = 0;
    std::size_t precision_ = 0;       // fixed-point precision of the last evaluation
    std::vector<bool> bits_;          // fraction bits known to be exact
};

// Positions a stream at bit offset 0. Rejects seed_x = 0 (InvalidSeed) and,
// when a reserved set is given (user-role construction), any seed the host
// has claimed for itself (ReservedSeed).
DigitStream make_stream(const KeySpec& spec, const std::set<BigInt>& reserved_host_seeds = {});

}  // namespace tec
