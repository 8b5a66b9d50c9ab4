#include "tec/keystream.hpp"

#include <algorithm>
#include <array>
#include <mutex>
#include <stdexcept>
#include <string>

namespace tec {

namespace {

// Extra low-order bits carried through a constant evaluation so that series
// truncation error never reaches the returned digits.
constexpr unsigned kSeriesSlopBits = 64;

// Guard bits below the issued region of a stream; see ensure().
constexpr unsigned kGuardBits = 64;

// atan(1/k) * 2^prec via the Gregory series, truncated when terms vanish.
BigInt atan_inv(unsigned long k, std::size_t prec) {
    BigInt term = (BigInt(1) << prec) / k;
    BigInt sum = 0;
    const unsigned long k2 = k * k;
    for (unsigned long n = 0; term != 0; ++n) {
        BigInt t = term / (2 * n + 1);
        if (n & 1)
            sum -= t;
        else
            sum += t;
        term /= k2;
    }
    return sum;
}

// atanh(1/k) * 2^prec; all terms positive.
BigInt atanh_inv(unsigned long k, std::size_t prec) {
    BigInt term = (BigInt(1) << prec) / k;
    BigInt sum = 0;
    const unsigned long k2 = k * k;
    for (unsigned long n = 0; term != 0; ++n) {
        sum += term / (2 * n + 1);
        term /= k2;
    }
    return sum;
}

BigInt compute_pi(std::size_t prec) {
    // Machin: pi = 16 atan(1/5) - 4 atan(1/239).
    return 16 * atan_inv(5, prec) - 4 * atan_inv(239, prec);
}

BigInt compute_e(std::size_t prec) {
    BigInt term = BigInt(1) << prec;  // 1/0!
    BigInt sum = term;
    for (unsigned long n = 1; term != 0; ++n) {
        term /= n;
        sum += term;
    }
    return sum;
}

BigInt compute_ln2(std::size_t prec) {
    return 2 * atanh_inv(3, prec);
}

struct ConstantCache {
    std::size_t precision = 0;
    BigInt value;  // floor(T * 2^precision)
};

BigInt evaluate_constant(TranscendentalBase base, std::size_t prec) {
    const std::size_t internal = prec + kSeriesSlopBits;
    BigInt v;
    switch (base) {
        case TranscendentalBase::PI: v = compute_pi(internal); break;
        case TranscendentalBase::E: v = compute_e(internal); break;
        case TranscendentalBase::LN2: v = compute_ln2(internal); break;
        default: throw std::invalid_argument("unknown transcendental base");
    }
    return v >> kSeriesSlopBits;
}

}  // namespace

const char* base_name(TranscendentalBase b) {
    switch (b) {
        case TranscendentalBase::PI: return "pi";
        case TranscendentalBase::E: return "e";
        case TranscendentalBase::LN2: return "ln2";
    }
    return "?";
}

TranscendentalBase base_from_name(std::string_view name) {
    if (name == "pi") return TranscendentalBase::PI;
    if (name == "e") return TranscendentalBase::E;
    if (name == "ln2") return TranscendentalBase::LN2;
    throw std::invalid_argument("unknown base '" + std::string(name) + "' (expected pi, e or ln2)");
}

BigInt fixed_point_constant(TranscendentalBase base, std::size_t precision) {
    static std::mutex mu;
    static std::array<ConstantCache, 3> cache;

    std::lock_guard<std::mutex> lock(mu);
    auto& slot = cache[static_cast<std::size_t>(base)];
    if (slot.precision < precision) {
        // Compute generously so repeated small bumps reuse one evaluation.
        const std::size_t target = std::max<std::size_t>(precision, slot.precision * 2);
        slot.value = evaluate_constant(base, target);
        slot.precision = target;
    }
    return slot.value >> (slot.precision - precision);
}

BigInt derive_seed(std::span<const std::uint8_t> identifier, std::uint64_t timestamp_ms) {
    if (identifier.empty())
        throw InvalidSeedMaterial("derive_seed: identifier must be non-empty");
    BigInt x = bigint_from_bytes_be(identifier);
    x <<= 64;
    x += BigInt(static_cast<unsigned long>(timestamp_ms));
    return x;
}

BigInt derive_seed(std::string_view identifier, std::uint64_t timestamp_ms) {
    return derive_seed(std::span<const std::uint8_t>(
                           reinterpret_cast<const std::uint8_t*>(identifier.data()),
                           identifier.size()),
                       timestamp_ms);
}

DigitStream::DigitStream(KeySpec spec) : spec_(std::move(spec)) {
    if (spec_.min_precision_bits == 0)
        throw std::invalid_argument("KeySpec: min_precision_bits must be positive");
}

void DigitStream::ensure(std::size_t bits_needed) {
    if (bits_needed <= bits_.size())
        return;

    // frac(x * floor(T*2^P)) agrees with frac(x*T) everywhere except the
    // lowest ~bit_length(x) bits, so those plus a fixed margin are never issued.
    const std::size_t guard = bit_length(spec_.seed_x) + kGuardBits;
    std::size_t target = std::max<std::size_t>(spec_.min_precision_bits, bits_needed + guard);
    if (precision_ != 0)
        target = std::max(target, precision_ * 2);
    if (target > kMaxPrecisionBits)
        throw PrecisionExhausted("DigitStream: required precision " + std::to_string(target) +
                                 " exceeds the configured limit");

    const BigInt t_fixed = fixed_point_constant(spec_.base, target);
    BigInt frac;
    {
        BigInt product = spec_.seed_x * t_fixed;
        mpz_fdiv_r_2exp(frac.get_mpz_t(), product.get_mpz_t(), target);
    }

    const std::size_t usable = target - guard;
    std::vector<bool> fresh(usable);
    for (std::size_t i = 0; i < usable; ++i)
        fresh[i] = mpz_tstbit(frac.get_mpz_t(), target - 1 - i);

    // Guard-bit discipline: extending precision must never rewrite digits.
    for (std::size_t i = 0; i < bits_.size(); ++i)
        if (fresh[i] != bits_[i])
            throw std::logic_error("DigitStream: digits changed across precision extension");

    bits_ = std::move(fresh);
    precision_ = target;
}

bool DigitStream::next_bit() {
    ensure(cursor_ + 1);
    return bits_[cursor_++];
}

std::uint64_t DigitStream::next_uint(unsigned bits) {
    if (bits == 0 || bits > 64)
        throw std::invalid_argument("DigitStream: next_uint needs 1..64 bits");
    ensure(cursor_ + bits);
    std::uint64_t v = 0;
    for (unsigned i = 0; i < bits; ++i)
        v = (v << 1) | static_cast<std::uint64_t>(bits_[cursor_++]);
    return v;
}

std::vector<bool> DigitStream::next_bits(std::size_t count) {
    if (count == 0)
        throw std::invalid_argument("DigitStream: next_bits needs count >= 1");
    ensure(cursor_ + count);
    std::vector<bool> out(bits_.begin() + static_cast<std::ptrdiff_t>(cursor_),
                          bits_.begin() + static_cast<std::ptrdiff_t>(cursor_ + count));
    cursor_ += count;
    return out;
}

DigitStream make_stream(const KeySpec& spec, const std::set<BigInt>& reserved_host_seeds) {
    if (spec.seed_x == 0)
        throw InvalidSeed("make_stream: seed_x must be >= 1");
    if (spec.seed_x < 0)
        throw InvalidSeed("make_stream: seed_x must be non-negative");
    if (reserved_host_seeds.count(spec.seed_x))
        throw ReservedSeed("make_stream: seed is reserved for the host");
    // Integer seeds can never equal the irrational T, -T or T^-1, so those
    // exclusion constraints hold structurally; only the reserved set and the
    // sign/zero checks above need runtime enforcement.
    return DigitStream(spec);
}

}  // namespace tec
