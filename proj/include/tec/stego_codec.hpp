#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <span>
#include <utility>
#include <vector>

#include "tec/bits.hpp"
#include "tec/keystream.hpp"

namespace tec {

// One plaintext byte's insertion record: k filler bits at `positions`
// (slots of the expanded 8+k-bit block, ascending).
struct ByteInsertion {
    unsigned k = 2;                        // in {2, 3}
    std::array<unsigned, 3> positions{};   // first k entries used
    std::array<bool, 3> fillers{};         // value written at positions[i]
};

struct InsertionPlan {
    std::vector<ByteInsertion> per_byte;

    std::uint64_t inserted_bits() const;    // sum of k
    std::uint64_t ciphertext_bits() const;  // sum of 8 + k
};

// Bit-exact variable-length ciphertext. Storage is zero-padded to a byte
// boundary; pad bits are validated on decode.
struct Ciphertext {
    Bytes bytes;
    std::uint64_t bit_len = 0;

    unsigned pad_bits() const { return static_cast<unsigned>((8 - bit_len % 8) % 8); }
    bool operator==(const Ciphertext&) const = default;
};

// C(n, k) for the small arguments used by the codec (exact in 64 bits).
std::uint64_t binomial(unsigned n, unsigned k);

// Lexicographic unranking of the k-subsets of [0, n).
std::array<unsigned, 3> unrank_combination(std::uint64_t rank, unsigned n, unsigned k);

// Per byte: 1 count bit (k = 2 + bit), 8 rank bits (positions =
// unrank(rank mod C(8+k, k))), k filler bits. Consumes exactly
// sum(9 + k_i) stream bits.
InsertionPlan plan_from_stream(DigitStream& stream, std::size_t n_bytes);

Ciphertext encode(std::span<const std::uint8_t> plaintext, const InsertionPlan& plan);
Bytes decode(const Ciphertext& ct, const InsertionPlan& plan);

// One-call composition: optional Fibonacci recoding of the plaintext,
// then plan_from_stream + encode under a fresh stream for `spec`.
Ciphertext seal(std::span<const std::uint8_t> plaintext, const KeySpec& spec, bool use_fib);
std::pair<Ciphertext, InsertionPlan> seal_with_plan(std::span<const std::uint8_t> plaintext,
                                                    const KeySpec& spec, bool use_fib);
Bytes open(const Ciphertext& ct, const KeySpec& spec, bool use_fib);

// "TEC1" container: magic, flags byte (bit0 = fib layer), bit length as
// 8-byte big-endian, payload. Bit-exact.
Bytes ciphertext_to_bytes(const Ciphertext& ct, bool use_fib);

struct CiphertextFile {
    Ciphertext ct;
    bool use_fib = false;
};
CiphertextFile ciphertext_from_bytes(std::span<const std::uint8_t> raw);

void write_ciphertext_file(const std::filesystem::path& path, const Ciphertext& ct, bool use_fib);
CiphertextFile read_ciphertext_file(const std::filesystem::path& path);

}  // namespace tec
