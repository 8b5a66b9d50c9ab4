#include "tec/stego_codec.hpp"

#include <algorithm>
#include <fstream>

#include "tec/errors.hpp"
#include "tec/fib_coding.hpp"

namespace tec {

namespace {

constexpr char kMagic[4] = {'T', 'E', 'C', '1'};
constexpr std::uint8_t kFlagFib = 0x01;

ByteInsertion draw_insertion(DigitStream& stream) {
    ByteInsertion rec;
    rec.k = 2 + static_cast<unsigned>(stream.next_bit());
    const std::uint64_t rank = stream.next_uint(8);
    rec.positions = unrank_combination(rank % binomial(8 + rec.k, rec.k), 8 + rec.k, rec.k);
    for (unsigned i = 0; i < rec.k; ++i)
        rec.fillers[i] = stream.next_bit();
    return rec;
}

// Appends the expanded block for one plaintext byte.
void emit_block(BitBuffer& out, std::uint8_t byte, const ByteInsertion& rec) {
    const unsigned block = 8 + rec.k;
    unsigned fill_i = 0;
    unsigned data_i = 0;
    for (unsigned slot = 0; slot < block; ++slot) {
        if (fill_i < rec.k && rec.positions[fill_i] == slot) {
            out.push_bit(rec.fillers[fill_i]);
            ++fill_i;
        } else {
            out.push_bit((byte >> (7 - data_i)) & 1);
            ++data_i;
        }
    }
}

std::uint8_t extract_block(const Ciphertext& ct, std::uint64_t offset, const ByteInsertion& rec) {
    const unsigned block = 8 + rec.k;
    unsigned fill_i = 0;
    std::uint8_t byte = 0;
    for (unsigned slot = 0; slot < block; ++slot) {
        const bool bit = (ct.bytes[(offset + slot) >> 3] >> (7 - ((offset + slot) & 7))) & 1;
        if (fill_i < rec.k && rec.positions[fill_i] == slot) {
            ++fill_i;  // filler slot; value discarded
        } else {
            byte = static_cast<std::uint8_t>((byte << 1) | (bit ? 1 : 0));
        }
    }
    return byte;
}

// Overflow-safe ceil(bits / 8).
std::uint64_t payload_bytes(std::uint64_t bit_len) {
    return bit_len / 8 + (bit_len % 8 != 0);
}

void check_padding(const Ciphertext& ct) {
    if (ct.bytes.size() != payload_bytes(ct.bit_len))
        throw CiphertextTruncated("ciphertext: storage size does not match bit length");
    for (std::uint64_t i = ct.bit_len; i < ct.bytes.size() * 8; ++i)
        if ((ct.bytes[i >> 3] >> (7 - (i & 7))) & 1)
            throw MalformedPadding("ciphertext: nonzero padding bit");
}

std::uint64_t read_u64_be(std::span<const std::uint8_t> p) {
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i)
        v = (v << 8) | p[static_cast<std::size_t>(i)];
    return v;
}

}  // namespace

std::uint64_t InsertionPlan::inserted_bits() const {
    std::uint64_t s = 0;
    for (const auto& r : per_byte)
        s += r.k;
    return s;
}

std::uint64_t InsertionPlan::ciphertext_bits() const {
    return 8 * per_byte.size() + inserted_bits();
}

std::uint64_t binomial(unsigned n, unsigned k) {
    if (k > n)
        return 0;
    k = std::min(k, n - k);
    std::uint64_t r = 1;
    for (unsigned i = 1; i <= k; ++i)
        r = r * (n - k + i) / i;
    return r;
}

std::array<unsigned, 3> unrank_combination(std::uint64_t rank, unsigned n, unsigned k) {
    if (k == 0 || k > 3 || rank >= binomial(n, k))
        throw std::invalid_argument("unrank_combination: bad arguments");
    std::array<unsigned, 3> out{};
    unsigned start = 0;
    for (unsigned j = 0; j < k; ++j) {
        for (unsigned c = start; c < n; ++c) {
            const std::uint64_t block = binomial(n - 1 - c, k - 1 - j);
            if (rank < block) {
                out[j] = c;
                start = c + 1;
                break;
            }
            rank -= block;
        }
    }
    return out;
}

InsertionPlan plan_from_stream(DigitStream& stream, std::size_t n_bytes) {
    InsertionPlan plan;
    plan.per_byte.reserve(n_bytes);
    for (std::size_t i = 0; i < n_bytes; ++i)
        plan.per_byte.push_back(draw_insertion(stream));
    return plan;
}

Ciphertext encode(std::span<const std::uint8_t> plaintext, const InsertionPlan& plan) {
    if (plaintext.size() != plan.per_byte.size())
        throw PlanMismatch("encode: plan covers " + std::to_string(plan.per_byte.size()) +
                           " bytes, plaintext has " + std::to_string(plaintext.size()));
    BitBuffer bits;
    for (std::size_t i = 0; i < plaintext.size(); ++i)
        emit_block(bits, plaintext[i], plan.per_byte[i]);
    Ciphertext ct;
    ct.bit_len = bits.size();
    ct.bytes = bits.bytes();
    return ct;
}

Bytes decode(const Ciphertext& ct, const InsertionPlan& plan) {
    if (ct.bit_len != plan.ciphertext_bits())
        throw CiphertextTruncated("decode: ciphertext has " + std::to_string(ct.bit_len) +
                                  " bits, plan expects " +
                                  std::to_string(plan.ciphertext_bits()));
    check_padding(ct);
    Bytes out;
    out.reserve(plan.per_byte.size());
    std::uint64_t offset = 0;
    for (const auto& rec : plan.per_byte) {
        out.push_back(extract_block(ct, offset, rec));
        offset += 8 + rec.k;
    }
    return out;
}

std::pair<Ciphertext, InsertionPlan> seal_with_plan(std::span<const std::uint8_t> plaintext,
                                                    const KeySpec& spec, bool use_fib) {
    Bytes recoded;
    std::span<const std::uint8_t> input = plaintext;
    if (use_fib) {
        recoded = fib_encode_bytes(plaintext).bytes();  // zero-padded tail
        input = recoded;
    }
    DigitStream stream = make_stream(spec);
    InsertionPlan plan = plan_from_stream(stream, input.size());
    return {encode(input, plan), std::move(plan)};
}

Ciphertext seal(std::span<const std::uint8_t> plaintext, const KeySpec& spec, bool use_fib) {
    return seal_with_plan(plaintext, spec, use_fib).first;
}

Bytes open(const Ciphertext& ct, const KeySpec& spec, bool use_fib) {
    check_padding(ct);
    DigitStream stream = make_stream(spec);

    // The byte count is implicit: walk the keystream until the declared bit
    // length is consumed exactly.
    InsertionPlan plan;
    std::uint64_t remaining = ct.bit_len;
    while (remaining > 0) {
        ByteInsertion rec = draw_insertion(stream);
        const std::uint64_t block = 8 + rec.k;
        if (remaining < block)
            throw CiphertextTruncated("open: bit length is not a whole number of blocks");
        plan.per_byte.push_back(rec);
        remaining -= block;
    }

    Bytes inner = decode(ct, plan);
    if (!use_fib)
        return inner;
    return fib_decode_bytes(BitBuffer::from_bytes(inner, inner.size() * 8));
}

Bytes ciphertext_to_bytes(const Ciphertext& ct, bool use_fib) {
    Bytes out;
    out.reserve(13 + ct.bytes.size());
    out.insert(out.end(), kMagic, kMagic + 4);
    out.push_back(use_fib ? kFlagFib : 0);
    for (int i = 7; i >= 0; --i)
        out.push_back(static_cast<std::uint8_t>(ct.bit_len >> (8 * i)));
    out.insert(out.end(), ct.bytes.begin(), ct.bytes.end());
    return out;
}

CiphertextFile ciphertext_from_bytes(std::span<const std::uint8_t> raw) {
    if (raw.size() < 13 || !std::equal(kMagic, kMagic + 4, raw.begin()))
        throw FrameError("TEC1: bad magic or truncated header");
    const std::uint8_t flags = raw[4];
    if (flags & ~kFlagFib)
        throw FrameError("TEC1: unknown flag bits");
    CiphertextFile f;
    f.use_fib = flags & kFlagFib;
    f.ct.bit_len = read_u64_be(raw.subspan(5, 8));
    const std::uint64_t payload = payload_bytes(f.ct.bit_len);
    if (raw.size() - 13 != payload)
        throw FrameError("TEC1: payload size does not match bit length");
    f.ct.bytes.assign(raw.begin() + 13, raw.end());
    check_padding(f.ct);
    return f;
}

void write_ciphertext_file(const std::filesystem::path& path, const Ciphertext& ct, bool use_fib) {
    const Bytes raw = ciphertext_to_bytes(ct, use_fib);
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        throw Error("cannot open " + path.string() + " for writing");
    out.write(reinterpret_cast<const char*>(raw.data()), static_cast<std::streamsize>(raw.size()));
    if (!out)
        throw Error("short write to " + path.string());
}

CiphertextFile read_ciphertext_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw Error("cannot open " + path.string());
    Bytes raw((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return ciphertext_from_bytes(raw);
}

}  // namespace tec
