#include "tec/password_store.hpp"

#include <algorithm>
#include <fstream>

#include "tec/cryptanalysis.hpp"
#include "tec/errors.hpp"

namespace tec {

namespace {

constexpr char kMagic[4] = {'T', 'E', 'C', 'P'};
constexpr std::uint8_t kVersion = 0x01;
constexpr std::size_t kFieldMax = 0xFFFF;

void put_u16(Bytes& out, std::size_t v) {
    if (v > kFieldMax)
        throw StoreCorrupt("store field exceeds 16-bit length prefix");
    out.push_back(static_cast<std::uint8_t>(v >> 8));
    out.push_back(static_cast<std::uint8_t>(v));
}

void put_u32(Bytes& out, std::size_t v) {
    for (int i = 3; i >= 0; --i)
        out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}

void put_u64(Bytes& out, std::uint64_t v) {
    for (int i = 7; i >= 0; --i)
        out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}

// Bounds-checked reader over the raw store image.
class Reader {
public:
    explicit Reader(std::span<const std::uint8_t> raw) : raw_(raw) {}

    std::uint8_t u8() { return take(1)[0]; }
    std::uint16_t u16() {
        auto p = take(2);
        return static_cast<std::uint16_t>((p[0] << 8) | p[1]);
    }
    std::uint32_t u32() {
        auto p = take(4);
        return (static_cast<std::uint32_t>(p[0]) << 24) | (static_cast<std::uint32_t>(p[1]) << 16) |
               (static_cast<std::uint32_t>(p[2]) << 8) | p[3];
    }
    std::uint64_t u64() {
        std::uint64_t v = 0;
        for (auto b : take(8))
            v = (v << 8) | b;
        return v;
    }
    Bytes field() {
        const std::uint16_t n = u16();
        auto p = take(n);
        return Bytes(p.begin(), p.end());
    }
    std::span<const std::uint8_t> take(std::size_t n) {
        if (raw_.size() - pos_ < n)
            throw StoreCorrupt("store file truncated");
        auto s = raw_.subspan(pos_, n);
        pos_ += n;
        return s;
    }
    std::size_t remaining() const { return raw_.size() - pos_; }

private:
    std::span<const std::uint8_t> raw_;
    std::size_t pos_ = 0;
};

}  // namespace

const UserRecord* StoreFile::find(std::string_view username) const {
    auto it = std::find_if(records.begin(), records.end(),
                           [&](const UserRecord& r) { return r.username == username; });
    return it == records.end() ? nullptr : &*it;
}

UserRecord* StoreFile::find(std::string_view username) {
    return const_cast<UserRecord*>(std::as_const(*this).find(username));
}

KeySpec host_spec_for(const UserRecord& record, const BigInt& host_secret,
                      TranscendentalBase base) {
    if (record.enroll_identifier_index >= record.identifiers.size())
        throw StoreCorrupt("record: enrollment identifier index out of range");
    const Identifier& id = record.identifiers[record.enroll_identifier_index];
    BigInt seed = derive_seed(std::span<const std::uint8_t>(id.value), record.enroll_timestamp_ms);
    seed <<= 64;
    BigInt low;
    mpz_fdiv_r_2exp(low.get_mpz_t(), host_secret.get_mpz_t(), 64);
    seed += low;
    return KeySpec{base, std::move(seed)};
}

const UserRecord& enroll(StoreFile& store, std::string username, const Bytes& password,
                         std::vector<Identifier> identifiers, const BigInt& host_secret,
                         std::uint64_t now_ms, bool use_fib, TranscendentalBase base) {
    if (store.find(username))
        throw DuplicateUser("enroll: username '" + username + "' already exists");
    if (identifiers.empty())
        throw NoIdentifiers("enroll: at least one identifier is required");
    for (const auto& id : identifiers)
        if (id.value.empty())
            throw NoIdentifiers("enroll: identifier '" + id.label + "' has an empty value");

    const auto violations = check_policy(password, PasswordPolicy::length_only(8, 64));
    if (!violations.empty())
        throw PolicyViolation("enroll: " + describe(violations.front()));

    UserRecord rec;
    rec.username = std::move(username);
    rec.identifiers = std::move(identifiers);
    rec.enroll_identifier_index = 0;
    rec.enroll_timestamp_ms = now_ms;
    rec.use_fib = use_fib;
    rec.ciphertext = seal(password, host_spec_for(rec, host_secret, base), use_fib);
    store.records.push_back(std::move(rec));
    return store.records.back();
}

bool verify_stored(const StoreFile& store, std::string_view username, const Bytes& candidate,
                   const BigInt& host_secret, TranscendentalBase base) {
    const UserRecord* rec = store.find(username);
    if (!rec)
        throw UnknownUser("verify_stored: no such user '" + std::string(username) + "'");
    Bytes stored;
    try {
        stored = open(rec->ciphertext, host_spec_for(*rec, host_secret, base), rec->use_fib);
    } catch (const Error& e) {
        throw StoreCorrupt("verify_stored: stored ciphertext does not open: " +
                           std::string(e.what()));
    }
    return stored == candidate;
}

Bytes store_to_bytes(const StoreFile& store) {
    Bytes out;
    out.insert(out.end(), kMagic, kMagic + 4);
    out.push_back(store.version);
    put_u32(out, store.records.size());
    for (const auto& rec : store.records) {
        put_u16(out, rec.username.size());
        out.insert(out.end(), rec.username.begin(), rec.username.end());
        put_u16(out, rec.identifiers.size());
        for (const auto& id : rec.identifiers) {
            put_u16(out, id.label.size());
            out.insert(out.end(), id.label.begin(), id.label.end());
            put_u16(out, id.value.size());
            out.insert(out.end(), id.value.begin(), id.value.end());
        }
        put_u16(out, rec.enroll_identifier_index);
        put_u64(out, rec.enroll_timestamp_ms);
        out.push_back(rec.use_fib ? 1 : 0);
        const Bytes ct = ciphertext_to_bytes(rec.ciphertext, rec.use_fib);
        out.insert(out.end(), ct.begin(), ct.end());
    }
    return out;
}

StoreFile store_from_bytes(std::span<const std::uint8_t> raw) {
    Reader in(raw);
    auto magic = in.take(4);
    if (!std::equal(magic.begin(), magic.end(), kMagic))
        throw StoreCorrupt("store file: bad magic");
    StoreFile store;
    store.version = in.u8();
    if (store.version != kVersion)
        throw StoreCorrupt("store file: unsupported version " + std::to_string(store.version));
    const std::uint32_t count = in.u32();
    store.records.reserve(count);
    for (std::uint32_t i = 0; i < count; ++i) {
        UserRecord rec;
        const Bytes name = in.field();
        rec.username.assign(name.begin(), name.end());
        const std::uint16_t id_count = in.u16();
        if (id_count == 0)
            throw StoreCorrupt("store file: record without identifiers");
        for (std::uint16_t j = 0; j < id_count; ++j) {
            Identifier id;
            const Bytes label = in.field();
            id.label.assign(label.begin(), label.end());
            id.value = in.field();
            if (id.value.empty())
                throw StoreCorrupt("store file: empty identifier value");
            rec.identifiers.push_back(std::move(id));
        }
        rec.enroll_identifier_index = in.u16();
        if (rec.enroll_identifier_index >= rec.identifiers.size())
            throw StoreCorrupt("store file: enrollment index out of range");
        rec.enroll_timestamp_ms = in.u64();
        rec.use_fib = in.u8() != 0;

        // Embedded TEC1 frame: header first, then the payload it declares.
        auto header = in.take(13);
        Bytes frame(header.begin(), header.end());
        std::uint64_t bit_len = 0;
        for (int b = 5; b < 13; ++b)
            bit_len = (bit_len << 8) | frame[static_cast<std::size_t>(b)];
        auto payload = in.take(bit_len / 8 + (bit_len % 8 != 0));
        frame.insert(frame.end(), payload.begin(), payload.end());
        try {
            CiphertextFile cf = ciphertext_from_bytes(frame);
            if (cf.use_fib != rec.use_fib)
                throw StoreCorrupt("store file: fib flag mismatch");
            rec.ciphertext = std::move(cf.ct);
        } catch (const StoreCorrupt&) {
            throw;
        } catch (const Error& e) {
            throw StoreCorrupt("store file: embedded ciphertext: " + std::string(e.what()));
        }
        if (store.find(rec.username))
            throw StoreCorrupt("store file: duplicate username '" + rec.username + "'");
        store.records.push_back(std::move(rec));
    }
    if (in.remaining() != 0)
        throw StoreCorrupt("store file: trailing bytes");
    return store;
}

void save_store(const StoreFile& store, const std::filesystem::path& path) {
    const Bytes raw = store_to_bytes(store);
    std::filesystem::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out)
            throw Error("cannot open " + tmp.string() + " for writing");
        out.write(reinterpret_cast<const char*>(raw.data()),
                  static_cast<std::streamsize>(raw.size()));
        out.flush();
        if (!out)
            throw Error("short write to " + tmp.string());
    }
    std::filesystem::rename(tmp, path);
}

StoreFile load_store(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw Error("cannot open " + path.string());
    Bytes raw((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return store_from_bytes(raw);
}

}  // namespace tec
