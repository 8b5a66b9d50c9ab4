#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "tec/stego_codec.hpp"

namespace tec {

// A user-generated secret answer; the value seeds key derivation and is
// never sent over the wire.
struct Identifier {
    std::string label;
    Bytes value;

    bool operator==(const Identifier&) const = default;
};

struct UserRecord {
    std::string username;
    std::vector<Identifier> identifiers;  // token value = index
    std::uint16_t enroll_identifier_index = 0;
    std::uint64_t enroll_timestamp_ms = 0;
    bool use_fib = false;
    Ciphertext ciphertext;  // sealed password under the host spec

    bool operator==(const UserRecord&) const = default;
};

struct StoreFile {
    std::uint8_t version = 1;
    std::vector<UserRecord> records;

    const UserRecord* find(std::string_view username) const;
    UserRecord* find(std::string_view username);

    bool operator==(const StoreFile&) const = default;
};

// Host-side key spec for a record: seed = derive_seed(identifier, enroll
// timestamp) * 2^64 + (host_secret mod 2^64). The secret itself never
// reaches the store file.
KeySpec host_spec_for(const UserRecord& record, const BigInt& host_secret,
                      TranscendentalBase base = TranscendentalBase::PI);

// Creates a record sealed under the host spec. Password length must be
// within [8, 64] bytes (checked via the policy module).
const UserRecord& enroll(StoreFile& store, std::string username, const Bytes& password,
                         std::vector<Identifier> identifiers, const BigInt& host_secret,
                         std::uint64_t now_ms, bool use_fib = false,
                         TranscendentalBase base = TranscendentalBase::PI);

// Opens the stored ciphertext and compares byte-for-byte.
bool verify_stored(const StoreFile& store, std::string_view username, const Bytes& candidate,
                   const BigInt& host_secret, TranscendentalBase base = TranscendentalBase::PI);

// "TECP" container: magic, version byte, record count, records with
// 2-byte big-endian length-prefixed fields; ciphertexts embedded in their
// "TEC1" framing. Byte-exact round trip.
Bytes store_to_bytes(const StoreFile& store);
StoreFile store_from_bytes(std::span<const std::uint8_t> raw);

// Atomic replace: writes a sibling temp file, then renames over `path`.
void save_store(const StoreFile& store, const std::filesystem::path& path);
StoreFile load_store(const std::filesystem::path& path);

}  // namespace tec
