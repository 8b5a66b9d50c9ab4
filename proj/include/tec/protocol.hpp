#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "tec/password_store.hpp"
#include "tec/stego_codec.hpp"

namespace tec {

enum class VerdictReason : std::uint8_t { Ok = 0, BadCredentials = 1, Expired = 2 };

const char* verdict_reason_name(VerdictReason r);

struct LoginRequest {
    std::string username;
    bool operator==(const LoginRequest&) const = default;
};

// token indexes the user's identifier list; enc_ts carries the issued
// timestamp sealed under (identifier[token], epoch day of T_s).
struct Challenge {
    std::uint16_t token = 0;
    Ciphertext enc_ts;
    bool operator==(const Challenge&) const = default;
};

// token is absent on the wire in tokenless mode.
struct Response {
    std::optional<std::uint16_t> token;
    Ciphertext enc_payload;
    bool operator==(const Response&) const = default;
};

struct Verdict {
    bool ok = false;
    VerdictReason reason = VerdictReason::BadCredentials;
    bool operator==(const Verdict&) const = default;
};

using ProtocolMessage = std::variant<LoginRequest, Challenge, Response, Verdict>;

// Frame: 1 type byte, 4-byte big-endian body length, body. Bodies above
// 1 MiB are rejected outright.
inline constexpr std::size_t kMaxFrameBody = 1 << 20;

Bytes frame_encode(const ProtocolMessage& msg);
ProtocolMessage frame_decode(std::span<const std::uint8_t> frame);

struct ProtocolConfig {
    std::int64_t t_a_ms = 30000;  // login window T_a
    bool tokenless_mode = false;
    bool use_fib = false;
    TranscendentalBase base = TranscendentalBase::PI;
};

// Host-side record of one outstanding challenge; at most one per username.
struct PendingLogin {
    std::string username;
    std::uint64_t ts_value_ms = 0;  // issued T_s
    std::uint16_t challenge_token = 0;
    std::uint64_t issued_at_ms = 0;
    std::uint64_t expiry_ms = 0;
};

// The number fed to derive_seed when sealing a challenge: the user cannot
// know T_s yet, so the seed timestamp is the UTC day index, which the user
// can reconstruct from their own clock (trying adjacent days for skew).
std::uint64_t epoch_day(std::uint64_t timestamp_ms);

// Serves the login handshake over an immutable store snapshot.
class Host {
public:
    Host(StoreFile store, BigInt host_secret, ProtocolConfig config);

    Challenge handle_login_request(const LoginRequest& msg, std::uint64_t now_ms);
    Verdict handle_response(std::string_view username, const Response& msg, std::uint64_t now_ms);
    std::size_t expire_pending(std::uint64_t now_ms);

    const ProtocolConfig& config() const { return config_; }
    const StoreFile& store() const { return store_; }
    std::size_t pending_count() const { return pending_.size(); }

private:
    StoreFile store_;
    BigInt host_secret_;
    ProtocolConfig config_;
    std::map<std::string, PendingLogin, std::less<>> pending_;
    std::map<std::string, std::uint32_t, std::less<>> token_rotation_;
};

struct UserCredentials {
    Bytes password;
    std::vector<Identifier> identifiers;  // same order as enrolled
};

// Decrypts the challenge timestamp and seals the password under
// (identifier[token], T_s). Token echo is dropped in tokenless mode.
Response user_process_challenge(const Challenge& challenge, const UserCredentials& creds,
                                std::uint64_t now_ms, const ProtocolConfig& config);

}  // namespace tec
