#include "tec/protocol.hpp"

#include <algorithm>

#include "tec/errors.hpp"

namespace tec {

namespace {

constexpr std::uint8_t kTypeLoginRequest = 0x01;
constexpr std::uint8_t kTypeChallenge = 0x02;
constexpr std::uint8_t kTypeResponse = 0x03;
constexpr std::uint8_t kTypeVerdict = 0x04;

constexpr std::uint64_t kMsPerDay = 86'400'000;

Bytes be_bytes_u64(std::uint64_t v) {
    Bytes out(8);
    for (int i = 0; i < 8; ++i)
        out[static_cast<std::size_t>(i)] = static_cast<std::uint8_t>(v >> (8 * (7 - i)));
    return out;
}

std::uint64_t u64_from_be(std::span<const std::uint8_t> p) {
    std::uint64_t v = 0;
    for (std::uint8_t b : p)
        v = (v << 8) | b;
    return v;
}

class BodyReader {
public:
    explicit BodyReader(std::span<const std::uint8_t> body) : body_(body) {}

    std::uint8_t u8() { return take(1)[0]; }
    std::uint16_t u16() {
        auto p = take(2);
        return static_cast<std::uint16_t>((p[0] << 8) | p[1]);
    }
    Bytes field16() {
        const std::uint16_t n = u16();
        auto p = take(n);
        return Bytes(p.begin(), p.end());
    }
    // An embedded TEC1 frame; length implied by its header.
    Ciphertext tec1() {
        auto header = peek(13);
        std::uint64_t bit_len = 0;
        for (int i = 5; i < 13; ++i)
            bit_len = (bit_len << 8) | header[static_cast<std::size_t>(i)];
        auto frame = take(13 + bit_len / 8 + (bit_len % 8 != 0));
        try {
            return ciphertext_from_bytes(frame).ct;
        } catch (const Error& e) {
            throw FrameError(std::string("frame: embedded ciphertext: ") + e.what());
        }
    }
    void expect_end() const {
        if (pos_ != body_.size())
            throw FrameError("frame: trailing bytes in body");
    }

private:
    std::span<const std::uint8_t> peek(std::size_t n) const {
        if (body_.size() - pos_ < n)
            throw FrameError("frame: body too short");
        return body_.subspan(pos_, n);
    }
    std::span<const std::uint8_t> take(std::size_t n) {
        auto s = peek(n);
        pos_ += n;
        return s;
    }

    std::span<const std::uint8_t> body_;
    std::size_t pos_ = 0;
};

void put_u16(Bytes& out, std::size_t v) {
    if (v > 0xFFFF)
        throw FrameError("frame: field exceeds 16-bit length prefix");
    out.push_back(static_cast<std::uint8_t>(v >> 8));
    out.push_back(static_cast<std::uint8_t>(v));
}

Bytes encode_body(const ProtocolMessage& msg) {
    Bytes body;
    if (const auto* lr = std::get_if<LoginRequest>(&msg)) {
        put_u16(body, lr->username.size());
        body.insert(body.end(), lr->username.begin(), lr->username.end());
    } else if (const auto* ch = std::get_if<Challenge>(&msg)) {
        put_u16(body, ch->token);
        const Bytes ct = ciphertext_to_bytes(ch->enc_ts, false);
        body.insert(body.end(), ct.begin(), ct.end());
    } else if (const auto* rs = std::get_if<Response>(&msg)) {
        body.push_back(rs->token ? 1 : 0);
        if (rs->token)
            put_u16(body, *rs->token);
        const Bytes ct = ciphertext_to_bytes(rs->enc_payload, false);
        body.insert(body.end(), ct.begin(), ct.end());
    } else {
        const auto& v = std::get<Verdict>(msg);
        body.push_back(v.ok ? 1 : 0);
        body.push_back(static_cast<std::uint8_t>(v.reason));
    }
    return body;
}

std::uint8_t type_byte(const ProtocolMessage& msg) {
    switch (msg.index()) {
        case 0: return kTypeLoginRequest;
        case 1: return kTypeChallenge;
        case 2: return kTypeResponse;
        default: return kTypeVerdict;
    }
}

KeySpec spec_for(const Identifier& id, std::uint64_t ts, TranscendentalBase base) {
    return KeySpec{base, derive_seed(std::span<const std::uint8_t>(id.value), ts)};
}

}  // namespace

const char* verdict_reason_name(VerdictReason r) {
    switch (r) {
        case VerdictReason::Ok: return "ok";
        case VerdictReason::BadCredentials: return "bad-credentials";
        case VerdictReason::Expired: return "expired";
    }
    return "?";
}

std::uint64_t epoch_day(std::uint64_t timestamp_ms) {
    return timestamp_ms / kMsPerDay;
}

Bytes frame_encode(const ProtocolMessage& msg) {
    const Bytes body = encode_body(msg);
    if (body.size() > kMaxFrameBody)
        throw FrameError("frame: body exceeds 1 MiB");
    Bytes out;
    out.reserve(5 + body.size());
    out.push_back(type_byte(msg));
    for (int i = 3; i >= 0; --i)
        out.push_back(static_cast<std::uint8_t>(body.size() >> (8 * i)));
    out.insert(out.end(), body.begin(), body.end());
    return out;
}

ProtocolMessage frame_decode(std::span<const std::uint8_t> frame) {
    if (frame.size() < 5)
        throw FrameError("frame: shorter than header");
    const std::uint8_t type = frame[0];
    std::uint64_t body_len = 0;
    for (int i = 1; i < 5; ++i)
        body_len = (body_len << 8) | frame[static_cast<std::size_t>(i)];
    if (body_len > kMaxFrameBody)
        throw FrameError("frame: body exceeds 1 MiB");
    if (frame.size() != 5 + body_len)
        throw FrameError("frame: body length mismatch");
    BodyReader in(frame.subspan(5));

    switch (type) {
        case kTypeLoginRequest: {
            LoginRequest m;
            const Bytes name = in.field16();
            m.username.assign(name.begin(), name.end());
            in.expect_end();
            return m;
        }
        case kTypeChallenge: {
            Challenge m;
            m.token = in.u16();
            m.enc_ts = in.tec1();
            in.expect_end();
            return m;
        }
        case kTypeResponse: {
            Response m;
            const std::uint8_t has_token = in.u8();
            if (has_token > 1)
                throw FrameError("frame: bad token presence byte");
            if (has_token)
                m.token = in.u16();
            m.enc_payload = in.tec1();
            in.expect_end();
            return m;
        }
        case kTypeVerdict: {
            Verdict m;
            const std::uint8_t ok = in.u8();
            if (ok > 1)
                throw FrameError("frame: bad verdict flag");
            m.ok = ok != 0;
            const std::uint8_t reason = in.u8();
            if (reason > static_cast<std::uint8_t>(VerdictReason::Expired))
                throw FrameError("frame: unknown verdict reason");
            m.reason = static_cast<VerdictReason>(reason);
            in.expect_end();
            return m;
        }
        default:
            throw FrameError("frame: unknown type byte");
    }
}

Host::Host(StoreFile store, BigInt host_secret, ProtocolConfig config)
    : store_(std::move(store)), host_secret_(std::move(host_secret)), config_(config) {
    if (config_.t_a_ms <= 0)
        throw std::invalid_argument("ProtocolConfig: t_a_ms must be positive");
}

Challenge Host::handle_login_request(const LoginRequest& msg, std::uint64_t now_ms) {
    const UserRecord* rec = store_.find(msg.username);
    if (!rec)
        throw UnknownUser("login: no such user '" + msg.username + "'");

    auto it = pending_.find(msg.username);
    if (it != pending_.end()) {
        if (now_ms <= it->second.expiry_ms)
            throw LoginInProgress("login: challenge already outstanding for '" + msg.username +
                                  "'");
        pending_.erase(it);
    }

    const auto token = static_cast<std::uint16_t>(token_rotation_[msg.username]++ %
                                                  rec->identifiers.size());
    const std::uint64_t ts = now_ms;
    Challenge ch;
    ch.token = token;
    ch.enc_ts = seal(be_bytes_u64(ts),
                     spec_for(rec->identifiers[token], epoch_day(ts), config_.base),
                     config_.use_fib);

    PendingLogin pend;
    pend.username = msg.username;
    pend.ts_value_ms = ts;
    pend.challenge_token = token;
    pend.issued_at_ms = now_ms;
    pend.expiry_ms = now_ms + static_cast<std::uint64_t>(config_.t_a_ms);
    pending_[msg.username] = std::move(pend);
    return ch;
}

Verdict Host::handle_response(std::string_view username, const Response& msg,
                              std::uint64_t now_ms) {
    auto it = pending_.find(username);
    if (it == pending_.end())
        throw NoPendingLogin("login: no outstanding challenge for '" + std::string(username) +
                             "'");
    const PendingLogin pend = it->second;
    pending_.erase(it);  // erased whatever the outcome

    if (now_ms - pend.issued_at_ms > static_cast<std::uint64_t>(config_.t_a_ms))
        return Verdict{false, VerdictReason::Expired};

    const UserRecord* rec = store_.find(username);
    if (!rec)
        return Verdict{false, VerdictReason::BadCredentials};

    std::vector<std::uint16_t> indices;
    if (msg.token) {
        if (*msg.token >= rec->identifiers.size())
            return Verdict{false, VerdictReason::BadCredentials};
        indices.push_back(*msg.token);
    } else {
        // Tokenless: try every identifier until one opens to the stored password.
        indices.resize(rec->identifiers.size());
        for (std::size_t i = 0; i < indices.size(); ++i)
            indices[i] = static_cast<std::uint16_t>(i);
    }

    for (std::uint16_t idx : indices) {
        const KeySpec spec = spec_for(rec->identifiers[idx], pend.ts_value_ms, config_.base);
        Bytes candidate;
        try {
            candidate = open(msg.enc_payload, spec, config_.use_fib);
        } catch (const Error&) {
            continue;
        }
        if (!verify_stored(store_, username, candidate, host_secret_, config_.base))
            continue;
        // Filler bits are not covered by open(); require the payload to be
        // the canonical sealing so a flipped filler cannot still authenticate.
        if (seal(candidate, spec, config_.use_fib) == msg.enc_payload)
            return Verdict{true, VerdictReason::Ok};
    }
    return Verdict{false, VerdictReason::BadCredentials};
}

std::size_t Host::expire_pending(std::uint64_t now_ms) {
    std::size_t erased = 0;
    for (auto it = pending_.begin(); it != pending_.end();) {
        if (it->second.expiry_ms < now_ms) {
            it = pending_.erase(it);
            ++erased;
        } else {
            ++it;
        }
    }
    return erased;
}

Response user_process_challenge(const Challenge& challenge, const UserCredentials& creds,
                                std::uint64_t now_ms, const ProtocolConfig& config) {
    if (challenge.token >= creds.identifiers.size())
        throw ChallengeUndecryptable("challenge: token " + std::to_string(challenge.token) +
                                     " does not match any identifier");
    const Identifier& id = creds.identifiers[challenge.token];

    // The seed day is derived from T_s, which we only learn by decrypting;
    // try the local day and its neighbours to absorb clock skew.
    const std::uint64_t today = epoch_day(now_ms);
    std::optional<std::uint64_t> ts;
    for (std::uint64_t day :
         {today, today > 0 ? today - 1 : today, today + 1}) {
        Bytes plain;
        try {
            plain = open(challenge.enc_ts, spec_for(id, day, config.base), config.use_fib);
        } catch (const Error&) {
            continue;
        }
        if (plain.size() != 8)
            continue;
        const std::uint64_t value = u64_from_be(plain);
        if (epoch_day(value) == day) {  // self-consistent decryption
            ts = value;
            break;
        }
    }
    if (!ts)
        throw ChallengeUndecryptable("challenge: timestamp does not decrypt under any nearby day");

    // Default choice: respond with the same identifier the challenge named.
    const std::uint16_t response_token = challenge.token;
    Response resp;
    if (!config.tokenless_mode)
        resp.token = response_token;
    resp.enc_payload = seal(creds.password,
                            spec_for(creds.identifiers[response_token], *ts, config.base),
                            config.use_fib);
    return resp;
}

}  // namespace tec
