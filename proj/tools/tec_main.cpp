// tec: command-line front end for the transcendental-keystream codec,
// password store, login protocol and attack harness.

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <mutex>
#include <optional>
#include <sstream>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "tec/cryptanalysis.hpp"
#include "tec/errors.hpp"
#include "tec/fib_coding.hpp"
#include "tec/password_store.hpp"
#include "tec/protocol.hpp"
#include "tec/stego_codec.hpp"

#include "net_util.hpp"

namespace {

using tec::BigInt;
using tec::Bytes;

constexpr const char* kHostSecretEnv = "TEC_HOST_SECRET";

std::uint64_t wall_clock_ms() {
    return static_cast<std::uint64_t>(std::chrono::duration_cast<std::chrono::milliseconds>(
                                          std::chrono::system_clock::now().time_since_epoch())
                                          .count());
}

std::uint64_t now_or(const std::optional<std::uint64_t>& injected) {
    return injected ? *injected : wall_clock_ms();
}

Bytes to_bytes(const std::string& s) {
    return Bytes(s.begin(), s.end());
}

std::string to_hex(const Bytes& b) {
    static const char* digits = "0123456789abcdef";
    std::string out;
    out.reserve(b.size() * 2);
    for (std::uint8_t v : b) {
        out.push_back(digits[v >> 4]);
        out.push_back(digits[v & 0xF]);
    }
    return out;
}

Bytes read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw tec::Error("cannot open " + path);
    return Bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
}

void write_file(const std::string& path, const Bytes& data) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        throw tec::Error("cannot open " + path + " for writing");
    out.write(reinterpret_cast<const char*>(data.data()),
              static_cast<std::streamsize>(data.size()));
    if (!out)
        throw tec::Error("short write to " + path);
}

// Newline-delimited wordlist, raw bytes per line.
std::vector<Bytes> read_wordlist(const std::string& path) {
    const Bytes raw = read_file(path);
    std::vector<Bytes> words;
    Bytes cur;
    for (std::uint8_t b : raw) {
        if (b == '\n') {
            words.push_back(cur);
            cur.clear();
        } else {
            cur.push_back(b);
        }
    }
    if (!cur.empty())
        words.push_back(cur);
    return words;
}

// Key selection shared by the codec-facing subcommands: either a literal
// decimal seed or identifier + timestamp material.
struct KeyOpts {
    std::string base = "pi";
    std::string seed;
    std::string identifier;
    std::optional<std::uint64_t> ts;
    unsigned min_precision = tec::kDefaultMinPrecisionBits;

    void attach(CLI::App* cmd) {
        cmd->add_option("--base", base, "Keystream constant: pi, e or ln2")
            ->check(CLI::IsMember({"pi", "e", "ln2"}));
        cmd->add_option("--seed", seed, "Seed x as a decimal integer (>= 1)");
        cmd->add_option("--identifier", identifier, "Identifier bytes used to derive the seed");
        cmd->add_option("--ts", ts, "Timestamp (ms) combined with --identifier");
        cmd->add_option("--min-precision", min_precision, "Minimum keystream precision in bits")
            ->check(CLI::PositiveNumber);
    }

    tec::KeySpec to_spec() const {
        tec::KeySpec spec;
        spec.base = tec::base_from_name(base);
        spec.min_precision_bits = min_precision;
        if (!seed.empty()) {
            if (!identifier.empty() || ts)
                throw tec::Error("--seed conflicts with --identifier/--ts");
            spec.seed_x = tec::bigint_from_decimal(seed);
        } else if (!identifier.empty()) {
            spec.seed_x = tec::derive_seed(identifier, ts.value_or(0));
        } else {
            throw tec::Error("need --seed or --identifier to select a key");
        }
        return spec;
    }
};

BigInt host_secret_from(const std::string& flag_value) {
    if (!flag_value.empty())
        return tec::bigint_from_decimal(flag_value);
    if (const char* env = std::getenv(kHostSecretEnv))
        return tec::bigint_from_decimal(env);
    throw tec::Error(std::string("host secret required: pass --host-secret or set $") +
                     kHostSecretEnv);
}

std::vector<tec::Identifier> parse_identifiers(const std::vector<std::string>& raw) {
    std::vector<tec::Identifier> ids;
    for (std::size_t i = 0; i < raw.size(); ++i) {
        tec::Identifier id;
        const auto eq = raw[i].find('=');
        if (eq == std::string::npos) {
            id.label = "id" + std::to_string(i);
            id.value = to_bytes(raw[i]);
        } else {
            id.label = raw[i].substr(0, eq);
            id.value = to_bytes(raw[i].substr(eq + 1));
        }
        ids.push_back(std::move(id));
    }
    return ids;
}

// ---- serve ----------------------------------------------------------------

struct ServeArgs {
    std::string endpoint = "127.0.0.1:0";
    std::string store_path;
    std::string host_secret;
    std::string base = "pi";
    std::int64_t t_a_ms = 30000;
    bool tokenless = false;
    bool use_fib = false;
    std::optional<std::uint64_t> now_ms;
    unsigned max_sessions = 0;  // 0 = serve forever
};

void serve_session(tecnet::Fd conn, tec::Host& host, std::mutex& host_mu,
                   const std::optional<std::uint64_t>& injected_now) {
    std::string username;
    try {
        tec::ProtocolMessage msg = tec::frame_decode(tecnet::read_frame(conn.get()));
        auto* request = std::get_if<tec::LoginRequest>(&msg);
        if (!request)
            throw tec::FrameError("expected a login request");
        username = request->username;

        tec::Challenge challenge;
        {
            std::lock_guard<std::mutex> lock(host_mu);
            challenge = host.handle_login_request(*request, now_or(injected_now));
        }
        tecnet::write_frame(conn.get(), tec::frame_encode(challenge));

        msg = tec::frame_decode(tecnet::read_frame(conn.get()));
        auto* response = std::get_if<tec::Response>(&msg);
        if (!response)
            throw tec::FrameError("expected a response");

        tec::Verdict verdict;
        {
            std::lock_guard<std::mutex> lock(host_mu);
            verdict = host.handle_response(username, *response, now_or(injected_now));
        }
        tecnet::write_frame(conn.get(), tec::frame_encode(verdict));
    } catch (const tec::Error& e) {
        std::cerr << "session error: " << e.what() << "\n";
        try {
            tecnet::write_frame(conn.get(), tec::frame_encode(tec::Verdict{
                                                false, tec::VerdictReason::BadCredentials}));
        } catch (...) {
        }
    } catch (const std::exception& e) {
        std::cerr << "session error: " << e.what() << "\n";
    }
}

int cmd_serve(const ServeArgs& args) {
    tec::ProtocolConfig config;
    config.t_a_ms = args.t_a_ms;
    config.tokenless_mode = args.tokenless;
    config.use_fib = args.use_fib;
    config.base = tec::base_from_name(args.base);

    tec::Host host(tec::load_store(args.store_path), host_secret_from(args.host_secret), config);
    std::mutex host_mu;

    auto [ip, port] = tecnet::split_endpoint(args.endpoint);
    std::uint16_t bound = 0;
    tecnet::Fd listener = tecnet::listen_on(ip, port, bound);
    std::cout << "listening on " << ip << ":" << bound << std::endl;

    std::vector<std::thread> sessions;
    for (unsigned served = 0; args.max_sessions == 0 || served < args.max_sessions; ++served) {
        tecnet::Fd conn = tecnet::accept_conn(listener);
        sessions.emplace_back(
            [&host, &host_mu, &args](tecnet::Fd c) {
                serve_session(std::move(c), host, host_mu, args.now_ms);
            },
            std::move(conn));
    }
    for (auto& t : sessions)
        t.join();
    return 0;
}

// ---- login ----------------------------------------------------------------

struct LoginArgs {
    std::string endpoint;
    std::string username;
    std::string password;
    std::vector<std::string> identifiers;
    std::string base = "pi";
    bool tokenless = false;
    bool use_fib = false;
    std::optional<std::uint64_t> now_ms;
};

int cmd_login(const LoginArgs& args) {
    tec::ProtocolConfig config;
    config.tokenless_mode = args.tokenless;
    config.use_fib = args.use_fib;
    config.base = tec::base_from_name(args.base);

    tec::UserCredentials creds;
    creds.password = to_bytes(args.password);
    creds.identifiers = parse_identifiers(args.identifiers);
    if (creds.identifiers.empty())
        throw tec::Error("login needs at least one --identifier");

    auto [ip, port] = tecnet::split_endpoint(args.endpoint);
    tecnet::Fd conn = tecnet::connect_to(ip, port);

    tecnet::write_frame(conn.get(), tec::frame_encode(tec::LoginRequest{args.username}));
    tec::ProtocolMessage msg = tec::frame_decode(tecnet::read_frame(conn.get()));
    if (auto* verdict = std::get_if<tec::Verdict>(&msg)) {
        std::cout << "rejected: " << tec::verdict_reason_name(verdict->reason) << "\n";
        return 1;
    }
    auto* challenge = std::get_if<tec::Challenge>(&msg);
    if (!challenge)
        throw tec::FrameError("expected a challenge");

    const tec::Response response =
        tec::user_process_challenge(*challenge, creds, now_or(args.now_ms), config);
    tecnet::write_frame(conn.get(), tec::frame_encode(response));

    msg = tec::frame_decode(tecnet::read_frame(conn.get()));
    auto* verdict = std::get_if<tec::Verdict>(&msg);
    if (!verdict)
        throw tec::FrameError("expected a verdict");
    std::cout << (verdict->ok ? "accepted" : "rejected") << ": "
              << tec::verdict_reason_name(verdict->reason) << "\n";
    return verdict->ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"tec: bit-insertion codec with transcendental keystreams, password store,\n"
                 "challenge-response login, and a cryptanalysis harness"};
    app.require_subcommand(1);

    // keygen
    auto* keygen = app.add_subcommand("keygen", "Print the first N keystream bits for a key");
    KeyOpts keygen_key;
    keygen_key.attach(keygen);
    unsigned keygen_bits = 64;
    std::vector<std::string> keygen_reserved;
    keygen->add_option("--bits", keygen_bits, "How many bits to print")->check(CLI::PositiveNumber);
    keygen->add_option("--reserved-seed", keygen_reserved,
                       "Host-reserved seed a user key may not use (decimal, repeatable)");

    // encode / decode
    auto* encode = app.add_subcommand("encode", "Seal a file into a TEC1 ciphertext");
    KeyOpts encode_key;
    encode_key.attach(encode);
    std::string encode_in, encode_out;
    bool encode_fib = false;
    encode->add_option("--in", encode_in, "Plaintext file")->required();
    encode->add_option("--out", encode_out, "Ciphertext file (TEC1)")->required();
    encode->add_flag("--fib", encode_fib, "Recode bytes in the Fibonacci universal code first");

    auto* decode = app.add_subcommand("decode", "Open a TEC1 ciphertext back into a file");
    KeyOpts decode_key;
    decode_key.attach(decode);
    std::string decode_in, decode_out;
    decode->add_option("--in", decode_in, "Ciphertext file (TEC1)")->required();
    decode->add_option("--out", decode_out, "Recovered plaintext file")->required();

    // enroll / verify
    auto* enroll = app.add_subcommand("enroll", "Create a user record in a password store");
    std::string enroll_store, enroll_user, enroll_password, enroll_secret, enroll_base = "pi";
    std::vector<std::string> enroll_ids;
    bool enroll_fib = false;
    std::optional<std::uint64_t> enroll_now;
    enroll->add_option("--store", enroll_store, "Store file (TECP); created if missing")
        ->required();
    enroll->add_option("--user", enroll_user, "Username")->required();
    enroll->add_option("--password", enroll_password, "Password (8..64 bytes)")->required();
    enroll->add_option("--identifier", enroll_ids,
                       "Security answer as label=value (repeatable; first one keys the record)")
        ->required();
    enroll->add_option("--host-secret", enroll_secret,
                       std::string("Host secret (decimal); falls back to $") + kHostSecretEnv);
    enroll->add_option("--base", enroll_base)->check(CLI::IsMember({"pi", "e", "ln2"}));
    enroll->add_flag("--fib", enroll_fib, "Store the password with the Fibonacci layer");
    enroll->add_option("--now-ms", enroll_now, "Enrollment timestamp override (ms since epoch)");

    auto* verify = app.add_subcommand("verify", "Check a password against the store");
    std::string verify_store, verify_user, verify_password, verify_secret, verify_base = "pi";
    verify->add_option("--store", verify_store)->required();
    verify->add_option("--user", verify_user)->required();
    verify->add_option("--password", verify_password)->required();
    verify->add_option("--host-secret", verify_secret,
                       std::string("Host secret (decimal); falls back to $") + kHostSecretEnv);
    verify->add_option("--base", verify_base)->check(CLI::IsMember({"pi", "e", "ln2"}));

    // serve / login
    ServeArgs serve_args;
    auto* serve = app.add_subcommand("serve", "Serve the login protocol over TCP");
    serve->add_option("--listen", serve_args.endpoint, "host:port (port 0 picks one)");
    serve->add_option("--store", serve_args.store_path)->required();
    serve->add_option("--host-secret", serve_args.host_secret,
                      std::string("Host secret (decimal); falls back to $") + kHostSecretEnv);
    serve->add_option("--base", serve_args.base)->check(CLI::IsMember({"pi", "e", "ln2"}));
    serve->add_option("--t-a-ms", serve_args.t_a_ms, "Login window T_a in ms")
        ->check(CLI::PositiveNumber);
    serve->add_flag("--tokenless", serve_args.tokenless,
                    "Responses carry no token; host tries every identifier");
    serve->add_flag("--fib", serve_args.use_fib, "Protocol ciphertexts use the Fibonacci layer");
    serve->add_option("--now-ms", serve_args.now_ms, "Freeze the host clock (for testing)");
    serve->add_option("--max-sessions", serve_args.max_sessions,
                      "Exit after this many sessions (0 = run forever)");

    LoginArgs login_args;
    auto* login = app.add_subcommand("login", "Run the client side of the login handshake");
    login->add_option("--connect", login_args.endpoint, "host:port of the serving host")
        ->required();
    login->add_option("--user", login_args.username)->required();
    login->add_option("--password", login_args.password)->required();
    login->add_option("--identifier", login_args.identifiers,
                      "Security answers in enrollment order (label=value or value)")
        ->required();
    login->add_option("--base", login_args.base)->check(CLI::IsMember({"pi", "e", "ln2"}));
    login->add_flag("--tokenless", login_args.tokenless, "Omit the token from the response");
    login->add_flag("--fib", login_args.use_fib, "Protocol ciphertexts use the Fibonacci layer");
    login->add_option("--now-ms", login_args.now_ms, "Freeze the client clock (for testing)");

    // attack
    auto* attack = app.add_subcommand("attack", "Cryptanalysis harnesses");
    attack->require_subcommand(1);

    auto* brute = attack->add_subcommand(
        "brute", "Enumerate every insertion hypothesis of a short TEC1 ciphertext");
    std::string brute_in, brute_wordlist, brute_truth, brute_csv, brute_validator = "printable";
    std::optional<unsigned> brute_n;
    brute->add_option("--in", brute_in, "Ciphertext file (TEC1)")->required();
    brute->add_option("--n-bytes", brute_n, "Plaintext byte count (inferred when omitted)");
    brute->add_option("--validator", brute_validator, "Plausibility filter for candidates")
        ->check(CLI::IsMember({"printable", "wordlist"}));
    brute->add_option("--wordlist", brute_wordlist, "Wordlist for --validator wordlist");
    brute->add_option("--truth", brute_truth, "Known plaintext, to report membership");
    brute->add_option("--csv", brute_csv,
                      "Write candidates as CSV: candidate_hex,valid (one row per candidate)");

    auto* dict = attack->add_subcommand("dict",
                                        "Dictionary attack against a stored password record");
    std::string dict_store, dict_user, dict_wordlist, dict_secret, dict_base = "pi",
                dict_csv;
    std::vector<std::string> dict_seeds;
    dict->add_option("--store", dict_store)->required();
    dict->add_option("--user", dict_user)->required();
    dict->add_option("--wordlist", dict_wordlist)->required();
    dict->add_option("--seed", dict_seeds, "Key-spec hypothesis seed (decimal, repeatable)");
    dict->add_option("--host-secret", dict_secret,
                     "Host secret (decimal): adds the record's true spec as a hypothesis");
    dict->add_option("--base", dict_base)->check(CLI::IsMember({"pi", "e", "ln2"}));
    dict->add_option("--csv", dict_csv, "Write matches as CSV: word_index,spec_index,word_hex");

    // trycount / policy / digits
    auto* trycount = app.add_subcommand("trycount",
                                        "Brute-force work for an n-character message");
    std::uint64_t trycount_n = 0;
    trycount->add_option("n", trycount_n, "Message length in characters")->required();

    auto* policy = app.add_subcommand("policy", "Check a password against a selection policy");
    std::string policy_password;
    std::vector<std::string> policy_banned;
    tec::PasswordPolicy policy_opts = tec::PasswordPolicy::standard();
    policy->add_option("--password", policy_password)->required();
    policy->add_option("--min-len", policy_opts.min_len);
    policy->add_option("--max-len", policy_opts.max_len);
    policy->add_flag("!--no-require-upper", policy_opts.require_upper);
    policy->add_flag("!--no-require-lower", policy_opts.require_lower);
    policy->add_flag("!--no-require-digit", policy_opts.require_digit);
    policy->add_flag("!--no-require-special", policy_opts.require_special);
    policy->add_option("--banned", policy_banned, "Banned substring (repeatable)");

    auto* digits = app.add_subcommand("digits", "0/1 balance of a keystream prefix");
    KeyOpts digits_key;
    digits_key.attach(digits);
    std::size_t digits_bits = 10000;
    digits->add_option("--bits", digits_bits, "Sample size (>= 1000)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (*keygen) {
            std::set<BigInt> reserved;
            for (const auto& s : keygen_reserved)
                reserved.insert(tec::bigint_from_decimal(s));
            tec::DigitStream stream = tec::make_stream(keygen_key.to_spec(), reserved);
            std::string out;
            for (bool b : stream.next_bits(keygen_bits))
                out.push_back(b ? '1' : '0');
            std::cout << out << "\n";
            return 0;
        }
        if (*encode) {
            const Bytes plaintext = read_file(encode_in);
            const tec::Ciphertext ct = tec::seal(plaintext, encode_key.to_spec(), encode_fib);
            tec::write_ciphertext_file(encode_out, ct, encode_fib);
            std::cout << "sealed " << plaintext.size() << " bytes into " << ct.bit_len
                      << " ciphertext bits\n";
            return 0;
        }
        if (*decode) {
            const tec::CiphertextFile file = tec::read_ciphertext_file(decode_in);
            const Bytes plaintext = tec::open(file.ct, decode_key.to_spec(), file.use_fib);
            write_file(decode_out, plaintext);
            std::cout << "recovered " << plaintext.size() << " bytes\n";
            return 0;
        }
        if (*enroll) {
            tec::StoreFile store;
            if (std::filesystem::exists(enroll_store))
                store = tec::load_store(enroll_store);
            tec::enroll(store, enroll_user, to_bytes(enroll_password),
                        parse_identifiers(enroll_ids), host_secret_from(enroll_secret),
                        now_or(enroll_now), enroll_fib, tec::base_from_name(enroll_base));
            tec::save_store(store, enroll_store);
            std::cout << "enrolled '" << enroll_user << "' (" << store.records.size()
                      << " records)\n";
            return 0;
        }
        if (*verify) {
            const tec::StoreFile store = tec::load_store(verify_store);
            const bool ok = tec::verify_stored(store, verify_user, to_bytes(verify_password),
                                               host_secret_from(verify_secret),
                                               tec::base_from_name(verify_base));
            std::cout << (ok ? "match" : "no match") << "\n";
            return ok ? 0 : 1;
        }
        if (*serve)
            return cmd_serve(serve_args);
        if (*login)
            return cmd_login(login_args);
        if (*brute) {
            const tec::CiphertextFile file = tec::read_ciphertext_file(brute_in);
            std::size_t n_bytes = 0;
            if (brute_n) {
                n_bytes = *brute_n;
            } else {
                // bit_len ranges [10n, 11n] are disjoint for n <= 3
                bool found = false;
                for (std::size_t n = 0; n <= 3; ++n)
                    if (10 * n <= file.ct.bit_len && file.ct.bit_len <= 11 * n) {
                        n_bytes = n;
                        found = true;
                        break;
                    }
                if (!found && file.ct.bit_len != 0)
                    throw tec::NotDecodable("cannot infer a byte count <= 3 from bit length " +
                                            std::to_string(file.ct.bit_len));
            }
            const tec::CandidateSet cs =
                tec::enumerate_candidates(file.ct, n_bytes, file.use_fib);

            tec::Validator validator;
            if (brute_validator == "printable") {
                validator = tec::printable_ascii;
            } else {
                if (brute_wordlist.empty())
                    throw tec::Error("--validator wordlist needs --wordlist");
                auto words = read_wordlist(brute_wordlist);
                validator = tec::wordlist_validator(
                    std::set<Bytes>(words.begin(), words.end()));
            }
            std::optional<Bytes> truth;
            if (!brute_truth.empty())
                truth = to_bytes(brute_truth);
            const auto report = tec::false_positive_report(cs, validator, truth);

            std::cout << "bit_len: " << file.ct.bit_len << "\n"
                      << "n_bytes: " << n_bytes << "\n"
                      << "enumerated attempts: " << cs.enumerated << "\n"
                      << "closed-form attempts: "
                      << tec::to_decimal(tec::position_try_count(n_bytes, file.ct.bit_len)) << "\n"
                      << "distinct candidates: " << report.total << "\n"
                      << "valid under " << brute_validator << ": " << report.valid << "\n";
            if (truth)
                std::cout << "contains truth: " << (report.contains_truth ? "yes" : "no") << "\n";
            std::cout << "claimed models for n: min "
                      << tec::to_decimal(tec::claimed_try_count(n_bytes, tec::TryCountModel::ClaimedMin))
                      << ", max "
                      << tec::to_decimal(tec::claimed_try_count(n_bytes, tec::TryCountModel::ClaimedMax))
                      << ", positions "
                      << tec::to_decimal(
                             tec::claimed_try_count(n_bytes, tec::TryCountModel::ExactPositions))
                      << "\n";
            if (!brute_csv.empty()) {
                std::ostringstream csv;
                csv << "candidate_hex,valid\n";
                for (const auto& c : cs.candidates)
                    csv << to_hex(c) << "," << (validator(c) ? 1 : 0) << "\n";
                write_file(brute_csv, to_bytes(csv.str()));
            }
            return 0;
        }
        if (*dict) {
            const tec::StoreFile store = tec::load_store(dict_store);
            const tec::UserRecord* rec = store.find(dict_user);
            if (!rec)
                throw tec::UnknownUser("no such user '" + dict_user + "'");
            const auto words = read_wordlist(dict_wordlist);
            std::vector<tec::KeySpec> hypotheses;
            const auto base = tec::base_from_name(dict_base);
            for (const auto& s : dict_seeds)
                hypotheses.push_back(tec::KeySpec{base, tec::bigint_from_decimal(s)});
            if (!dict_secret.empty())
                hypotheses.push_back(
                    tec::host_spec_for(*rec, tec::bigint_from_decimal(dict_secret), base));
            if (hypotheses.empty())
                throw tec::Error("no hypotheses: pass --seed and/or --host-secret");

            const auto matches = tec::dictionary_attack(*rec, words, hypotheses);
            std::cout << "tried " << words.size() << " words x " << hypotheses.size()
                      << " specs: " << matches.size() << " match(es)\n";
            std::ostringstream csv;
            csv << "word_index,spec_index,word_hex\n";
            for (const auto& m : matches) {
                std::cout << "match: word[" << m.word_index << "] spec[" << m.spec_index << "] = '"
                          << std::string(words[m.word_index].begin(), words[m.word_index].end())
                          << "'\n";
                csv << m.word_index << "," << m.spec_index << "," << to_hex(words[m.word_index])
                    << "\n";
            }
            if (!dict_csv.empty())
                write_file(dict_csv, to_bytes(csv.str()));
            return matches.empty() ? 1 : 0;
        }
        if (*trycount) {
            std::cout << "n: " << trycount_n << "\n"
                      << "min tries (4^n): "
                      << tec::to_decimal(
                             tec::claimed_try_count(trycount_n, tec::TryCountModel::ClaimedMin))
                      << "\n"
                      << "max tries (8^n): "
                      << tec::to_decimal(
                             tec::claimed_try_count(trycount_n, tec::TryCountModel::ClaimedMax))
                      << "\n"
                      << "exact position sets (210^n): "
                      << tec::to_decimal(
                             tec::claimed_try_count(trycount_n, tec::TryCountModel::ExactPositions))
                      << "\n"
                      << "multiplicative reading (4*n, 8*n): " << 4 * trycount_n << " "
                      << 8 * trycount_n << "\n";
            return 0;
        }
        if (*policy) {
            for (const auto& b : policy_banned)
                policy_opts.banned_substrings.push_back(to_bytes(b));
            const auto findings = tec::check_policy(to_bytes(policy_password), policy_opts);
            if (findings.empty()) {
                std::cout << "compliant\n";
                return 0;
            }
            for (const auto& f : findings)
                std::cout << "violation: " << tec::describe(f) << "\n";
            return 1;
        }
        if (*digits) {
            const auto dist = tec::digit_distribution(digits_key.to_spec(), digits_bits);
            std::cout << "zeros: " << dist.zeros << "\n"
                      << "ones: " << dist.ones << "\n"
                      << "chi_square: " << dist.chi_square << "\n";
            return 0;
        }
    } catch (const tec::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
