#include "tec/cryptanalysis.hpp"

#include <algorithm>
#include <cctype>

#include "tec/errors.hpp"
#include "tec/fib_coding.hpp"

namespace tec {

namespace {

// All k-vectors in {2,3}^n whose insertion total matches bit_len - 8n.
std::vector<std::vector<unsigned>> k_assignments(std::size_t n_bytes, std::uint64_t bit_len) {
    std::vector<std::vector<unsigned>> out;
    if (bit_len < 8 * n_bytes)
        return out;
    const std::uint64_t insert_total = bit_len - 8 * n_bytes;
    if (insert_total < 2 * n_bytes || insert_total > 3 * n_bytes)
        return out;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n_bytes); ++mask) {
        std::vector<unsigned> ks(n_bytes);
        std::uint64_t total = 0;
        for (std::size_t i = 0; i < n_bytes; ++i) {
            ks[i] = (mask >> i) & 1 ? 3u : 2u;
            total += ks[i];
        }
        if (total == insert_total)
            out.push_back(std::move(ks));
    }
    return out;
}

std::uint8_t strip_block(const Ciphertext& ct, std::uint64_t offset, unsigned k,
                         const std::array<unsigned, 3>& positions) {
    std::uint8_t byte = 0;
    unsigned fill_i = 0;
    for (unsigned slot = 0; slot < 8 + k; ++slot) {
        const std::uint64_t i = offset + slot;
        const bool bit = (ct.bytes[i >> 3] >> (7 - (i & 7))) & 1;
        if (fill_i < k && positions[fill_i] == slot)
            ++fill_i;
        else
            byte = static_cast<std::uint8_t>((byte << 1) | (bit ? 1 : 0));
    }
    return byte;
}

bool is_special_byte(std::uint8_t b) {
    return !std::isalnum(static_cast<unsigned char>(b));
}

std::uint8_t ascii_lower(std::uint8_t b) {
    return (b >= 'A' && b <= 'Z') ? static_cast<std::uint8_t>(b + 32) : b;
}

bool contains_ci(const Bytes& haystack, const Bytes& needle) {
    if (needle.empty() || needle.size() > haystack.size())
        return false;
    for (std::size_t i = 0; i + needle.size() <= haystack.size(); ++i) {
        bool hit = true;
        for (std::size_t j = 0; j < needle.size(); ++j) {
            if (ascii_lower(haystack[i + j]) != ascii_lower(needle[j])) {
                hit = false;
                break;
            }
        }
        if (hit)
            return true;
    }
    return false;
}

}  // namespace

BigInt claimed_try_count(std::uint64_t n_chars, TryCountModel model) {
    unsigned long base = 0;
    switch (model) {
        case TryCountModel::ClaimedMin: base = 4; break;
        case TryCountModel::ClaimedMax: base = 8; break;
        case TryCountModel::ExactPositions:
            base = static_cast<unsigned long>(binomial(10, 2) + binomial(11, 3));
            break;
    }
    BigInt r;
    mpz_ui_pow_ui(r.get_mpz_t(), base, static_cast<unsigned long>(n_chars));
    return r;
}

BigInt exact_try_count(const InsertionPlan& plan) {
    BigInt r = 1;
    for (const auto& rec : plan.per_byte)
        r *= static_cast<unsigned long>(binomial(8 + rec.k, rec.k));
    return r;
}

BigInt position_try_count(std::size_t n_bytes, std::uint64_t bit_len) {
    BigInt total = 0;
    for (const auto& ks : k_assignments(n_bytes, bit_len)) {
        BigInt prod = 1;
        for (unsigned k : ks)
            prod *= static_cast<unsigned long>(binomial(8 + k, k));
        total += prod;
    }
    return total;
}

CandidateSet enumerate_candidates(const Ciphertext& ct, std::size_t n_bytes, bool use_fib) {
    if (n_bytes > 3)
        throw std::invalid_argument("enumerate_candidates: bounded to 3 bytes");
    const auto assignments = k_assignments(n_bytes, ct.bit_len);
    if (assignments.empty())
        throw NotDecodable("enumerate_candidates: bit length " + std::to_string(ct.bit_len) +
                           " matches no k-assignment for " + std::to_string(n_bytes) + " bytes");

    CandidateSet cs;
    for (const auto& ks : assignments) {
        // Odometer over the per-byte position-set choices.
        std::vector<std::uint64_t> counts(n_bytes), choice(n_bytes, 0);
        for (std::size_t i = 0; i < n_bytes; ++i)
            counts[i] = binomial(8 + ks[i], ks[i]);
        bool done = false;
        while (!done) {
            Bytes stripped(n_bytes);
            std::uint64_t offset = 0;
            for (std::size_t i = 0; i < n_bytes; ++i) {
                const auto positions = unrank_combination(choice[i], 8 + ks[i], ks[i]);
                stripped[i] = strip_block(ct, offset, ks[i], positions);
                offset += 8 + ks[i];
            }
            ++cs.enumerated;
            if (use_fib) {
                try {
                    cs.candidates.insert(
                        fib_decode_bytes(BitBuffer::from_bytes(stripped, 8 * stripped.size())));
                } catch (const FibDecodeError&) {
                    // counted as an attempt, not a candidate
                }
            } else {
                cs.candidates.insert(std::move(stripped));
            }

            done = true;
            for (std::size_t i = n_bytes; i-- > 0;) {
                if (++choice[i] < counts[i]) {
                    done = false;
                    break;
                }
                choice[i] = 0;
            }
        }
    }
    return cs;
}

bool printable_ascii(const Bytes& candidate) {
    return std::all_of(candidate.begin(), candidate.end(),
                       [](std::uint8_t b) { return b >= 0x20 && b <= 0x7E; });
}

Validator wordlist_validator(std::set<Bytes> words) {
    return [words = std::move(words)](const Bytes& c) { return words.count(c) > 0; };
}

FalsePositiveReport false_positive_report(const CandidateSet& cs, const Validator& validator,
                                          const std::optional<Bytes>& truth) {
    FalsePositiveReport rep;
    rep.total = cs.candidates.size();
    for (const auto& c : cs.candidates)
        if (validator(c))
            ++rep.valid;
    rep.contains_truth = truth && cs.candidates.count(*truth) > 0;
    return rep;
}

std::vector<DictionaryMatch> dictionary_attack(const UserRecord& record,
                                               const std::vector<Bytes>& wordlist,
                                               const std::vector<KeySpec>& spec_hypotheses) {
    std::vector<DictionaryMatch> matches;
    for (std::size_t si = 0; si < spec_hypotheses.size(); ++si) {
        for (std::size_t wi = 0; wi < wordlist.size(); ++wi) {
            try {
                if (seal(wordlist[wi], spec_hypotheses[si], record.use_fib) == record.ciphertext)
                    matches.push_back({wi, si});
            } catch (const Error&) {
                // hypothesis spec unusable (e.g. zero seed); skip
            }
        }
    }
    return matches;
}

PasswordPolicy PasswordPolicy::length_only(std::size_t min_len, std::size_t max_len) {
    PasswordPolicy p;
    p.min_len = min_len;
    p.max_len = max_len;
    return p;
}

PasswordPolicy PasswordPolicy::standard() {
    PasswordPolicy p;
    p.require_upper = p.require_lower = p.require_digit = p.require_special = true;
    return p;
}

std::string describe(const PolicyFinding& f) {
    return f.detail;
}

std::vector<PolicyFinding> check_policy(const Bytes& password, const PasswordPolicy& policy) {
    if (policy.min_len > policy.max_len)
        throw std::invalid_argument("PasswordPolicy: min_len exceeds max_len");
    std::vector<PolicyFinding> findings;
    if (password.size() < policy.min_len)
        findings.push_back({PolicyRule::TooShort,
                            "password shorter than " + std::to_string(policy.min_len) + " bytes"});
    if (password.size() > policy.max_len)
        findings.push_back({PolicyRule::TooLong,
                            "password longer than " + std::to_string(policy.max_len) + " bytes"});

    bool upper = false, lower = false, digit = false, special = false;
    for (std::uint8_t b : password) {
        upper = upper || (b >= 'A' && b <= 'Z');
        lower = lower || (b >= 'a' && b <= 'z');
        digit = digit || (b >= '0' && b <= '9');
        special = special || is_special_byte(b);
    }
    if (policy.require_upper && !upper)
        findings.push_back({PolicyRule::MissingUppercase, "no uppercase letter"});
    if (policy.require_lower && !lower)
        findings.push_back({PolicyRule::MissingLowercase, "no lowercase letter"});
    if (policy.require_digit && !digit)
        findings.push_back({PolicyRule::MissingDigit, "no digit"});
    if (policy.require_special && !special)
        findings.push_back({PolicyRule::MissingSpecial, "no special character"});
    for (const auto& banned : policy.banned_substrings)
        if (contains_ci(password, banned))
            findings.push_back({PolicyRule::BannedSubstring,
                                "contains a banned substring (" +
                                    std::string(banned.begin(), banned.end()) + ")"});
    return findings;
}

DigitDistribution digit_distribution(const KeySpec& spec, std::size_t n_bits) {
    if (n_bits < 1000)
        throw std::invalid_argument("digit_distribution: need at least 1000 bits");
    DigitStream stream = make_stream(spec);
    DigitDistribution d;
    for (bool b : stream.next_bits(n_bits))
        (b ? d.ones : d.zeros)++;
    const double expected = static_cast<double>(n_bits) / 2.0;
    const double dz = static_cast<double>(d.zeros) - expected;
    const double d1 = static_cast<double>(d.ones) - expected;
    d.chi_square = (dz * dz + d1 * d1) / expected;
    return d;
}

}  // namespace tec
