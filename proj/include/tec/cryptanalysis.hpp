#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "tec/password_store.hpp"
#include "tec/stego_codec.hpp"

namespace tec {

// Brute-force work models. ClaimedMin/ClaimedMax are the published per-byte
// bounds 4^n and 8^n; ExactPositions counts position sets, 210^n when the
// per-byte k is unknown (C(10,2) + C(11,3) = 210).
enum class TryCountModel { ClaimedMin, ClaimedMax, ExactPositions };

BigInt claimed_try_count(std::uint64_t n_chars, TryCountModel model);

// Position sets for a known plan: product of C(8 + k_i, k_i).
BigInt exact_try_count(const InsertionPlan& plan);

// Sum over k-assignments consistent with bit_len of the per-assignment
// position products; what a full enumeration of an n-byte ciphertext costs.
BigInt position_try_count(std::size_t n_bytes, std::uint64_t bit_len);

struct CandidateSet {
    std::set<Bytes> candidates;   // deduplicated, sorted
    std::uint64_t enumerated = 0; // decode attempts before dedup
};

// Exhausts every insertion hypothesis for an n-byte ciphertext (n <= 3).
// With use_fib, candidates that fail Fibonacci decoding are dropped but
// still counted as attempts.
CandidateSet enumerate_candidates(const Ciphertext& ct, std::size_t n_bytes, bool use_fib);

using Validator = std::function<bool(const Bytes&)>;

bool printable_ascii(const Bytes& candidate);
Validator wordlist_validator(std::set<Bytes> words);

struct FalsePositiveReport {
    std::uint64_t total = 0;
    std::uint64_t valid = 0;
    bool contains_truth = false;
};

// valid > 1 means brute force cannot single out the true plaintext.
FalsePositiveReport false_positive_report(const CandidateSet& cs, const Validator& validator,
                                          const std::optional<Bytes>& truth = std::nullopt);

struct DictionaryMatch {
    std::size_t word_index = 0;
    std::size_t spec_index = 0;
};

// Re-seals every (word, spec) pair and compares bit-exactly with the
// record's stored ciphertext.
std::vector<DictionaryMatch> dictionary_attack(const UserRecord& record,
                                               const std::vector<Bytes>& wordlist,
                                               const std::vector<KeySpec>& spec_hypotheses);

struct PasswordPolicy {
    std::size_t min_len = 8;
    std::size_t max_len = 64;
    bool require_upper = false;
    bool require_lower = false;
    bool require_digit = false;
    bool require_special = false;
    std::vector<Bytes> banned_substrings;  // matched case-insensitively

    static PasswordPolicy length_only(std::size_t min_len, std::size_t max_len);
    static PasswordPolicy standard();  // [8,64] plus all four character classes
};

enum class PolicyRule {
    TooShort,
    TooLong,
    MissingUppercase,
    MissingLowercase,
    MissingDigit,
    MissingSpecial,
    BannedSubstring,
};

struct PolicyFinding {
    PolicyRule rule;
    std::string detail;
};

std::string describe(const PolicyFinding& finding);

// Empty result means the password complies.
std::vector<PolicyFinding> check_policy(const Bytes& password, const PasswordPolicy& policy);

struct DigitDistribution {
    std::uint64_t zeros = 0;
    std::uint64_t ones = 0;
    double chi_square = 0.0;  // 1 degree of freedom vs the uniform model
};

// Informational diagnostic over the first n_bits of a keystream (n >= 1000).
DigitDistribution digit_distribution(const KeySpec& spec, std::size_t n_bits);

}  // namespace tec
