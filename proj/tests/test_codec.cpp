#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <random>
#include <set>
#include <thread>

#include "support/oracles.hpp"
#include "tec/errors.hpp"
#include "tec/fib_coding.hpp"
#include "tec/stego_codec.hpp"

using namespace tec;

namespace {

const KeySpec kSpec{TranscendentalBase::PI, 1};

Bytes bytes_of(std::string_view s) {
    return Bytes(s.begin(), s.end());
}

}  // namespace

TEST_CASE("binomial agrees with Pascal's triangle") {
    for (unsigned n = 0; n <= 12; ++n)
        for (unsigned k = 0; k <= n; ++k)
            CHECK(binomial(n, k) == oracles::binomial_ref(n, k));
    CHECK(binomial(10, 2) == 45);
    CHECK(binomial(11, 3) == 165);
}

TEST_CASE("unranking is a lexicographic bijection") {
    CHECK(unrank_combination(0, 10, 2) == std::array<unsigned, 3>{0, 1, 0});

    for (const auto& [n, k] : {std::pair<unsigned, unsigned>{10, 2}, {11, 3}}) {
        std::set<std::array<unsigned, 3>> seen;
        std::array<unsigned, 3> prev{};
        for (std::uint64_t r = 0; r < binomial(n, k); ++r) {
            const auto c = unrank_combination(r, n, k);
            for (unsigned j = 0; j + 1 < k; ++j)
                CHECK(c[j] < c[j + 1]);
            CHECK(c[k - 1] < n);
            if (r > 0)
                CHECK(prev < c);  // strictly increasing = lexicographic order
            seen.insert(c);
            prev = c;
        }
        CHECK(seen.size() == binomial(n, k));
    }
    CHECK_THROWS_AS(unrank_combination(45, 10, 2), std::invalid_argument);
}

TEST_CASE("plan_from_stream draws count, rank and fillers in order") {
    DigitStream empty_stream = make_stream(kSpec);
    CHECK(plan_from_stream(empty_stream, 0).per_byte.empty());
    CHECK(empty_stream.cursor() == 0);

    // pi fraction bits start 0 01001000 01...: k = 2, rank 72 % 45 = 27
    // -> positions {3,7}, fillers {0,1}.
    DigitStream s = make_stream(kSpec);
    const InsertionPlan plan = plan_from_stream(s, 1);
    REQUIRE(plan.per_byte.size() == 1);
    CHECK(plan.per_byte[0].k == 2);
    CHECK(plan.per_byte[0].positions[0] == 3);
    CHECK(plan.per_byte[0].positions[1] == 7);
    CHECK(plan.per_byte[0].fillers[0] == false);
    CHECK(plan.per_byte[0].fillers[1] == true);
    CHECK(s.cursor() == 11);  // 1 + 8 + k
}

TEST_CASE("plans stay within the per-byte insertion bounds") {
    std::mt19937_64 rng(0x9a3e);
    for (int trial = 0; trial < 50; ++trial) {
        const std::size_t n = rng() % 64;
        DigitStream s = make_stream(KeySpec{TranscendentalBase::PI, oracles::random_seed(rng)});
        const InsertionPlan plan = plan_from_stream(s, n);
        REQUIRE(plan.per_byte.size() == n);
        std::uint64_t consumed_expected = 0;
        for (const auto& rec : plan.per_byte) {
            CHECK((rec.k == 2 || rec.k == 3));
            for (unsigned i = 0; i + 1 < rec.k; ++i)
                CHECK(rec.positions[i] < rec.positions[i + 1]);
            CHECK(rec.positions[rec.k - 1] < 8 + rec.k);
            consumed_expected += 9 + rec.k;
        }
        CHECK(plan.inserted_bits() >= 2 * n);
        CHECK(plan.inserted_bits() <= 3 * n);
        CHECK(s.cursor() == consumed_expected);  // keystream consumption accounting
    }
}

TEST_CASE("encode inserts fillers at the planned slots") {
    CHECK(encode(Bytes{}, InsertionPlan{}).bit_len == 0);

    InsertionPlan plan;
    plan.per_byte.push_back(ByteInsertion{2, {0, 1, 0}, {false, false, false}});
    const Ciphertext ct = encode(Bytes{0xFF}, plan);
    CHECK(ct.bit_len == 10);
    CHECK(ct.pad_bits() == 6);
    CHECK(ct.bytes == Bytes{0x3F, 0xC0});

    CHECK_THROWS_AS(encode(Bytes{1, 2}, plan), PlanMismatch);
}

TEST_CASE("encode length law against plan recomputation") {
    std::mt19937_64 rng(0x1e44);
    const auto msg = oracles::random_bytes(rng, 64);
    DigitStream s = make_stream(kSpec);
    const InsertionPlan plan = plan_from_stream(s, msg.size());
    const Ciphertext ct = encode(msg, plan);
    std::uint64_t expect = 0;
    for (const auto& rec : plan.per_byte)
        expect += 8 + rec.k;
    CHECK(ct.bit_len == expect);
    CHECK(ct.bit_len >= 64 * 10);
    CHECK(ct.bit_len <= 64 * 11);
}

TEST_CASE("decode strips fillers exactly") {
    InsertionPlan plan;
    plan.per_byte.push_back(ByteInsertion{2, {0, 1, 0}, {false, false, false}});
    Ciphertext ct;
    ct.bytes = {0x3F, 0xC0};
    ct.bit_len = 10;
    CHECK(decode(ct, plan) == Bytes{0xFF});

    SUBCASE("shortened bit length") {
        ct.bit_len = 9;
        ct.bytes = {0x3F, 0xC0};
        CHECK_THROWS_AS(decode(ct, plan), CiphertextTruncated);
    }
    SUBCASE("nonzero padding") {
        ct.bytes = {0x3F, 0xC1};
        CHECK_THROWS_AS(decode(ct, plan), MalformedPadding);
    }
    SUBCASE("exhaustive single-byte inverse") {
        for (unsigned b = 0; b < 256; ++b) {
            const Ciphertext c = encode(Bytes{static_cast<std::uint8_t>(b)}, plan);
            CHECK(decode(c, plan) == Bytes{static_cast<std::uint8_t>(b)});
        }
    }
}

TEST_CASE("seal/open roundtrip both fib flags") {
    std::mt19937_64 rng(0x0bb1);
    for (int trial = 0; trial < 200; ++trial) {
        const auto msg = oracles::random_bytes(rng, rng() % 96);
        const KeySpec spec{TranscendentalBase::PI, oracles::random_seed(rng)};
        for (bool fib : {false, true}) {
            const Ciphertext ct = seal(msg, spec, fib);
            CHECK(open(ct, spec, fib) == msg);
            if (!msg.empty())
                CHECK(ct.bit_len > 8 * msg.size());  // output always expands
        }
    }
}

TEST_CASE("seal of empty input is empty") {
    CHECK(seal(Bytes{}, kSpec, false).bit_len == 0);
    CHECK(seal(Bytes{}, kSpec, true).bit_len == 0);
    CHECK(open(Ciphertext{}, kSpec, false).empty());
    CHECK(open(Ciphertext{}, kSpec, true).empty());
}

TEST_CASE("fibonacci layer expands typical inputs") {
    // Not a universal law: short runs of small byte values can fib-code
    // under 8 bits each. On random bytes of length >= 16 the recoded stream
    // is longer in practice; cross-check each sample with the independent
    // per-byte length oracle before comparing ciphertext sizes.
    std::mt19937_64 rng(0xf1bb);
    for (int trial = 0; trial < 100; ++trial) {
        const auto msg = oracles::random_bytes(rng, 16 + rng() % 49);
        std::size_t fib_bits = 0;
        for (std::uint8_t b : msg)
            fib_bits += oracles::zeckendorf_codeword_ref(b + 1).size();
        REQUIRE(fib_bits > 8 * msg.size());

        const KeySpec spec{TranscendentalBase::E, oracles::random_seed(rng)};
        CHECK(seal(msg, spec, true).bit_len > seal(msg, spec, false).bit_len);
    }
}

TEST_CASE("wrong seed never opens to the original") {
    std::mt19937_64 rng(0xbad5eed);
    int errors = 0, wrong_plaintexts = 0;
    for (int trial = 0; trial < 1000; ++trial) {
        const auto msg = oracles::random_bytes(rng, 4 + rng() % 29);
        const BigInt x = oracles::random_seed(rng);
        const Ciphertext ct = seal(msg, KeySpec{TranscendentalBase::PI, x}, false);
        try {
            const Bytes other = open(ct, KeySpec{TranscendentalBase::PI, x + 1}, false);
            CHECK(other != msg);
            ++wrong_plaintexts;
        } catch (const Error&) {
            ++errors;
        }
    }
    CHECK(errors + wrong_plaintexts == 1000);
}

TEST_CASE("ciphertext length varies with the seed") {
    const auto msg = bytes_of("sixteen byte msg");
    REQUIRE(msg.size() == 16);
    std::set<std::uint64_t> lengths;
    for (unsigned long x = 1; x <= 20; ++x)
        lengths.insert(seal(msg, KeySpec{TranscendentalBase::PI, BigInt(x)}, false).bit_len);
    CHECK(lengths.size() >= 2);
}

TEST_CASE("TEC1 container is bit-exact") {
    const Ciphertext ct = seal(bytes_of("A"), kSpec, false);
    const Bytes raw = ciphertext_to_bytes(ct, false);
    // Frozen golden image: magic, flags, 10-bit length, payload 0x41 0x40
    // (hand-derived from the pi keystream prefix).
    const Bytes golden{'T', 'E', 'C', '1', 0x00, 0, 0, 0, 0, 0, 0, 0, 0x0A, 0x41, 0x40};
    CHECK(raw == golden);

    const CiphertextFile back = ciphertext_from_bytes(raw);
    CHECK(back.ct == ct);
    CHECK(back.use_fib == false);

    SUBCASE("flags byte carries the fib layer") {
        const Bytes withfib = ciphertext_to_bytes(ct, true);
        CHECK(withfib[4] == 0x01);
        CHECK(ciphertext_from_bytes(withfib).use_fib);
    }
    SUBCASE("parse rejections") {
        Bytes bad = raw;
        bad[0] = 'X';
        CHECK_THROWS_AS(ciphertext_from_bytes(bad), FrameError);

        bad = raw;
        bad[4] = 0x02;  // unknown flag
        CHECK_THROWS_AS(ciphertext_from_bytes(bad), FrameError);

        bad = raw;
        bad.pop_back();  // payload shorter than declared
        CHECK_THROWS_AS(ciphertext_from_bytes(bad), FrameError);

        bad = raw;
        bad.back() = 0x41;  // nonzero padding
        CHECK_THROWS_AS(ciphertext_from_bytes(bad), MalformedPadding);

        CHECK_THROWS_AS(ciphertext_from_bytes(Bytes{'T', 'E'}), FrameError);

        // a bit length near 2^64 must not wrap the payload-size arithmetic
        Bytes hostile{'T', 'E', 'C', '1', 0x00};
        hostile.insert(hostile.end(), 8, 0xFF);
        hostile.push_back(0x00);
        CHECK_THROWS_AS(ciphertext_from_bytes(hostile), FrameError);
    }
}

TEST_CASE("TEC1 file IO roundtrip") {
    const auto path = std::filesystem::temp_directory_path() / "tec_codec_test.tec";
    const Ciphertext ct = seal(bytes_of("file payload"), kSpec, true);
    write_ciphertext_file(path, ct, true);
    const CiphertextFile back = read_ciphertext_file(path);
    CHECK(back.ct == ct);
    CHECK(back.use_fib);
    CHECK(open(back.ct, kSpec, back.use_fib) == bytes_of("file payload"));
    std::filesystem::remove(path);
}

TEST_CASE("sealing is deterministic") {
    const auto msg = bytes_of("same input, same key");
    const KeySpec spec{TranscendentalBase::LN2, 20250811};
    CHECK(seal(msg, spec, false) == seal(msg, spec, false));
    CHECK(seal(msg, spec, true) == seal(msg, spec, true));
}

TEST_CASE("golden corpus files decode and re-seal bit-exactly") {
    const std::filesystem::path dir = TEC_GOLDEN_DIR;
    struct GoldenCase {
        const char* file;
        Bytes plaintext;
        KeySpec spec;
        bool use_fib;
    };
    const std::vector<GoldenCase> cases = {
        {"single_a_pi_x1.tec", bytes_of("A"), KeySpec{TranscendentalBase::PI, 1}, false},
        {"abc_e_x424242.tec", bytes_of("abc"), KeySpec{TranscendentalBase::E, 424242}, false},
        {"password_fib_ident.tec", bytes_of("password!"),
         KeySpec{TranscendentalBase::PI, derive_seed("tabby", 1700000000000)}, true},
    };
    for (const auto& g : cases) {
        CAPTURE(g.file);
        const CiphertextFile file = read_ciphertext_file(dir / g.file);
        CHECK(file.use_fib == g.use_fib);
        CHECK(open(file.ct, g.spec, file.use_fib) == g.plaintext);

        std::ifstream in(dir / g.file, std::ios::binary);
        const Bytes on_disk((std::istreambuf_iterator<char>(in)),
                            std::istreambuf_iterator<char>());
        CHECK(ciphertext_to_bytes(seal(g.plaintext, g.spec, g.use_fib), g.use_fib) == on_disk);
    }
}

TEST_CASE("concurrent sealing under distinct specs") {
    // encode/decode/seal/open are pure; the shared constant cache is the
    // only cross-stream state and must tolerate parallel use.
    std::vector<std::thread> workers;
    std::array<bool, 4> ok{};
    for (unsigned t = 0; t < 4; ++t) {
        workers.emplace_back([t, &ok] {
            std::mt19937_64 rng(1000 + t);
            bool all = true;
            for (int i = 0; i < 25; ++i) {
                const auto msg = oracles::random_bytes(rng, 1 + rng() % 48);
                const KeySpec spec{static_cast<TranscendentalBase>(t % 3),
                                   oracles::random_seed(rng)};
                all = all && open(seal(msg, spec, i % 2 == 0), spec, i % 2 == 0) == msg;
            }
            ok[t] = all;
        });
    }
    for (auto& w : workers)
        w.join();
    for (bool v : ok)
        CHECK(v);
}

TEST_CASE("open rejects a bit length that exhausts mid-block") {
    Ciphertext ct = seal(bytes_of("abc"), kSpec, false);
    ct.bit_len -= 1;
    // re-zero the now-padding bit so only the truncation error can fire
    const std::size_t i = ct.bit_len;
    ct.bytes[i >> 3] &= static_cast<std::uint8_t>(~(1u << (7 - (i & 7))));
    CHECK_THROWS_AS(open(ct, kSpec, false), CiphertextTruncated);
}
