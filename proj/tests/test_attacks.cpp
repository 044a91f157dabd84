#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <cstdint>
#include <random>
#include <string>
#include <type_traits>
#include <vector>

#include "ieal/attacks.hpp"
#include "ieal/image_io.hpp"
#include "ieal/keyspace.hpp"
#include "ieal/number_theory.hpp"
#include "support/oracles.hpp"

namespace atk = ieal::attacks;
namespace io = ieal::image_io;
namespace nt = ieal::number_theory;
using ieal::Image;
using ieal::Key;

namespace {

std::string fixture_path(const char* name) {
  return std::string(IEAL_FIXTURE_DIR) + "/" + name;
}

}  // namespace

// The attack entry points receive an oracle or ciphertext material, never the
// hidden key itself.
static_assert(std::is_invocable_r_v<atk::AttackReport,
                                    decltype(&atk::cycle_attack),
                                    atk::EncryptionOracle&, const Image&,
                                    std::uint64_t>);
static_assert(!std::is_invocable_v<decltype(&atk::cycle_attack), const Key&,
                                   const Image&, std::uint64_t>);
static_assert(std::is_invocable_r_v<atk::AttackReport,
                                    decltype(&atk::cpa_full),
                                    atk::EncryptionOracle&, int>);
static_assert(!std::is_invocable_v<decltype(&atk::cpa_full), const Key&,
                                   int>);
static_assert(std::is_invocable_r_v<atk::AttackReport,
                                    decltype(&atk::brute_force),
                                    const Image&, const atk::PlaintextScorer&,
                                    unsigned>);
static_assert(std::is_invocable_r_v<atk::AttackReport, decltype(&atk::kpa),
                                    const Image&, const Image&>);

TEST_CASE("encryption oracle counts queries and stays deterministic",
          "[attacks]") {
  auto oracle = atk::make_encryption_oracle(Key{3, 29});
  CHECK(oracle.queries() == 0);
  const Image img = testsupport::random_image(8, 1);
  const Image a = oracle(img);
  const Image b = oracle(img);
  CHECK(oracle.queries() == 2);
  CHECK(a == b);
  CHECK(a == ieal::encrypt(img, Key{3, 29}));
  oracle.reset_queries();
  CHECK(oracle.queries() == 0);
}

TEST_CASE("brute force with an exact-match scorer recovers a working key",
          "[attacks]") {
  const Image plain = testsupport::random_image(16, 2);
  const Image cipher = ieal::encrypt(plain, Key{7, 100});
  const auto report =
      atk::brute_force(cipher, atk::exact_match_scorer(plain), 1);
  REQUIRE(report.success);
  REQUIRE(report.recovered_key.has_value());
  CHECK(ieal::decrypt(cipher, report.recovered_key->key()) == plain);
  CHECK(*report.recovered_plaintext == plain);
}

TEST_CASE("brute force with the smoothness scorer breaks a natural image",
          "[attacks]") {
  const Image plain = io::load_image(fixture_path("camera32.pgm"));
  const Image cipher = ieal::encrypt(plain, Key{5, 100});
  const auto report = atk::brute_force(cipher, atk::smoothness_scorer(), 1);
  REQUIRE(report.success);
  CHECK(*report.recovered_plaintext == plain);
  CHECK(report.recovered_key->t == 5);
  CHECK(report.recovered_key->s == 100);
  CHECK(*report.candidates_examined == 24ull * 384);  // m(32) = 24
}

TEST_CASE("parallel brute force reports exactly the serial result",
          "[attacks]") {
  const Image plain = io::load_image(fixture_path("camera32.pgm"));
  const Image cipher = ieal::encrypt(plain, Key{17, 300});
  const auto serial = atk::brute_force(cipher, atk::smoothness_scorer(), 1);
  const auto parallel = atk::brute_force(cipher, atk::smoothness_scorer(), 3);
  CHECK(serial.recovered_key == parallel.recovered_key);
  CHECK(*serial.recovered_plaintext == *parallel.recovered_plaintext);
  CHECK(*serial.candidates_examined == *parallel.candidates_examined);
}

TEST_CASE("cycle attack reproduces the worked 144 example", "[attacks]") {
  const Image plain = io::load_image(fixture_path("camera144.pgm"));
  const Key hidden{11, 68};
  auto oracle = atk::make_encryption_oracle(hidden);
  const Image cipher = ieal::encrypt(plain, hidden);
  const auto report = atk::cycle_attack(oracle, cipher);
  REQUIRE(report.success);
  CHECK(*report.cycle_n == 24);
  CHECK(report.queries == 24);
  CHECK(report.candidate_set == std::vector<std::uint64_t>{1, 5, 7, 11});
  CHECK(*report.recovered_plaintext == plain);
}

TEST_CASE("cycle length follows 2m/gcd(T,m) at N=8", "[attacks]") {
  const Image plain = testsupport::random_image(8, 3);
  const std::uint64_t m = nt::arnold_period(8).period;  // 6
  for (std::uint64_t t = 0; t < m; ++t) {
    const Key hidden{t, 13 * t + 5};
    auto oracle = atk::make_encryption_oracle(hidden);
    const Image cipher = ieal::encrypt(plain, hidden);
    const auto report = atk::cycle_attack(oracle, cipher);
    REQUIRE(report.success);
    CHECK(*report.cycle_n == 2 * m / std::gcd(t, m));
    CHECK(*report.recovered_plaintext == plain);
    CHECK(std::find(report.candidate_set.begin(), report.candidate_set.end(),
                    t) != report.candidate_set.end());
  }
}

TEST_CASE("weak keys collapse the cycle to two re-encryptions", "[attacks]") {
  const Image plain = io::load_image(fixture_path("camera276.pgm"));
  const Key hidden{48, 202};  // m(276) = 24, so T is weak
  auto oracle = atk::make_encryption_oracle(hidden);
  const Image cipher = ieal::encrypt(plain, hidden);
  const auto report = atk::cycle_attack(oracle, cipher);
  REQUIRE(report.success);
  CHECK(*report.cycle_n == 2);
  CHECK(*report.recovered_plaintext == plain);
  // candidate set for n = 2 is the weak-key class {0}
  CHECK(report.candidate_set == std::vector<std::uint64_t>{0});
}

TEST_CASE("cycle attack fails cleanly when the budget is too small",
          "[attacks]") {
  const Image plain = testsupport::random_image(16, 4);
  const Key hidden{1, 0};  // n = 2*12/gcd(1,12) = 24
  auto oracle = atk::make_encryption_oracle(hidden);
  const Image cipher = ieal::encrypt(plain, hidden);
  const auto report = atk::cycle_attack(oracle, cipher, 3);
  CHECK_FALSE(report.success);
  CHECK(report.queries == 3);
  CHECK_FALSE(report.recovered_plaintext.has_value());
  CHECK_FALSE(report.notes.empty());
}

TEST_CASE("cpa mask recovery returns the keystream and its alignment",
          "[attacks]") {
  {
    auto oracle = atk::make_encryption_oracle(Key{9, 0});
    const auto mask = atk::cpa_recover_mask(oracle, 20);
    CHECK(oracle.queries() == 1);
    CHECK(mask.start == 0);
    REQUIRE(mask.bytes.size() == 400);
    CHECK(mask.bytes[0] == 2);
    CHECK(mask.bytes[1] == 1);
    CHECK(mask.bytes[2] == 3);
  }
  {
    auto oracle = atk::make_encryption_oracle(Key{5, 127});
    const auto mask = atk::cpa_recover_mask(oracle, 20);
    CHECK(mask.start == 127);
    CHECK(mask.bytes[0] == 109);
    CHECK(mask.bytes == ieal::keystream(127, 400));
  }
  {
    auto oracle = atk::make_encryption_oracle(Key{7, 391});
    const auto mask = atk::cpa_recover_mask(oracle, 20);
    CHECK(mask.start == 7);  // 391 mod 384
    CHECK(mask.bytes == ieal::keystream(391, 400));
  }
}

TEST_CASE("cpa mask recovery rejects a non-IEAL oracle", "[attacks]") {
  atk::EncryptionOracle bogus([](const Image& img) {
    Image out = img;
    for (auto& p : out.pixels()) p = static_cast<std::uint8_t>(p + 101);
    return out;
  });
  CHECK_THROWS_AS(atk::cpa_recover_mask(bogus, 20), atk::AttackError);
}

TEST_CASE("cpa permutation recovery reads back the scrambling map",
          "[attacks]") {
  auto oracle = atk::make_encryption_oracle(Key{5, 9});
  const auto mask = atk::cpa_recover_mask(oracle, 16);
  const auto fwd = atk::cpa_recover_permutation(oracle, mask.bytes, 16);
  CHECK(oracle.queries() == 2);  // N=16: one digit is enough
  CHECK(fwd == ieal::arnold_map_table(16, 5));
}

TEST_CASE("cpa query budget follows the digit formula", "[attacks]") {
  CHECK(atk::cpa_query_bound(16) == 2);
  CHECK(atk::cpa_query_bound(20) == 3);
  CHECK(atk::cpa_query_bound(256) == 3);
  CHECK(atk::cpa_query_bound(1024) == 4);
  CHECK(atk::cpa_query_bound(1) == 1);
}

TEST_CASE("full cpa recovers the canonical key and a working decryptor",
          "[attacks]") {
  const std::vector<std::pair<int, Key>> cases{
      {16, Key{7, 200}},
      {20, Key{25, 119}},
      {144, Key{25, 500}},
  };
  for (const auto& [size, hidden] : cases) {
    auto oracle = atk::make_encryption_oracle(hidden);
    const auto report = atk::cpa_full(oracle, size);
    REQUIRE(report.success);
    REQUIRE(report.recovered_key.has_value());
    const std::uint64_t m = nt::arnold_period(size).period;
    CHECK(report.recovered_key->t == hidden.t % m);
    CHECK(report.recovered_key->s == hidden.s % 384);
    CHECK(report.queries <= atk::cpa_query_bound(size));
    const Image fresh = testsupport::random_image(size, 700 + size);
    REQUIRE(report.decryptor.has_value());
    CHECK(report.decryptor->decrypt(ieal::encrypt(fresh, hidden)) == fresh);
  }
}

TEST_CASE("cpa against a weak key sees the identity permutation",
          "[attacks]") {
  auto oracle = atk::make_encryption_oracle(Key{0, 50});
  const auto report = atk::cpa_full(oracle, 20);
  REQUIRE(report.success);
  CHECK(report.recovered_key->t == 0);
  CHECK(report.recovered_key->s == 50);
  for (std::uint32_t p = 0; p < 400; ++p) {
    CHECK(report.decryptor->forward[p] == p);
  }
}

TEST_CASE("permutation decryptor validates image size", "[attacks]") {
  auto oracle = atk::make_encryption_oracle(Key{3, 3});
  const auto report = atk::cpa_full(oracle, 16);
  CHECK_THROWS_AS(report.decryptor->decrypt(Image::filled(8, 0)),
                  atk::AttackError);
}

TEST_CASE("kpa walks through the 276 example end to end", "[attacks]") {
  const Image plain = io::load_image(fixture_path("camera276.pgm"));
  const Key hidden{6, 127};
  const Image cipher = ieal::encrypt(plain, hidden);
  const auto report = atk::kpa(plain, cipher);
  REQUIRE(report.success);
  CHECK(*report.s0 == 109);
  CHECK(report.candidate_set == std::vector<std::uint64_t>{127});
  CHECK(*report.cycle_n == 18);  // T = m - n = 24 - 18 = 6
  CHECK(report.recovered_key->t == 6);
  CHECK(report.recovered_key->s == 127);
  CHECK_FALSE(report.degenerate_histogram);
  CHECK(ieal::decrypt(cipher, report.recovered_key->key()) == plain);
}

TEST_CASE("kpa handles the weak-key class via n = m", "[attacks]") {
  const Image plain = testsupport::random_image(16, 6);
  const Key hidden{0, 5};
  const Image cipher = ieal::encrypt(plain, hidden);
  const auto report = atk::kpa(plain, cipher);
  REQUIRE(report.success);
  CHECK(*report.cycle_n == 12);  // m(16)
  CHECK(report.recovered_key->t == 0);
  CHECK(ieal::decrypt(cipher, report.recovered_key->key()) == plain);
}

TEST_CASE("kpa dictionary always contains the true S", "[attacks]") {
  const Image plain = testsupport::random_image(16, 8);
  for (const std::uint64_t s : {0u, 127u, 200u, 383u}) {
    const Key hidden{3, s};
    const auto report = atk::kpa(plain, ieal::encrypt(plain, hidden));
    CHECK(std::find(report.candidate_set.begin(), report.candidate_set.end(),
                    s) != report.candidate_set.end());
    REQUIRE(report.success);
    CHECK(report.recovered_key->s == s);
  }
}

TEST_CASE("kpa recovers random keys against a photographic fixture",
          "[attacks]") {
  const Image plain = io::load_image(fixture_path("camera64.pgm"));
  std::mt19937 rng(10);
  for (int k = 0; k < 10; ++k) {
    const Key hidden{rng() % 1000000, rng() % 1000000};
    const Image cipher = ieal::encrypt(plain, hidden);
    const auto report = atk::kpa(plain, cipher);
    REQUIRE(report.success);
    CHECK(ieal::decrypt(cipher, report.recovered_key->key()) == plain);
  }
}

TEST_CASE("kpa flags flat-histogram plaintexts and still succeeds",
          "[attacks]") {
  std::vector<std::uint8_t> px(256);
  for (int k = 0; k < 256; ++k) px[k] = static_cast<std::uint8_t>(k);
  const Image plain(16, std::move(px));
  const Key hidden{4, 40};
  const Image cipher = ieal::encrypt(plain, hidden);
  const auto report = atk::kpa(plain, cipher);
  REQUIRE(report.success);
  CHECK(report.degenerate_histogram);
  CHECK(ieal::decrypt(cipher, report.recovered_key->key()) == plain);
}

TEST_CASE("kpa fails on a pair that is not an encryption", "[attacks]") {
  const Image plain = testsupport::random_image(16, 60);
  const Image unrelated = testsupport::random_image(16, 61);
  const auto report = atk::kpa(plain, unrelated);
  CHECK_FALSE(report.success);
  CHECK_FALSE(report.recovered_key.has_value());
  CHECK_THROWS_AS(atk::kpa(plain, testsupport::random_image(8, 62)),
                  std::invalid_argument);
}

TEST_CASE("dictionary size distribution over the keystream cycle",
          "[attacks]") {
  const auto stats = atk::dictionary_stats();
  const std::map<std::uint64_t, std::uint64_t> expected{
      {1, 64}, {2, 64}, {3, 192}, {16, 64}};
  CHECK(stats.positions_by_size == expected);
  CHECK(stats.probability(3) == nt::Rational(1, 2));
  CHECK(stats.probability(16) == nt::Rational(64, 384));
  CHECK(stats.probability(4) == nt::Rational(0));
  std::uint64_t total = 0;
  for (const auto& [size, positions] : stats.positions_by_size) {
    total += positions;
  }
  CHECK(total == 384);
}

TEST_CASE("timing estimate is exact on noiseless samples", "[attacks]") {
  const std::vector<std::uint64_t> sizes{64ull * 64, 128ull * 128,
                                         256ull * 256};
  const auto calibration =
      atk::simulate_timing_samples(Key{3, 0}, sizes, 2.5, 7.0, 0.0, 1);
  const double ref = atk::calibrate_pixel_cost(calibration, 3);
  CHECK(ref == Catch::Approx(2.5));
  for (const std::uint64_t t : {0u, 7u, 12u}) {
    const auto samples =
        atk::simulate_timing_samples(Key{t, 90}, sizes, 2.5, 7.0, 0.0, 2);
    const auto model = atk::timing_estimate(samples, ref);
    CHECK(model.estimated_t == t);
    CHECK_FALSE(model.clamped);
    CHECK(model.pixel_cost == Catch::Approx(2.5));
    CHECK(model.overhead == Catch::Approx(7.0).margin(1e-6));
    CHECK(model.residual == Catch::Approx(0.0).margin(1e-6));
  }
}

TEST_CASE("timing estimate survives 5 percent noise", "[attacks]") {
  // two-cluster design: multiplicative noise rewards extreme sizes
  std::vector<std::uint64_t> sizes;
  for (int k = 0; k < 10; ++k) sizes.push_back(32ull * 32);
  for (int k = 0; k < 10; ++k) sizes.push_back(640ull * 640);
  int correct = 0;
  for (std::uint32_t trial = 0; trial < 20; ++trial) {
    const auto calibration = atk::simulate_timing_samples(
        Key{3, 0}, sizes, 1.0, 50.0, 0.05, 2000 + trial);
    const double ref = atk::calibrate_pixel_cost(calibration, 3);
    const auto samples = atk::simulate_timing_samples(
        Key{12, 64}, sizes, 1.0, 50.0, 0.05, 1000 + trial);
    if (atk::timing_estimate(samples, ref).estimated_t == 12) ++correct;
  }
  CHECK(correct >= 18);
}

TEST_CASE("timing estimate rejects degenerate sample sets", "[attacks]") {
  CHECK_THROWS_AS(atk::timing_estimate({{100, 5.0}}, 1.0),
                  std::invalid_argument);
  CHECK_THROWS_AS(atk::timing_estimate({{100, 5.0}, {100, 6.0}}, 1.0),
                  std::invalid_argument);
  CHECK_THROWS_AS(atk::timing_estimate({{100, 5.0}, {200, 6.0}}, 0.0),
                  std::invalid_argument);
}

TEST_CASE("timing estimate clamps negative slopes to T = 0", "[attacks]") {
  // duration barely grows with n, so slope/ref - 1 < -0.5
  const std::vector<atk::TimingSample> samples{{100, 10.0}, {200, 14.0},
                                               {300, 18.0}};
  const auto model = atk::timing_estimate(samples, 1.0);
  CHECK(model.estimated_t == 0);
  CHECK(model.clamped);
}

TEST_CASE("attack reports render text and key-value forms", "[attacks]") {
  const Image plain = io::load_image(fixture_path("camera64.pgm"));
  const Key hidden{6, 127};
  const Image cipher = ieal::encrypt(plain, hidden);
  const auto report = atk::kpa(plain, cipher);
  const std::string text = report.to_text();
  CHECK(text.find("attack=kpa") != std::string::npos);
  CHECK(text.find("s0=109") != std::string::npos);
  CHECK(text.find("T=6 S=127 (period m=48)") != std::string::npos);
  CHECK(text.find("elapsed_ms=") == std::string::npos);
  CHECK(report.to_text(true).find("elapsed_ms=") != std::string::npos);
  const std::string kv = report.to_kv();
  CHECK(kv.find("attack=kpa\n") != std::string::npos);
  CHECK(kv.find("key_T=6\n") != std::string::npos);
  CHECK(kv.find("key_S=127\n") != std::string::npos);
  CHECK(kv.find("queries=0\n") != std::string::npos);
  CHECK(kv.find("cycle_n=") != std::string::npos);
  CHECK(kv.find("candidates=127") != std::string::npos);
  CHECK(kv.find("elapsed_ms=") == std::string::npos);
  CHECK(report.to_kv(true).find("elapsed_ms=") != std::string::npos);
}
