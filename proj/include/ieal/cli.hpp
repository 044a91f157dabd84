#pragma once

#include <cmath>
#include <cstdint>
#include <iomanip>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ieal/attacks.hpp"
#include "ieal/cipher.hpp"
#include "ieal/image_io.hpp"
#include "ieal/keyspace.hpp"
#include "ieal/number_theory.hpp"

namespace ieal::cli {

namespace detail {

inline std::uint64_t parse_uint(const std::string& text, const char* what) {
  if (text.empty() ||
      text.find_first_not_of("0123456789") != std::string::npos) {
    throw std::invalid_argument(std::string(what) +
                                " must be a non-negative integer, got '" +
                                text + "'");
  }
  try {
    return std::stoull(text);
  } catch (const std::out_of_range&) {
    throw std::invalid_argument(std::string(what) + " out of range: '" +
                                text + "'");
  }
}

inline Key parse_key(const std::string& text) {
  const auto comma = text.find(',');
  if (comma == std::string::npos) {
    throw std::invalid_argument("key must be T,S, got '" + text + "'");
  }
  return Key{parse_uint(text.substr(0, comma), "key T"),
             parse_uint(text.substr(comma + 1), "key S")};
}

inline std::string pow2_string(std::uint64_t value) {
  std::ostringstream os;
  os << "2^" << std::fixed << std::setprecision(2)
     << std::log2(static_cast<double>(value));
  return os.str();
}

inline void print_keyspace(const std::vector<int>& sizes, bool csv,
                           std::ostream& out) {
  if (csv) out << "N,m,Ks,log2_Ks,weak_pr,bound_case\n";
  for (const int n : sizes) {
    const auto r = keyspace::key_space_size(n);
    if (csv) {
      out << r.size << ',' << r.period << ',' << r.key_space_size << ','
          << std::fixed << std::setprecision(2)
          << std::log2(static_cast<double>(r.key_space_size)) << ','
          << r.weak_key_probability << ','
          << number_theory::to_string(r.bound_case) << '\n';
    } else {
      out << "N=" << r.size << " m=" << r.period
          << " Ks=" << r.key_space_size << " (~"
          << pow2_string(r.key_space_size) << ")"
          << " weak_pr=" << r.weak_key_probability
          << " bound_case=" << number_theory::to_string(r.bound_case)
          << '\n';
    }
  }
}

inline void print_dictionary(bool csv, std::ostream& out) {
  const auto stats = attacks::dictionary_stats();
  if (csv) out << "size,positions,probability\n";
  std::uint64_t total = 0;
  for (const auto& [size, positions] : stats.positions_by_size) {
    total += positions;
    if (csv) {
      out << size << ',' << positions << ',' << std::fixed
          << std::setprecision(6)
          << boost::rational_cast<double>(stats.probability(size)) << '\n';
    } else {
      // over the full 384-position cycle, not reduced
      out << "size=" << size << " positions=" << positions
          << " pr=" << positions << "/384 (" << std::fixed
          << std::setprecision(4)
          << boost::rational_cast<double>(stats.probability(size)) << ")\n";
    }
  }
  if (!csv) out << "total_positions=" << total << '\n';
}

}  // namespace detail

/// Parses and runs one subcommand. Returns 0 on success, 1 when an attack
/// ran but failed, 2 on usage or input errors.
inline int run(const std::vector<std::string>& args, std::ostream& out,
               std::ostream& err) {
  CLI::App app{"IEAL image cipher and cryptanalysis toolkit", "ieal"};
  app.require_subcommand(1);
  bool timings = false;
  app.add_flag("--timings", timings,
               "include elapsed_ms in reports (off by default so outputs "
               "are byte-reproducible)");

  int code = 0;
  const auto finish = [&](const attacks::AttackReport& report) {
    out << report.to_text(timings);
    if (!report.success) code = 1;
  };

  struct {
    std::string in, out, key;
  } enc, dec;
  auto* enc_cmd = app.add_subcommand("encrypt", "Encrypt a P5 PGM image");
  enc_cmd->add_option("--in", enc.in, "plaintext image")->required();
  enc_cmd->add_option("--out", enc.out, "ciphertext image")->required();
  enc_cmd->add_option("--key", enc.key, "key as T,S")->required();
  enc_cmd->callback([&] {
    image_io::save_image(
        enc.out, encrypt(image_io::load_image(enc.in),
                         detail::parse_key(enc.key)));
  });
  auto* dec_cmd = app.add_subcommand("decrypt", "Decrypt a P5 PGM image");
  dec_cmd->add_option("--in", dec.in, "ciphertext image")->required();
  dec_cmd->add_option("--out", dec.out, "plaintext image")->required();
  dec_cmd->add_option("--key", dec.key, "key as T,S")->required();
  dec_cmd->callback([&] {
    image_io::save_image(
        dec.out, decrypt(image_io::load_image(dec.in),
                         detail::parse_key(dec.key)));
  });

  std::vector<int> keyspace_sizes;
  bool dictionary = false, csv = false;
  auto* rep = app.add_subcommand("report",
                                 "Key-space and dictionary-size tables");
  rep->add_option("--keyspace", keyspace_sizes,
                  "image sizes N1,N2,... for the key-space table")
      ->delimiter(',');
  rep->add_flag("--dictionary", dictionary,
                "dictionary-size distribution over the keystream cycle");
  rep->add_flag("--csv", csv, "emit CSV instead of aligned text");
  rep->callback([&] {
    if (keyspace_sizes.empty() == !dictionary) {
      throw std::invalid_argument(
          "report: pass exactly one of --keyspace or --dictionary");
    }
    if (dictionary) {
      detail::print_dictionary(csv, out);
    } else {
      detail::print_keyspace(keyspace_sizes, csv, out);
    }
  });

  auto* atk = app.add_subcommand("attack", "Run a cryptanalysis attack");
  atk->require_subcommand(1);

  struct {
    std::string in, out, scorer = "smoothness";
    unsigned workers = 0;
  } brute;
  auto* brute_cmd =
      atk->add_subcommand("brute", "Exhaust the canonical key space");
  brute_cmd->add_option("--in", brute.in, "ciphertext image")->required();
  brute_cmd->add_option("--out", brute.out, "write recovered plaintext here");
  brute_cmd->add_option("--workers", brute.workers,
                        "worker threads (0 = hardware concurrency)");
  brute_cmd->add_option("--scorer", brute.scorer,
                        "smoothness | match:FILE (exact match against FILE)");
  brute_cmd->callback([&] {
    const Image cipher = image_io::load_image(brute.in);
    attacks::PlaintextScorer scorer;
    if (brute.scorer == "smoothness") {
      scorer = attacks::smoothness_scorer();
    } else if (brute.scorer.rfind("match:", 0) == 0) {
      scorer = attacks::exact_match_scorer(
          image_io::load_image(brute.scorer.substr(6)));
    } else {
      throw std::invalid_argument("unknown scorer '" + brute.scorer + "'");
    }
    const auto report = attacks::brute_force(cipher, scorer, brute.workers);
    finish(report);
    if (!brute.out.empty() && report.recovered_plaintext) {
      image_io::save_image(brute.out, *report.recovered_plaintext);
    }
  });

  struct {
    std::string in, out, key;
    std::uint64_t max_steps = 0;
  } cyc;
  auto* cyc_cmd = atk->add_subcommand(
      "cycle", "Recover the plaintext by repeated re-encryption");
  cyc_cmd->add_option("--in", cyc.in, "ciphertext image")->required();
  cyc_cmd->add_option("--key-oracle", cyc.key,
                      "hidden key T,S for the simulated oracle")
      ->required();
  cyc_cmd->add_option("--max-steps", cyc.max_steps,
                      "step budget (0 = 6N default)");
  cyc_cmd->add_option("--out", cyc.out, "write recovered plaintext here");
  cyc_cmd->callback([&] {
    const Image cipher = image_io::load_image(cyc.in);
    auto oracle =
        attacks::make_encryption_oracle(detail::parse_key(cyc.key));
    const auto report = attacks::cycle_attack(oracle, cipher, cyc.max_steps);
    finish(report);
    if (!cyc.out.empty() && report.recovered_plaintext) {
      image_io::save_image(cyc.out, *report.recovered_plaintext);
    }
  });

  struct {
    std::string key;
    int size = 0;
  } cpa;
  auto* cpa_cmd = atk->add_subcommand(
      "cpa", "Chosen-plaintext key recovery against an oracle");
  cpa_cmd->add_option("--key-oracle", cpa.key,
                      "hidden key T,S for the simulated oracle")
      ->required();
  cpa_cmd->add_option("--size", cpa.size, "image side length N")->required();
  cpa_cmd->callback([&] {
    if (cpa.size < 1) {
      throw std::invalid_argument("--size must be >= 1");
    }
    auto oracle =
        attacks::make_encryption_oracle(detail::parse_key(cpa.key));
    const auto report = attacks::cpa_full(oracle, cpa.size);
    if (report.recovered_key) {
      out << "mask_S=" << report.recovered_key->s << '\n'
          << "permutation_T=" << report.recovered_key->t << '\n';
    }
    finish(report);
  });

  struct {
    std::string plain, cipher;
  } kpa;
  auto* kpa_cmd = atk->add_subcommand(
      "kpa", "Known-plaintext key recovery from one pair");
  kpa_cmd->add_option("--plain", kpa.plain, "known plaintext image")
      ->required();
  kpa_cmd->add_option("--cipher", kpa.cipher, "matching ciphertext image")
      ->required();
  kpa_cmd->callback([&] {
    finish(attacks::kpa(image_io::load_image(kpa.plain),
                        image_io::load_image(kpa.cipher)));
  });

  struct {
    std::string key;
    std::vector<std::uint64_t> sizes;
    double noise = 0.0;
    std::uint32_t seed = 1;
  } tim;
  auto* tim_cmd = atk->add_subcommand(
      "timing", "Estimate T from simulated encryption timings");
  tim_cmd->add_option("--key-oracle", tim.key,
                      "hidden key T,S for the simulated instrumented oracle")
      ->required();
  tim_cmd->add_option("--sizes", tim.sizes,
                      "image side lengths n1,n2,... to time")
      ->required()
      ->delimiter(',');
  tim_cmd->add_option("--noise", tim.noise,
                      "multiplicative noise fraction (default 0)");
  tim_cmd->add_option("--seed", tim.seed, "noise seed (default 1)");
  tim_cmd->callback([&] {
    const Key hidden = detail::parse_key(tim.key);
    std::vector<std::uint64_t> pixels;
    pixels.reserve(tim.sizes.size());
    for (const auto n : tim.sizes) pixels.push_back(n * n);
    const auto samples = attacks::simulate_timing_samples(
        hidden, pixels, 1.0, 100.0, tim.noise, tim.seed);
    // Calibration: the attacker times their own encryption at a T they
    // chose, under the same cost model and noise level.
    const std::uint64_t calibration_t = 3;
    const auto calibration = attacks::simulate_timing_samples(
        Key{calibration_t, 0}, pixels, 1.0, 100.0, tim.noise, tim.seed + 1);
    const auto model = attacks::timing_estimate(
        samples, attacks::calibrate_pixel_cost(calibration, calibration_t));
    out << "estimated_T=" << model.estimated_t << '\n'
        << "pixel_cost=" << model.pixel_cost << '\n'
        << "overhead=" << model.overhead << '\n'
        << "residual=" << model.residual << '\n';
    if (model.clamped) out << "clamped=1\n";
  });

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e, out, err);
    return rc == 0 ? 0 : 2;
  } catch (const attacks::AttackError& e) {
    err << "attack failed: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }
  return code;
}

}  // namespace ieal::cli
