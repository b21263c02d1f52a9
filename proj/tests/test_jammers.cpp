#include <cmath>

#include "ajam/channel.hpp"
#include "ajam/error.hpp"
#include "ajam/harness.hpp"
#include "ajam/jammers.hpp"
#include "ajam/rng.hpp"
#include "doctest.h"
#include "support.hpp"

using namespace ajam;
using ajam::testing::trained_model;

namespace {

std::vector<SymbolIndex> random_symbols(std::size_t n, std::size_t order, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<SymbolIndex> s(n);
  for (auto& v : s) {
    v = static_cast<SymbolIndex>(rng.below(order));
  }
  return s;
}

// SER of the noiseless channel plus jamming.
double jammed_ser(const ConstellationSpec& spec, std::span<const SymbolIndex> tx,
                  std::span<const IQSample> jam, const DemodModel* model) {
  std::size_t errors = 0;
  for (std::size_t k = 0; k < tx.size(); ++k) {
    const IQSample rx = spec.point(tx[k]) + jam[k];
    const SymbolIndex d = model ? model->predict(rx) : min_distance_demod(rx, spec);
    errors += d != tx[k] ? 1 : 0;
  }
  return static_cast<double>(errors) / static_cast<double>(tx.size());
}

}  // namespace

TEST_CASE("strategy names are the CLI identifiers") {
  CHECK(jammer_name(JammerKind::kNoise) == "noise");
  CHECK(jammer_name(JammerKind::kPhase) == "phase");
  CHECK(jammer_name(JammerKind::kFixedPower) == "fixed");
  CHECK(jammer_name(JammerKind::kAdversarial) == "aj");
  CHECK(jammer_name(JammerKind::kDeception) == "deceive");
  CHECK(parse_jammer("aj") == JammerKind::kAdversarial);
  CHECK_THROWS_AS(parse_jammer("AJ"), InvalidArgument);
}

TEST_CASE("noise_jam: zero budget, power, phase") {
  const auto none = noise_jam(1000, zero_budget(), 1);
  for (const auto& s : none) {
    CHECK(s == IQSample{});
  }
  const auto budget = budget_from_db(1.0, 10.0);
  const std::size_t n = 1000000;
  const auto jam = noise_jam(n, budget, 2);
  const double p = measure_power(jam);
  // |n|^2 is exponential with mean P: std of the mean is P / sqrt(n)
  CHECK(std::abs(p - budget.perturbation_power) < 3.0 * budget.perturbation_power / std::sqrt(n));
  CHECK(ajam::testing::phase_uniformity_p(jam) > 0.01);
}

TEST_CASE("phase_jam: collinear with the boundary direction, power on budget") {
  const auto spec = build_qam(16);
  const auto budget = budget_from_db(1.0, 8.0);
  const std::size_t n = 1000000;
  const auto tx = random_symbols(n, 16, 3);
  const auto jam = phase_jam(tx, spec, budget, 4);
  for (std::size_t k = 0; k < 2000; ++k) {
    const auto dir = nearest_boundary_vector(tx[k], spec);
    CHECK(std::abs(dir.i * jam[k].q - dir.q * jam[k].i) < 1e-12);
    CHECK(dot(dir, jam[k]) >= 0.0);
  }
  // folded Gaussian: E[a^2] = sigma^2, Var[a^2] = 2 sigma^4
  const double p = measure_power(jam);
  CHECK(std::abs(p - budget.perturbation_power) <
        3.0 * std::sqrt(2.0) * budget.perturbation_power / std::sqrt(n));
}

TEST_CASE("phase jamming beats noise jamming at 12 dB (min-distance, noiseless)") {
  const auto spec = build_qam(16);
  const auto budget = budget_from_db(1.0, 12.0);
  const auto tx = random_symbols(125000, 16, 5);
  const double noise = jammed_ser(spec, tx, noise_jam(tx.size(), budget, 6), nullptr);
  const double phase = jammed_ser(spec, tx, phase_jam(tx, spec, budget, 7), nullptr);
  MESSAGE("SER noise " << noise << ", phase " << phase);
  CHECK(phase >= noise);
}

TEST_CASE("fixed_power_jam: constant magnitude and the mutation point") {
  const auto budget = budget_from_db(1.0, 7.0);
  const auto jam = fixed_power_jam(100000, budget, 8);
  for (const auto& s : jam) {
    REQUIRE(std::abs(s.norm() - std::sqrt(budget.perturbation_power)) < 1e-12);
  }
  CHECK(ajam::testing::phase_uniformity_p(jam) > 0.01);

  // 16QAM boundary distance 1/sqrt(10) -> power 0.1 -> 10 dB
  const auto s16 = build_qam(16);
  const auto tx16 = random_symbols(125000, 16, 9);
  for (double sjr : {10.5, 12.0, 20.0}) {
    CHECK(jammed_ser(s16, tx16, fixed_power_jam(tx16.size(), budget_from_db(1.0, sjr), 10),
                     nullptr) == 0.0);
  }
  for (double sjr : {9.5, 8.0, 4.0}) {
    CHECK(jammed_ser(s16, tx16, fixed_power_jam(tx16.size(), budget_from_db(1.0, sjr), 10),
                     nullptr) > 0.0);
  }
  // QPSK boundary distance 1/sqrt(2) -> power 0.5 -> 3.01 dB
  const auto s4 = build_qam(4);
  const auto tx4 = random_symbols(125000, 4, 11);
  CHECK(jammed_ser(s4, tx4, fixed_power_jam(tx4.size(), budget_from_db(1.0, 3.2), 12), nullptr) ==
        0.0);
  CHECK(jammed_ser(s4, tx4, fixed_power_jam(tx4.size(), budget_from_db(1.0, 2.8), 12), nullptr) >
        0.0);
}

TEST_CASE("make_schedule: clamp, duty-cycle law, mask rate") {
  CHECK(make_schedule(budget_from_db(1.0, 0.0), 0.121).t == 1.0);
  const auto s = make_schedule(budget_from_db(1.0, 20.0), 0.121, 3);
  CHECK(s.t == doctest::Approx(0.01 / 0.121).epsilon(1e-12));
  CHECK(s.t == doctest::Approx(0.0826).epsilon(1e-3));
  CHECK(std::abs(s.t * s.per_symbol_power - 0.01) < 1e-9);
  CHECK(make_schedule(zero_budget(), 0.121).t == 0.0);
  CHECK_THROWS_AS(make_schedule(zero_budget(), 0.0), InvalidArgument);

  for (double db = 9.0; db <= 30.0; db += 1.5) {
    const auto b = budget_from_db(1.0, db);
    const auto sch = make_schedule(b, 0.121);
    if (sch.t < 1.0) {
      CHECK(std::abs(sch.t * sch.per_symbol_power - b.perturbation_power) < 1e-9);
    }
  }

  const auto mask = s.mask(1000000);
  const auto on = static_cast<double>(std::count(mask.begin(), mask.end(), true));
  CHECK(std::abs(on / 1e6 - s.t) < 3.0 * std::sqrt(s.t * (1 - s.t) / 1e6));
  CHECK(s.mask(1000) == s.mask(1000));
}

TEST_CASE("adversarial_jam: generous and tight budgets") {
  const auto spec = build_qam(16);
  const auto& model = trained_model(16);
  const AdversarialJammer aj(model, spec);
  const auto tx = random_symbols(125000, 16, 13);

  const auto generous = aj.jam(tx, budget_from_db(1.0, 0.0), 14);
  CHECK(jammed_ser(spec, tx, generous, &model) >= 0.99);
  // budget above the need is not spent
  CHECK(measure_power(generous) == doctest::Approx(aj.per_symbol_power()).epsilon(0.01));
  CHECK(measure_power(generous) < 1.0);

  const auto tight = aj.jam(tx, budget_from_db(1.0, 20.0), 15);
  const double ser = jammed_ser(spec, tx, tight, &model);
  MESSAGE("AJ SER at 20 dB " << ser << ", per-symbol power " << aj.per_symbol_power());
  CHECK(ser == doctest::Approx(0.083).epsilon(0.20));

  for (std::size_t k = 0; k < tx.size(); ++k) {
    if (!(tight[k] == IQSample{})) {
      REQUIRE(tight[k] == aj.waveform(tx[k]));
    }
  }
  CHECK(adversarial_jam(std::span(tx).first(100), model, spec, budget_from_db(1.0, 20.0), {},
                        kDefaultMargin, 15) == std::vector<IQSample>(tight.begin(), tight.begin() + 100));
}

TEST_CASE("power compliance over 10^6 symbols for every strategy") {
  const auto spec = build_qam(16);
  const AdversarialJammer aj(trained_model(16), spec);
  const auto tx = random_symbols(1000000, 16, 16);
  for (double db : {4.0, 10.0, 16.0}) {
    const auto b = budget_from_db(1.0, db);
    for (auto kind : {JammerKind::kNoise, JammerKind::kPhase, JammerKind::kFixedPower,
                      JammerKind::kAdversarial}) {
      JammerConfig cfg;
      cfg.kind = kind;
      cfg.budget = b;
      cfg.seed = 17;
      const auto jam = make_jamming(cfg, tx, spec, &aj);
      CHECK_MESSAGE(measure_power(jam) <= b.perturbation_power * 1.01, jammer_name(kind), " ",
                    db);
    }
  }
}

TEST_CASE("zero budget leaves the waveform untouched") {
  const auto spec = build_qam(16);
  const AdversarialJammer aj(trained_model(16), spec);
  const auto tx = random_symbols(5000, 16, 18);
  for (auto kind : {JammerKind::kNoise, JammerKind::kPhase, JammerKind::kFixedPower,
                    JammerKind::kAdversarial}) {
    JammerConfig cfg;
    cfg.kind = kind;
    cfg.budget = zero_budget();
    const auto jam = make_jamming(cfg, tx, spec, &aj);
    for (std::size_t k = 0; k < tx.size(); ++k) {
      const IQSample clean = spec.point(tx[k]);
      REQUIRE(clean + jam[k] == clean);
    }
  }
}

TEST_CASE("deception_jam: exchange, power, empty stream, bad labels") {
  const auto spec = build_qam(16);
  const auto tx = random_symbols(20000, 16, 19);
  const std::pair<std::string, std::string> swap{"1100", "1000"};
  const auto jam = deception_jam(tx, spec, swap);
  const auto a = spec.index_of("1100");
  const auto b = spec.index_of("1000");
  for (std::size_t k = 0; k < tx.size(); ++k) {
    const auto d = min_distance_demod(spec.point(tx[k]) + jam[k], spec);
    if (tx[k] == a) {
      REQUIRE(d == b);
    } else if (tx[k] == b) {
      REQUIRE(d == a);
    } else {
      REQUIRE(d == tx[k]);
      REQUIRE(jam[k] == IQSample{});
    }
  }
  // 1100 and 1000 are grid neighbours
  const double expected = std::pow(1.1 * min_distance(spec) / 2.0, 2.0);
  for (std::size_t k = 0; k < tx.size(); ++k) {
    if (tx[k] == a || tx[k] == b) {
      CHECK(jam[k].power() == doctest::Approx(expected).epsilon(1e-12));
    }
  }
  CHECK(deception_jam(std::vector<SymbolIndex>{}, spec, swap).empty());
  CHECK_THROWS_AS(deception_jam(tx, spec, {"1100", "1100"}), InvalidArgument);
  CHECK_THROWS_AS(deception_jam(tx, spec, {"1100", "2222"}), InvalidArgument);
  CHECK_THROWS_AS(deception_jam(tx, spec, {"110", "1000"}), InvalidArgument);
}
