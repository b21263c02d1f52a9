#include <cmath>
#include <numbers>

#include "ajam/adversary.hpp"
#include "ajam/error.hpp"
#include "ajam/rng.hpp"
#include "doctest.h"
#include "support.hpp"

using namespace ajam;
using ajam::testing::trained_model;

TEST_CASE("pgd_untargeted: too small a ball fails, a large one succeeds") {
  const auto spec = build_qam(16);
  const auto& model = trained_model(16);
  const AttackConfig cfg;
  for (SymbolIndex s = 0; s < spec.order(); ++s) {
    const auto x = spec.point(s);
    const auto small = pgd_untargeted(model, x, s, 0.01, cfg);
    CHECK_FALSE(small.success);
    CHECK(small.norm <= 0.01 * (1 + 1e-12));

    // a crossing must exist on the circle of radius 0.5
    bool exists = false;
    for (int k = 0; k < 720 && !exists; ++k) {
      const double phi = 2.0 * std::numbers::pi * k / 720.0;
      exists = model.predict(x + IQSample{0.5 * std::cos(phi), 0.5 * std::sin(phi)}) != s;
    }
    REQUIRE(exists);
    const auto big = pgd_untargeted(model, x, s, 0.5, cfg);
    CHECK(big.success);
    CHECK(big.predicted_after != s);
    CHECK(model.predict(x + big.delta) == big.predicted_after);
  }
}

TEST_CASE("pgd_untargeted: ball invariant and success soundness on random trials") {
  const auto spec = build_qam(16);
  const auto& model = trained_model(16);
  Rng rng(17);
  AttackConfig cfg;
  for (int n = 0; n < 1000; ++n) {
    const IQSample x{2.4 * rng.uniform() - 1.2, 2.4 * rng.uniform() - 1.2};
    const SymbolIndex y = model.predict(x);
    const double eps = 0.02 + 0.5 * rng.uniform();
    const auto r = pgd_untargeted(model, x, y, eps, cfg);
    REQUIRE(r.norm <= eps * (1 + 1e-12));
    REQUIRE(r.norm == doctest::Approx(r.delta.norm()));
    REQUIRE(r.success == (model.predict(x + r.delta) != y));
  }
}

TEST_CASE("pgd_untargeted: rejects a non-positive radius") {
  const auto& model = trained_model(4);
  CHECK_THROWS_AS(pgd_untargeted(model, {0.7, 0.7}, 3, 0.0, {}), InvalidArgument);
}

TEST_CASE("minimal_norm_attack: norm and direction match the nearest boundary") {
  const auto spec = build_qam(16);
  const auto& model = trained_model(16);
  const AttackConfig cfg;
  for (SymbolIndex s = 0; s < spec.order(); ++s) {
    const auto r = minimal_norm_attack(model, spec.point(s), s, spec, cfg);
    REQUIRE(r.success);
    CHECK(r.norm == doctest::Approx(1.0 / std::sqrt(10.0)).epsilon(0.10));
    double best_cos = -1.0;
    for (const auto& v : boundary_vectors(s, spec)) {
      best_cos = std::max(best_cos, cosine_similarity(r.delta, v));
    }
    CHECK(best_cos >= 0.95);
  }
}

TEST_CASE("minimal_norm_attack: half-way start needs half the norm") {
  const auto spec = build_qam(16);
  const auto& model = trained_model(16);
  const AttackConfig cfg;
  for (SymbolIndex s = 0; s < spec.order(); ++s) {
    const auto clean = minimal_norm_attack(model, spec.point(s), s, spec, cfg);
    const auto moved = spec.point(s) + 0.5 * clean.delta;
    const auto half = minimal_norm_attack(model, moved, s, spec, cfg);
    CHECK(half.norm == doctest::Approx(0.5 * clean.norm).epsilon(0.10));
  }
}

TEST_CASE("minimal_norm_attack: bisection resolution and determinism") {
  const auto spec = build_qam(16);
  const auto& model = trained_model(16);
  const AttackConfig cfg;
  const double resolution =
      cfg.eps_max * min_distance(spec) / std::pow(2.0, static_cast<double>(cfg.bisection_iters));
  for (SymbolIndex s : {SymbolIndex{0}, SymbolIndex{5}, SymbolIndex{7}}) {
    const auto r = minimal_norm_attack(model, spec.point(s), s, spec, cfg);
    CHECK_FALSE(pgd_untargeted(model, spec.point(s), s, r.norm - resolution, cfg).success);
    const auto again = minimal_norm_attack(model, spec.point(s), s, spec, cfg);
    CHECK(again.delta == r.delta);
  }
}

TEST_CASE("minimal_norm_attack: saturation is an error") {
  const auto spec = build_qam(16);
  AttackConfig cfg;
  cfg.eps_max = 0.05;
  CHECK_THROWS_AS(minimal_norm_attack(trained_model(16), spec.point(0), 0, spec, cfg),
                  AttackSaturated);
}

TEST_CASE("restarts are deterministic and never worse") {
  const auto spec = build_qam(16);
  const auto& model = trained_model(16);
  AttackConfig cfg;
  cfg.restarts = 4;
  cfg.seed = 12;
  const auto a = pgd_untargeted(model, spec.point(9), 9, 0.4, cfg);
  const auto b = pgd_untargeted(model, spec.point(9), 9, 0.4, cfg);
  CHECK(a.delta == b.delta);
  CHECK(a.success);
}

TEST_CASE("pgd_targeted: adjacent, diagonal, far targets") {
  const auto spec = build_qam(16);
  const auto& model = trained_model(16);
  const AttackConfig cfg;
  const double dmin = min_distance(spec);

  const auto adjacent = pgd_targeted(model, spec.point(5), 6, 0.4, cfg);
  CHECK(adjacent.success);
  CHECK(adjacent.predicted_after == 6);
  CHECK(adjacent.norm == doctest::Approx(targeted_vector(5, 6, spec).norm()).epsilon(0.15));
  CHECK(targeted_vector(5, 6, spec).norm() == doctest::Approx(dmin / 2.0));

  const auto diagonal = pgd_targeted(model, spec.point(5), 10, 0.5, cfg);
  CHECK(diagonal.success);
  CHECK(diagonal.predicted_after == 10);
  CHECK(diagonal.norm == doctest::Approx(dmin / std::sqrt(2.0)).epsilon(0.15));

  const auto far = pgd_targeted(model, spec.point(0), 15, 0.1, cfg);
  CHECK_FALSE(far.success);

  CHECK_THROWS_AS(pgd_targeted(model, spec.point(3), 3, 0.4, cfg), InvalidArgument);
}

TEST_CASE("oracle_gap_report at both orders") {
  for (int order : {16, 4}) {
    const auto spec = build_qam(order);
    const auto rows = oracle_gap_report(trained_model(order), spec);
    REQUIRE(rows.size() == spec.order());
    for (const auto& r : rows) {
      CHECK(r.ratio >= 0.90);
      CHECK(r.ratio <= 1.10);
      CHECK(r.cosine >= 0.95);
      CHECK(r.label == spec.label(r.symbol));
    }
    const auto csv = oracle_gap_csv(rows);
    CHECK(csv.rfind("symbol,label,attack_norm,oracle_norm,ratio,cosine\n", 0) == 0);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == static_cast<long>(spec.order() + 1));
  }
  CHECK_THROWS_AS(oracle_gap_report(trained_model(4), build_qam(16)), InvalidArgument);
}
