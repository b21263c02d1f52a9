#include <cmath>

#include "ajam/channel.hpp"
#include "ajam/error.hpp"
#include "doctest.h"
#include "support.hpp"

using namespace ajam;

namespace {

std::vector<IQSample> added(const std::vector<IQSample>& in, const std::vector<IQSample>& out) {
  std::vector<IQSample> d(in.size());
  for (std::size_t k = 0; k < in.size(); ++k) {
    d[k] = out[k] - in[k];
  }
  return d;
}

}  // namespace

TEST_CASE("awgn: zero sigma is the identity") {
  const auto spec = build_qam(16);
  const std::vector<IQSample> in(spec.points().begin(), spec.points().end());
  const auto out = awgn(in, {0.0, 9});
  CHECK(out == in);
}

TEST_CASE("awgn: added power is 2 sigma^2") {
  const std::vector<IQSample> in(1000000, IQSample{0.3, -0.2});
  const auto out = awgn(in, {0.1, 42});
  const double p = measure_power(added(in, out));
  // std of the mean of sigma^2 chi^2_2 is 2 sigma^2 / sqrt(n) = 2e-5
  CHECK(std::abs(p - 0.02) < 0.0002);
}

TEST_CASE("awgn: noise phase is uniform") {
  const std::vector<IQSample> in(1000000);
  const auto out = awgn(in, {0.5, 77});
  CHECK(ajam::testing::phase_uniformity_p(out) > 0.01);
}

TEST_CASE("awgn: power converges at the 1/sqrt(n) rate") {
  const double sigma = 0.3;
  for (std::size_t n : {std::size_t{10000}, std::size_t{1000000}}) {
    const std::vector<IQSample> in(n);
    const double p = measure_power(awgn(in, {sigma, 5}));
    const double sd = 2.0 * sigma * sigma / std::sqrt(static_cast<double>(n));
    CHECK(std::abs(p - 2.0 * sigma * sigma) < 4.0 * sd);
  }
}

TEST_CASE("awgn: deterministic for a seed, different across seeds") {
  const std::vector<IQSample> in(1000, IQSample{1.0, 1.0});
  CHECK(awgn(in, {0.2, 1}) == awgn(in, {0.2, 1}));
  CHECK_FALSE(awgn(in, {0.2, 1}) == awgn(in, {0.2, 2}));
}

TEST_CASE("awgn: negative sigma is rejected") {
  const std::vector<IQSample> in(3);
  CHECK_THROWS_AS(awgn(in, {-0.1, 1}), InvalidArgument);
  CHECK_THROWS_AS(NoiseSpec::with_power(-1.0, 1), InvalidArgument);
}

TEST_CASE("measure_power") {
  for (int order : {4, 16}) {
    const auto spec = build_qam(order);
    CHECK(std::abs(measure_power(spec.points()) - 1.0) < 1e-12);
  }
  const std::vector<IQSample> zeros(10);
  CHECK(measure_power(zeros) == 0.0);
  const std::vector<IQSample> one{{3.0, 4.0}};
  CHECK(measure_power(one) == 25.0);
  CHECK_THROWS_AS(measure_power(std::vector<IQSample>{}), InvalidArgument);
}

TEST_CASE("budget_from_db") {
  CHECK(budget_from_db(1.0, 0.0).perturbation_power == 1.0);
  CHECK(budget_from_db(1.0, 10.0).perturbation_power == doctest::Approx(0.1).epsilon(1e-15));
  CHECK(budget_from_db(1.0, 3.0).perturbation_power ==
        doctest::Approx(std::pow(10.0, -0.3)).epsilon(1e-15));
  CHECK(budget_from_db(1.0, 3.0).perturbation_power == doctest::Approx(0.501187).epsilon(1e-6));
  CHECK_THROWS_AS(budget_from_db(0.0, 3.0), InvalidArgument);
  CHECK_THROWS_AS(budget_from_db(-1.0, 3.0), InvalidArgument);

  for (double db = -20.0; db <= 40.0; db += 0.25) {
    for (double sp : {0.5, 1.0, 7.0}) {
      CHECK(std::abs(budget_from_db(sp, db).implied_ratio_db() - db) < 1e-9);
    }
  }
}

TEST_CASE("NoiseSpec::with_power splits power over two axes") {
  const auto n = NoiseSpec::with_power(0.02, 3);
  CHECK(n.sigma == doctest::Approx(0.1).epsilon(1e-15));
  CHECK(zero_budget().perturbation_power == 0.0);
}
