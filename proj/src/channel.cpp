#include "ajam/channel.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "ajam/error.hpp"
#include "ajam/rng.hpp"

namespace ajam {

NoiseSpec NoiseSpec::with_power(double power, std::uint64_t seed) {
  if (!(power >= 0.0)) {
    throw InvalidArgument("noise power must be non-negative");
  }
  return {std::sqrt(power / 2.0), seed};
}

double PowerBudget::implied_ratio_db() const {
  return ratio_to_db(signal_power / perturbation_power);
}

double db_to_ratio(double db) { return std::pow(10.0, db / 10.0); }

double ratio_to_db(double ratio) { return 10.0 * std::log10(ratio); }

std::vector<IQSample> awgn(std::span<const IQSample> samples, const NoiseSpec& noise) {
  if (!(noise.sigma >= 0.0) || !std::isfinite(noise.sigma)) {
    throw InvalidArgument("noise sigma must be finite and non-negative, got " +
                          std::to_string(noise.sigma));
  }
  std::vector<IQSample> out(samples.begin(), samples.end());
  if (noise.sigma == 0.0) {
    return out;
  }
  Rng rng(noise.seed);
  for (auto& x : out) {
    x.i += noise.sigma * rng.gaussian();
    x.q += noise.sigma * rng.gaussian();
  }
  return out;
}

double measure_power(std::span<const IQSample> samples) {
  if (samples.empty()) {
    throw InvalidArgument("cannot measure the power of an empty sequence");
  }
  double acc = 0.0;
  for (const auto& x : samples) {
    acc += x.power();
  }
  return acc / static_cast<double>(samples.size());
}

PowerBudget budget_from_db(double signal_power, double ratio_db) {
  if (!(signal_power > 0.0)) {
    throw InvalidArgument("signal power must be positive, got " + std::to_string(signal_power));
  }
  if (std::isnan(ratio_db)) {
    throw InvalidArgument("ratio must not be NaN");
  }
  return {signal_power, ratio_db, signal_power * std::pow(10.0, -ratio_db / 10.0)};
}

PowerBudget zero_budget(double signal_power) {
  return {signal_power, std::numeric_limits<double>::infinity(), 0.0};
}

}  // namespace ajam
