#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "ajam/constellation.hpp"

namespace ajam {

/// Per-axis Gaussian noise; total added power is 2 sigma^2.
struct NoiseSpec {
  double sigma = 0.0;
  std::uint64_t seed = 0;

  /// sigma giving total (two-axis) power `power`.
  static NoiseSpec with_power(double power, std::uint64_t seed);
};

/// Average-power budget for a perturbation at a given SNR or SJR.
struct PowerBudget {
  double signal_power = 1.0;
  double ratio_db = 0.0;
  double perturbation_power = 1.0;

  /// Inverse mapping, recovers ratio_db from the two powers.
  double implied_ratio_db() const;
};

std::vector<IQSample> awgn(std::span<const IQSample> samples, const NoiseSpec& noise);

/// Mean of i^2 + q^2; throws InvalidArgument on an empty sequence.
double measure_power(std::span<const IQSample> samples);

PowerBudget budget_from_db(double signal_power, double ratio_db);

/// A budget carrying no perturbation (infinite ratio).
PowerBudget zero_budget(double signal_power = 1.0);

double db_to_ratio(double db);
double ratio_to_db(double ratio);

}  // namespace ajam
