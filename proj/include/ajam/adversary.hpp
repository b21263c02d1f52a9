#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "ajam/constellation.hpp"
#include "ajam/demod.hpp"

namespace ajam {

struct AttackConfig {
  std::size_t steps = 40;
  /// Step length as a fraction of the ball radius.
  double step_scale = 2.5 / 40.0;
  std::size_t bisection_iters = 12;
  /// Upper end of the radius search, in units of min_distance.
  double eps_max = 2.0;
  /// Extra PGD runs from random points inside the ball.
  std::size_t restarts = 0;
  std::uint64_t seed = 0;
};

struct AdversarialResult {
  IQSample delta;
  bool success = false;
  double norm = 0.0;
  SymbolIndex predicted_after = 0;
};

/// L2 PGD ascending the loss of label y inside the ball of radius eps.
/// Stops at the first iterate whose prediction differs from y.
AdversarialResult pgd_untargeted(const DemodModel& model, IQSample x, SymbolIndex y, double eps,
                                 const AttackConfig& cfg);

/// L2 PGD descending the loss of `target`. Throws InvalidArgument when x is
/// already classified as target.
AdversarialResult pgd_targeted(const DemodModel& model, IQSample x, SymbolIndex target,
                               double eps, const AttackConfig& cfg);

/// Smallest-radius untargeted PGD result found by bisection over
/// (0, eps_max * min_distance]. Throws AttackSaturated if even the largest
/// radius fails.
AdversarialResult minimal_norm_attack(const DemodModel& model, IQSample x, SymbolIndex y,
                                      const ConstellationSpec& spec, const AttackConfig& cfg);

struct OracleGapRow {
  SymbolIndex symbol = 0;
  std::string label;
  double attack_norm = 0.0;
  double oracle_norm = 0.0;
  double ratio = 0.0;
  /// Cosine against the closest of the tied nearest-boundary directions.
  double cosine = 0.0;
  /// Number of equidistant nearest boundaries of the symbol.
  std::size_t tied_boundaries = 0;
  IQSample delta;
};

/// Minimal-norm attack on every clean symbol compared with the geometric
/// nearest-boundary displacement.
std::vector<OracleGapRow> oracle_gap_report(const DemodModel& model, const ConstellationSpec& spec,
                                            const AttackConfig& cfg = {});

/// CSV with header `symbol,label,attack_norm,oracle_norm,ratio,cosine`.
std::string oracle_gap_csv(const std::vector<OracleGapRow>& rows);
void write_oracle_gap_csv(const std::vector<OracleGapRow>& rows, const std::filesystem::path& path);

}  // namespace ajam
