#include "ajam/adversary.hpp"

#include <cassert>
#include <cmath>
#include <numbers>

#include "ajam/error.hpp"
#include "ajam/rng.hpp"
#include "text_io.hpp"

namespace ajam {

namespace {

enum class Goal { kLeave, kReach };

void project_to_ball(IQSample& delta, double eps) {
  const double n = delta.norm();
  if (n > eps) {
    delta = (eps / n) * delta;
  }
}

bool reached(const DemodModel& model, IQSample x, SymbolIndex label, Goal goal, SymbolIndex& pred) {
  pred = model.predict(x);
  return goal == Goal::kLeave ? pred != label : pred == label;
}

// One PGD run from `start`. kLeave ascends the loss of `label`, kReach
// descends it.
AdversarialResult pgd_run(const DemodModel& model, IQSample x, SymbolIndex label, double eps,
                          const AttackConfig& cfg, Goal goal, IQSample start) {
  AdversarialResult r;
  IQSample delta = start;
  project_to_ball(delta, eps);
  const double step = cfg.step_scale * eps;
  const double sign = goal == Goal::kLeave ? 1.0 : -1.0;
  SymbolIndex pred = 0;
  for (std::size_t k = 0; k < cfg.steps; ++k) {
    if (reached(model, x + delta, label, goal, pred)) {
      r.success = true;
      break;
    }
    const IQSample g = model.input_gradient(x + delta, label);
    const double gn = g.norm();
    if (!(gn > 0.0) || !std::isfinite(gn)) {
      break;
    }
    delta = delta + (sign * step / gn) * g;
    project_to_ball(delta, eps);
    assert(delta.norm() <= eps * (1.0 + 1e-12));
  }
  if (!r.success) {
    r.success = reached(model, x + delta, label, goal, pred);
  }
  r.delta = delta;
  r.norm = delta.norm();
  r.predicted_after = pred;
  return r;
}

AdversarialResult pgd(const DemodModel& model, IQSample x, SymbolIndex label, double eps,
                      const AttackConfig& cfg, Goal goal) {
  if (!(eps > 0.0)) {
    throw InvalidArgument("attack radius must be positive");
  }
  if (cfg.steps == 0) {
    throw InvalidArgument("attack needs at least one step");
  }
  AdversarialResult best = pgd_run(model, x, label, eps, cfg, goal, {});
  if (cfg.restarts == 0) {
    return best;
  }
  Rng rng(cfg.seed);
  for (std::size_t r = 0; r < cfg.restarts; ++r) {
    const double radius = eps * std::sqrt(rng.uniform());
    const double angle = 2.0 * std::numbers::pi * rng.uniform();
    const IQSample start{radius * std::cos(angle), radius * std::sin(angle)};
    const AdversarialResult trial = pgd_run(model, x, label, eps, cfg, goal, start);
    if (trial.success && (!best.success || trial.norm < best.norm)) {
      best = trial;
    }
  }
  return best;
}

}  // namespace

AdversarialResult pgd_untargeted(const DemodModel& model, IQSample x, SymbolIndex y, double eps,
                                 const AttackConfig& cfg) {
  return pgd(model, x, y, eps, cfg, Goal::kLeave);
}

AdversarialResult pgd_targeted(const DemodModel& model, IQSample x, SymbolIndex target,
                               double eps, const AttackConfig& cfg) {
  if (target >= model.order()) {
    throw InvalidArgument("target index out of range");
  }
  if (model.predict(x) == target) {
    throw InvalidArgument("degenerate target: input is already classified as symbol " +
                          std::to_string(target));
  }
  return pgd(model, x, target, eps, cfg, Goal::kReach);
}

AdversarialResult minimal_norm_attack(const DemodModel& model, IQSample x, SymbolIndex y,
                                      const ConstellationSpec& spec, const AttackConfig& cfg) {
  if (!(cfg.eps_max > 0.0)) {
    throw InvalidArgument("eps_max must be positive");
  }
  double hi = cfg.eps_max * min_distance(spec);
  AdversarialResult best = pgd_untargeted(model, x, y, hi, cfg);
  if (!best.success) {
    throw AttackSaturated("no adversarial perturbation found within radius " +
                          detail::fmt6(hi) + " for symbol " + std::to_string(y));
  }
  double lo = 0.0;
  for (std::size_t k = 0; k < cfg.bisection_iters; ++k) {
    const double mid = 0.5 * (lo + hi);
    AdversarialResult trial = pgd_untargeted(model, x, y, mid, cfg);
    if (trial.success) {
      hi = mid;
      best = trial;
    } else {
      lo = mid;
    }
  }
  return best;
}

std::vector<OracleGapRow> oracle_gap_report(const DemodModel& model, const ConstellationSpec& spec,
                                            const AttackConfig& cfg) {
  if (model.order() != spec.order()) {
    throw InvalidArgument("model order " + std::to_string(model.order()) +
                          " does not match constellation order " + std::to_string(spec.order()));
  }
  std::vector<OracleGapRow> rows;
  for (SymbolIndex s = 0; s < spec.order(); ++s) {
    const AdversarialResult r = minimal_norm_attack(model, spec.point(s), s, spec, cfg);
    const auto tied = boundary_vectors(s, spec);
    OracleGapRow row;
    row.symbol = s;
    row.label = spec.label(s);
    row.attack_norm = r.norm;
    row.oracle_norm = tied.front().norm();
    row.ratio = r.norm / row.oracle_norm;
    row.cosine = -1.0;
    for (const auto& v : tied) {
      row.cosine = std::max(row.cosine, cosine_similarity(r.delta, v));
    }
    row.tied_boundaries = tied.size();
    row.delta = r.delta;
    rows.push_back(row);
  }
  return rows;
}

std::string oracle_gap_csv(const std::vector<OracleGapRow>& rows) {
  std::string out = "symbol,label,attack_norm,oracle_norm,ratio,cosine\n";
  for (const auto& r : rows) {
    out += std::to_string(r.symbol) + ',' + r.label + ',' + detail::fmt6(r.attack_norm) + ',' +
           detail::fmt6(r.oracle_norm) + ',' + detail::fmt6(r.ratio) + ',' +
           detail::fmt6(r.cosine) + '\n';
  }
  return out;
}

void write_oracle_gap_csv(const std::vector<OracleGapRow>& rows, const std::filesystem::path& path) {
  detail::write_text_file(path, oracle_gap_csv(rows));
}

}  // namespace ajam
