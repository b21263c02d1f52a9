#include "ajam/jammers.hpp"

#include <cmath>
#include <numbers>

#include "ajam/error.hpp"
#include "ajam/rng.hpp"

namespace ajam {

std::string_view jammer_name(JammerKind kind) {
  switch (kind) {
    case JammerKind::kNoise:
      return "noise";
    case JammerKind::kPhase:
      return "phase";
    case JammerKind::kFixedPower:
      return "fixed";
    case JammerKind::kAdversarial:
      return "aj";
    case JammerKind::kDeception:
      return "deceive";
  }
  return "unknown";
}

JammerKind parse_jammer(std::string_view name) {
  for (auto k : {JammerKind::kNoise, JammerKind::kPhase, JammerKind::kFixedPower,
                 JammerKind::kAdversarial, JammerKind::kDeception}) {
    if (jammer_name(k) == name) {
      return k;
    }
  }
  throw InvalidArgument("unknown jamming strategy '" + std::string(name) +
                        "' (expected noise, phase, fixed, aj or deceive)");
}

std::vector<bool> DutyCycleSchedule::mask(std::size_t n) const {
  if (t >= 1.0) {
    return std::vector<bool>(n, true);
  }
  std::vector<bool> out(n, false);
  if (t <= 0.0) {
    return out;
  }
  Rng rng(seed);
  for (std::size_t k = 0; k < n; ++k) {
    out[k] = rng.bernoulli(t);
  }
  return out;
}

DutyCycleSchedule make_schedule(const PowerBudget& budget, double per_symbol_power,
                                std::uint64_t seed) {
  if (!(per_symbol_power > 0.0)) {
    throw InvalidArgument("per-symbol jamming power must be positive");
  }
  const double t = std::min(1.0, budget.perturbation_power / per_symbol_power);
  return {std::max(0.0, t), per_symbol_power, seed};
}

std::vector<IQSample> noise_jam(std::size_t n, const PowerBudget& budget, std::uint64_t seed) {
  const std::vector<IQSample> zeros(n);
  return awgn(zeros, NoiseSpec::with_power(budget.perturbation_power, seed));
}

std::vector<IQSample> phase_jam(std::span<const SymbolIndex> symbols, const ConstellationSpec& spec,
                                const PowerBudget& budget, std::uint64_t seed) {
  std::vector<IQSample> dirs;
  for (SymbolIndex s = 0; s < spec.order(); ++s) {
    const IQSample v = nearest_boundary_vector(s, spec);
    dirs.push_back((1.0 / v.norm()) * v);
  }
  // E[|N(0, sigma)|^2] = sigma^2, so sigma^2 = P keeps the mean power on budget.
  const double sigma = std::sqrt(budget.perturbation_power);
  Rng rng(seed);
  std::vector<IQSample> out;
  out.reserve(symbols.size());
  for (SymbolIndex s : symbols) {
    const double a = std::abs(sigma * rng.gaussian());
    out.push_back(a * dirs.at(s));
  }
  return out;
}

std::vector<IQSample> fixed_power_jam(std::size_t n, const PowerBudget& budget, std::uint64_t seed) {
  const double amp = std::sqrt(budget.perturbation_power);
  Rng rng(seed);
  std::vector<IQSample> out;
  out.reserve(n);
  for (std::size_t k = 0; k < n; ++k) {
    const double phi = 2.0 * std::numbers::pi * rng.uniform();
    out.push_back({amp * std::cos(phi), amp * std::sin(phi)});
  }
  return out;
}

AdversarialJammer::AdversarialJammer(const DemodModel& model, const ConstellationSpec& spec,
                                     const AttackConfig& cfg, double margin) {
  if (!(margin >= 0.0)) {
    throw InvalidArgument("amplitude margin must be non-negative");
  }
  if (model.order() != spec.order()) {
    throw InvalidArgument("model order does not match the constellation");
  }
  double acc = 0.0;
  for (SymbolIndex s = 0; s < spec.order(); ++s) {
    const AdversarialResult r = minimal_norm_attack(model, spec.point(s), s, spec, cfg);
    waveforms_.push_back((1.0 + margin) * r.delta);
    acc += waveforms_.back().power();
  }
  per_symbol_power_ = acc / static_cast<double>(spec.order());
}

std::vector<IQSample> AdversarialJammer::jam(std::span<const SymbolIndex> symbols,
                                             const PowerBudget& budget, std::uint64_t seed) const {
  const DutyCycleSchedule schedule = make_schedule(budget, per_symbol_power_, seed);
  const std::vector<bool> on = schedule.mask(symbols.size());
  std::vector<IQSample> out(symbols.size());
  for (std::size_t k = 0; k < symbols.size(); ++k) {
    if (on[k]) {
      out[k] = waveforms_.at(symbols[k]);
    }
  }
  return out;
}

std::vector<IQSample> adversarial_jam(std::span<const SymbolIndex> symbols, const DemodModel& model,
                                      const ConstellationSpec& spec, const PowerBudget& budget,
                                      const AttackConfig& cfg, double margin, std::uint64_t seed) {
  return AdversarialJammer(model, spec, cfg, margin).jam(symbols, budget, seed);
}

std::vector<IQSample> deception_jam(std::span<const SymbolIndex> symbols,
                                    const ConstellationSpec& spec,
                                    const std::pair<std::string, std::string>& swap,
                                    double margin) {
  const SymbolIndex a = spec.index_of(swap.first);
  const SymbolIndex b = spec.index_of(swap.second);
  if (a == b) {
    throw InvalidArgument("deception swap needs two different labels, got '" + swap.first +
                          "' twice");
  }
  if (!(margin >= 0.0)) {
    throw InvalidArgument("amplitude margin must be non-negative");
  }
  const IQSample ab = (1.0 + margin) * targeted_vector(a, b, spec);
  const IQSample ba = (1.0 + margin) * targeted_vector(b, a, spec);
  std::vector<IQSample> out(symbols.size());
  for (std::size_t k = 0; k < symbols.size(); ++k) {
    if (symbols[k] == a) {
      out[k] = ab;
    } else if (symbols[k] == b) {
      out[k] = ba;
    }
  }
  return out;
}

std::vector<IQSample> make_jamming(const JammerConfig& config, std::span<const SymbolIndex> symbols,
                                   const ConstellationSpec& spec, const AdversarialJammer* aj) {
  switch (config.kind) {
    case JammerKind::kNoise:
      return noise_jam(symbols.size(), config.budget, config.seed);
    case JammerKind::kPhase:
      return phase_jam(symbols, spec, config.budget, config.seed);
    case JammerKind::kFixedPower:
      return fixed_power_jam(symbols.size(), config.budget, config.seed);
    case JammerKind::kAdversarial:
      if (aj == nullptr) {
        throw InvalidArgument("adversarial jamming needs a trained demodulator");
      }
      return aj->jam(symbols, config.budget, config.seed);
    case JammerKind::kDeception:
      if (!config.swap) {
        throw InvalidArgument("deception jamming needs a label swap pair");
      }
      return deception_jam(symbols, spec, *config.swap, config.amplitude_margin);
  }
  throw InvalidArgument("unknown jammer kind");
}

}  // namespace ajam
