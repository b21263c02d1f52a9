#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ajam/adversary.hpp"
#include "ajam/channel.hpp"
#include "ajam/constellation.hpp"
#include "ajam/demod.hpp"

namespace ajam {

enum class JammerKind { kNoise, kPhase, kFixedPower, kAdversarial, kDeception };

/// CLI identifiers: noise, phase, fixed, aj, deceive.
std::string_view jammer_name(JammerKind kind);
JammerKind parse_jammer(std::string_view name);

inline constexpr double kDefaultMargin = 0.10;

struct JammerConfig {
  JammerKind kind = JammerKind::kNoise;
  PowerBudget budget;
  double amplitude_margin = kDefaultMargin;
  /// Label pair exchanged by the deception jammer.
  std::optional<std::pair<std::string, std::string>> swap;
  std::uint64_t seed = 0;
};

/// Intermittent jamming: each symbol is jammed independently with probability t.
struct DutyCycleSchedule {
  double t = 0.0;
  double per_symbol_power = 0.0;
  std::uint64_t seed = 0;

  std::vector<bool> mask(std::size_t n) const;
};

/// t = min(1, budget / per_symbol_power).
DutyCycleSchedule make_schedule(const PowerBudget& budget, double per_symbol_power,
                                std::uint64_t seed = 0);

/// Barrage noise with total power budget.perturbation_power.
std::vector<IQSample> noise_jam(std::size_t n, const PowerBudget& budget, std::uint64_t seed);

/// Gaussian amplitude along each symbol's nearest-boundary direction.
std::vector<IQSample> phase_jam(std::span<const SymbolIndex> symbols, const ConstellationSpec& spec,
                                const PowerBudget& budget, std::uint64_t seed);

/// Constant magnitude sqrt(P), uniform random phase.
std::vector<IQSample> fixed_power_jam(std::size_t n, const PowerBudget& budget, std::uint64_t seed);

/// Adversarial jamming against one trained demodulator.
///
/// The minimal-norm attack depends only on the clean transmitted point, so it
/// is run once per constellation symbol at construction and cached. The
/// emitted waveform for symbol s is (1 + margin) * delta_s, duty-cycled to the
/// budget; a budget above the per-symbol need is left unspent.
class AdversarialJammer {
public:
  AdversarialJammer(const DemodModel& model, const ConstellationSpec& spec,
                    const AttackConfig& cfg = {}, double margin = kDefaultMargin);

  const IQSample& waveform(SymbolIndex s) const { return waveforms_.at(s); }
  std::span<const IQSample> waveforms() const { return waveforms_; }

  /// Mean emitted power of a jammed symbol under uniform symbol statistics.
  double per_symbol_power() const { return per_symbol_power_; }

  std::vector<IQSample> jam(std::span<const SymbolIndex> symbols, const PowerBudget& budget,
                            std::uint64_t seed) const;

private:
  std::vector<IQSample> waveforms_;
  double per_symbol_power_ = 0.0;
};

std::vector<IQSample> adversarial_jam(std::span<const SymbolIndex> symbols, const DemodModel& model,
                                      const ConstellationSpec& spec, const PowerBudget& budget,
                                      const AttackConfig& cfg, double margin = kDefaultMargin,
                                      std::uint64_t seed = 0);

/// Exchanges two labels: A gets (1 + margin) * targeted_vector(A -> B), B the
/// reverse, every other symbol is left alone.
std::vector<IQSample> deception_jam(std::span<const SymbolIndex> symbols,
                                    const ConstellationSpec& spec,
                                    const std::pair<std::string, std::string>& swap,
                                    double margin = kDefaultMargin);

/// Dispatch on config.kind. `aj` must be provided for kAdversarial.
std::vector<IQSample> make_jamming(const JammerConfig& config, std::span<const SymbolIndex> symbols,
                                   const ConstellationSpec& spec,
                                   const AdversarialJammer* aj = nullptr);

}  // namespace ajam
