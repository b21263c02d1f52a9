#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "ajam/adversary.hpp"
#include "ajam/constellation.hpp"
#include "ajam/demod.hpp"
#include "ajam/jammers.hpp"

namespace ajam {

enum class DemodChoice { kLearned, kMinDistance };

struct SweepConfig {
  int order = 16;
  double sjr_start_db = 0.0;
  double sjr_end_db = 20.0;
  double sjr_step_db = 2.0;
  /// Channel AWGN on top of the jamming; nullopt is a noiseless channel.
  std::optional<double> snr_db;
  std::size_t bits = 500000;
  std::vector<JammerKind> strategies;
  std::uint64_t seed = 1;
  DemodChoice demod = DemodChoice::kLearned;
  double margin = kDefaultMargin;
  AttackConfig attack;
  /// Used when run_pipeline has to train its own demodulator.
  TrainConfig training;
  std::size_t per_class = 1000;
  double train_snr_db = 15.0;
  /// Worker threads for the sweep cells; results do not depend on it.
  std::size_t threads = 1;
};

struct SweepRow {
  std::string strategy;
  double sjr_db = 0.0;
  double ser = 0.0;
  double ber = 0.0;
  std::uint64_t symbols = 0;
  std::uint64_t errors = 0;
  std::uint64_t seed = 0;

  friend bool operator==(const SweepRow&, const SweepRow&) = default;
};

struct ErrorRates {
  double ser = 0.0;
  double ber = 0.0;
  std::uint64_t symbol_errors = 0;
  std::uint64_t bit_errors = 0;
};

/// Inclusive SJR grid; throws InvalidArgument for a non-positive step or an
/// empty range.
std::vector<double> sjr_grid(const SweepConfig& cfg);

/// Seed of cell (strategy index, SJR index); independent of execution order.
std::uint64_t cell_seed(std::uint64_t run_seed, std::size_t strategy_index, std::size_t sjr_index);

/// Seeded uniform payload bits.
std::vector<std::uint8_t> random_bits(std::size_t n, std::uint64_t seed);

ErrorRates ber_from_symbols(std::span<const SymbolIndex> tx, std::span<const SymbolIndex> rx,
                            const ConstellationSpec& spec);

/// Runs every (strategy, SJR) cell: random bits -> modulate -> jam ->
/// optional channel AWGN -> demodulate -> count errors. Rows are ordered by
/// strategy, then SJR. If a learned demodulator or the aj strategy is needed
/// and `model` is null, a demodulator is trained first from cfg.training.
std::vector<SweepRow> run_pipeline(const SweepConfig& cfg, const DemodModel* model = nullptr);

/// Trains the demodulator run_pipeline would train for cfg.
DemodModel train_default_model(const SweepConfig& cfg);

std::string sweep_csv(std::span<const SweepRow> rows);
void write_csv(std::span<const SweepRow> rows, const std::filesystem::path& path);
std::vector<SweepRow> parse_csv(const std::string& text);
std::vector<SweepRow> read_csv(const std::filesystem::path& path);

/// SER-vs-SJR curves, one polyline per strategy on a log SER axis whose floor
/// is 1/symbols. Zero-SER points sit on the floor.
std::string sweep_svg(std::span<const SweepRow> rows);
void plot_svg(std::span<const SweepRow> rows, const std::filesystem::path& path);

struct DeceptionSummary {
  std::size_t order = 0;
  SymbolIndex a = 0;
  SymbolIndex b = 0;
  std::vector<std::string> labels;
  /// Row-major order x order counts, confusion[tx * order + rx].
  std::vector<std::uint64_t> confusion;
  /// Every transmitted a read as b and every b as a.
  bool exchanged = false;
  /// All other transmitted symbols decoded correctly.
  bool others_clean = false;

  std::uint64_t at(SymbolIndex tx, SymbolIndex rx) const { return confusion[tx * order + rx]; }
  std::uint64_t row_total(SymbolIndex tx) const;
};

/// Deception jamming over a random payload. Demodulates with `model` when
/// given, otherwise with the minimum-distance rule.
DeceptionSummary run_deception(const ConstellationSpec& spec,
                               const std::pair<std::string, std::string>& swap, std::size_t bits,
                               std::uint64_t seed, const DemodModel* model = nullptr,
                               double margin = kDefaultMargin);

/// Confusion matrix as CSV: header `tx,<rx labels...>`, one row per tx label.
std::string confusion_csv(const DeceptionSummary& summary);
void write_confusion_csv(const DeceptionSummary& summary, const std::filesystem::path& path);

}  // namespace ajam
