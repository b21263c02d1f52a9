#include "ajam/harness.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <cmath>
#include <exception>
#include <map>
#include <sstream>
#include <thread>

#include "ajam/channel.hpp"
#include "ajam/error.hpp"
#include "ajam/rng.hpp"
#include "text_io.hpp"

namespace ajam {

std::vector<double> sjr_grid(const SweepConfig& cfg) {
  if (!(cfg.sjr_step_db > 0.0)) {
    throw InvalidArgument("SJR step must be positive");
  }
  if (!(cfg.sjr_end_db >= cfg.sjr_start_db)) {
    throw InvalidArgument("SJR grid is empty: end " + detail::fmt6(cfg.sjr_end_db) +
                          " < start " + detail::fmt6(cfg.sjr_start_db));
  }
  const auto n = static_cast<std::size_t>(
      std::floor((cfg.sjr_end_db - cfg.sjr_start_db) / cfg.sjr_step_db + 1e-9));
  std::vector<double> grid;
  for (std::size_t k = 0; k <= n; ++k) {
    grid.push_back(cfg.sjr_start_db + static_cast<double>(k) * cfg.sjr_step_db);
  }
  return grid;
}

std::uint64_t cell_seed(std::uint64_t run_seed, std::size_t strategy_index, std::size_t sjr_index) {
  return derive_seed(run_seed, strategy_index + 1, sjr_index + 1);
}

std::vector<std::uint8_t> random_bits(std::size_t n, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<std::uint8_t> bits(n);
  std::uint64_t word = 0;
  for (std::size_t k = 0; k < n; ++k) {
    if (k % 64 == 0) {
      word = rng.next();
    }
    bits[k] = static_cast<std::uint8_t>((word >> (k % 64)) & 1U);
  }
  return bits;
}

ErrorRates ber_from_symbols(std::span<const SymbolIndex> tx, std::span<const SymbolIndex> rx,
                            const ConstellationSpec& spec) {
  if (tx.size() != rx.size()) {
    throw InvalidArgument("label sequences differ in length: " + std::to_string(tx.size()) +
                          " vs " + std::to_string(rx.size()));
  }
  std::vector<unsigned> packed(spec.order());
  for (SymbolIndex s = 0; s < spec.order(); ++s) {
    unsigned v = 0;
    for (std::uint8_t b : spec.label_bits(s)) {
      v = (v << 1) | b;
    }
    packed[s] = v;
  }
  ErrorRates r;
  for (std::size_t k = 0; k < tx.size(); ++k) {
    if (tx[k] != rx[k]) {
      ++r.symbol_errors;
      r.bit_errors += static_cast<std::uint64_t>(std::popcount(packed.at(tx[k]) ^ packed.at(rx[k])));
    }
  }
  if (!tx.empty()) {
    const auto n = static_cast<double>(tx.size());
    r.ser = static_cast<double>(r.symbol_errors) / n;
    r.ber = static_cast<double>(r.bit_errors) / (n * static_cast<double>(spec.bits_per_symbol()));
  }
  return r;
}

DemodModel train_default_model(const SweepConfig& cfg) {
  const ConstellationSpec spec = build_qam(cfg.order);
  const Dataset data =
      generate_dataset(spec, cfg.per_class, cfg.train_snr_db, derive_seed(cfg.seed, 0xDA7A));
  TrainConfig tc = cfg.training;
  tc.seed = derive_seed(cfg.seed, 0x7EA1);
  return train(data, spec.order(), tc);
}

namespace {

struct Cell {
  std::size_t strategy = 0;
  std::size_t sjr = 0;
};

SweepRow run_cell(const SweepConfig& cfg, const ConstellationSpec& spec, JammerKind kind,
                  double sjr_db, std::uint64_t seed, const DemodModel* model,
                  const AdversarialJammer* aj) {
  const std::vector<std::uint8_t> bits = random_bits(cfg.bits, derive_seed(seed, 1));
  const std::vector<SymbolIndex> tx = bits_to_symbols(bits, spec);

  JammerConfig jc;
  jc.kind = kind;
  jc.budget = budget_from_db(1.0, sjr_db);
  jc.amplitude_margin = cfg.margin;
  jc.seed = derive_seed(seed, 2);
  const std::vector<IQSample> jam = make_jamming(jc, tx, spec, aj);

  std::vector<IQSample> rx(tx.size());
  for (std::size_t k = 0; k < tx.size(); ++k) {
    rx[k] = spec.point(tx[k]) + jam[k];
  }
  if (cfg.snr_db) {
    rx = awgn(rx, NoiseSpec::with_power(db_to_ratio(-*cfg.snr_db), derive_seed(seed, 3)));
  }
  std::vector<SymbolIndex> decided(rx.size());
  for (std::size_t k = 0; k < rx.size(); ++k) {
    decided[k] = cfg.demod == DemodChoice::kLearned ? model->predict(rx[k])
                                                     : min_distance_demod(rx[k], spec);
  }
  const ErrorRates rates = ber_from_symbols(tx, decided, spec);
  return {std::string(jammer_name(kind)), sjr_db, rates.ser, rates.ber,
          static_cast<std::uint64_t>(tx.size()), rates.symbol_errors, seed};
}

}  // namespace

std::vector<SweepRow> run_pipeline(const SweepConfig& cfg, const DemodModel* model) {
  if (cfg.strategies.empty()) {
    return {};
  }
  const ConstellationSpec spec = build_qam(cfg.order);
  if (cfg.bits == 0 || cfg.bits % spec.bits_per_symbol() != 0) {
    throw InvalidArgument("bit count " + std::to_string(cfg.bits) +
                          " must be a positive multiple of " +
                          std::to_string(spec.bits_per_symbol()));
  }
  const std::vector<double> grid = sjr_grid(cfg);
  for (JammerKind k : cfg.strategies) {
    if (k == JammerKind::kDeception) {
      throw InvalidArgument("the deceive strategy is not part of SER sweeps; use run_deception");
    }
  }
  if (cfg.snr_db && std::isnan(*cfg.snr_db)) {
    throw InvalidArgument("channel SNR must not be NaN");
  }

  const bool needs_model =
      cfg.demod == DemodChoice::kLearned ||
      std::find(cfg.strategies.begin(), cfg.strategies.end(), JammerKind::kAdversarial) !=
          cfg.strategies.end();
  std::optional<DemodModel> trained;
  if (needs_model && model == nullptr) {
    trained = train_default_model(cfg);
    model = &*trained;
  }
  if (model != nullptr && model->order() != spec.order()) {
    throw InvalidArgument("demodulator is for " + std::to_string(model->order()) +
                          "QAM but the sweep is " + std::to_string(spec.order()) + "QAM");
  }
  std::optional<AdversarialJammer> aj;
  if (std::find(cfg.strategies.begin(), cfg.strategies.end(), JammerKind::kAdversarial) !=
      cfg.strategies.end()) {
    aj.emplace(*model, spec, cfg.attack, cfg.margin);
  }

  std::vector<Cell> cells;
  for (std::size_t s = 0; s < cfg.strategies.size(); ++s) {
    for (std::size_t g = 0; g < grid.size(); ++g) {
      cells.push_back({s, g});
    }
  }
  std::vector<SweepRow> rows(cells.size());
  std::vector<std::exception_ptr> failures(cells.size());
  const auto work = [&](std::size_t c) {
    const JammerKind kind = cfg.strategies[cells[c].strategy];
    const double sjr = grid[cells[c].sjr];
    try {
      rows[c] = run_cell(cfg, spec, kind, sjr, cell_seed(cfg.seed, cells[c].strategy, cells[c].sjr),
                         model, aj ? &*aj : nullptr);
    } catch (const Error& e) {
      failures[c] = std::make_exception_ptr(Error(
          e.code(), "cell strategy=" + std::string(jammer_name(kind)) +
                        " sjr_db=" + detail::fmt6(sjr) + ": " + e.what()));
    } catch (...) {
      failures[c] = std::current_exception();
    }
  };

  const std::size_t threads = std::clamp<std::size_t>(cfg.threads, 1, cells.size());
  if (threads == 1) {
    for (std::size_t c = 0; c < cells.size(); ++c) {
      work(c);
    }
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::jthread> pool;
    for (std::size_t t = 0; t < threads; ++t) {
      pool.emplace_back([&] {
        for (std::size_t c = next++; c < cells.size(); c = next++) {
          work(c);
        }
      });
    }
  }
  for (const auto& f : failures) {
    if (f) {
      std::rethrow_exception(f);
    }
  }
  return rows;
}

std::string sweep_csv(std::span<const SweepRow> rows) {
  std::string out = "strategy,sjr_db,ser,ber,symbols,errors,seed\n";
  for (const auto& r : rows) {
    out += r.strategy + ',' + detail::fmt6(r.sjr_db) + ',' + detail::fmt6(r.ser) + ',' +
           detail::fmt6(r.ber) + ',' + std::to_string(r.symbols) + ',' +
           std::to_string(r.errors) + ',' + std::to_string(r.seed) + '\n';
  }
  return out;
}

void write_csv(std::span<const SweepRow> rows, const std::filesystem::path& path) {
  detail::write_text_file(path, sweep_csv(rows));
}

namespace {

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::string field;
  std::istringstream is(line);
  while (std::getline(is, field, sep)) {
    out.push_back(field);
  }
  if (!line.empty() && line.back() == sep) {
    out.emplace_back();
  }
  return out;
}

double to_double(const std::string& s) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != s.size()) {
    throw FormatError("CSV: bad number '" + s + "'");
  }
  return v;
}

std::uint64_t to_u64(const std::string& s) {
  std::size_t used = 0;
  std::uint64_t v = 0;
  try {
    v = std::stoull(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != s.size()) {
    throw FormatError("CSV: bad integer '" + s + "'");
  }
  return v;
}

}  // namespace

std::vector<SweepRow> parse_csv(const std::string& text) {
  std::istringstream is(text);
  std::string line;
  if (!std::getline(is, line) || line != "strategy,sjr_db,ser,ber,symbols,errors,seed") {
    throw FormatError("CSV: unexpected header");
  }
  std::vector<SweepRow> rows;
  while (std::getline(is, line)) {
    if (line.empty()) {
      continue;
    }
    const auto f = split(line, ',');
    if (f.size() != 7) {
      throw FormatError("CSV: expected 7 fields in '" + line + "'");
    }
    rows.push_back({f[0], to_double(f[1]), to_double(f[2]), to_double(f[3]), to_u64(f[4]),
                    to_u64(f[5]), to_u64(f[6])});
  }
  return rows;
}

std::vector<SweepRow> read_csv(const std::filesystem::path& path) {
  return parse_csv(detail::read_text_file(path));
}

namespace {

const char* strategy_colour(const std::string& name) {
  if (name == "noise") return "#7f7f7f";
  if (name == "phase") return "#1f77b4";
  if (name == "fixed") return "#2ca02c";
  if (name == "aj") return "#d62728";
  return "#9467bd";
}

}  // namespace

std::string sweep_svg(std::span<const SweepRow> rows) {
  if (rows.empty()) {
    throw InvalidArgument("nothing to plot: no sweep rows");
  }
  constexpr double kWidth = 640, kHeight = 420;
  constexpr double kLeft = 70, kRight = 130, kTop = 20, kBottom = 50;
  const double pw = kWidth - kLeft - kRight;
  const double ph = kHeight - kTop - kBottom;

  std::uint64_t max_symbols = 1;
  double xmin = rows.front().sjr_db, xmax = rows.front().sjr_db;
  for (const auto& r : rows) {
    max_symbols = std::max(max_symbols, r.symbols);
    xmin = std::min(xmin, r.sjr_db);
    xmax = std::max(xmax, r.sjr_db);
  }
  if (xmax == xmin) {
    xmin -= 1.0;
    xmax += 1.0;
  }
  // Log SER axis from 1/symbols (where SER = 0 is drawn) up to 1.
  const double floor_ser = 1.0 / static_cast<double>(max_symbols);
  const double ylo = std::log10(floor_ser);
  const auto px = [&](double x) { return kLeft + (x - xmin) / (xmax - xmin) * pw; };
  const auto py = [&](double ser) {
    const double v = std::log10(std::max(ser, floor_ser));
    return kTop + (0.0 - v) / (0.0 - ylo) * ph;
  };

  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\""
     << kHeight << "\" font-family=\"sans-serif\" font-size=\"11\">\n";
  os << "<rect x=\"" << kLeft << "\" y=\"" << kTop << "\" width=\"" << pw << "\" height=\"" << ph
     << "\" fill=\"none\" stroke=\"black\"/>\n";
  for (int decade = 0; decade >= static_cast<int>(std::floor(ylo)); --decade) {
    const double v = std::pow(10.0, decade);
    if (v < floor_ser) {
      break;
    }
    const double y = py(v);
    os << "<line x1=\"" << kLeft << "\" y1=\"" << y << "\" x2=\"" << kLeft + pw << "\" y2=\"" << y
       << "\" stroke=\"#dddddd\"/>\n";
    os << "<text x=\"" << kLeft - 6 << "\" y=\"" << y + 4 << "\" text-anchor=\"end\">1e" << decade
       << "</text>\n";
  }
  os << "<text x=\"" << kLeft - 6 << "\" y=\"" << py(floor_ser) + 4
     << "\" text-anchor=\"end\" class=\"floor\">0</text>\n";
  std::vector<double> xs;
  for (const auto& r : rows) {
    if (std::find(xs.begin(), xs.end(), r.sjr_db) == xs.end()) {
      xs.push_back(r.sjr_db);
    }
  }
  for (double x : xs) {
    os << "<text x=\"" << px(x) << "\" y=\"" << kTop + ph + 16 << "\" text-anchor=\"middle\">"
       << detail::fmt6(x) << "</text>\n";
  }
  os << "<text x=\"" << kLeft + pw / 2 << "\" y=\"" << kHeight - 10
     << "\" text-anchor=\"middle\">SJR (dB)</text>\n";
  os << "<text transform=\"translate(16," << kTop + ph / 2
     << ") rotate(-90)\" text-anchor=\"middle\">SER (0 drawn at 1/symbols)</text>\n";

  // One polyline per strategy, in first-appearance order.
  std::vector<std::string> order;
  std::map<std::string, std::vector<const SweepRow*>> series;
  for (const auto& r : rows) {
    if (!series.contains(r.strategy)) {
      order.push_back(r.strategy);
    }
    series[r.strategy].push_back(&r);
  }
  double legend_y = kTop + 10;
  for (const auto& name : order) {
    auto pts = series[name];
    std::stable_sort(pts.begin(), pts.end(),
                     [](const SweepRow* a, const SweepRow* b) { return a->sjr_db < b->sjr_db; });
    os << "<polyline data-strategy=\"" << name << "\" fill=\"none\" stroke=\""
       << strategy_colour(name) << "\" stroke-width=\"2\" points=\"";
    for (std::size_t k = 0; k < pts.size(); ++k) {
      os << (k ? " " : "") << px(pts[k]->sjr_db) << ',' << py(pts[k]->ser);
    }
    os << "\"/>\n";
    os << "<text x=\"" << kLeft + pw + 10 << "\" y=\"" << legend_y << "\" fill=\""
       << strategy_colour(name) << "\">" << name << "</text>\n";
    legend_y += 16;
  }
  os << "</svg>\n";
  return os.str();
}

void plot_svg(std::span<const SweepRow> rows, const std::filesystem::path& path) {
  detail::write_text_file(path, sweep_svg(rows));
}

std::uint64_t DeceptionSummary::row_total(SymbolIndex tx) const {
  std::uint64_t n = 0;
  for (SymbolIndex rx = 0; rx < order; ++rx) {
    n += at(tx, rx);
  }
  return n;
}

DeceptionSummary run_deception(const ConstellationSpec& spec,
                               const std::pair<std::string, std::string>& swap, std::size_t bits,
                               std::uint64_t seed, const DemodModel* model, double margin) {
  if (model != nullptr && model->order() != spec.order()) {
    throw InvalidArgument("demodulator order does not match the constellation");
  }
  DeceptionSummary out;
  out.order = spec.order();
  out.a = spec.index_of(swap.first);
  out.b = spec.index_of(swap.second);
  if (out.a == out.b) {
    throw InvalidArgument("deception swap needs two different labels");
  }
  out.labels.assign(spec.labels().begin(), spec.labels().end());
  out.confusion.assign(spec.order() * spec.order(), 0);

  const std::vector<SymbolIndex> tx = bits_to_symbols(random_bits(bits, derive_seed(seed, 1)), spec);
  const std::vector<IQSample> jam = deception_jam(tx, spec, swap, margin);
  for (std::size_t k = 0; k < tx.size(); ++k) {
    const IQSample rx = spec.point(tx[k]) + jam[k];
    const SymbolIndex d = model ? model->predict(rx) : min_distance_demod(rx, spec);
    ++out.confusion[tx[k] * out.order + d];
  }

  out.exchanged = out.at(out.a, out.b) == out.row_total(out.a) &&
                  out.at(out.b, out.a) == out.row_total(out.b);
  out.others_clean = true;
  for (SymbolIndex s = 0; s < out.order; ++s) {
    if (s != out.a && s != out.b && out.at(s, s) != out.row_total(s)) {
      out.others_clean = false;
    }
  }
  return out;
}

std::string confusion_csv(const DeceptionSummary& summary) {
  std::string out = "tx";
  for (const auto& l : summary.labels) {
    out += ',' + l;
  }
  out += '\n';
  for (SymbolIndex tx = 0; tx < summary.order; ++tx) {
    out += summary.labels[tx];
    for (SymbolIndex rx = 0; rx < summary.order; ++rx) {
      out += ',' + std::to_string(summary.at(tx, rx));
    }
    out += '\n';
  }
  return out;
}

void write_confusion_csv(const DeceptionSummary& summary, const std::filesystem::path& path) {
  detail::write_text_file(path, confusion_csv(summary));
}

}  // namespace ajam
