// Command line front end over the C API.
//
//   ajam train         train a demodulator and save its weights
//   ajam sweep         SER/BER versus SJR for a set of jamming strategies
//   ajam attack-report minimal adversarial norm vs nearest-boundary oracle
//   ajam deceive       targeted label exchange, confusion matrix

#include <cstdio>
#include <memory>
#include <string>

#include "CLI11.hpp"
#include "ajam/ajam.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitRuntime = 2;

struct ModelDeleter {
  void operator()(ajam_model* m) const { ajam_model_destroy(m); }
};
struct SweepDeleter {
  void operator()(ajam_sweep* s) const { ajam_sweep_destroy(s); }
};
using ModelPtr = std::unique_ptr<ajam_model, ModelDeleter>;
using SweepPtr = std::unique_ptr<ajam_sweep, SweepDeleter>;

int report(ajam_status status) {
  if (status == AJAM_OK) {
    return kExitOk;
  }
  std::fprintf(stderr, "error: %s: %s\n", ajam_status_string(status), ajam_last_error());
  const bool usage = status == AJAM_ERR_INVALID_ARGUMENT || status == AJAM_ERR_UNSUPPORTED_MODULATION;
  return usage ? kExitUsage : kExitRuntime;
}

int load(const std::string& path, int expected_order, ModelPtr& out) {
  ajam_model* raw = nullptr;
  const ajam_status st = ajam_model_load(path.c_str(), &raw);
  if (st != AJAM_OK) {
    return report(st);
  }
  out.reset(raw);
  int order = 0;
  ajam_model_order(out.get(), &order);
  if (expected_order != 0 && order != expected_order) {
    std::fprintf(stderr, "error: model '%s' is for %dQAM, not %dQAM\n", path.c_str(), order,
                 expected_order);
    return kExitUsage;
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Adversarial jamming laboratory for QAM demodulators"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(ajam_version()));

  // train
  ajam_train_options topt;
  ajam_train_options_default(&topt);
  std::string train_out;
  auto* train = app.add_subcommand("train", "Train a learned demodulator");
  train->add_option("--mod", topt.order, "Modulation order")->check(CLI::IsMember({4, 16}));
  train->add_option("--snr-db", topt.snr_db, "Training-set SNR in dB")->capture_default_str();
  train->add_option("--per-class", topt.per_class, "Samples per symbol")->capture_default_str();
  train->add_option("--epochs", topt.epochs, "Full-batch epochs")->capture_default_str();
  train->add_option("--hidden", topt.hidden, "Hidden units")->capture_default_str();
  train->add_option("--lr", topt.learning_rate, "Learning rate")->capture_default_str();
  train->add_option("--seed", topt.seed, "Seed")->capture_default_str();
  train->add_option("--out", train_out, "Model file to write")->required();

  // sweep
  ajam_sweep_options sopt;
  ajam_sweep_options_default(&sopt);
  std::string strategies = sopt.strategies;
  std::string demod = "learned";
  std::string model_path;
  std::string csv_path;
  std::string svg_path;
  double snr_db = 0.0;
  auto* sweep = app.add_subcommand("sweep", "SER/BER versus SJR sweep");
  sweep->add_option("--mod", sopt.order, "Modulation order")->check(CLI::IsMember({4, 16}));
  sweep->add_option("--strategies", strategies, "Comma separated: noise,phase,fixed,aj")
      ->capture_default_str();
  sweep->add_option("--sjr-start", sopt.sjr_start_db, "First SJR (dB)")->capture_default_str();
  sweep->add_option("--sjr-end", sopt.sjr_end_db, "Last SJR (dB)")->capture_default_str();
  sweep->add_option("--sjr-step", sopt.sjr_step_db, "SJR step (dB)")->capture_default_str();
  auto* snr_opt = sweep->add_option("--snr-db", snr_db, "Channel SNR; omit for a noiseless channel");
  sweep->add_option("--bits", sopt.bits, "Payload bits per cell")->capture_default_str();
  sweep->add_option("--seed", sopt.seed, "Run seed")->capture_default_str();
  sweep->add_option("--demod", demod, "Demodulator")
      ->check(CLI::IsMember({"learned", "mindist"}))
      ->capture_default_str();
  sweep->add_option("--model", model_path, "Trained model file");
  sweep->add_option("--margin", sopt.margin, "Adversarial amplitude margin")->capture_default_str();
  sweep->add_option("--threads", sopt.threads, "Worker threads")->capture_default_str();
  sweep->add_option("--csv", csv_path, "CSV output")->required();
  sweep->add_option("--svg", svg_path, "SVG plot output");

  // attack-report
  std::string report_model;
  std::string report_out;
  int report_order = 16;
  auto* attack = app.add_subcommand("attack-report", "Compare adversarial and geometric jamming");
  attack->add_option("--model", report_model, "Trained model file")->required();
  attack->add_option("--mod", report_order, "Modulation order")->check(CLI::IsMember({4, 16}));
  attack->add_option("--out", report_out, "CSV output")->required();

  // deceive
  int deceive_order = 16;
  std::string swap = "1100:1000";
  std::uint64_t deceive_bits = 500000;
  std::uint64_t deceive_seed = 1;
  std::string deceive_model;
  std::string deceive_out;
  auto* deceive = app.add_subcommand("deceive", "Targeted label exchange attack");
  deceive->add_option("--mod", deceive_order, "Modulation order")->check(CLI::IsMember({4, 16}));
  deceive->add_option("--swap", swap, "Labels to exchange, A:B")->capture_default_str();
  deceive->add_option("--bits", deceive_bits, "Payload bits")->capture_default_str();
  deceive->add_option("--seed", deceive_seed, "Seed")->capture_default_str();
  deceive->add_option("--model", deceive_model, "Trained model file (min-distance if omitted)");
  deceive->add_option("--out", deceive_out, "Confusion matrix CSV")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  if (train->parsed()) {
    ajam_model* raw = nullptr;
    if (int rc = report(ajam_model_train(&topt, &raw)); rc != kExitOk) {
      return rc;
    }
    ModelPtr model(raw);
    double acc = 0.0;
    ajam_model_clean_accuracy(model.get(), &acc);
    if (int rc = report(ajam_model_save(model.get(), train_out.c_str())); rc != kExitOk) {
      return rc;
    }
    std::printf("trained %dQAM demodulator: clean accuracy %.4f -> %s\n", topt.order, acc,
                train_out.c_str());
    return kExitOk;
  }

  if (sweep->parsed()) {
    sopt.strategies = strategies.c_str();
    sopt.has_snr = snr_opt->count() > 0 ? 1 : 0;
    sopt.snr_db = snr_db;
    sopt.demod = demod == "learned" ? AJAM_DEMOD_LEARNED : AJAM_DEMOD_MIN_DISTANCE;
    ModelPtr model;
    if (!model_path.empty()) {
      if (int rc = load(model_path, sopt.order, model); rc != kExitOk) {
        return rc;
      }
    } else if (sopt.demod == AJAM_DEMOD_LEARNED || strategies.find("aj") != std::string::npos) {
      ajam_train_options defaults;
      ajam_train_options_default(&defaults);
      defaults.order = sopt.order;
      ajam_model* trained = nullptr;
      if (int rc = report(ajam_model_train(&defaults, &trained)); rc != kExitOk) {
        return rc;
      }
      model.reset(trained);
    }
    ajam_sweep* raw = nullptr;
    if (int rc = report(ajam_sweep_run(&sopt, model.get(), &raw)); rc != kExitOk) {
      return rc;
    }
    SweepPtr result(raw);
    if (int rc = report(ajam_sweep_write_csv(result.get(), csv_path.c_str())); rc != kExitOk) {
      return rc;
    }
    if (!svg_path.empty()) {
      if (int rc = report(ajam_sweep_write_svg(result.get(), svg_path.c_str())); rc != kExitOk) {
        return rc;
      }
    }
    for (std::size_t k = 0; k < ajam_sweep_row_count(result.get()); ++k) {
      ajam_sweep_row row;
      ajam_sweep_row_at(result.get(), k, &row);
      std::printf("%-6s sjr=%6.2f dB  ser=%.6g  ber=%.6g\n", row.strategy, row.sjr_db, row.ser,
                  row.ber);
    }
    return kExitOk;
  }

  if (attack->parsed()) {
    ModelPtr model;
    if (int rc = load(report_model, report_order, model); rc != kExitOk) {
      return rc;
    }
    ajam_attack_summary summary{};
    if (int rc = report(ajam_attack_report(model.get(), report_out.c_str(), &summary));
        rc != kExitOk) {
      return rc;
    }
    std::printf("%zu symbols: attack/oracle norm ratio in [%.4f, %.4f], min cosine %.4f\n",
                summary.rows, summary.min_ratio, summary.max_ratio, summary.min_cosine);
    return kExitOk;
  }

  if (deceive->parsed()) {
    const auto colon = swap.find(':');
    if (colon == std::string::npos) {
      std::fprintf(stderr, "error: --swap expects LABEL_A:LABEL_B, got '%s'\n", swap.c_str());
      return kExitUsage;
    }
    const std::string a = swap.substr(0, colon);
    const std::string b = swap.substr(colon + 1);
    ModelPtr model;
    if (!deceive_model.empty()) {
      if (int rc = load(deceive_model, deceive_order, model); rc != kExitOk) {
        return rc;
      }
    }
    ajam_deception_summary summary{};
    if (int rc = report(ajam_deceive(model.get(), deceive_order, a.c_str(), b.c_str(), deceive_bits,
                                     deceive_seed, deceive_out.c_str(), &summary));
        rc != kExitOk) {
      return rc;
    }
    std::printf("%s -> %s: %llu/%llu, %s -> %s: %llu/%llu, other errors: %llu\n", a.c_str(),
                b.c_str(), static_cast<unsigned long long>(summary.a_as_b),
                static_cast<unsigned long long>(summary.count_a), b.c_str(), a.c_str(),
                static_cast<unsigned long long>(summary.b_as_a),
                static_cast<unsigned long long>(summary.count_b),
                static_cast<unsigned long long>(summary.other_errors));
    return kExitOk;
  }
  return kExitUsage;
}
