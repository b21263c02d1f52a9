#include "ajam/ajam.h"

#include <algorithm>
#include <new>
#include <sstream>
#include <string>

#include "ajam/adversary.hpp"
#include "ajam/constellation.hpp"
#include "ajam/demod.hpp"
#include "ajam/error.hpp"
#include "ajam/harness.hpp"
#include "ajam/jammers.hpp"

struct ajam_model {
  ajam::DemodModel model;
  ajam::ConstellationSpec spec;
};

struct ajam_sweep {
  std::vector<ajam::SweepRow> rows;
};

namespace {

thread_local std::string g_last_error;

ajam_status fail(ajam_status status, const std::string& message) {
  g_last_error = message;
  return status;
}

template <typename F>
ajam_status guarded(F&& body) {
  try {
    body();
    g_last_error.clear();
    return AJAM_OK;
  } catch (const ajam::Error& e) {
    return fail(static_cast<ajam_status>(static_cast<int>(e.code())), e.what());
  } catch (const std::bad_alloc&) {
    return fail(AJAM_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(AJAM_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(AJAM_ERR_INTERNAL, "unknown failure");
  }
}

std::vector<ajam::JammerKind> parse_strategies(const char* list) {
  if (list == nullptr) {
    throw ajam::InvalidArgument("strategy list is NULL");
  }
  std::vector<ajam::JammerKind> out;
  std::istringstream is(list);
  std::string name;
  while (std::getline(is, name, ',')) {
    if (!name.empty()) {
      out.push_back(ajam::parse_jammer(name));
    }
  }
  return out;
}

}  // namespace

extern "C" {

const char* ajam_version(void) { return "1.0.0"; }

const char* ajam_status_string(ajam_status status) {
  switch (status) {
    case AJAM_OK:
      return "ok";
    case AJAM_ERR_INVALID_ARGUMENT:
      return "invalid argument";
    case AJAM_ERR_UNSUPPORTED_MODULATION:
      return "unsupported modulation";
    case AJAM_ERR_TRAINING_DIVERGED:
      return "training diverged";
    case AJAM_ERR_ATTACK_SATURATED:
      return "attack saturated";
    case AJAM_ERR_IO:
      return "i/o error";
    case AJAM_ERR_FORMAT:
      return "malformed file";
    case AJAM_ERR_INVALID_HANDLE:
      return "invalid handle";
    case AJAM_ERR_INTERNAL:
      return "internal error";
  }
  return "unknown status";
}

const char* ajam_last_error(void) { return g_last_error.c_str(); }

void ajam_train_options_default(ajam_train_options* opts) {
  if (opts == nullptr) {
    return;
  }
  const ajam::TrainConfig tc;
  opts->order = 16;
  opts->snr_db = 15.0;
  opts->per_class = 1000;
  opts->epochs = tc.epochs;
  opts->hidden = tc.hidden;
  opts->learning_rate = tc.learning_rate;
  opts->seed = 1;
}

ajam_status ajam_model_train(const ajam_train_options* opts, ajam_model** out) {
  if (opts == nullptr || out == nullptr) {
    return fail(AJAM_ERR_INVALID_ARGUMENT, "NULL argument to ajam_model_train");
  }
  *out = nullptr;
  return guarded([&] {
    auto spec = ajam::build_qam(opts->order);
    const auto data = ajam::generate_dataset(spec, opts->per_class, opts->snr_db, opts->seed);
    ajam::TrainConfig tc;
    tc.epochs = opts->epochs;
    tc.hidden = opts->hidden;
    tc.learning_rate = opts->learning_rate;
    tc.seed = opts->seed;
    auto model = ajam::train(data, spec.order(), tc);
    *out = new ajam_model{std::move(model), std::move(spec)};
  });
}

ajam_status ajam_model_load(const char* path, ajam_model** out) {
  if (path == nullptr || out == nullptr) {
    return fail(AJAM_ERR_INVALID_ARGUMENT, "NULL argument to ajam_model_load");
  }
  *out = nullptr;
  return guarded([&] {
    auto model = ajam::load_model(path);
    auto spec = ajam::build_qam(static_cast<int>(model.order()));
    *out = new ajam_model{std::move(model), std::move(spec)};
  });
}

ajam_status ajam_model_save(const ajam_model* model, const char* path) {
  if (model == nullptr) {
    return fail(AJAM_ERR_INVALID_HANDLE, "NULL model handle");
  }
  if (path == nullptr) {
    return fail(AJAM_ERR_INVALID_ARGUMENT, "NULL path");
  }
  return guarded([&] { ajam::save_model(model->model, path); });
}

void ajam_model_destroy(ajam_model* model) { delete model; }

ajam_status ajam_model_order(const ajam_model* model, int* order) {
  if (model == nullptr) {
    return fail(AJAM_ERR_INVALID_HANDLE, "NULL model handle");
  }
  if (order == nullptr) {
    return fail(AJAM_ERR_INVALID_ARGUMENT, "NULL output pointer");
  }
  *order = static_cast<int>(model->model.order());
  return AJAM_OK;
}

ajam_status ajam_model_predict(const ajam_model* model, double i, double q, size_t* symbol) {
  if (model == nullptr) {
    return fail(AJAM_ERR_INVALID_HANDLE, "NULL model handle");
  }
  if (symbol == nullptr) {
    return fail(AJAM_ERR_INVALID_ARGUMENT, "NULL output pointer");
  }
  return guarded([&] { *symbol = model->model.predict({i, q}); });
}

ajam_status ajam_model_input_gradient(const ajam_model* model, double i, double q, size_t target,
                                      double* grad_i, double* grad_q) {
  if (model == nullptr) {
    return fail(AJAM_ERR_INVALID_HANDLE, "NULL model handle");
  }
  if (grad_i == nullptr || grad_q == nullptr) {
    return fail(AJAM_ERR_INVALID_ARGUMENT, "NULL output pointer");
  }
  if (target >= model->model.order()) {
    return fail(AJAM_ERR_INVALID_ARGUMENT, "target symbol out of range");
  }
  return guarded([&] {
    const auto g = model->model.input_gradient({i, q}, target);
    *grad_i = g.i;
    *grad_q = g.q;
  });
}

ajam_status ajam_model_clean_accuracy(const ajam_model* model, double* accuracy) {
  if (model == nullptr) {
    return fail(AJAM_ERR_INVALID_HANDLE, "NULL model handle");
  }
  if (accuracy == nullptr) {
    return fail(AJAM_ERR_INVALID_ARGUMENT, "NULL output pointer");
  }
  return guarded([&] {
    std::size_t ok = 0;
    for (ajam::SymbolIndex s = 0; s < model->spec.order(); ++s) {
      ok += model->model.predict(model->spec.point(s)) == s ? 1 : 0;
    }
    *accuracy = static_cast<double>(ok) / static_cast<double>(model->spec.order());
  });
}

void ajam_sweep_options_default(ajam_sweep_options* opts) {
  if (opts == nullptr) {
    return;
  }
  const ajam::SweepConfig cfg;
  opts->order = cfg.order;
  opts->strategies = "noise,phase,fixed,aj";
  opts->sjr_start_db = cfg.sjr_start_db;
  opts->sjr_end_db = cfg.sjr_end_db;
  opts->sjr_step_db = cfg.sjr_step_db;
  opts->has_snr = 0;
  opts->snr_db = 0.0;
  opts->bits = cfg.bits;
  opts->seed = cfg.seed;
  opts->demod = AJAM_DEMOD_LEARNED;
  opts->margin = cfg.margin;
  opts->threads = 1;
}

ajam_status ajam_sweep_run(const ajam_sweep_options* opts, const ajam_model* model,
                           ajam_sweep** out) {
  if (opts == nullptr || out == nullptr) {
    return fail(AJAM_ERR_INVALID_ARGUMENT, "NULL argument to ajam_sweep_run");
  }
  *out = nullptr;
  return guarded([&] {
    ajam::SweepConfig cfg;
    cfg.order = opts->order;
    cfg.strategies = parse_strategies(opts->strategies);
    cfg.sjr_start_db = opts->sjr_start_db;
    cfg.sjr_end_db = opts->sjr_end_db;
    cfg.sjr_step_db = opts->sjr_step_db;
    if (opts->has_snr) {
      cfg.snr_db = opts->snr_db;
    }
    cfg.bits = opts->bits;
    cfg.seed = opts->seed;
    switch (opts->demod) {
      case AJAM_DEMOD_LEARNED:
        cfg.demod = ajam::DemodChoice::kLearned;
        break;
      case AJAM_DEMOD_MIN_DISTANCE:
        cfg.demod = ajam::DemodChoice::kMinDistance;
        break;
      default:
        throw ajam::InvalidArgument("unknown demodulator choice");
    }
    cfg.margin = opts->margin;
    cfg.threads = opts->threads == 0 ? 1 : opts->threads;
    const bool needs_model =
        cfg.demod == ajam::DemodChoice::kLearned ||
        std::find(cfg.strategies.begin(), cfg.strategies.end(), ajam::JammerKind::kAdversarial) !=
            cfg.strategies.end();
    if (needs_model && model == nullptr) {
      throw ajam::InvalidArgument("a trained model is required for the learned demodulator "
                                  "and the aj strategy");
    }
    auto rows = ajam::run_pipeline(cfg, model ? &model->model : nullptr);
    *out = new ajam_sweep{std::move(rows)};
  });
}

size_t ajam_sweep_row_count(const ajam_sweep* sweep) {
  return sweep == nullptr ? 0 : sweep->rows.size();
}

ajam_status ajam_sweep_row_at(const ajam_sweep* sweep, size_t index, ajam_sweep_row* row) {
  if (sweep == nullptr) {
    return fail(AJAM_ERR_INVALID_HANDLE, "NULL sweep handle");
  }
  if (row == nullptr || index >= sweep->rows.size()) {
    return fail(AJAM_ERR_INVALID_ARGUMENT, "row index out of range or NULL output");
  }
  const auto& r = sweep->rows[index];
  *row = {r.strategy.c_str(), r.sjr_db, r.ser, r.ber, r.symbols, r.errors, r.seed};
  return AJAM_OK;
}

ajam_status ajam_sweep_write_csv(const ajam_sweep* sweep, const char* path) {
  if (sweep == nullptr) {
    return fail(AJAM_ERR_INVALID_HANDLE, "NULL sweep handle");
  }
  if (path == nullptr) {
    return fail(AJAM_ERR_INVALID_ARGUMENT, "NULL path");
  }
  return guarded([&] { ajam::write_csv(sweep->rows, path); });
}

ajam_status ajam_sweep_write_svg(const ajam_sweep* sweep, const char* path) {
  if (sweep == nullptr) {
    return fail(AJAM_ERR_INVALID_HANDLE, "NULL sweep handle");
  }
  if (path == nullptr) {
    return fail(AJAM_ERR_INVALID_ARGUMENT, "NULL path");
  }
  return guarded([&] { ajam::plot_svg(sweep->rows, path); });
}

void ajam_sweep_destroy(ajam_sweep* sweep) { delete sweep; }

ajam_status ajam_attack_report(const ajam_model* model, const char* csv_path,
                               ajam_attack_summary* summary) {
  if (model == nullptr) {
    return fail(AJAM_ERR_INVALID_HANDLE, "NULL model handle");
  }
  return guarded([&] {
    const auto rows = ajam::oracle_gap_report(model->model, model->spec);
    if (csv_path != nullptr) {
      ajam::write_oracle_gap_csv(rows, csv_path);
    }
    if (summary != nullptr) {
      summary->rows = rows.size();
      summary->min_ratio = rows.front().ratio;
      summary->max_ratio = rows.front().ratio;
      summary->min_cosine = rows.front().cosine;
      for (const auto& r : rows) {
        summary->min_ratio = std::min(summary->min_ratio, r.ratio);
        summary->max_ratio = std::max(summary->max_ratio, r.ratio);
        summary->min_cosine = std::min(summary->min_cosine, r.cosine);
      }
    }
  });
}

ajam_status ajam_deceive(const ajam_model* model, int order, const char* label_a,
                         const char* label_b, uint64_t bits, uint64_t seed, const char* csv_path,
                         ajam_deception_summary* summary) {
  if (label_a == nullptr || label_b == nullptr) {
    return fail(AJAM_ERR_INVALID_ARGUMENT, "NULL swap label");
  }
  return guarded([&] {
    const auto spec = ajam::build_qam(order);
    if (model != nullptr && model->model.order() != spec.order()) {
      throw ajam::InvalidArgument("model order " + std::to_string(model->model.order()) +
                                  " does not match --mod " + std::to_string(order));
    }
    const auto result = ajam::run_deception(spec, {label_a, label_b}, bits, seed,
                                            model ? &model->model : nullptr);
    if (csv_path != nullptr) {
      ajam::write_confusion_csv(result, csv_path);
    }
    if (summary != nullptr) {
      summary->order = result.order;
      summary->count_a = result.row_total(result.a);
      summary->count_b = result.row_total(result.b);
      summary->a_as_b = result.at(result.a, result.b);
      summary->b_as_a = result.at(result.b, result.a);
      summary->other_errors = 0;
      for (ajam::SymbolIndex s = 0; s < result.order; ++s) {
        if (s != result.a && s != result.b) {
          summary->other_errors += result.row_total(s) - result.at(s, s);
        }
      }
      summary->exchanged = result.exchanged ? 1 : 0;
      summary->others_clean = result.others_clean ? 1 : 0;
    }
  });
}

}  // extern "C"
