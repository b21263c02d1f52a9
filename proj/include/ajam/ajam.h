/*
 * C interface to the adversarial jamming laboratory.
 *
 * Objects are opaque handles created by *_train / *_load / *_run and released
 * with the matching *_destroy. Every fallible call returns an ajam_status;
 * on failure ajam_last_error() holds a message for the calling thread.
 * Destroy functions accept NULL.
 */
#ifndef AJAM_AJAM_H
#define AJAM_AJAM_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(AJAM_BUILDING_LIBRARY)
#    define AJAM_API __declspec(dllexport)
#  else
#    define AJAM_API __declspec(dllimport)
#  endif
#else
#  define AJAM_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum ajam_status {
  AJAM_OK = 0,
  AJAM_ERR_INVALID_ARGUMENT = 1,
  AJAM_ERR_UNSUPPORTED_MODULATION = 2,
  AJAM_ERR_TRAINING_DIVERGED = 3,
  AJAM_ERR_ATTACK_SATURATED = 4,
  AJAM_ERR_IO = 5,
  AJAM_ERR_FORMAT = 6,
  AJAM_ERR_INVALID_HANDLE = 7,
  AJAM_ERR_INTERNAL = 8
} ajam_status;

typedef enum ajam_demod {
  AJAM_DEMOD_LEARNED = 0,
  AJAM_DEMOD_MIN_DISTANCE = 1
} ajam_demod;

typedef struct ajam_model ajam_model;
typedef struct ajam_sweep ajam_sweep;

AJAM_API const char* ajam_version(void);
AJAM_API const char* ajam_status_string(ajam_status status);
/* Message of the last failed call on this thread; empty if none. */
AJAM_API const char* ajam_last_error(void);

/* ---- demodulator ------------------------------------------------------- */

typedef struct ajam_train_options {
  int order;            /* 4 or 16 */
  double snr_db;        /* training-set SNR */
  uint64_t per_class;   /* samples per symbol */
  uint64_t epochs;
  uint64_t hidden;      /* hidden units */
  double learning_rate;
  uint64_t seed;
} ajam_train_options;

AJAM_API void ajam_train_options_default(ajam_train_options* opts);
AJAM_API ajam_status ajam_model_train(const ajam_train_options* opts, ajam_model** out);
AJAM_API ajam_status ajam_model_load(const char* path, ajam_model** out);
AJAM_API ajam_status ajam_model_save(const ajam_model* model, const char* path);
AJAM_API void ajam_model_destroy(ajam_model* model);

AJAM_API ajam_status ajam_model_order(const ajam_model* model, int* order);
AJAM_API ajam_status ajam_model_predict(const ajam_model* model, double i, double q,
                                        size_t* symbol);
/* Gradient of the cross-entropy at label `target` with respect to (i, q). */
AJAM_API ajam_status ajam_model_input_gradient(const ajam_model* model, double i, double q,
                                               size_t target, double* grad_i, double* grad_q);
/* Fraction of noiseless constellation points classified correctly. */
AJAM_API ajam_status ajam_model_clean_accuracy(const ajam_model* model, double* accuracy);

/* ---- SER/SJR sweeps ---------------------------------------------------- */

typedef struct ajam_sweep_options {
  int order;
  const char* strategies; /* comma separated: noise,phase,fixed,aj */
  double sjr_start_db;
  double sjr_end_db;
  double sjr_step_db;
  int has_snr;            /* non-zero adds channel AWGN at snr_db */
  double snr_db;
  uint64_t bits;
  uint64_t seed;
  ajam_demod demod;
  double margin;          /* amplitude overshoot of adversarial waveforms */
  uint64_t threads;
} ajam_sweep_options;

typedef struct ajam_sweep_row {
  const char* strategy;   /* owned by the sweep handle */
  double sjr_db;
  double ser;
  double ber;
  uint64_t symbols;
  uint64_t errors;
  uint64_t seed;
} ajam_sweep_row;

AJAM_API void ajam_sweep_options_default(ajam_sweep_options* opts);
/* `model` may be NULL for min-distance sweeps without the aj strategy. */
AJAM_API ajam_status ajam_sweep_run(const ajam_sweep_options* opts, const ajam_model* model,
                                    ajam_sweep** out);
AJAM_API size_t ajam_sweep_row_count(const ajam_sweep* sweep);
AJAM_API ajam_status ajam_sweep_row_at(const ajam_sweep* sweep, size_t index,
                                       ajam_sweep_row* row);
AJAM_API ajam_status ajam_sweep_write_csv(const ajam_sweep* sweep, const char* path);
AJAM_API ajam_status ajam_sweep_write_svg(const ajam_sweep* sweep, const char* path);
AJAM_API void ajam_sweep_destroy(ajam_sweep* sweep);

/* ---- attack / oracle comparison ---------------------------------------- */

typedef struct ajam_attack_summary {
  size_t rows;
  double min_ratio;       /* attack norm / nearest-boundary norm */
  double max_ratio;
  double min_cosine;
} ajam_attack_summary;

/* Writes `symbol,label,attack_norm,oracle_norm,ratio,cosine` to csv_path
 * (skipped when NULL). */
AJAM_API ajam_status ajam_attack_report(const ajam_model* model, const char* csv_path,
                                        ajam_attack_summary* summary);

/* ---- deception ----------------------------------------------------------- */

typedef struct ajam_deception_summary {
  size_t order;
  uint64_t count_a;       /* transmitted label_a symbols */
  uint64_t count_b;
  uint64_t a_as_b;        /* label_a symbols decoded as label_b */
  uint64_t b_as_a;
  uint64_t other_errors;  /* errors on every other symbol */
  int exchanged;          /* a_as_b == count_a && b_as_a == count_b */
  int others_clean;       /* other_errors == 0 */
} ajam_deception_summary;

/* Exchanges label_a and label_b over a random payload of `bits` bits. Uses
 * the learned model when given, the min-distance rule otherwise; writes the
 * confusion matrix CSV to csv_path unless NULL. */
AJAM_API ajam_status ajam_deceive(const ajam_model* model, int order, const char* label_a,
                                  const char* label_b, uint64_t bits, uint64_t seed,
                                  const char* csv_path, ajam_deception_summary* summary);

#ifdef __cplusplus
}
#endif

#endif /* AJAM_AJAM_H */
