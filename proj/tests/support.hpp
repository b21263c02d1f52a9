#pragma once

// Test-only helpers: cached demodulators and independent oracles.

#include <cstddef>
#include <cstdint>

#include "ajam/constellation.hpp"
#include "ajam/demod.hpp"

namespace ajam::testing {

/// Demodulator trained with the default recipe (1000 per class, 15 dB,
/// 32 hidden units, 200 epochs), cached per order for the process lifetime.
const DemodModel& trained_model(int order);

/// Exhaustive minimum-distance decision via std::complex, lowest index on ties.
SymbolIndex brute_nearest(IQSample x, const ConstellationSpec& spec);

/// Smallest pairwise distance by scanning all pairs.
double brute_min_distance(const ConstellationSpec& spec);

/// Analytic square M-QAM symbol error rate at Es/N0 (linear), Es = 1.
double analytic_qam_ser(std::size_t order, double es_n0);

/// Chi-square goodness-of-fit p-value of phases against U(0, 2 pi).
double phase_uniformity_p(const std::vector<IQSample>& samples, std::size_t bins = 36);

/// Central finite-difference gradient of the model loss.
IQSample finite_difference_gradient(const DemodModel& model, IQSample x, SymbolIndex target,
                                    double h);

}  // namespace ajam::testing
