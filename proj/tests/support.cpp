#include "support.hpp"

#include <boost/math/special_functions/gamma.hpp>
#include <cmath>
#include <complex>
#include <limits>
#include <map>
#include <mutex>
#include <numbers>

namespace ajam::testing {

const DemodModel& trained_model(int order) {
  static std::mutex mu;
  static std::map<int, DemodModel> cache;
  std::lock_guard lock(mu);
  auto it = cache.find(order);
  if (it == cache.end()) {
    const auto spec = build_qam(order);
    const auto data = generate_dataset(spec, 1000, 15.0, 2024);
    TrainConfig cfg;
    cfg.seed = 7;
    it = cache.emplace(order, train(data, spec.order(), cfg)).first;
  }
  return it->second;
}

SymbolIndex brute_nearest(IQSample x, const ConstellationSpec& spec) {
  const std::complex<double> z(x.i, x.q);
  SymbolIndex best = 0;
  double best_d = std::numeric_limits<double>::max();
  for (SymbolIndex s = 0; s < spec.order(); ++s) {
    const auto p = spec.point(s);
    const double d = std::norm(z - std::complex<double>(p.i, p.q));
    if (d < best_d) {
      best = s;
      best_d = d;
    }
  }
  return best;
}

double brute_min_distance(const ConstellationSpec& spec) {
  double best = std::numeric_limits<double>::max();
  for (SymbolIndex a = 0; a < spec.order(); ++a) {
    for (SymbolIndex b = 0; b < spec.order(); ++b) {
      if (a != b) {
        const auto pa = spec.point(a);
        const auto pb = spec.point(b);
        best = std::min(best, std::abs(std::complex<double>(pa.i - pb.i, pa.q - pb.q)));
      }
    }
  }
  return best;
}

double analytic_qam_ser(std::size_t order, double es_n0) {
  const double m = static_cast<double>(order);
  const double arg = std::sqrt(3.0 * es_n0 / (m - 1.0));
  const double q = 0.5 * std::erfc(arg / std::sqrt(2.0));
  const double p = 2.0 * (1.0 - 1.0 / std::sqrt(m)) * q;
  return 1.0 - (1.0 - p) * (1.0 - p);
}

double phase_uniformity_p(const std::vector<IQSample>& samples, std::size_t bins) {
  std::vector<double> counts(bins, 0.0);
  std::size_t n = 0;
  for (const auto& s : samples) {
    if (s.i == 0.0 && s.q == 0.0) {
      continue;
    }
    double phi = std::atan2(s.q, s.i);
    if (phi < 0) {
      phi += 2.0 * std::numbers::pi;
    }
    auto b = static_cast<std::size_t>(phi / (2.0 * std::numbers::pi) * static_cast<double>(bins));
    counts[std::min(b, bins - 1)] += 1.0;
    ++n;
  }
  const double expected = static_cast<double>(n) / static_cast<double>(bins);
  double chi2 = 0.0;
  for (double c : counts) {
    chi2 += (c - expected) * (c - expected) / expected;
  }
  return boost::math::gamma_q(0.5 * static_cast<double>(bins - 1), 0.5 * chi2);
}

IQSample finite_difference_gradient(const DemodModel& model, IQSample x, SymbolIndex target,
                                    double h) {
  const double di =
      (model.loss({x.i + h, x.q}, target) - model.loss({x.i - h, x.q}, target)) / (2.0 * h);
  const double dq =
      (model.loss({x.i, x.q + h}, target) - model.loss({x.i, x.q - h}, target)) / (2.0 * h);
  return {di, dq};
}

}  // namespace ajam::testing
