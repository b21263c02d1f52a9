#include "ajam/constellation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "ajam/error.hpp"

namespace ajam {

double IQSample::norm() const { return std::hypot(i, q); }

double dot(IQSample a, IQSample b) { return a.i * b.i + a.q * b.q; }

double cosine_similarity(IQSample a, IQSample b) {
  const double na = a.norm();
  const double nb = b.norm();
  if (na == 0.0 || nb == 0.0) {
    return 0.0;
  }
  return dot(a, b) / (na * nb);
}

namespace {

std::string gray_bits(std::size_t level, std::size_t width) {
  const std::size_t g = level ^ (level >> 1);
  std::string out(width, '0');
  for (std::size_t b = 0; b < width; ++b) {
    if ((g >> (width - 1 - b)) & 1U) {
      out[b] = '1';
    }
  }
  return out;
}

}  // namespace

ConstellationSpec build_qam(int order) {
  if (order != 4 && order != 16) {
    throw UnsupportedModulation("unsupported modulation order " + std::to_string(order) +
                                " (supported: 4, 16)");
  }
  ConstellationSpec spec;
  spec.side_ = order == 4 ? 2 : 4;
  spec.bits_per_symbol_ = order == 4 ? 2 : 4;
  const std::size_t axis_bits = spec.bits_per_symbol_ / 2;

  // Mean of a^2 + b^2 over the odd-integer grid is 2 (side^2 - 1) / 3.
  const double side = static_cast<double>(spec.side_);
  spec.scale_ = 1.0 / std::sqrt(2.0 * (side * side - 1.0) / 3.0);

  for (std::size_t k = 0; k < spec.side_; ++k) {
    const double odd = 2.0 * static_cast<double>(k) - (side - 1.0);
    spec.levels_.push_back(odd * spec.scale_);
  }
  for (std::size_t row = 0; row < spec.side_; ++row) {
    for (std::size_t col = 0; col < spec.side_; ++col) {
      spec.points_.push_back({spec.levels_[col], spec.levels_[row]});
      spec.labels_.push_back(gray_bits(col, axis_bits) + gray_bits(row, axis_bits));
    }
  }
  return spec;
}

SymbolIndex ConstellationSpec::index_of(std::string_view label) const {
  const auto it = std::find(labels_.begin(), labels_.end(), label);
  if (it == labels_.end()) {
    throw InvalidArgument("unknown symbol label '" + std::string(label) + "' for " +
                          std::to_string(order()) + "QAM");
  }
  return static_cast<SymbolIndex>(it - labels_.begin());
}

Bits ConstellationSpec::label_bits(SymbolIndex s) const {
  const std::string& l = label(s);
  Bits out(l.size());
  std::transform(l.begin(), l.end(), out.begin(), [](char c) { return c == '1' ? 1 : 0; });
  return out;
}

std::vector<SymbolIndex> bits_to_symbols(std::span<const std::uint8_t> bits,
                                         const ConstellationSpec& spec) {
  const std::size_t k = spec.bits_per_symbol();
  if (bits.size() % k != 0) {
    throw InvalidArgument("bit count " + std::to_string(bits.size()) +
                          " is not a multiple of " + std::to_string(k));
  }
  // Indexed by the packed label value.
  std::vector<SymbolIndex> by_value(spec.order());
  for (SymbolIndex s = 0; s < spec.order(); ++s) {
    std::size_t v = 0;
    for (std::uint8_t b : spec.label_bits(s)) {
      v = (v << 1) | b;
    }
    by_value[v] = s;
  }
  std::vector<SymbolIndex> out;
  out.reserve(bits.size() / k);
  for (std::size_t n = 0; n < bits.size(); n += k) {
    std::size_t v = 0;
    for (std::size_t b = 0; b < k; ++b) {
      if (bits[n + b] > 1) {
        throw InvalidArgument("bit values must be 0 or 1");
      }
      v = (v << 1) | bits[n + b];
    }
    out.push_back(by_value[v]);
  }
  return out;
}

std::vector<IQSample> modulate(std::span<const std::uint8_t> bits, const ConstellationSpec& spec) {
  const auto symbols = bits_to_symbols(bits, spec);
  std::vector<IQSample> out;
  out.reserve(symbols.size());
  for (SymbolIndex s : symbols) {
    out.push_back(spec.point(s));
  }
  return out;
}

SymbolIndex nearest_point(IQSample x, const ConstellationSpec& spec) {
  SymbolIndex best = 0;
  double best_d = std::numeric_limits<double>::infinity();
  const auto pts = spec.points();
  for (SymbolIndex s = 0; s < pts.size(); ++s) {
    const double d = (x - pts[s]).power();
    if (d < best_d) {
      best_d = d;
      best = s;
    }
  }
  return best;
}

double min_distance(const ConstellationSpec& spec) {
  double best = std::numeric_limits<double>::infinity();
  const auto pts = spec.points();
  for (std::size_t a = 0; a < pts.size(); ++a) {
    for (std::size_t b = a + 1; b < pts.size(); ++b) {
      best = std::min(best, (pts[a] - pts[b]).norm());
    }
  }
  return best;
}

std::vector<IQSample> boundary_vectors(SymbolIndex s, const ConstellationSpec& spec) {
  // The closest bisector of a Voronoi cell is always one of its facets, so the
  // nearest boundary is half the way to the nearest other point.
  const auto pts = spec.points();
  const IQSample p = spec.point(s);
  double best = std::numeric_limits<double>::infinity();
  for (SymbolIndex j = 0; j < pts.size(); ++j) {
    if (j != s) {
      best = std::min(best, (pts[j] - p).norm());
    }
  }
  const double tol = 1e-12 * best;
  std::vector<IQSample> out;
  for (SymbolIndex j = 0; j < pts.size(); ++j) {
    if (j != s && (pts[j] - p).norm() <= best + tol) {
      out.push_back(0.5 * (pts[j] - p));
    }
  }
  return out;
}

IQSample nearest_boundary_vector(SymbolIndex s, const ConstellationSpec& spec) {
  return boundary_vectors(s, spec).front();
}

IQSample targeted_vector(SymbolIndex src, SymbolIndex dst, const ConstellationSpec& spec) {
  if (src == dst) {
    throw InvalidArgument("degenerate target: source and destination symbol are both " +
                          std::to_string(src));
  }
  if (src >= spec.order() || dst >= spec.order()) {
    throw InvalidArgument("symbol index out of range");
  }
  // Decision cells of a square grid are axis-aligned boxes bounded by the
  // midpoints between adjacent levels; project src onto the box of dst.
  const auto lv = spec.levels();
  const std::size_t n = spec.side();
  const auto cell = [&](std::size_t k) {
    const double lo = k == 0 ? -std::numeric_limits<double>::infinity() : 0.5 * (lv[k - 1] + lv[k]);
    const double hi = k + 1 == n ? std::numeric_limits<double>::infinity() : 0.5 * (lv[k] + lv[k + 1]);
    return std::pair{lo, hi};
  };
  const auto [ilo, ihi] = cell(dst % n);
  const auto [qlo, qhi] = cell(dst / n);
  const IQSample p = spec.point(src);
  const IQSample landing{std::clamp(p.i, ilo, ihi), std::clamp(p.q, qlo, qhi)};
  return landing - p;
}

}  // namespace ajam
