#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace ajam {

/// One complex baseband sample (matched-filter output, one per symbol).
struct IQSample {
  double i = 0.0;
  double q = 0.0;

  friend IQSample operator+(IQSample a, IQSample b) { return {a.i + b.i, a.q + b.q}; }
  friend IQSample operator-(IQSample a, IQSample b) { return {a.i - b.i, a.q - b.q}; }
  friend IQSample operator*(double s, IQSample a) { return {s * a.i, s * a.q}; }
  friend bool operator==(IQSample a, IQSample b) = default;

  double norm() const;
  double power() const { return i * i + q * q; }
};

double dot(IQSample a, IQSample b);
double cosine_similarity(IQSample a, IQSample b);

using SymbolIndex = std::size_t;
using Bits = std::vector<std::uint8_t>;

/// Square M-QAM constellation with per-axis Gray labels and unit average power.
///
/// Symbol index s = row * side + col, where col indexes the I level and row the
/// Q level, both in ascending amplitude order. The label of s is the Gray code of
/// its I level followed by the Gray code of its Q level, so for 16QAM the levels
/// -3, -1, +1, +3 carry 00, 01, 11, 10 on each axis.
class ConstellationSpec {
public:
  std::size_t order() const { return points_.size(); }
  std::size_t bits_per_symbol() const { return bits_per_symbol_; }
  std::size_t side() const { return side_; }
  double scale() const { return scale_; }

  std::span<const IQSample> points() const { return points_; }
  const IQSample& point(SymbolIndex s) const { return points_.at(s); }
  std::span<const std::string> labels() const { return labels_; }
  const std::string& label(SymbolIndex s) const { return labels_.at(s); }
  /// Scaled amplitude levels of one axis, ascending.
  std::span<const double> levels() const { return levels_; }

  /// Index of the symbol whose label is `label`; throws InvalidArgument if absent.
  SymbolIndex index_of(std::string_view label) const;

  /// Label bits of symbol s, most significant first.
  Bits label_bits(SymbolIndex s) const;

  friend ConstellationSpec build_qam(int order);

private:
  std::size_t bits_per_symbol_ = 0;
  std::size_t side_ = 0;
  double scale_ = 1.0;
  std::vector<double> levels_;
  std::vector<IQSample> points_;
  std::vector<std::string> labels_;
};

/// Builds 4QAM or 16QAM; other orders throw UnsupportedModulation.
ConstellationSpec build_qam(int order);

/// Symbol index of each log2(M)-bit group; throws InvalidArgument on a ragged
/// length or a bit value other than 0/1.
std::vector<SymbolIndex> bits_to_symbols(std::span<const std::uint8_t> bits,
                                         const ConstellationSpec& spec);

/// Maps each log2(M)-bit group (bit values 0/1) to its labelled point.
std::vector<IQSample> modulate(std::span<const std::uint8_t> bits, const ConstellationSpec& spec);

/// Minimum-distance decision; ties go to the lowest index.
SymbolIndex nearest_point(IQSample x, const ConstellationSpec& spec);

double min_distance(const ConstellationSpec& spec);

/// All minimal displacements from symbol s onto its nearest decision boundaries,
/// ordered by the index of the neighbour across each boundary.
std::vector<IQSample> boundary_vectors(SymbolIndex s, const ConstellationSpec& spec);

/// The first of boundary_vectors(s): the minimal jamming displacement for s.
IQSample nearest_boundary_vector(SymbolIndex s, const ConstellationSpec& spec);

/// Minimal displacement moving src onto the decision cell of dst.
IQSample targeted_vector(SymbolIndex src, SymbolIndex dst, const ConstellationSpec& spec);

}  // namespace ajam
