#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace pxp {

struct Peak {
  std::size_t index;
  double h;
  double height;
  double prominence;
  /// Full width at half prominence, in units of h.
  double width;
};

inline constexpr double kDefaultMinHeight = 0.1;
inline constexpr int kDefaultMinSeparation = 2;

/// Local maxima of a fidelity slice f(h) on an ascending grid. Plateaus count
/// once, at their middle sample. Peaks lower than min_height are dropped; of
/// two peaks closer than min_separation grid points the higher one is kept.
std::vector<Peak> track_peaks(std::span<const double> h, std::span<const double> f,
                              double min_height = kDefaultMinHeight,
                              int min_separation = kDefaultMinSeparation);

/// Triangular bumps with each peak's apex, height and half-height width on
/// the grid h (max over overlapping bumps); a peak-only rendering of a slice.
std::vector<double> peak_signal(std::span<const double> h, std::span<const Peak> peaks);

}  // namespace pxp
