#include "pxp/peaks.hpp"

#include <algorithm>
#include <cmath>

#include "pxp/errors.hpp"

namespace pxp {

namespace {

struct Bases {
  std::size_t left;
  std::size_t right;
};

// Lowest points between the peak and the nearest strictly higher sample on
// each side (or the grid edge).
Bases prominence_bases(std::span<const double> f, std::size_t peak) {
  std::size_t left = peak, i = peak;
  while (i > 0) {
    --i;
    if (f[i] > f[peak]) break;
    if (f[i] < f[left]) left = i;
  }
  std::size_t right = peak;
  for (i = peak + 1; i < f.size(); ++i) {
    if (f[i] > f[peak]) break;
    if (f[i] < f[right]) right = i;
  }
  return {left, right};
}

double crossing(std::span<const double> h, std::span<const double> f, std::size_t a,
                std::size_t b, double level) {
  if (f[b] == f[a]) return h[a];
  return h[a] + (level - f[a]) / (f[b] - f[a]) * (h[b] - h[a]);
}

}  // namespace

std::vector<Peak> track_peaks(std::span<const double> h, std::span<const double> f,
                              double min_height, int min_separation) {
  if (h.size() != f.size()) throw DomainError("track_peaks: grid and values differ in length");
  std::vector<Peak> found;
  const std::size_t n = f.size();
  std::size_t i = 1;
  while (i + 1 < n) {
    if (f[i - 1] < f[i]) {
      std::size_t ahead = i + 1;
      while (ahead + 1 < n && f[ahead] == f[i]) ++ahead;
      if (f[ahead] < f[i]) {
        const std::size_t mid = (i + ahead - 1) / 2;
        found.push_back({mid, h[mid], f[mid], 0.0, 0.0});
        i = ahead;
        continue;
      }
    }
    ++i;
  }

  std::erase_if(found, [&](const Peak& p) { return p.height < min_height; });

  if (min_separation > 1 && found.size() > 1) {
    std::vector<std::size_t> order(found.size());
    for (std::size_t k = 0; k < order.size(); ++k) order[k] = k;
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return found[a].height > found[b].height; });
    std::vector<bool> keep(found.size(), true);
    for (auto k : order) {
      if (!keep[k]) continue;
      for (std::size_t m = 0; m < found.size(); ++m) {
        if (m == k || !keep[m]) continue;
        const auto gap = found[m].index > found[k].index ? found[m].index - found[k].index
                                                         : found[k].index - found[m].index;
        if (gap < static_cast<std::size_t>(min_separation)) keep[m] = false;
      }
    }
    std::vector<Peak> kept;
    for (std::size_t k = 0; k < found.size(); ++k) {
      if (keep[k]) kept.push_back(found[k]);
    }
    found.swap(kept);
  }

  for (auto& p : found) {
    const auto bases = prominence_bases(f, p.index);
    p.prominence = p.height - std::max(f[bases.left], f[bases.right]);
    const double level = p.height - 0.5 * p.prominence;
    std::size_t l = p.index;
    while (l > bases.left && f[l] > level) --l;
    const double left = f[l] <= level ? crossing(h, f, l, l + 1, level) : h[l];
    std::size_t r = p.index;
    while (r < bases.right && f[r] > level) ++r;
    const double right = f[r] <= level ? crossing(h, f, r - 1, r, level) : h[r];
    p.width = right - left;
  }
  return found;
}

std::vector<double> peak_signal(std::span<const double> h, std::span<const Peak> peaks) {
  std::vector<double> out(h.size(), 0.0);
  for (const auto& p : peaks) {
    for (std::size_t i = 0; i < h.size(); ++i) {
      const double v = p.width > 0.0 ? p.height * (1.0 - std::fabs(h[i] - p.h) / p.width)
                                     : (i == p.index ? p.height : 0.0);
      out[i] = std::max(out[i], v);
    }
  }
  return out;
}

}  // namespace pxp
