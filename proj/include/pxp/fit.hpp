#pragma once

#include <span>
#include <string>

namespace pxp {

enum class FitModel {
  with_offset,   // n_rev = omega_d / (gamma J0(h/omega_d)) + alpha
  proportional,  // n_rev = omega_d / (delta J0(h/omega_d)), delta reported as gamma
};

std::string to_string(FitModel model);
FitModel fit_model_from_string(const std::string& text);

struct RevivalPoint {
  double h;
  double n_rev;
};

/// Fit range: h_min <= h <= ratio_max * omega_d.
struct FitWindow {
  double h_min = 1.0;
  double ratio_max = 2.2048;

  bool contains(double h, double omega_d) const {
    return h >= h_min && h <= ratio_max * omega_d;
  }
  bool operator==(const FitWindow&) const = default;
};

struct FitResult {
  FitModel model = FitModel::with_offset;
  double gamma = 0.0;
  double alpha = 0.0;
  double gamma_err = 0.0;
  double alpha_err = 0.0;
  double residual_norm = 0.0;
  int points = 0;
  FitWindow window;
};

/// Points with |J0(h/omega_d)| below this are rejected as divergent.
inline constexpr double kMinBesselRegressor = 1e-3;

/// Ordinary least squares for the revival-index law. With the regressor
/// x = omega_d / J0(h/omega_d) the offset model is linear in (1/gamma, alpha).
/// Standard errors come from the residual covariance; gamma's error is
/// propagated from 1/gamma to first order. Points outside the window or with
/// non-finite n_rev are skipped. Throws FitError with fewer than three usable
/// points or a singular design.
FitResult fit_nrev(std::span<const RevivalPoint> points, double omega_d, FitModel model,
                   const FitWindow& window = {});

/// omega_d / gamma + alpha, the revival index for J0 -> 1.
double min_revival_index(const FitResult& fit, double omega_d);

}  // namespace pxp
