#include "pxp/fit.hpp"

#include <cmath>
#include <vector>

#include <Eigen/Dense>

#include "pxp/errors.hpp"
#include "pxp/special.hpp"

namespace pxp {

std::string to_string(FitModel model) {
  return model == FitModel::with_offset ? "with_offset" : "proportional";
}

FitModel fit_model_from_string(const std::string& text) {
  if (text == "with_offset") return FitModel::with_offset;
  if (text == "proportional") return FitModel::proportional;
  throw UsageError("unknown fit model '" + text + "'");
}

FitResult fit_nrev(std::span<const RevivalPoint> points, double omega_d, FitModel model,
                   const FitWindow& window) {
  std::vector<double> xs, ys;
  for (const auto& p : points) {
    if (!window.contains(p.h, omega_d) || !std::isfinite(p.n_rev)) continue;
    const double j0 = bessel_j0(p.h / omega_d);
    if (std::fabs(j0) < kMinBesselRegressor) continue;
    xs.push_back(omega_d / j0);
    ys.push_back(p.n_rev);
  }
  const auto n = static_cast<Eigen::Index>(xs.size());
  if (n < 3) throw FitError("fit needs at least 3 usable points, got " + std::to_string(n));

  const int params = model == FitModel::with_offset ? 2 : 1;
  Eigen::MatrixXd a(n, params);
  Eigen::VectorXd y(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    a(i, 0) = xs[static_cast<std::size_t>(i)];
    if (params == 2) a(i, 1) = 1.0;
    y(i) = ys[static_cast<std::size_t>(i)];
  }

  const Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(a);
  if (qr.rank() < params) throw FitError("singular design matrix");
  const Eigen::VectorXd coef = qr.solve(y);
  const Eigen::VectorXd resid = y - a * coef;
  const double rss = resid.squaredNorm();
  const double sigma2 = rss / static_cast<double>(n - params);
  const Eigen::MatrixXd cov = sigma2 * (a.transpose() * a).inverse();

  const double slope = coef(0);
  if (!(slope > 0.0)) throw FitError("fitted slope 1/gamma is not positive");

  FitResult out;
  out.model = model;
  out.gamma = 1.0 / slope;
  out.gamma_err = std::sqrt(std::max(cov(0, 0), 0.0)) / (slope * slope);
  if (params == 2) {
    out.alpha = coef(1);
    out.alpha_err = std::sqrt(std::max(cov(1, 1), 0.0));
  }
  out.residual_norm = std::sqrt(rss);
  out.points = static_cast<int>(n);
  out.window = window;
  return out;
}

double min_revival_index(const FitResult& fit, double omega_d) {
  return omega_d / fit.gamma + fit.alpha;
}

}  // namespace pxp
