#include "pxp/thermal.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "pxp/errors.hpp"

namespace pxp {

namespace {

void check_site(int site, int sites) {
  if (site < 1 || site > sites) {
    throw DomainError("site " + std::to_string(site) + " outside [1, " + std::to_string(sites) + "]");
  }
}

double fib(int n) { return static_cast<double>(fibonacci(n)); }

BlochVector scaled(const BlochVector& v, double s) { return {v.x * s, v.y * s, v.z * s}; }

BlochVector added(const BlochVector& a, const BlochVector& b) {
  return {a.x + b.x, a.y + b.y, a.z + b.z};
}

}  // namespace

double BlochVector::norm() const { return std::sqrt(x * x + y * y + z * z); }

SiteObservables::SiteObservables(const BlockadedBasis& basis) : states_(basis.states()) {
  flips_.reserve(static_cast<std::size_t>(basis.sites()));
  for (int j = 1; j <= basis.sites(); ++j) flips_.push_back(flip_table(basis, j));
}

BlochVector SiteObservables::bloch(const Eigen::VectorXcd& psi, int site) const {
  check_site(site, sites());
  const auto& flip = flips_[static_cast<std::size_t>(site - 1)];
  const Pattern bit = Pattern{1} << (site - 1);
  double x = 0.0, y = 0.0, z = 0.0;
  for (std::size_t k = 0; k < states_.size(); ++k) {
    const auto amp = psi(static_cast<Eigen::Index>(k));
    const bool excited = (states_[k] & bit) != 0;
    z += excited ? std::norm(amp) : -std::norm(amp);
    if (flip[k] < 0) continue;
    // <t|X|k> = 1, <t|Y|k> = +i when the flip excites the site, -i otherwise.
    const Complex term = std::conj(psi(flip[k])) * amp;
    x += term.real();
    y += excited ? term.imag() : -term.imag();
  }
  return {x, y, z};
}

BlochVector bloch_vector(const BlockadedBasis& basis, const StateVector& state, int site) {
  check_site(site, basis.sites());
  return SiteObservables(basis).bloch(state.amplitudes(), site);
}

double ergodic_z(int site, int sites) {
  check_site(site, sites);
  const int j = site, L = sites;
  return (fib(j) * fib(L - j + 1) - fib(j + 1) * fib(L - j + 2)) / fib(L + 2);
}

BlochVector ergodic_bloch(int site, int sites) { return {0.0, 0.0, ergodic_z(site, sites)}; }

double ergodic_z_chain(int sites) {
  double acc = 0.0;
  for (int j = 1; j <= sites; ++j) acc += ergodic_z(j, sites);
  return acc / sites;
}

double instantaneous_distance(const BlochVector& r, const BlochVector& r_erg) {
  return 0.5 * (r - r_erg).norm();
}

ThermalizationTrace thermalization_trace(const PropagatorMatrix& U, const StateVector& psi0,
                                         int n_max) {
  const auto& basis = *psi0.basis();
  const int L = basis.sites();
  const SiteObservables obs(basis);
  std::vector<BlochVector> erg;
  for (int j = 1; j <= L; ++j) erg.push_back(ergodic_bloch(j, L));
  const BlochVector chain_erg{0.0, 0.0, ergodic_z_chain(L)};

  ThermalizationTrace trace;
  trace.sites = L;
  trace.period = U.params.period();
  trace.records.reserve(static_cast<std::size_t>(n_max) + 1);

  std::vector<BlochVector> running(static_cast<std::size_t>(L));
  BlochVector chain_running;
  for_each_stroboscopic(U, psi0, n_max, [&](int n, const Eigen::VectorXcd& psi) {
    ThermalizationRecord rec;
    rec.n = n;
    rec.t = n * trace.period;
    for (int j = 1; j <= L; ++j) {
      const auto idx = static_cast<std::size_t>(j - 1);
      const BlochVector r = obs.bloch(psi, j);
      rec.sites.push_back(r);
      rec.chain = added(rec.chain, r);
      rec.d_inst.push_back(instantaneous_distance(r, erg[idx]));
      if (n > 0) {
        running[idx] = added(running[idx], r);
        rec.d_avg.push_back(instantaneous_distance(scaled(running[idx], 1.0 / n), erg[idx]));
      } else {
        rec.d_avg.push_back(std::numeric_limits<double>::quiet_NaN());
      }
    }
    rec.chain = scaled(rec.chain, 1.0 / L);
    rec.chain_d_inst = instantaneous_distance(rec.chain, chain_erg);
    if (n > 0) {
      chain_running = added(chain_running, rec.chain);
      rec.chain_d_avg = instantaneous_distance(scaled(chain_running, 1.0 / n), chain_erg);
    } else {
      rec.chain_d_avg = std::numeric_limits<double>::quiet_NaN();
    }
    trace.records.push_back(std::move(rec));
  });
  return trace;
}

double time_averaged_distance(const ThermalizationTrace& trace, int site, int n) {
  if (n < 1) throw DomainError("time average needs at least one stroboscopic sample (n >= 1)");
  if (static_cast<std::size_t>(n) >= trace.records.size()) {
    throw DomainError("n = " + std::to_string(n) + " beyond the trace");
  }
  if (site != 0) check_site(site, trace.sites);
  BlochVector sum;
  for (int k = 1; k <= n; ++k) {
    const auto& rec = trace.records[static_cast<std::size_t>(k)];
    sum = added(sum, site == 0 ? rec.chain : rec.sites[static_cast<std::size_t>(site - 1)]);
  }
  const BlochVector target = site == 0 ? BlochVector{0.0, 0.0, ergodic_z_chain(trace.sites)}
                                       : ergodic_bloch(site, trace.sites);
  return instantaneous_distance(scaled(sum, 1.0 / n), target);
}

double signal_std(std::span<const double> values) {
  if (values.empty()) throw DomainError("signal_std of an empty sequence");
  double mean = 0.0;
  for (double v : values) mean += v;
  mean /= static_cast<double>(values.size());
  double acc = 0.0;
  for (double v : values) acc += (v - mean) * (v - mean);
  return std::sqrt(acc / static_cast<double>(values.size()));
}

Eigen::Matrix2cd reduced_single_site(const BlockadedBasis& basis, const StateVector& state,
                                     int site) {
  const BlochVector r = bloch_vector(basis, state, site);
  Eigen::Matrix2cd rho;
  rho(0, 0) = 0.5 * (1.0 + r.z);
  rho(1, 1) = 0.5 * (1.0 - r.z);
  rho(0, 1) = Complex{0.5 * r.x, 0.5 * r.y};
  rho(1, 0) = Complex{0.5 * r.x, -0.5 * r.y};
  return rho;
}

}  // namespace pxp
