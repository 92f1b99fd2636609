#include "svarkit/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "svarkit/errors.hpp"

namespace svarkit::dynamics {

namespace {

// Phi_0 .. Phi_h for arbitrary coefficient sets (shared with the band
// replications, which bypass SvarFit/VarFit)
std::vector<Eigen::MatrixXd> phi_sequence(const Eigen::MatrixXd& phi0,
                                          const std::vector<Eigen::MatrixXd>& lags, int h) {
  const int K = static_cast<int>(phi0.rows());
  const int p = static_cast<int>(lags.size());
  std::vector<Eigen::MatrixXd> psi;  // reduced-form MA coefficients
  psi.reserve(h + 1);
  psi.push_back(Eigen::MatrixXd::Identity(K, K));
  std::vector<Eigen::MatrixXd> phis;
  phis.reserve(h + 1);
  phis.push_back(phi0);
  for (int i = 1; i <= h; ++i) {
    Eigen::MatrixXd next = Eigen::MatrixXd::Zero(K, K);
    for (int j = 1; j <= std::min(i, p); ++j) next += lags[j - 1] * psi[i - j];
    psi.push_back(next);
    phis.push_back(next * phi0);
  }
  return phis;
}

}  // namespace

ImpulseSet impulse_responses(const svar::SvarFit& fit, const varkit::VarFit& var, int h) {
  if (h < 0) throw ConfigError("impulse_responses: horizon must be non-negative");
  ImpulseSet out;
  out.horizon = h;
  out.phis = phi_sequence(fit.phi0, var.A, h);
  out.cumulative.reserve(h + 1);
  Eigen::MatrixXd acc = Eigen::MatrixXd::Zero(var.K, var.K);
  for (const auto& m : out.phis) {
    acc += m;
    out.cumulative.push_back(acc);
  }
  return out;
}

Eigen::MatrixXd long_run_impact(const svar::SvarFit& fit, const varkit::VarFit& var) {
  varkit::Stability st = varkit::stability_check(var);
  if (!st.is_stable) {
    throw StabilityError("long_run_impact: VAR has roots on or outside the unit circle");
  }
  const int K = var.K;
  return (Eigen::MatrixXd::Identity(K, K) - var.coefficient_sum())
      .partialPivLu()
      .solve(fit.phi0);
}

FevdTable fevd(const svar::SvarFit& fit, const varkit::VarFit& var, int h,
               std::vector<std::string> shock_labels) {
  if (h < 1) throw ConfigError("fevd: horizon must be at least 1");
  const int K = var.K;
  auto phis = phi_sequence(fit.phi0, var.A, h - 1);  // sums over s = 0..h-1

  Eigen::MatrixXd acc = Eigen::MatrixXd::Zero(K, K);
  for (const auto& m : phis) acc += m.cwiseProduct(m);

  FevdTable out;
  out.horizon = h;
  out.rows = var.names;
  if (shock_labels.empty()) {
    for (int j = 0; j < K; ++j) shock_labels.push_back("shock" + std::to_string(j + 1));
  }
  out.cols = std::move(shock_labels);
  out.shares.resize(K, K);
  for (int i = 0; i < K; ++i) {
    const double total = acc.row(i).sum();
    if (total <= 0.0) throw DegenerateError("fevd: zero forecast-error variance in row " +
                                            std::to_string(i + 1));
    out.shares.row(i) = 100.0 * acc.row(i) / total;
  }
  return out;
}

ImpulseSet mc_bands(const svar::SvarFit& fit, const varkit::VarFit& var, int h, int reps,
                    std::uint64_t seed, double multiplier, const svar::BootstrapOptions& options) {
  if (multiplier < 0.0) throw ConfigError("mc_bands: multiplier must be non-negative");
  ImpulseSet out = impulse_responses(fit, var, h);

  auto draws = svar::residual_bootstrap(fit, var, reps, seed, options);
  int failures = 0;
  std::vector<std::vector<Eigen::MatrixXd>> rep_phis;
  rep_phis.reserve(draws.size());
  for (const auto& d : draws) {
    if (!d.converged) {
      ++failures;
      continue;
    }
    Eigen::MatrixXd phi0 = d.A_hat.partialPivLu().solve(d.B_hat);
    rep_phis.push_back(phi_sequence(phi0, d.lags, h));
  }
  if (failures > options.max_failure_rate * reps) {
    throw BootstrapError("mc_bands: " + std::to_string(failures) + " of " +
                         std::to_string(reps) + " replications failed");
  }

  const int K = var.K;
  const int n = static_cast<int>(rep_phis.size());
  out.has_bands = true;
  out.band_multiplier = multiplier;
  out.reps = n;
  out.lower.assign(h + 1, Eigen::MatrixXd::Zero(K, K));
  out.upper.assign(h + 1, Eigen::MatrixXd::Zero(K, K));
  out.pct_lower.assign(h + 1, Eigen::MatrixXd::Zero(K, K));
  out.pct_upper.assign(h + 1, Eigen::MatrixXd::Zero(K, K));

  std::vector<double> cell(n);
  for (int s = 0; s <= h; ++s) {
    for (int i = 0; i < K; ++i) {
      for (int j = 0; j < K; ++j) {
        for (int r = 0; r < n; ++r) cell[r] = rep_phis[r][s](i, j);
        const double mean = std::accumulate(cell.begin(), cell.end(), 0.0) / n;
        double var_acc = 0.0;
        for (double v : cell) var_acc += (v - mean) * (v - mean);
        const double sd = std::sqrt(var_acc / std::max(1, n - 1));
        const double point = out.phis[s](i, j);
        out.lower[s](i, j) = point - multiplier * sd;
        out.upper[s](i, j) = point + multiplier * sd;

        std::sort(cell.begin(), cell.end());
        auto pct = [&](double q) {
          const double pos = q * (n - 1);
          const int lo = static_cast<int>(pos);
          const int hi = std::min(lo + 1, n - 1);
          return cell[lo] + (pos - lo) * (cell[hi] - cell[lo]);
        };
        out.pct_lower[s](i, j) = std::min(pct(0.025), point);
        out.pct_upper[s](i, j) = std::max(pct(0.975), point);
      }
    }
  }
  return out;
}

}  // namespace svarkit::dynamics
