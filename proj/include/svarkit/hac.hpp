#pragma once

// Kernel-weighted long-run variance / covariance estimation with the
// Newey-West (1994) plug-in bandwidth and optional VAR prewhitening.

#include <Eigen/Dense>

#include "svarkit/parallel.hpp"

namespace svarkit::hac {

enum class KernelKind { quadratic_spectral, bartlett, truncated };

struct KernelSpec {
  KernelKind kind = KernelKind::quadratic_spectral;
  bool auto_bandwidth = true;     // Newey-West plug-in
  double fixed_bandwidth = 0.0;   // used when auto_bandwidth is false

  static KernelSpec qs_auto() { return {}; }
  static KernelSpec fixed(KernelKind k, double b) { return {k, false, b}; }

  // Classical KPSS s^2(l): Bartlett weight 1 - j/(l+1) for lag j, i.e. the
  // generic j/b convention with b = l + 1.
  static KernelSpec kpss_bartlett(int truncation_lag) {
    return {KernelKind::bartlett, false, static_cast<double>(truncation_lag + 1)};
  }
};

// k(x); the lag-j weight everywhere in this module is k(j / bandwidth).
double kernel_weight(const KernelSpec& spec, double x);

struct Prewhiten {
  int order = 0;  // 0 = none
  static Prewhiten none() { return {0}; }
  static Prewhiten var(int p) { return {p}; }
};

struct LrvOptions {
  bool center = false;          // subtract column means before autocovariances
  int dof_adjust = 0;           // divide autocovariances by (T - dof_adjust)
  ExecMode exec = ExecMode::openmp;
};

struct LrvEstimate {
  Eigen::MatrixXd value;            // two-sided long-run covariance, PSD
  Eigen::MatrixXd one_sided;        // sum over lags >= 0 (kernel-weighted)
  Eigen::MatrixXd contemporaneous;  // lag-0 covariance of the raw input
  double bandwidth_used = 0.0;
  KernelSpec kernel;
  bool prewhitened = false;
  int prewhiten_order = 0;

  double scalar() const { return value(0, 0); }
};

// Newey-West (1994) automatic bandwidth for the weighted residual
// combination u * weights. Empty weights means equal weighting.
double nw_auto_bandwidth(const Eigen::MatrixXd& u, const KernelSpec& spec,
                         const Eigen::VectorXd& weights = Eigen::VectorXd());

LrvEstimate long_run_variance(const Eigen::MatrixXd& u, const KernelSpec& spec,
                              Prewhiten prewhiten = Prewhiten::none(),
                              const LrvOptions& options = LrvOptions());

}  // namespace svarkit::hac
