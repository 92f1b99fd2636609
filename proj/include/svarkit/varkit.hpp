#pragma once

// Reduced-form VAR(p) estimation by per-equation OLS on common regressors,
// lag selection, and the residual diagnostic battery.

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "svarkit/timeseries.hpp"

namespace svarkit::varkit {

struct VarFit {
  int K = 0;
  int p = 0;
  Eigen::VectorXd intercept;            // K
  std::vector<Eigen::MatrixXd> A;       // A[i] is the lag-(i+1) matrix, K x K
  Eigen::MatrixXd residuals;            // T_eff x K
  Eigen::MatrixXd omega_eps;            // residuals' covariance, divide by T_eff
  double loglik = 0.0;
  int T_eff = 0;
  std::vector<std::string> names;
  Eigen::MatrixXd presample;            // first p rows of Y (bootstrap rebuilds start here)
  Eigen::MatrixXd regressors;           // T_eff x (1 + K p), intercept first

  Eigen::MatrixXd companion() const;
  Eigen::MatrixXd coefficient_sum() const;  // A_1 + ... + A_p
};

VarFit var_fit(const Eigen::MatrixXd& Y, int p,
               std::vector<std::string> names = {});
VarFit var_fit(const tscore::Dataset& data, int p);

struct LagSelection {
  int aic = 0;
  int bic = 0;
  int hq = 0;
  std::vector<double> aic_values, bic_values, hq_values;  // index = lag order
};

// Criteria evaluated on the common sample with the first p_max rows held
// out; lag 0 means intercept only.
LagSelection select_lag(const tscore::Dataset& data, int p_max);
LagSelection select_lag(const Eigen::MatrixXd& Y, int p_max);

struct Stability {
  Eigen::VectorXd moduli;  // companion eigenvalue moduli, descending
  bool is_stable = false;
};

Stability stability_check(const VarFit& fit);

struct PortmanteauResult {
  double Q = 0.0;
  int df = 0;
  double pvalue = 1.0;
};

// Multivariate Ljung-Box adjusted Q over residual autocorrelations 1..h.
PortmanteauResult portmanteau_test(const VarFit& fit, int h);

struct BrownForsytheResult {
  double statistic = 0.0;
  double pvalue = 1.0;
};

// Levene-type spread test across the K residual columns, absolute
// deviations from group medians.
BrownForsytheResult brown_forsythe_test(const Eigen::MatrixXd& residual_columns);

struct Chi2TestResult {
  double statistic = 0.0;
  int df = 0;
  double pvalue = 1.0;
};

// LR = T (sum_k ln s_k^2 - ln |Omega|) against the diagonal restriction.
Chi2TestResult lr_diag_test(const Eigen::MatrixXd& omega_unrestricted, int T);

// LM = T sum_{k>l} r_kl^2 on a correlation matrix.
Chi2TestResult lm_diag_test(const Eigen::MatrixXd& correlation, int T);

struct DiagnosticsReport {
  PortmanteauResult portmanteau;
  BrownForsytheResult brown_forsythe;
  Chi2TestResult lr_diag;
  Chi2TestResult lm_diag;
  Eigen::VectorXd stability_moduli;
};

DiagnosticsReport diagnostics(const VarFit& fit, int portmanteau_h);

}  // namespace svarkit::varkit
