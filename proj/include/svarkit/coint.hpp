#pragma once

// Canonical cointegrating regression and the four cointegration tests:
// Lc parameter instability and the variable-addition chi-square under the
// null of cointegration, the residual-based ADF-tau and Z_t pair under the
// null of no cointegration.

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "svarkit/hac.hpp"
#include "svarkit/timeseries.hpp"

namespace svarkit::coint {

enum class Deterministic { constant, constant_trend, constant_trend2 };

int deterministic_terms(Deterministic det);

struct CcrSpec {
  std::string y;
  std::vector<std::string> x;
  Deterministic det = Deterministic::constant;
  hac::KernelSpec kernel = hac::KernelSpec::qs_auto();
  bool prewhiten = true;        // VAR(1) on the stacked residuals
  bool center = true;
  bool dof_correction = true;
};

struct CcrFit {
  Eigen::VectorXd beta;         // stochastic-regressor coefficients
  Eigen::VectorXd gamma1;       // deterministic coefficients, constant first
  Eigen::VectorXd se;           // for (beta, gamma1)
  Eigen::VectorXd pvalues;
  Eigen::MatrixXd sigma;        // contemporaneous covariance of u
  Eigen::MatrixXd lambda;       // one-sided long-run covariance
  Eigen::MatrixXd lambda2;      // columns of lambda for the regressor block
  Eigen::MatrixXd omega;        // two-sided long-run covariance
  double omega1_2 = 0.0;        // omega_11 - Omega_12' Omega_22^-1 Omega_21
  Eigen::VectorXd y_star;       // transformed dependent variable
  Eigen::MatrixXd x_star;       // transformed stochastic regressors
  Eigen::MatrixXd z_star;       // [x_star, deterministics], final design
  Eigen::VectorXd residuals;    // final-stage residuals
  Eigen::MatrixXd u;            // stacked disturbances (u1, u2), T_eff x n
  hac::KernelSpec kernel;       // kernel the fit was estimated with
  double bandwidth_used = 0.0;
  int T_eff = 0;                // one observation lost to differencing
  int n = 0;                    // 1 + number of stochastic regressors
  Deterministic det = Deterministic::constant;
  std::vector<std::string> names;  // y first, then regressors
};

CcrFit ccr_fit(const tscore::Dataset& data, const CcrSpec& spec);

enum class CointTestKind { hansen_lc, park_chi2, engle_granger, phillips_ouliaris };
enum class CointNull { cointegration, no_cointegration };

struct CointTestResult {
  CointTestKind test = CointTestKind::hansen_lc;
  double statistic = 0.0;
  double pvalue = 1.0;
  CointNull null_hypothesis = CointNull::cointegration;
  bool pvalue_clamped = false;  // statistic fell outside the tabulated range
};

// Instability statistic on the transformed-regression scores; p-value by
// interpolation in the embedded quantile grid. The variance scaling uses an
// unwhitened kernel estimate: under no cointegration the prewhitening
// filter hits its stability ceiling and the recolored variance blows up,
// which would drain the test's power.
CointTestResult hansen_lc_test(const CcrFit& fit);

struct ParkAddition {
  bool trend = true;
  bool trend2 = true;
};

// Wald test on superfluous trend powers added to the transformed
// regression; chi-square with q added terms under cointegration.
CointTestResult park_variable_addition_test(const tscore::Dataset& data, const CcrSpec& spec,
                                            ParkAddition added = ParkAddition());

// ADF-tau on the static regression residuals, lag length by BIC up to
// floor(12 (T/100)^0.25).
CointTestResult engle_granger_test(const tscore::Dataset& data, const CcrSpec& spec);

// Z_t statistic on the same residuals with kernel long-run variance.
CointTestResult phillips_ouliaris_test(const tscore::Dataset& data, const CcrSpec& spec);

// interpolated p-values (exposed for the table cross-checks)
double residual_tau_pvalue(double tau, int n_variables, Deterministic det, bool* clamped = nullptr);
double lc_pvalue(double lc, int n_stochastic, Deterministic det, bool* clamped = nullptr);

}  // namespace svarkit::coint
