#pragma once

// Structural impulse responses, long-run impact matrix, forecast-error
// variance decomposition, and bootstrap confidence bands.

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "svarkit/svar.hpp"
#include "svarkit/varkit.hpp"

namespace svarkit::dynamics {

struct ImpulseSet {
  int horizon = 0;                       // responses at 0..horizon
  std::vector<Eigen::MatrixXd> phis;     // Phi_0 .. Phi_h, response i to shock j
  std::vector<Eigen::MatrixXd> cumulative;
  bool has_bands = false;
  double band_multiplier = 0.0;
  int reps = 0;
  std::vector<Eigen::MatrixXd> lower, upper;          // point +- multiplier * sd
  std::vector<Eigen::MatrixXd> pct_lower, pct_upper;  // percentile alternative
};

// Phi_i = Psi_i Phi_0 with Psi_i from the reduced-form MA recursion
// (Psi_i = A_1 Psi_{i-1} + ... + A_p Psi_{i-p}, Psi_0 = I).
ImpulseSet impulse_responses(const svar::SvarFit& fit, const varkit::VarFit& var, int h);

// (I - A_1 - ... - A_p)^{-1} Phi_0; requires a stable VAR.
Eigen::MatrixXd long_run_impact(const svar::SvarFit& fit, const varkit::VarFit& var);

struct FevdTable {
  std::vector<std::string> rows;  // response variables
  std::vector<std::string> cols;  // shock labels
  Eigen::MatrixXd shares;         // percentages, each row sums to 100
  int horizon = 0;
};

// share(i,j) = 100 sum_{s<h} Phi_s(i,j)^2 / sum_j sum_{s<h} Phi_s(i,j)^2
FevdTable fevd(const svar::SvarFit& fit, const varkit::VarFit& var, int h,
               std::vector<std::string> shock_labels = {});

// Bootstrap bands around the point IRFs; +- multiplier standard deviations
// per cell per horizon, percentile bands alongside. Percentile bands are
// widened to bracket the point estimate when the bootstrap distribution is
// shifted.
ImpulseSet mc_bands(const svar::SvarFit& fit, const varkit::VarFit& var, int h, int reps,
                    std::uint64_t seed, double multiplier = 2.0,
                    const svar::BootstrapOptions& options = svar::BootstrapOptions());

}  // namespace svarkit::dynamics
