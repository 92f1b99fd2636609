#pragma once

// AB-model structural VAR: restriction patterns on the contemporaneous
// matrix A and the shock loading matrix B, identification checking,
// concentrated-ML estimation, over-identification LR test, and the
// recursive-design residual bootstrap.

#include <Eigen/Dense>
#include <cstdint>
#include <string>
#include <vector>

#include "svarkit/parallel.hpp"
#include "svarkit/varkit.hpp"

namespace svarkit::svar {

struct Cell {
  bool fixed = false;
  double value = 0.0;
};

struct RestrictionPattern {
  int K = 0;
  std::vector<Cell> A;  // row-major K x K
  std::vector<Cell> B;

  Cell& a(int i, int j) { return A[i * K + j]; }
  Cell& b(int i, int j) { return B[i * K + j]; }
  const Cell& a(int i, int j) const { return A[i * K + j]; }
  const Cell& b(int i, int j) const { return B[i * K + j]; }

  // Rows of whitespace-separated tokens: "1", "0", a numeric literal, or
  // "*" for a free cell, e.g. {"1 0 0 0", "0 1 0 0", "* 0 1 0", "* 0 0 1"}.
  static RestrictionPattern parse(const std::vector<std::string>& a_rows,
                                  const std::vector<std::string>& b_rows);

  // A = I fixed, B lower-triangular free: the Cholesky/just-identified case.
  static RestrictionPattern recursive(int K);

  int fixed_count_A() const;
  int fixed_count_B() const;
  int free_count() const;

  // free-parameter packing: A cells row-major, then B cells row-major
  std::pair<Eigen::MatrixXd, Eigen::MatrixXd> build(const Eigen::VectorXd& theta) const;
  Eigen::VectorXd extract(const Eigen::MatrixXd& A_hat, const Eigen::MatrixXd& B_hat) const;
  std::vector<std::string> labels() const;  // "A(3,1)", "B(2,3)", 1-based
};

enum class IdentStatus { under, just, over };
enum class RankCheck { holds, fails, not_evaluated };

struct Identification {
  bool order_holds = false;
  int required_restrictions = 0;  // 2K^2 - K(K+1)/2
  int imposed_restrictions = 0;   // fixed cells in A and B
  int free_params = 0;
  int overid_degree = 0;          // K(K+1)/2 - free_params
  IdentStatus status = IdentStatus::under;
  RankCheck rank = RankCheck::not_evaluated;
};

Identification check_identification(const RestrictionPattern& pattern);

struct SvarOptions {
  int starts = 10;          // Cholesky-derived start plus perturbations
  double grad_tol = 1e-7;   // infinity norm, per-observation objective
  int max_iter = 500;
  std::uint64_t seed = 0x5eedULL;  // perturbation stream
  ExecMode exec = ExecMode::openmp;
};

struct SvarFit {
  Eigen::MatrixXd A_hat;
  Eigen::MatrixXd B_hat;
  double loglik = 0.0;      // concentrated log-likelihood at the optimum
  Eigen::MatrixXd phi0;     // A^{-1} B
  Identification identification;
  RestrictionPattern pattern;
  int T = 0;                // effective sample behind the likelihood
  Eigen::VectorXd theta;    // packed free parameters
  Eigen::VectorXd se;       // filled by bootstrap_se; empty until then
  Eigen::VectorXd pvalues;  // normal two-sided from theta/se
};

SvarFit svar_ml_fit(const varkit::VarFit& var, const RestrictionPattern& pattern,
                    const SvarOptions& options = SvarOptions());

// LR against the just-identified (exact decomposition) likelihood;
// df = over-identification degree, df == 0 degenerates to p = 1.
varkit::Chi2TestResult overid_lr_test(const SvarFit& restricted, const varkit::VarFit& var);

// u_t = B^{-1} A eps_t, one row per residual row.
Eigen::MatrixXd structural_shocks(const SvarFit& fit, const varkit::VarFit& var);

struct BootstrapOptions {
  double max_failure_rate = 0.10;
  SvarOptions refit;        // optimizer settings per replication
  ExecMode exec = ExecMode::openmp;
};

struct BootstrapDraw {
  bool converged = false;
  Eigen::VectorXd theta;
  Eigen::MatrixXd A_hat, B_hat;
  Eigen::VectorXd intercept;
  std::vector<Eigen::MatrixXd> lags;
};

// Recursive-design residual bootstrap: resample residual rows, rebuild Y
// from the presample, refit VAR and SVAR. Draw r is a pure function of
// (seed, r) regardless of thread count.
std::vector<BootstrapDraw> residual_bootstrap(const SvarFit& fit, const varkit::VarFit& var,
                                              int reps, std::uint64_t seed,
                                              const BootstrapOptions& options = BootstrapOptions());

struct BootstrapResult {
  Eigen::VectorXd se;
  Eigen::VectorXd ci_lower, ci_upper;  // percentile 2.5% / 97.5%
  Eigen::MatrixXd draws;               // converged reps x free params
  int requested = 0;
  int failures = 0;
};

BootstrapResult bootstrap_se(const SvarFit& fit, const varkit::VarFit& var, int reps,
                             std::uint64_t seed,
                             const BootstrapOptions& options = BootstrapOptions());

// Applies bootstrap SEs to the fit (se + two-sided normal p-values).
void attach_bootstrap_se(SvarFit& fit, const BootstrapResult& boot);

}  // namespace svarkit::svar
