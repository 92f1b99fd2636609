#include "svarkit/coint.hpp"

#include <cmath>

#include "coint_tables.hpp"
#include "svarkit/errors.hpp"
#include "svarkit/prob.hpp"

namespace svarkit::coint {

namespace {

Eigen::MatrixXd deterministic_matrix(int T, Deterministic det) {
  const int d = deterministic_terms(det);
  Eigen::MatrixXd D(T, d);
  D.col(0).setOnes();
  for (int t = 0; t < T; ++t) {
    const double x = static_cast<double>(t + 1) / T;  // scaled for conditioning
    if (d >= 2) D(t, 1) = x;
    if (d >= 3) D(t, 2) = x * x;
  }
  return D;
}

Eigen::VectorXd ols(const Eigen::MatrixXd& X, const Eigen::VectorXd& y) {
  return X.colPivHouseholderQr().solve(y);
}

struct StaticStage {
  Eigen::MatrixXd X;       // T x (n-1) stochastic regressors
  Eigen::VectorXd y;       // T
  Eigen::MatrixXd D;       // T x d deterministics
  Eigen::VectorXd beta;    // static OLS cointegrating coefficients
  Eigen::VectorXd resid;   // static regression residuals, T
  Eigen::MatrixXd u;       // (T-1) x n stacked disturbances (u1, u2)
};

StaticStage static_stage(const tscore::Dataset& data, const CcrSpec& spec) {
  if (spec.x.empty()) throw ConfigError("ccr: need at least one stochastic regressor");
  const int T = data.T();
  const int m = static_cast<int>(spec.x.size());
  const int d = deterministic_terms(spec.det);
  if (T <= m + d + 4) throw LengthError("ccr: sample too short");

  StaticStage s;
  s.y = data.column(spec.y).values;
  s.X = data.matrix(spec.x);
  s.D = deterministic_matrix(T, spec.det);

  Eigen::MatrixXd Z(T, m + d);
  Z.leftCols(m) = s.X;
  Z.rightCols(d) = s.D;
  Eigen::VectorXd coef = ols(Z, s.y);
  s.beta = coef.head(m);
  s.resid = s.y - Z * coef;

  // regressor equation: stochastic part of X is its residual from the
  // deterministics, and its innovations are the first differences
  Eigen::MatrixXd eps2 = s.X - s.D * s.D.colPivHouseholderQr().solve(s.X);
  Eigen::MatrixXd u2 = eps2.bottomRows(T - 1) - eps2.topRows(T - 1);

  s.u.resize(T - 1, m + 1);
  s.u.col(0) = s.resid.tail(T - 1);
  s.u.rightCols(m) = u2;
  return s;
}

}  // namespace

int deterministic_terms(Deterministic det) {
  switch (det) {
    case Deterministic::constant: return 1;
    case Deterministic::constant_trend: return 2;
    case Deterministic::constant_trend2: return 3;
  }
  return 1;
}

double residual_tau_pvalue(double tau, int n_variables, Deterministic det, bool* clamped) {
  if (n_variables < 2 || n_variables > 5) {
    throw ConfigError("residual tau p-values tabulated for 2..5 system variables");
  }
  const int di = static_cast<int>(det);
  const double* q = tables::kTauQuantiles[di][n_variables - 2];
  const double* L = tables::kTauLevels;
  const int nq = tables::kTauLevelCount;
  if (clamped) *clamped = false;
  if (tau <= q[0]) {
    if (clamped) *clamped = true;
    return L[0];
  }
  if (tau >= q[nq - 1]) {
    if (clamped) *clamped = true;
    return L[nq - 1];
  }
  int i = 0;
  while (tau > q[i + 1]) ++i;
  return L[i] + (tau - q[i]) * (L[i + 1] - L[i]) / (q[i + 1] - q[i]);
}

double lc_pvalue(double lc, int n_stochastic, Deterministic det, bool* clamped) {
  if (n_stochastic < 1 || n_stochastic > 4) {
    throw ConfigError("Lc p-values tabulated for 1..4 stochastic regressors");
  }
  const int di = static_cast<int>(det);
  const double* q = tables::kLcQuantiles[di][n_stochastic - 1];
  const double* U = tables::kLcUpperTail;
  const int nq = tables::kLcLevelCount;
  if (clamped) *clamped = false;
  if (lc <= q[0]) {
    if (clamped) *clamped = true;
    return U[0];
  }
  if (lc >= q[nq - 1]) {
    if (clamped) *clamped = true;
    return U[nq - 1];
  }
  int i = 0;
  while (lc > q[i + 1]) ++i;
  return U[i] + (lc - q[i]) * (U[i + 1] - U[i]) / (q[i + 1] - q[i]);
}

CcrFit ccr_fit(const tscore::Dataset& data, const CcrSpec& spec) {
  StaticStage s = static_stage(data, spec);
  const int T = data.T();
  const int m = static_cast<int>(spec.x.size());
  const int d = deterministic_terms(spec.det);
  const int n = m + 1;
  const int N = T - 1;

  hac::LrvOptions opt;
  opt.center = spec.center;
  opt.dof_adjust = spec.dof_correction ? m + d : 0;
  hac::LrvEstimate lrv = hac::long_run_variance(
      s.u, spec.kernel, spec.prewhiten ? hac::Prewhiten::var(1) : hac::Prewhiten::none(), opt);

  CcrFit fit;
  fit.sigma = lrv.contemporaneous;
  fit.lambda = lrv.one_sided;
  fit.omega = lrv.value;
  fit.lambda2 = fit.lambda.rightCols(m);
  fit.u = s.u;
  fit.kernel = spec.kernel;
  fit.bandwidth_used = lrv.bandwidth_used;
  fit.n = n;
  fit.det = spec.det;
  fit.T_eff = N;
  fit.names.push_back(spec.y);
  for (const auto& name : spec.x) fit.names.push_back(name);

  Eigen::MatrixXd omega22 = fit.omega.bottomRightCorner(m, m);
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(omega22, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const double cond = svd.singularValues()(0) /
                      std::max(svd.singularValues()(m - 1), 1e-300);
  if (cond > 1e12) throw SingularError("ccr_fit: long-run regressor covariance is singular");

  // data transformations; the contemporaneous covariance can be singular in
  // degenerate exact-fit cases, so solve in the least-squares sense
  Eigen::MatrixXd adj_x =
      fit.sigma.completeOrthogonalDecomposition().solve(fit.lambda2);  // n x m
  Eigen::VectorXd omega21 = fit.omega.bottomLeftCorner(m, 1).col(0);
  Eigen::VectorXd w22 = omega22.ldlt().solve(omega21);
  Eigen::VectorXd adj_y = adj_x * s.beta;
  adj_y.tail(m) += w22;

  fit.x_star = s.X.bottomRows(N) - s.u * adj_x;
  fit.y_star = s.y.tail(N) - s.u * adj_y;

  fit.z_star.resize(N, m + d);
  fit.z_star.leftCols(m) = fit.x_star;
  fit.z_star.rightCols(d) = s.D.bottomRows(N);

  Eigen::VectorXd coef = ols(fit.z_star, fit.y_star);
  fit.beta = coef.head(m);
  fit.gamma1 = coef.tail(d);
  fit.residuals = fit.y_star - fit.z_star * coef;

  fit.omega1_2 = fit.omega(0, 0) - omega21.dot(w22);
  Eigen::MatrixXd zz_inv = (fit.z_star.transpose() * fit.z_star)
                               .ldlt()
                               .solve(Eigen::MatrixXd::Identity(m + d, m + d));
  fit.se = (std::max(fit.omega1_2, 0.0) * zz_inv.diagonal().array()).sqrt();
  fit.pvalues.resize(m + d);
  for (int i = 0; i < m + d; ++i) {
    fit.pvalues[i] = fit.se[i] > 0.0 ? prob::normal_two_sided(coef[i] / fit.se[i]) : 0.0;
  }
  return fit;
}

CointTestResult hansen_lc_test(const CcrFit& fit) {
  const int N = fit.T_eff;
  const int m = fit.n - 1;
  const int mcols = static_cast<int>(fit.z_star.cols());

  Eigen::MatrixXd M = fit.z_star.transpose() * fit.z_star;
  Eigen::LDLT<Eigen::MatrixXd> solver(M);
  Eigen::VectorXd S = Eigen::VectorXd::Zero(mcols);
  Eigen::MatrixXd SS = Eigen::MatrixXd::Zero(mcols, mcols);
  for (int t = 0; t < N; ++t) {
    S += fit.z_star.row(t).transpose() * fit.residuals[t];
    SS += S * S.transpose();
  }

  // unwhitened conditional long-run variance of the disturbances
  hac::LrvOptions opt;
  opt.center = true;
  hac::LrvEstimate lrv = hac::long_run_variance(fit.u, fit.kernel, hac::Prewhiten::none(), opt);
  Eigen::VectorXd omega21 = lrv.value.bottomLeftCorner(m, 1).col(0);
  const double omega1_2 =
      lrv.value(0, 0) - omega21.dot(lrv.value.bottomRightCorner(m, m).ldlt().solve(omega21));
  if (omega1_2 <= 0.0) throw DegenerateError("hansen_lc_test: conditional variance is zero");

  CointTestResult out;
  out.test = CointTestKind::hansen_lc;
  out.null_hypothesis = CointNull::cointegration;
  out.statistic = solver.solve(SS).trace() / N / omega1_2;
  out.pvalue = lc_pvalue(out.statistic, fit.n - 1, fit.det, &out.pvalue_clamped);
  return out;
}

CointTestResult park_variable_addition_test(const tscore::Dataset& data, const CcrSpec& spec,
                                            ParkAddition added) {
  const int d = deterministic_terms(spec.det);
  if (added.trend && d >= 2) {
    throw ConfigError("park test: trend already present in the deterministic spec");
  }
  if (added.trend2 && d >= 3) {
    throw ConfigError("park test: quadratic trend already present in the deterministic spec");
  }
  const int q = (added.trend ? 1 : 0) + (added.trend2 ? 1 : 0);

  CointTestResult out;
  out.test = CointTestKind::park_chi2;
  out.null_hypothesis = CointNull::cointegration;
  if (q == 0) {
    out.statistic = 0.0;
    out.pvalue = 1.0;
    return out;
  }

  CcrFit fit = ccr_fit(data, spec);
  const int N = fit.T_eff;
  const int base = static_cast<int>(fit.z_star.cols());

  Eigen::MatrixXd Z(N, base + q);
  Z.leftCols(base) = fit.z_star;
  int col = base;
  if (added.trend) {
    for (int t = 0; t < N; ++t) Z(t, col) = static_cast<double>(t + 2) / (N + 1);
    ++col;
  }
  if (added.trend2) {
    for (int t = 0; t < N; ++t) {
      const double x = static_cast<double>(t + 2) / (N + 1);
      Z(t, col) = x * x;
    }
    ++col;
  }

  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(Z);
  if (qr.rank() < Z.cols()) throw SingularError("park test: added trend terms are collinear");
  Eigen::VectorXd coef = qr.solve(fit.y_star);

  Eigen::MatrixXd zz_inv =
      (Z.transpose() * Z).ldlt().solve(Eigen::MatrixXd::Identity(base + q, base + q));
  Eigen::MatrixXd vv = fit.omega1_2 * zz_inv.bottomRightCorner(q, q);
  Eigen::VectorXd theta_a = coef.tail(q);
  out.statistic = theta_a.dot(vv.ldlt().solve(theta_a));
  out.pvalue = prob::chi2_sf(out.statistic, q);
  return out;
}

CointTestResult engle_granger_test(const tscore::Dataset& data, const CcrSpec& spec) {
  StaticStage s = static_stage(data, spec);
  const Eigen::VectorXd& u = s.resid;
  const int T = static_cast<int>(u.size());
  const int kmax = static_cast<int>(std::floor(12.0 * std::pow(T / 100.0, 0.25)));

  // BIC lag choice on the common sample, then refit on the longest sample
  auto adf_regression = [&u](int k, int start, int* nobs) -> Eigen::VectorXd {
    // rows t = start..T-1 of du_t = rho u_{t-1} + sum c_i du_{t-i} + e_t
    const int T_ = static_cast<int>(u.size());
    const int N = T_ - start;
    Eigen::MatrixXd X(N, 1 + k);
    Eigen::VectorXd y(N);
    for (int r = 0; r < N; ++r) {
      const int t = start + r;
      y[r] = u[t] - u[t - 1];
      X(r, 0) = u[t - 1];
      for (int i = 1; i <= k; ++i) X(r, i) = u[t - i] - u[t - i - 1];
    }
    *nobs = N;
    Eigen::VectorXd coef = (X.transpose() * X).ldlt().solve(X.transpose() * y);
    Eigen::VectorXd e = y - X * coef;
    Eigen::VectorXd out(2);
    const double s2 = e.squaredNorm() / (N - 1 - k);
    Eigen::MatrixXd xx_inv =
        (X.transpose() * X).ldlt().solve(Eigen::MatrixXd::Identity(1 + k, 1 + k));
    out[0] = coef[0] / std::sqrt(s2 * xx_inv(0, 0));  // tau
    out[1] = e.squaredNorm();                          // SSR
    return out;
  };

  int best_k = 0;
  double best_bic = 1e300;
  const int common_start = kmax + 1;
  if (common_start >= T - 2) throw LengthError("engle_granger_test: sample too short");
  for (int k = 0; k <= kmax; ++k) {
    int nobs = 0;
    Eigen::VectorXd r = adf_regression(k, common_start, &nobs);
    const double bic = nobs * std::log(r[1] / nobs) + (k + 1) * std::log(static_cast<double>(nobs));
    if (bic < best_bic) {
      best_bic = bic;
      best_k = k;
    }
  }
  int nobs = 0;
  Eigen::VectorXd r = adf_regression(best_k, best_k + 1, &nobs);

  CointTestResult out;
  out.test = CointTestKind::engle_granger;
  out.null_hypothesis = CointNull::no_cointegration;
  out.statistic = r[0];
  out.pvalue = residual_tau_pvalue(out.statistic, static_cast<int>(spec.x.size()) + 1,
                                   spec.det, &out.pvalue_clamped);
  return out;
}

CointTestResult phillips_ouliaris_test(const tscore::Dataset& data, const CcrSpec& spec) {
  StaticStage s = static_stage(data, spec);
  const Eigen::VectorXd& u = s.resid;
  const int T = static_cast<int>(u.size());
  const int N = T - 1;

  Eigen::VectorXd ul = u.head(N);
  Eigen::VectorXd uc = u.tail(N);
  const double denom = ul.squaredNorm();
  if (denom <= 0.0) throw DegenerateError("phillips_ouliaris_test: degenerate residuals");
  const double rho = ul.dot(uc) / denom;
  Eigen::VectorXd e = uc - rho * ul;

  const double gamma0 = e.squaredNorm() / N;
  const double s2 = e.squaredNorm() / (N - 1);
  const double se_rho = std::sqrt(s2 / denom);
  const double t_rho = (rho - 1.0) / se_rho;

  hac::KernelSpec kernel = spec.kernel;
  hac::LrvEstimate lrv = hac::long_run_variance(e, kernel);
  const double lam2 = std::max(lrv.scalar(), 1e-300);
  const double lam = std::sqrt(lam2);

  CointTestResult out;
  out.test = CointTestKind::phillips_ouliaris;
  out.null_hypothesis = CointNull::no_cointegration;
  out.statistic = std::sqrt(gamma0 / lam2) * t_rho -
                  0.5 * (lam2 - gamma0) / lam * (N * se_rho / std::sqrt(s2));
  out.pvalue = residual_tau_pvalue(out.statistic, static_cast<int>(spec.x.size()) + 1,
                                   spec.det, &out.pvalue_clamped);
  return out;
}

}  // namespace svarkit::coint
