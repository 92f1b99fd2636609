#include "svarkit/varkit.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "svarkit/errors.hpp"
#include "svarkit/prob.hpp"

namespace svarkit::varkit {

namespace {

Eigen::MatrixXd lag_matrix(const Eigen::MatrixXd& Y, int p, int offset, int n) {
  // rows offset..offset+n-1 of [1, Y_{t-1}, ..., Y_{t-p}]
  const int K = static_cast<int>(Y.cols());
  Eigen::MatrixXd Z(n, 1 + K * p);
  Z.col(0).setOnes();
  for (int i = 1; i <= p; ++i) {
    Z.middleCols(1 + (i - 1) * K, K) = Y.middleRows(offset - i, n);
  }
  return Z;
}

double gaussian_loglik(const Eigen::MatrixXd& omega, int T_eff, int K) {
  Eigen::LLT<Eigen::MatrixXd> llt(omega);
  if (llt.info() != Eigen::Success) {
    // degenerate perfect fit: the Gaussian likelihood diverges
    return std::numeric_limits<double>::infinity();
  }
  double logdet = 0.0;
  for (int i = 0; i < K; ++i) logdet += 2.0 * std::log(llt.matrixL()(i, i));
  return -0.5 * T_eff * (K * std::log(2.0 * std::numbers::pi) + logdet + K);
}

}  // namespace

Eigen::MatrixXd VarFit::companion() const {
  Eigen::MatrixXd F = Eigen::MatrixXd::Zero(K * p, K * p);
  for (int i = 0; i < p; ++i) F.block(0, i * K, K, K) = A[i];
  if (p > 1) F.block(K, 0, K * (p - 1), K * (p - 1)).setIdentity();
  return F;
}

Eigen::MatrixXd VarFit::coefficient_sum() const {
  Eigen::MatrixXd S = Eigen::MatrixXd::Zero(K, K);
  for (const auto& a : A) S += a;
  return S;
}

VarFit var_fit(const Eigen::MatrixXd& Y, int p, std::vector<std::string> names) {
  const int T = static_cast<int>(Y.rows());
  const int K = static_cast<int>(Y.cols());
  if (p < 1) throw ConfigError("var_fit: lag order must be at least 1");
  if (T - p <= K * p + 1) throw LengthError("var_fit: sample too short for the lag order");
  if (!Y.allFinite()) throw ParseError("var_fit: non-finite input");

  const int n = T - p;
  Eigen::MatrixXd Z = lag_matrix(Y, p, p, n);
  Eigen::MatrixXd Yeff = Y.bottomRows(n);

  Eigen::MatrixXd ZtZ = Z.transpose() * Z;
  Eigen::FullPivLU<Eigen::MatrixXd> lu(ZtZ);
  if (!lu.isInvertible()) throw SingularError("var_fit: singular regressor matrix");
  Eigen::MatrixXd coef = lu.solve(Z.transpose() * Yeff);  // (1+Kp) x K

  VarFit fit;
  fit.K = K;
  fit.p = p;
  fit.T_eff = n;
  fit.intercept = coef.row(0).transpose();
  fit.A.resize(p);
  for (int i = 0; i < p; ++i) {
    fit.A[i] = coef.middleRows(1 + i * K, K).transpose();
  }
  fit.residuals = Yeff - Z * coef;
  fit.omega_eps = fit.residuals.transpose() * fit.residuals / n;
  fit.loglik = gaussian_loglik(fit.omega_eps, n, K);
  fit.presample = Y.topRows(p);
  fit.regressors = std::move(Z);
  if (names.empty()) {
    for (int k = 0; k < K; ++k) names.push_back("y" + std::to_string(k + 1));
  }
  fit.names = std::move(names);
  return fit;
}

VarFit var_fit(const tscore::Dataset& data, int p) {
  return var_fit(data.matrix(), p, data.names());
}

LagSelection select_lag(const Eigen::MatrixXd& Y, int p_max) {
  const int T = static_cast<int>(Y.rows());
  const int K = static_cast<int>(Y.cols());
  if (p_max < 1) throw ConfigError("select_lag: p_max must be at least 1");
  if (T - p_max <= K * p_max + 1) throw ConfigError("select_lag: p_max too large for T");

  const int n = T - p_max;  // common sample across candidate orders
  Eigen::MatrixXd Yeff = Y.bottomRows(n);

  LagSelection sel;
  double best_aic = 1e300, best_bic = 1e300, best_hq = 1e300;
  for (int p = 0; p <= p_max; ++p) {
    Eigen::MatrixXd Z = lag_matrix(Y, p, p_max, n);
    Eigen::MatrixXd coef = (Z.transpose() * Z).ldlt().solve(Z.transpose() * Yeff);
    Eigen::MatrixXd resid = Yeff - Z * coef;
    Eigen::MatrixXd omega = resid.transpose() * resid / n;
    double logdet = std::log(omega.determinant());
    const double params = static_cast<double>(p) * K * K;
    const double aic = logdet + 2.0 * params / n;
    const double bic = logdet + params * std::log(static_cast<double>(n)) / n;
    const double hq = logdet + 2.0 * params * std::log(std::log(static_cast<double>(n))) / n;
    sel.aic_values.push_back(aic);
    sel.bic_values.push_back(bic);
    sel.hq_values.push_back(hq);
    if (aic < best_aic) { best_aic = aic; sel.aic = p; }
    if (bic < best_bic) { best_bic = bic; sel.bic = p; }
    if (hq < best_hq) { best_hq = hq; sel.hq = p; }
  }
  return sel;
}

LagSelection select_lag(const tscore::Dataset& data, int p_max) {
  return select_lag(data.matrix(), p_max);
}

Stability stability_check(const VarFit& fit) {
  Stability out;
  Eigen::VectorXcd ev = fit.companion().eigenvalues();
  out.moduli = ev.cwiseAbs();
  std::sort(out.moduli.data(), out.moduli.data() + out.moduli.size(),
            std::greater<double>());
  out.is_stable = out.moduli[0] < 1.0;
  return out;
}

PortmanteauResult portmanteau_test(const VarFit& fit, int h) {
  if (h <= fit.p) throw ConfigError("portmanteau_test: h must exceed the lag order");
  const int T = fit.T_eff;
  const int K = fit.K;
  if (h >= T) throw ConfigError("portmanteau_test: h too large for the sample");

  const Eigen::MatrixXd& e = fit.residuals;
  Eigen::MatrixXd c0 = e.transpose() * e / T;
  Eigen::MatrixXd c0inv = c0.ldlt().solve(Eigen::MatrixXd::Identity(K, K));

  PortmanteauResult out;
  double q = 0.0;
  for (int j = 1; j <= h; ++j) {
    Eigen::MatrixXd cj = e.bottomRows(T - j).transpose() * e.topRows(T - j) / T;
    const double term = (cj.transpose() * c0inv * cj * c0inv).trace();
    q += term / (T - j);
  }
  out.Q = static_cast<double>(T) * T * q;
  out.df = K * K * (h - fit.p);
  out.pvalue = prob::chi2_sf(out.Q, out.df);
  return out;
}

BrownForsytheResult brown_forsythe_test(const Eigen::MatrixXd& residual_columns) {
  const int n = static_cast<int>(residual_columns.rows());
  const int g = static_cast<int>(residual_columns.cols());
  if (g < 2 || n < 2) throw DegenerateError("brown_forsythe_test: need >= 2 groups of >= 2");

  // absolute deviations from each group's median
  Eigen::MatrixXd z(n, g);
  for (int j = 0; j < g; ++j) {
    std::vector<double> col(residual_columns.col(j).data(),
                            residual_columns.col(j).data() + n);
    std::nth_element(col.begin(), col.begin() + n / 2, col.end());
    double med = col[n / 2];
    if (n % 2 == 0) {
      auto lower = std::max_element(col.begin(), col.begin() + n / 2);
      med = 0.5 * (med + *lower);
    }
    z.col(j) = (residual_columns.col(j).array() - med).abs();
  }

  const double grand = z.mean();
  double between = 0.0, within = 0.0;
  for (int j = 0; j < g; ++j) {
    const double gm = z.col(j).mean();
    between += n * (gm - grand) * (gm - grand);
    within += (z.col(j).array() - gm).square().sum();
  }
  const int df1 = g - 1;
  const int df2 = g * n - g;
  if (within <= 0.0) throw DegenerateError("brown_forsythe_test: degenerate groups");

  BrownForsytheResult out;
  out.statistic = (between / df1) / (within / df2);
  out.pvalue = prob::fisher_f_sf(out.statistic, df1, df2);
  return out;
}

Chi2TestResult lr_diag_test(const Eigen::MatrixXd& omega_unrestricted, int T) {
  const int K = static_cast<int>(omega_unrestricted.rows());
  Eigen::LLT<Eigen::MatrixXd> llt(omega_unrestricted);
  if (llt.info() != Eigen::Success) {
    throw SingularError("lr_diag_test: covariance matrix is not positive definite");
  }
  double logdet = 0.0;
  for (int i = 0; i < K; ++i) logdet += 2.0 * std::log(llt.matrixL()(i, i));
  double logdiag = 0.0;
  for (int i = 0; i < K; ++i) logdiag += std::log(omega_unrestricted(i, i));

  Chi2TestResult out;
  out.statistic = T * (logdiag - logdet);
  out.df = K * (K - 1) / 2;
  out.pvalue = prob::chi2_sf(out.statistic, out.df);
  return out;
}

Chi2TestResult lm_diag_test(const Eigen::MatrixXd& correlation, int T) {
  const int K = static_cast<int>(correlation.rows());
  for (int i = 0; i < K; ++i) {
    if (std::fabs(correlation(i, i) - 1.0) > 1e-8) {
      throw ParseError("lm_diag_test: diagonal of a correlation matrix must be 1");
    }
  }
  double acc = 0.0;
  for (int k = 1; k < K; ++k) {
    for (int l = 0; l < k; ++l) acc += correlation(k, l) * correlation(k, l);
  }
  Chi2TestResult out;
  out.statistic = T * acc;
  out.df = K * (K - 1) / 2;
  out.pvalue = prob::chi2_sf(out.statistic, out.df);
  return out;
}

DiagnosticsReport diagnostics(const VarFit& fit, int portmanteau_h) {
  DiagnosticsReport rep;
  rep.portmanteau = portmanteau_test(fit, portmanteau_h);
  rep.brown_forsythe = brown_forsythe_test(fit.residuals);
  rep.lr_diag = lr_diag_test(fit.omega_eps, fit.T_eff);
  Eigen::VectorXd sd = fit.omega_eps.diagonal().cwiseSqrt();
  Eigen::MatrixXd corr = fit.omega_eps.array() / (sd * sd.transpose()).array();
  corr.diagonal().setOnes();
  rep.lm_diag = lm_diag_test(corr, fit.T_eff);
  rep.stability_moduli = stability_check(fit).moduli;
  return rep;
}

}  // namespace svarkit::varkit
