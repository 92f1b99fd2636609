#include "svarkit/hac.hpp"

#include <cmath>
#include <numbers>
#include <vector>

#include "svarkit/errors.hpp"

namespace svarkit::hac {

namespace {

constexpr double kStabilityCeiling = 0.97;

// (1/T) sum_t e_t e_{t-j>}' with optional dof divisor
Eigen::MatrixXd autocov(const Eigen::MatrixXd& e, int j, int divisor) {
  const int n = static_cast<int>(e.rows());
  return e.bottomRows(n - j).transpose() * e.topRows(n - j) / divisor;
}

struct WhitenResult {
  Eigen::MatrixXd filtered;   // e_t = u_t - sum A_i u_{t-i}
  Eigen::MatrixXd recolor;    // (I - sum A_i)^{-1}
};

// Fit VAR(p) without intercept and filter. Coefficients whose companion
// roots reach the stability ceiling are shrunk back inside it.
WhitenResult prewhiten_var(const Eigen::MatrixXd& u, int p) {
  const int T = static_cast<int>(u.rows());
  const int K = static_cast<int>(u.cols());
  const int n = T - p;

  Eigen::MatrixXd Z(n, K * p);
  for (int i = 1; i <= p; ++i) {
    Z.middleCols((i - 1) * K, K) = u.middleRows(p - i, n);
  }
  Eigen::MatrixXd Y = u.bottomRows(n);
  Eigen::MatrixXd coef =
      (Z.transpose() * Z).ldlt().solve(Z.transpose() * Y).transpose();  // K x Kp

  std::vector<Eigen::MatrixXd> A(p);
  for (int i = 0; i < p; ++i) A[i] = coef.middleCols(i * K, K);

  // companion spectral radius
  Eigen::MatrixXd F = Eigen::MatrixXd::Zero(K * p, K * p);
  for (int i = 0; i < p; ++i) F.block(0, i * K, K, K) = A[i];
  if (p > 1) F.block(K, 0, K * (p - 1), K * (p - 1)).setIdentity();
  Eigen::VectorXcd roots = F.eigenvalues();
  const double rho = roots.cwiseAbs().maxCoeff();

  if (rho >= kStabilityCeiling) {
    if (p == 1) {
      // clamp offending eigenvalue moduli, keep the rest
      Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(A[0].cast<std::complex<double>>());
      Eigen::VectorXcd d = es.eigenvalues();
      for (int i = 0; i < d.size(); ++i) {
        const double m = std::abs(d[i]);
        if (m >= kStabilityCeiling) d[i] *= kStabilityCeiling / m;
      }
      Eigen::MatrixXcd V = es.eigenvectors();
      A[0] = (V * d.asDiagonal() * V.inverse()).real();
    } else {
      // scaling A_i by s^i scales every companion root by s
      const double s = kStabilityCeiling / rho;
      double si = 1.0;
      for (int i = 0; i < p; ++i) {
        si *= s;
        A[i] *= si;
      }
    }
  }

  WhitenResult out;
  out.filtered = Y;
  Eigen::MatrixXd sumA = Eigen::MatrixXd::Zero(K, K);
  for (int i = 0; i < p; ++i) {
    out.filtered -= u.middleRows(p - 1 - i, n) * A[i].transpose();
    sumA += A[i];
  }
  out.recolor = (Eigen::MatrixXd::Identity(K, K) - sumA)
                    .partialPivLu()
                    .solve(Eigen::MatrixXd::Identity(K, K));
  return out;
}

}  // namespace

double kernel_weight(const KernelSpec& spec, double x) {
  const double ax = std::fabs(x);
  switch (spec.kind) {
    case KernelKind::bartlett:
      return ax >= 1.0 ? 0.0 : 1.0 - ax;
    case KernelKind::truncated:
      return ax <= 1.0 ? 1.0 : 0.0;
    case KernelKind::quadratic_spectral: {
      if (ax < 1e-8) return 1.0;  // k(0) = 1 by continuity
      const double z = 6.0 * std::numbers::pi * ax / 5.0;
      return 25.0 / (12.0 * std::numbers::pi * std::numbers::pi * ax * ax) *
             (std::sin(z) / z - std::cos(z));
    }
  }
  return 0.0;
}

double nw_auto_bandwidth(const Eigen::MatrixXd& u, const KernelSpec& spec,
                         const Eigen::VectorXd& weights) {
  const int T = static_cast<int>(u.rows());
  const int K = static_cast<int>(u.cols());
  if (T < 8) throw LengthError("nw_auto_bandwidth: need at least 8 observations");
  if (!u.allFinite()) throw ParseError("nw_auto_bandwidth: non-finite input");

  Eigen::VectorXd w = weights.size() ? weights : Eigen::VectorXd::Ones(K);
  if (w.size() != K) throw ConfigError("nw_auto_bandwidth: weight length mismatch");
  Eigen::VectorXd h = u * w;

  double q, growth, cgamma;
  switch (spec.kind) {
    case KernelKind::bartlett:
      q = 1.0;
      growth = 2.0 / 9.0;
      cgamma = 1.1447;
      break;
    case KernelKind::quadratic_spectral:
      q = 2.0;
      growth = 2.0 / 25.0;
      cgamma = 1.3221;
      break;
    default:
      throw ConfigError("nw_auto_bandwidth: no plug-in rule for the truncated kernel");
  }

  const int n = static_cast<int>(std::floor(4.0 * std::pow(T / 100.0, growth)));
  std::vector<double> sigma(n + 1, 0.0);
  for (int j = 0; j <= n; ++j) {
    sigma[j] = h.tail(T - j).dot(h.head(T - j)) / T;
  }
  if (sigma[0] <= 0.0) {
    throw DegenerateError("nw_auto_bandwidth: zero-variance residual combination");
  }

  double s0 = sigma[0], sq = 0.0;
  for (int j = 1; j <= n; ++j) {
    s0 += 2.0 * sigma[j];
    sq += 2.0 * std::pow(static_cast<double>(j), q) * sigma[j];
  }
  // Overdifferenced input drives the pilot long-run variance to ~0; the
  // plug-in then wants an unbounded window, so cap at T.
  if (!(std::fabs(s0) > 1e-14 * sigma[0])) return static_cast<double>(T);

  const double gamma = cgamma * std::pow((sq / s0) * (sq / s0), 1.0 / (2.0 * q + 1.0));
  const double bw = gamma * std::pow(static_cast<double>(T), 1.0 / (2.0 * q + 1.0));
  return std::min(std::fabs(bw), static_cast<double>(T));
}

LrvEstimate long_run_variance(const Eigen::MatrixXd& u, const KernelSpec& spec,
                              Prewhiten prewhiten, const LrvOptions& options) {
  const int T = static_cast<int>(u.rows());
  const int K = static_cast<int>(u.cols());
  if (!u.allFinite()) throw ParseError("long_run_variance: non-finite input");
  if (T <= K) throw LengthError("long_run_variance: need T > K");
  if (prewhiten.order > 0 && T <= K * prewhiten.order + K) {
    throw LengthError("long_run_variance: sample too short for the prewhitening order");
  }

  Eigen::MatrixXd work = u;
  if (options.center) work.rowwise() -= work.colwise().mean();

  LrvEstimate out;
  out.kernel = spec;
  out.prewhitened = prewhiten.order > 0;
  out.prewhiten_order = prewhiten.order;

  Eigen::MatrixXd recolor = Eigen::MatrixXd::Identity(K, K);
  Eigen::MatrixXd filtered = work;
  if (prewhiten.order > 0) {
    WhitenResult wr = prewhiten_var(work, prewhiten.order);
    filtered = std::move(wr.filtered);
    recolor = std::move(wr.recolor);
  }

  const int N = static_cast<int>(filtered.rows());
  const int divisor = std::max(1, N - options.dof_adjust);
  const int raw_divisor = std::max(1, T - options.dof_adjust);

  double bw = spec.auto_bandwidth ? nw_auto_bandwidth(filtered, spec)
                                  : spec.fixed_bandwidth;
  out.bandwidth_used = bw;

  // weighted one-sided sum over lags; per-lag terms go into slots so the
  // serial and OpenMP paths accumulate in the same order
  Eigen::MatrixXd gamma0 = autocov(filtered, 0, divisor);
  int max_lag = 0;
  if (bw > 0.0) {
    if (spec.kind == KernelKind::quadratic_spectral) {
      max_lag = N - 1;
    } else {
      max_lag = std::min(N - 1, static_cast<int>(std::ceil(bw)));
    }
  }
  std::vector<Eigen::MatrixXd> terms(static_cast<std::size_t>(max_lag),
                                     Eigen::MatrixXd::Zero(K, K));
  parallel_for(static_cast<std::size_t>(max_lag), options.exec, [&](std::size_t idx) {
    const int j = static_cast<int>(idx) + 1;
    const double w = kernel_weight(spec, j / bw);
    if (w != 0.0) terms[idx] = w * autocov(filtered, j, divisor);
  });
  Eigen::MatrixXd lambda_star = gamma0;
  for (const auto& t : terms) lambda_star += t;
  Eigen::MatrixXd omega_star = lambda_star + lambda_star.transpose() - gamma0;

  // contemporaneous covariance is always reported for the unfiltered input
  out.contemporaneous = Eigen::MatrixXd(work.transpose() * work / raw_divisor);

  Eigen::MatrixXd omega, lambda;
  if (prewhiten.order > 0) {
    omega = recolor * omega_star * recolor.transpose();
    // one-sided recoloring keeps the skew part of the recolored sum and
    // re-centers the symmetric part so that omega = lambda + lambda' - sigma
    // holds exactly with the directly measured contemporaneous covariance
    Eigen::MatrixXd ls = recolor * lambda_star * recolor.transpose();
    lambda = ls + 0.5 * (out.contemporaneous - recolor * gamma0 * recolor.transpose());
  } else {
    omega = omega_star;
    lambda = lambda_star;
  }

  // PSD guard: clamp negative eigenvalues, fold the (tiny) adjustment back
  // into the symmetric part of the one-sided estimate to preserve the
  // assembly identity
  Eigen::MatrixXd omega_sym = 0.5 * (omega + omega.transpose());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(omega_sym);
  Eigen::VectorXd ev = es.eigenvalues();
  if (ev.minCoeff() < 0.0) {
    Eigen::VectorXd clamped = ev.cwiseMax(0.0);
    Eigen::MatrixXd fixed =
        es.eigenvectors() * clamped.asDiagonal() * es.eigenvectors().transpose();
    lambda += 0.5 * (fixed - omega);
    omega = fixed;
  } else {
    lambda += 0.5 * (omega_sym - omega);
    omega = omega_sym;
  }

  out.value = omega;
  out.one_sided = lambda;
  return out;
}

}  // namespace svarkit::hac
