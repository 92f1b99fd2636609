#include "svarkit/unitroot.hpp"

#include <array>
#include <cmath>
#include <limits>

#include "svarkit/errors.hpp"

namespace svarkit::unitroot {

namespace {

constexpr std::array<double, 4> kAlphas = {0.10, 0.05, 0.025, 0.01};
constexpr std::array<double, 4> kLevelCv = {0.347, 0.463, 0.574, 0.739};
constexpr std::array<double, 4> kTrendCv = {0.119, 0.146, 0.176, 0.216};

}  // namespace

double kpss_critical_value(KpssSpec spec, double alpha) {
  const auto& cv = (spec == KpssSpec::level) ? kLevelCv : kTrendCv;
  for (std::size_t i = 0; i < kAlphas.size(); ++i) {
    if (std::fabs(alpha - kAlphas[i]) < 1e-12) return cv[i];
  }
  throw ConfigError("kpss_critical_value: alpha must be 0.10, 0.05, 0.025 or 0.01");
}

KpssDecision kpss_decision(double statistic, KpssSpec spec, double alpha) {
  return statistic > kpss_critical_value(spec, alpha) ? KpssDecision::reject_stationarity
                                                      : KpssDecision::not_rejected;
}

KpssResult kpss_test(const tscore::TimeSeries& s, KpssSpec spec,
                     const hac::KernelSpec& kernel, hac::Prewhiten prewhiten) {
  const int T = s.size();
  if (T < 5) throw LengthError("kpss_test: need at least 5 observations");

  // residuals from mean extraction (level) or constant + linear trend (trend)
  Eigen::VectorXd resid;
  if (spec == KpssSpec::level) {
    resid = s.values.array() - s.values.mean();
  } else {
    Eigen::MatrixXd X(T, 2);
    X.col(0).setOnes();
    for (int t = 0; t < T; ++t) X(t, 1) = t + 1;
    Eigen::VectorXd coef = (X.transpose() * X).ldlt().solve(X.transpose() * s.values);
    resid = s.values - X * coef;
  }

  const double rss = resid.squaredNorm();
  if (rss <= 1e-14 * static_cast<double>(T) * (1.0 + s.values.squaredNorm() / T)) {
    throw DegenerateError("kpss_test: detrending leaves zero residual variance");
  }

  double partial = 0.0, numerator = 0.0;
  for (int t = 0; t < T; ++t) {
    partial += resid[t];
    numerator += partial * partial;
  }
  numerator /= static_cast<double>(T) * T;

  KpssResult out;
  out.spec = spec;
  out.lrv = hac::long_run_variance(resid, kernel, prewhiten);
  out.bandwidth_used = out.lrv.bandwidth_used;
  const double s2 = out.lrv.scalar();
  if (s2 <= 0.0) throw DegenerateError("kpss_test: long-run variance is zero");
  out.statistic = numerator / s2;
  out.decision_5pct = kpss_decision(out.statistic, spec, 0.05);
  return out;
}

double lambda_from_theta(double theta) {
  if (theta < -1.0 || theta >= 0.0) {
    throw DomainError("lambda_from_theta: theta must lie in [-1, 0)");
  }
  return -(1.0 + theta) * (1.0 + theta) / theta;
}

ArimaEquivalence ma1_equivalence(const tscore::TimeSeries& w) {
  const int T = w.size();
  if (T < 8) throw LengthError("ma1_equivalence: need at least 8 observations");

  Eigen::VectorXd x = w.values.array() - w.values.mean();
  // conditional sum of squares of the innovations v_t = x_t - theta v_{t-1}
  auto css = [&](double theta) {
    double v = 0.0, acc = 0.0;
    for (int t = 0; t < T; ++t) {
      v = x[t] - theta * v;
      acc += v * v;
    }
    return acc;
  };

  // golden-section search over the invertible range
  double lo = -0.999, hi = 0.999;
  const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = hi - gr * (hi - lo), b = lo + gr * (hi - lo);
  double fa = css(a), fb = css(b);
  for (int it = 0; it < 200 && hi - lo > 1e-10; ++it) {
    if (fa < fb) {
      hi = b;
      b = a;
      fb = fa;
      a = hi - gr * (hi - lo);
      fa = css(a);
    } else {
      lo = a;
      a = b;
      fa = fb;
      b = lo + gr * (hi - lo);
      fb = css(b);
    }
  }
  ArimaEquivalence out;
  out.theta = 0.5 * (lo + hi);
  out.lambda = (out.theta < 0.0) ? lambda_from_theta(std::max(out.theta, -1.0))
                                 : std::numeric_limits<double>::infinity();
  return out;
}

DifferenceProtocolResult kpss_difference_protocol(const tscore::TimeSeries& s, KpssSpec spec,
                                                  const hac::KernelSpec& kernel) {
  DifferenceProtocolResult out;
  out.levels = kpss_test(s, spec, kernel);
  out.diffs = kpss_test(tscore::difference(s, 1), spec, kernel);
  const bool level_rejects = out.levels.decision_5pct == KpssDecision::reject_stationarity;
  const bool diff_rejects = out.diffs.decision_5pct == KpssDecision::reject_stationarity;
  if (!level_rejects) {
    out.order = IntegrationOrder::I0;
  } else if (!diff_rejects) {
    out.order = IntegrationOrder::I1;
  } else {
    out.order = IntegrationOrder::inconclusive;
  }
  return out;
}

}  // namespace svarkit::unitroot
