#pragma once

// KPSS stationarity test (level and trend variants), the MA(1)/random-walk
// equivalence diagnostics, and the level-vs-difference classification
// protocol.

#include "svarkit/hac.hpp"
#include "svarkit/timeseries.hpp"

namespace svarkit::unitroot {

enum class KpssSpec { level, trend };
enum class KpssDecision { reject_stationarity, not_rejected };

struct KpssResult {
  double statistic = 0.0;
  KpssSpec spec = KpssSpec::level;
  double bandwidth_used = 0.0;
  hac::LrvEstimate lrv;
  KpssDecision decision_5pct = KpssDecision::not_rejected;
};

// Upper-tail critical value; alpha must be one of 0.10, 0.05, 0.025, 0.01.
double kpss_critical_value(KpssSpec spec, double alpha);

// Strict inequality: a statistic equal to the critical value does not reject.
KpssDecision kpss_decision(double statistic, KpssSpec spec, double alpha);

KpssResult kpss_test(const tscore::TimeSeries& s, KpssSpec spec,
                     const hac::KernelSpec& kernel,
                     hac::Prewhiten prewhiten = hac::Prewhiten::none());

// lambda = -(1+theta)^2/theta, the random-walk-to-noise variance ratio of
// the ARIMA form; theta in [-1, 0).
double lambda_from_theta(double theta);

struct ArimaEquivalence {
  double theta = 0.0;
  double lambda = 0.0;
};

// Diagnostic MA(1) fit on a differenced series by minimizing the one-step
// prediction error; point estimate only.
ArimaEquivalence ma1_equivalence(const tscore::TimeSeries& w);

enum class IntegrationOrder { I0, I1, inconclusive };

struct DifferenceProtocolResult {
  KpssResult levels;
  KpssResult diffs;
  IntegrationOrder order = IntegrationOrder::inconclusive;
};

// Test the series and its first difference at the 5% level: I(1) when the
// level rejects and the difference does not, I(0) when the level does not
// reject, inconclusive otherwise.
DifferenceProtocolResult kpss_difference_protocol(const tscore::TimeSeries& s, KpssSpec spec,
                                                  const hac::KernelSpec& kernel);

}  // namespace svarkit::unitroot
