#include <doctest.h>

#include <random>

#include "svarkit/errors.hpp"
#include "svarkit/rng.hpp"
#include "svarkit/unitroot.hpp"

using namespace svarkit;
using unitroot::IntegrationOrder;
using unitroot::KpssDecision;
using unitroot::KpssSpec;

namespace {

tscore::TimeSeries make_series(const Eigen::VectorXd& v) {
  tscore::TimeSeries s;
  s.name = "s";
  for (int i = 0; i < v.size(); ++i) s.index.push_back(1970 + i);
  s.values = v;
  return s;
}

tscore::TimeSeries random_walk(int T, std::uint64_t seed) {
  auto rng = rng_stream(seed, 0);
  std::normal_distribution<double> z;
  Eigen::VectorXd v(T);
  double acc = 0.0;
  for (int t = 0; t < T; ++t) {
    acc += z(rng);
    v[t] = acc;
  }
  return make_series(v);
}

tscore::TimeSeries white_noise(int T, std::uint64_t seed) {
  auto rng = rng_stream(seed, 1);
  std::normal_distribution<double> z;
  Eigen::VectorXd v(T);
  for (int t = 0; t < T; ++t) v[t] = z(rng);
  return make_series(v);
}

}  // namespace

TEST_SUITE_BEGIN("unitroot");

TEST_CASE("hand-computable level statistic") {
  // residuals (-2,-1,0,1,2), partial sums (-2,-3,-3,-2,0), numerator 26/25,
  // lag-0 variance 2 -> 0.52
  Eigen::VectorXd v(5);
  v << 1, 2, 3, 4, 5;
  const auto r = unitroot::kpss_test(make_series(v), KpssSpec::level,
                                     hac::KernelSpec::kpss_bartlett(0));
  CHECK(r.statistic == doctest::Approx(0.52).epsilon(1e-12));
  CHECK(r.bandwidth_used == 1.0);
  CHECK(r.decision_5pct == KpssDecision::reject_stationarity);
}

TEST_CASE("critical values as tabulated") {
  CHECK(unitroot::kpss_critical_value(KpssSpec::level, 0.10) == 0.347);
  CHECK(unitroot::kpss_critical_value(KpssSpec::level, 0.05) == 0.463);
  CHECK(unitroot::kpss_critical_value(KpssSpec::level, 0.025) == 0.574);
  CHECK(unitroot::kpss_critical_value(KpssSpec::level, 0.01) == 0.739);
  CHECK(unitroot::kpss_critical_value(KpssSpec::trend, 0.10) == 0.119);
  CHECK(unitroot::kpss_critical_value(KpssSpec::trend, 0.05) == 0.146);
  CHECK(unitroot::kpss_critical_value(KpssSpec::trend, 0.025) == 0.176);
  CHECK(unitroot::kpss_critical_value(KpssSpec::trend, 0.01) == 0.216);
  CHECK_THROWS_AS(unitroot::kpss_critical_value(KpssSpec::level, 0.07), ConfigError);
}

TEST_CASE("decision rule uses strict inequality") {
  CHECK(unitroot::kpss_decision(0.1979, KpssSpec::trend, 0.05) == KpssDecision::reject_stationarity);
  CHECK(unitroot::kpss_decision(0.146, KpssSpec::trend, 0.05) == KpssDecision::not_rejected);
  CHECK(unitroot::kpss_decision(0.5639, KpssSpec::level, 0.05) == KpssDecision::reject_stationarity);
  CHECK(unitroot::kpss_decision(0.463, KpssSpec::level, 0.05) == KpssDecision::not_rejected);
  CHECK(unitroot::kpss_decision(0.1979, KpssSpec::trend, 0.01) == KpssDecision::not_rejected);
}

TEST_CASE("exact trend leaves no residual variance") {
  Eigen::VectorXd v(20);
  for (int t = 0; t < 20; ++t) v[t] = 3.0 + 0.5 * t;
  CHECK_THROWS_AS(
      unitroot::kpss_test(make_series(v), KpssSpec::trend, hac::KernelSpec::kpss_bartlett(2)),
      DegenerateError);
}

TEST_CASE("statistic is invariant under affine transforms") {
  auto s = random_walk(150, 3);
  for (auto spec : {KpssSpec::level, KpssSpec::trend}) {
    const auto base = unitroot::kpss_test(s, spec, hac::KernelSpec::kpss_bartlett(4));
    auto scaled = s;
    scaled.values = (-2.5 * s.values.array() + 7.0).matrix();
    const auto tr = unitroot::kpss_test(scaled, spec, hac::KernelSpec::kpss_bartlett(4));
    CHECK(tr.statistic == doctest::Approx(base.statistic).epsilon(1e-10));
  }
}

TEST_CASE("statistic decreases as the truncation lag grows on persistent data") {
  auto s = random_walk(200, 17);
  double prev = std::numeric_limits<double>::infinity();
  for (int l : {0, 1, 2, 4, 8}) {
    const auto r = unitroot::kpss_test(s, KpssSpec::level, hac::KernelSpec::kpss_bartlett(l));
    CHECK(r.statistic <= prev + 1e-12);
    prev = r.statistic;
  }
}

TEST_CASE("lambda from theta") {
  CHECK(unitroot::lambda_from_theta(-1.0) == doctest::Approx(0.0));
  CHECK(unitroot::lambda_from_theta(-0.5) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK_THROWS_AS(unitroot::lambda_from_theta(0.0), DomainError);
  CHECK_THROWS_AS(unitroot::lambda_from_theta(0.4), DomainError);
  CHECK_THROWS_AS(unitroot::lambda_from_theta(-1.2), DomainError);
}

TEST_CASE("ma1 equivalence diagnostic") {
  // overdifferenced white noise drives theta toward -1
  auto rng = rng_stream(23, 0);
  std::normal_distribution<double> z;
  Eigen::VectorXd eps(2001);
  for (int t = 0; t <= 2000; ++t) eps[t] = z(rng);
  Eigen::VectorXd w = eps.tail(2000) - eps.head(2000);
  const auto over = unitroot::ma1_equivalence(make_series(w));
  CHECK(over.theta < -0.9);
  CHECK(over.lambda < 0.01);

  // true MA(1), theta = -0.5
  Eigen::VectorXd w2(2000);
  for (int t = 0; t < 2000; ++t) w2[t] = eps[t + 1] - 0.5 * eps[t];
  const auto est = unitroot::ma1_equivalence(make_series(w2));
  CHECK(est.theta == doctest::Approx(-0.5).epsilon(0.2));
  CHECK(est.lambda == doctest::Approx(0.5).epsilon(0.3));
}

TEST_CASE("difference protocol classifies integration orders") {
  const auto kernel = hac::KernelSpec::kpss_bartlett(4);
  int i1_hits = 0, i0_hits = 0;
  for (int seed = 0; seed < 100; ++seed) {
    const auto proto = unitroot::kpss_difference_protocol(random_walk(200, 100 + seed),
                                                          KpssSpec::level, kernel);
    if (proto.order == IntegrationOrder::I1) ++i1_hits;
    const auto proto0 = unitroot::kpss_difference_protocol(white_noise(200, 100 + seed),
                                                           KpssSpec::level, kernel);
    if (proto0.order == IntegrationOrder::I0) ++i0_hits;
  }
  CHECK(i1_hits >= 90);
  CHECK(i0_hits >= 90);
}

TEST_CASE("difference protocol reports inconclusive when both reject") {
  // I(2)-ish input: the level and the first difference both wander
  auto rng = rng_stream(77, 0);
  std::normal_distribution<double> z;
  Eigen::VectorXd v(300);
  double w = 0.0, acc = 0.0;
  for (int t = 0; t < 300; ++t) {
    w += z(rng);
    acc += w;
    v[t] = acc;
  }
  const auto proto = unitroot::kpss_difference_protocol(make_series(v), KpssSpec::level,
                                                        hac::KernelSpec::kpss_bartlett(4));
  CHECK(proto.order == IntegrationOrder::inconclusive);
}

TEST_SUITE_END();
