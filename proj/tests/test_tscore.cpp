#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>

#include "svarkit/csv.hpp"
#include "svarkit/errors.hpp"
#include "svarkit/timeseries.hpp"

using namespace svarkit;
using tscore::TimeSeries;

namespace {

std::string write_temp(const std::string& name, const std::string& content) {
  const auto path = std::filesystem::temp_directory_path() / name;
  std::ofstream out(path);
  out << content;
  return path.string();
}

TimeSeries series(std::vector<double> v, int first_year = 2000) {
  TimeSeries s;
  s.name = "s";
  for (std::size_t i = 0; i < v.size(); ++i) s.index.push_back(first_year + static_cast<int>(i));
  s.values = Eigen::Map<Eigen::VectorXd>(v.data(), static_cast<int>(v.size()));
  return s;
}

}  // namespace

TEST_SUITE_BEGIN("tscore");

TEST_CASE("load_csv reads columns in file order") {
  const auto path = write_temp("tsc_basic.csv", "year,x\n1974,1\n1975,2\n1976,3\n");
  const auto data = tscore::load_csv(path, "year");
  CHECK(data.T() == 3);
  CHECK(data.column("x").values[0] == 1.0);
  CHECK(data.column("x").values[2] == 3.0);
  CHECK(data.index() == std::vector<int>{1974, 1975, 1976});
}

TEST_CASE("load_csv rejects bad input") {
  CHECK_THROWS_AS(
      tscore::load_csv(write_temp("tsc_rev.csv", "year,x\n1976,1\n1975,2\n"), "year"),
      IndexError);
  CHECK_THROWS_AS(
      tscore::load_csv(write_temp("tsc_dup.csv", "year,x\n1975,1\n1975,2\n"), "year"),
      IndexError);
  CHECK_THROWS_AS(
      tscore::load_csv(write_temp("tsc_ragged.csv", "year,x,y\n1974,1\n"), "year"),
      ParseError);
  CHECK_THROWS_AS(
      tscore::load_csv(write_temp("tsc_alpha.csv", "year,x\n1974,abc\n"), "year"),
      ParseError);
  CHECK_THROWS_AS(tscore::load_csv("/nonexistent/file.csv", "year"), ParseError);
  CHECK_THROWS_AS(
      tscore::load_csv(write_temp("tsc_noidx.csv", "y,x\n1974,1\n"), "year"), ParseError);
}

TEST_CASE("a 43-row file keeps all 43 observations") {
  std::string content = "year,x\n";
  for (int y = 1974; y <= 2016; ++y) content += std::to_string(y) + "," + std::to_string(y - 1974) + "\n";
  const auto data = tscore::load_csv(write_temp("tsc_43.csv", content), "year");
  CHECK(data.T() == 43);
}

TEST_CASE("difference") {
  const auto d1 = tscore::difference(series({1, 2, 4, 7}), 1);
  CHECK(d1.values.size() == 3);
  CHECK(d1.values[0] == 1.0);
  CHECK(d1.values[1] == 2.0);
  CHECK(d1.values[2] == 3.0);
  CHECK(d1.index.front() == 2001);  // first period dropped

  const auto d2 = tscore::difference(series({1, 2, 4, 7}), 2);
  CHECK(d2.values.size() == 2);
  CHECK(d2.values[0] == 1.0);
  CHECK(d2.values[1] == 1.0);

  const auto dc = tscore::difference(series({5, 5, 5, 5, 5}), 1);
  CHECK(dc.values.cwiseAbs().maxCoeff() == 0.0);

  CHECK_THROWS_AS(tscore::difference(series({1, 2}), 2), LengthError);
  CHECK_THROWS_AS(tscore::difference(series({1, 2, 3}), 0), DomainError);
}

TEST_CASE("difference undoes cumulative sums") {
  std::mt19937_64 rng(11);
  std::normal_distribution<double> z;
  std::vector<double> raw(50), cum(50);
  double acc = 0.0;
  for (int i = 0; i < 50; ++i) {
    raw[i] = z(rng);
    acc += raw[i];
    cum[i] = acc;
  }
  const auto d = tscore::difference(series(cum), 1);
  for (int i = 0; i < 49; ++i) CHECK(d.values[i] == doctest::Approx(raw[i + 1]).epsilon(1e-12));
}

TEST_CASE("describe moments and Jarque-Bera") {
  std::mt19937_64 rng(5);
  std::normal_distribution<double> z;
  std::vector<double> v(42);
  for (auto& x : v) x = z(rng) + 0.3 * z(rng) * z(rng);
  const auto s = tscore::describe(series(v));
  // the statistic always reproduces from its own moment fields
  const double jb =
      42.0 / 6.0 * (s.skewness * s.skewness + 0.25 * (s.kurtosis - 3.0) * (s.kurtosis - 3.0));
  CHECK(s.jarque_bera == doctest::Approx(jb).epsilon(1e-14));
  CHECK(s.jb_pvalue >= 0.0);
  CHECK(s.jb_pvalue <= 1.0);
  CHECK(s.stddev > 0.0);
}

TEST_CASE("describe on a symmetric two-point series has zero skewness") {
  const auto s = tscore::describe(series({-1, 1, -1, 1, -1, 1}));
  CHECK(s.skewness == doctest::Approx(0.0));
  CHECK(s.mean == doctest::Approx(0.0));
}

TEST_CASE("describe rejects degenerate input") {
  CHECK_THROWS_AS(tscore::describe(series({3, 3, 3, 3})), DegenerateError);
  CHECK_THROWS_AS(tscore::describe(series({1, 2, 3})), LengthError);
}

TEST_CASE("pearson correlation test") {
  std::mt19937_64 rng(7);
  std::normal_distribution<double> z;
  std::vector<double> xv(42), yv(42);
  for (int i = 0; i < 42; ++i) {
    xv[i] = z(rng);
    yv[i] = 0.5 * xv[i] + z(rng);
  }
  const auto x = series(xv);
  const auto y = series(yv);

  const auto self = tscore::pearson_corr_test(x, x);
  CHECK(self.r == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(self.pvalue == doctest::Approx(0.0));

  const auto xy = tscore::pearson_corr_test(x, y);
  const auto yx = tscore::pearson_corr_test(y, x);
  CHECK(xy.r == doctest::Approx(yx.r).epsilon(1e-14));
  CHECK(xy.pvalue == doctest::Approx(yx.pvalue).epsilon(1e-14));

  // invariant under positive affine maps
  auto y2 = y;
  y2.values = (3.0 * y.values.array() + 11.0).matrix();
  const auto aff = tscore::pearson_corr_test(x, y2);
  CHECK(aff.r == doctest::Approx(xy.r).epsilon(1e-12));
  CHECK(aff.pvalue == doctest::Approx(xy.pvalue).epsilon(1e-10));

  CHECK_THROWS_AS(tscore::pearson_corr_test(x, series(std::vector<double>(42, 1.0))),
                  DegenerateError);
}

TEST_CASE("dataset invariants") {
  auto a = series({1, 2, 3});
  auto b = series({4, 5, 6});
  b.name = "b";
  tscore::Dataset data({2000, 2001, 2002}, {a, b});
  CHECK(data.T() == 3);
  CHECK(data.has_column("b"));
  CHECK_THROWS_AS(data.column("zzz"), ConfigError);

  auto short_idx = series({1, 2});
  CHECK_THROWS_AS(tscore::Dataset({2000, 2001, 2002}, {a, short_idx}), IndexError);
}

TEST_SUITE_END();
