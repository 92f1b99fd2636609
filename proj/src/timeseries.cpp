#include "svarkit/timeseries.hpp"

#include <algorithm>
#include <cmath>

#include "svarkit/errors.hpp"
#include "svarkit/prob.hpp"

namespace svarkit::tscore {

void TimeSeries::validate() const {
  if (static_cast<int>(index.size()) != values.size()) {
    throw LengthError("series '" + name + "': index and values lengths differ");
  }
  for (std::size_t i = 1; i < index.size(); ++i) {
    if (index[i] <= index[i - 1]) {
      throw IndexError("series '" + name + "': index not strictly increasing at position " +
                       std::to_string(i));
    }
  }
  for (int i = 0; i < values.size(); ++i) {
    if (!std::isfinite(values[i])) {
      throw ParseError("series '" + name + "': non-finite value at position " +
                       std::to_string(i));
    }
  }
}

Dataset::Dataset(std::vector<int> index, std::vector<TimeSeries> columns)
    : index_(std::move(index)), columns_(std::move(columns)) {
  if (index_.size() < 2) throw LengthError("dataset needs at least 2 observations");
  for (auto& c : columns_) {
    if (c.index != index_) {
      throw IndexError("column '" + c.name + "' does not share the dataset index");
    }
    c.validate();
  }
}

bool Dataset::has_column(const std::string& name) const {
  return std::any_of(columns_.begin(), columns_.end(),
                     [&](const TimeSeries& c) { return c.name == name; });
}

const TimeSeries& Dataset::column(const std::string& name) const {
  for (const auto& c : columns_) {
    if (c.name == name) return c;
  }
  throw ConfigError("no column named '" + name + "'");
}

std::vector<std::string> Dataset::names() const {
  std::vector<std::string> out;
  out.reserve(columns_.size());
  for (const auto& c : columns_) out.push_back(c.name);
  return out;
}

Eigen::MatrixXd Dataset::matrix(const std::vector<std::string>& names) const {
  Eigen::MatrixXd m(T(), static_cast<int>(names.size()));
  for (std::size_t j = 0; j < names.size(); ++j) m.col(static_cast<int>(j)) = column(names[j]).values;
  return m;
}

Eigen::MatrixXd Dataset::matrix() const { return matrix(names()); }

TimeSeries difference(const TimeSeries& s, int order) {
  if (order <= 0) throw DomainError("difference: order must be positive");
  if (order >= s.size()) throw LengthError("difference: order >= series length");
  TimeSeries out;
  out.name = order == 1 ? "d" + s.name : "d" + std::to_string(order) + "_" + s.name;
  Eigen::VectorXd v = s.values;
  for (int k = 0; k < order; ++k) {
    v = (v.tail(v.size() - 1) - v.head(v.size() - 1)).eval();
  }
  out.values = v;
  out.index.assign(s.index.begin() + order, s.index.end());
  return out;
}

StatsSummary describe(const TimeSeries& s) {
  const int T = s.size();
  if (T < 4) throw LengthError("describe: need at least 4 observations");

  StatsSummary r;
  r.mean = s.values.mean();
  Eigen::VectorXd c = s.values.array() - r.mean;

  std::vector<double> sorted(s.values.data(), s.values.data() + T);
  std::sort(sorted.begin(), sorted.end());
  r.median = (T % 2 == 1) ? sorted[T / 2] : 0.5 * (sorted[T / 2 - 1] + sorted[T / 2]);

  const double m2 = c.squaredNorm() / T;
  if (m2 <= 0.0) throw DegenerateError("describe: zero variance");
  const double m3 = c.array().cube().sum() / T;
  const double m4 = c.array().pow(4).sum() / T;

  r.stddev = std::sqrt(c.squaredNorm() / (T - 1));  // tabulated as sample std. dev.
  r.skewness = m3 / std::pow(m2, 1.5);
  r.kurtosis = m4 / (m2 * m2);
  r.jarque_bera =
      T / 6.0 * (r.skewness * r.skewness + 0.25 * std::pow(r.kurtosis - 3.0, 2.0));
  r.jb_pvalue = prob::chi2_sf(r.jarque_bera, 2.0);
  return r;
}

CorrTest pearson_corr_test(const TimeSeries& x, const TimeSeries& y) {
  if (x.index != y.index) throw IndexError("pearson_corr_test: series must share an index");
  const int T = x.size();
  if (T < 3) throw LengthError("pearson_corr_test: need at least 3 observations");

  Eigen::VectorXd cx = x.values.array() - x.values.mean();
  Eigen::VectorXd cy = y.values.array() - y.values.mean();
  const double sx = cx.squaredNorm();
  const double sy = cy.squaredNorm();
  if (sx <= 0.0 || sy <= 0.0) throw DegenerateError("pearson_corr_test: constant input");

  CorrTest out;
  out.r = cx.dot(cy) / std::sqrt(sx * sy);
  const double r2 = std::min(out.r * out.r, 1.0);
  if (r2 >= 1.0) {
    out.pvalue = 0.0;
    return out;
  }
  const double t = out.r * std::sqrt((T - 2) / (1.0 - r2));
  out.pvalue = prob::student_t_two_sided(t, T - 2);
  return out;
}

}  // namespace svarkit::tscore
