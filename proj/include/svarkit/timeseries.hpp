#pragma once

// Time-series containers and the descriptive layer: named year-indexed
// columns, differencing, moment summaries and correlation tests.

#include <Eigen/Dense>
#include <string>
#include <vector>

namespace svarkit::tscore {

struct TimeSeries {
  std::string name;
  std::vector<int> index;  // years, strictly increasing
  Eigen::VectorXd values;  // same length as index, all finite

  int size() const { return static_cast<int>(index.size()); }
  void validate() const;  // throws IndexError / ParseError / LengthError
};

// Immutable bundle of columns sharing one index.
class Dataset {
 public:
  Dataset(std::vector<int> index, std::vector<TimeSeries> columns);

  const std::vector<int>& index() const { return index_; }
  int T() const { return static_cast<int>(index_.size()); }
  int n_columns() const { return static_cast<int>(columns_.size()); }

  bool has_column(const std::string& name) const;
  const TimeSeries& column(const std::string& name) const;
  const TimeSeries& column(int i) const { return columns_.at(i); }
  const std::vector<TimeSeries>& columns() const { return columns_; }
  std::vector<std::string> names() const;

  // T x names.size() matrix in the requested order
  Eigen::MatrixXd matrix(const std::vector<std::string>& names) const;
  Eigen::MatrixXd matrix() const;  // all columns, file order

 private:
  std::vector<int> index_;
  std::vector<TimeSeries> columns_;
};

TimeSeries difference(const TimeSeries& s, int order = 1);

struct StatsSummary {
  double mean = 0, median = 0, stddev = 0;
  double skewness = 0;   // divide-by-T moments
  double kurtosis = 0;   // non-excess, divide-by-T moments
  double jarque_bera = 0;
  double jb_pvalue = 0;
};

StatsSummary describe(const TimeSeries& s);

struct CorrTest {
  double r = 0;
  double pvalue = 1;
};

// Pearson correlation with two-sided t test on T-2 degrees of freedom.
CorrTest pearson_corr_test(const TimeSeries& x, const TimeSeries& y);

}  // namespace svarkit::tscore
