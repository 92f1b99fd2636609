#pragma once

// Quantile grids for the cointegration p-values. Data lives in
// coint_tables.cpp, produced by tools/table_gen.cpp from large-sample
// simulation of the asymptotic null functionals.

namespace svarkit::coint::tables {

inline constexpr int kTauLevelCount = 19;
inline constexpr int kLcLevelCount = 18;

// cumulative (left tail) probabilities, ascending
extern const double kTauLevels[kTauLevelCount];
// [deterministic 0..2][n-2 for n=2..5][level], quantiles ascending
extern const double kTauQuantiles[3][4][kTauLevelCount];

// upper-tail probabilities, descending (quantiles ascending)
extern const double kLcUpperTail[kLcLevelCount];
// [deterministic 0..2][m2-1 for m2=1..4][level]
extern const double kLcQuantiles[3][4][kLcLevelCount];

}  // namespace svarkit::coint::tables
