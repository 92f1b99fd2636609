// Generates src/coint_tables.cpp: quantiles of the asymptotic null
// distributions behind the cointegration p-values.
//
//  - tau: residual-based unit-root t statistic (shared by the ADF-type and
//    Z_t tests) for n = 2..5 system variables and const / const+trend /
//    const+trend^2 deterministics. Discretized at T steps, reps draws.
//  - Lc: parameter-instability statistic on scores of a regression with
//    m2 = 1..4 I(1) regressors plus deterministics.
//
// The 1/5/10% tau nodes are cross-checked in tests against the standard
// response-surface critical values; the Lc 5% node for m2 = 3 (const)
// reproduces the tabulated 0.83 region.

#include <Eigen/Dense>
#include <algorithm>
#include <cstdio>
#include <string>
#include <vector>

#include "svarkit/parallel.hpp"
#include "svarkit/rng.hpp"

namespace {

constexpr int kTauT = 1200;
constexpr int kTauReps = 200000;
constexpr int kLcT = 1000;
constexpr int kLcReps = 200000;

const std::vector<double> kTauLevels = {0.001, 0.005, 0.01, 0.025, 0.05, 0.075, 0.10,
                                        0.15,  0.20,  0.30, 0.40,  0.50, 0.60,  0.70,
                                        0.80,  0.90,  0.95, 0.99,  0.999};
// upper-tail probabilities, quantiles ascending
const std::vector<double> kLcUpper = {0.99, 0.95, 0.90, 0.80, 0.70, 0.60, 0.50, 0.40, 0.30,
                                      0.20, 0.15, 0.10, 0.075, 0.05, 0.025, 0.01, 0.005, 0.001};

Eigen::MatrixXd det_terms(int T, int det) {
  Eigen::MatrixXd D(T, 1 + det);
  D.col(0).setOnes();
  for (int t = 0; t < T; ++t) {
    const double x = static_cast<double>(t + 1) / T;
    if (det >= 1) D(t, 1) = x;
    if (det >= 2) D(t, 2) = x * x;
  }
  return D;
}

double tau_draw(int n, int det, std::mt19937_64& rng) {
  std::normal_distribution<double> z(0.0, 1.0);
  Eigen::MatrixXd Y(kTauT, n);
  for (int j = 0; j < n; ++j) {
    double acc = 0.0;
    for (int t = 0; t < kTauT; ++t) {
      acc += z(rng);
      Y(t, j) = acc;
    }
  }
  Eigen::MatrixXd D = det_terms(kTauT, det);
  Eigen::MatrixXd X(kTauT, n - 1 + D.cols());
  if (n > 1) X.leftCols(n - 1) = Y.rightCols(n - 1);
  X.rightCols(D.cols()) = D;
  Eigen::VectorXd u = Y.col(0) - X * (X.transpose() * X).ldlt().solve(X.transpose() * Y.col(0));

  const int N = kTauT - 1;
  Eigen::VectorXd du = u.tail(N) - u.head(N);
  Eigen::VectorXd ul = u.head(N);
  const double rho = ul.dot(du) / ul.squaredNorm();
  Eigen::VectorXd e = du - rho * ul;
  const double s2 = e.squaredNorm() / (N - 1);
  return rho / std::sqrt(s2 / ul.squaredNorm());
}

double lc_draw(int m2, int det, std::mt19937_64& rng) {
  std::normal_distribution<double> z(0.0, 1.0);
  Eigen::MatrixXd W(kLcT, m2);
  for (int j = 0; j < m2; ++j) {
    double acc = 0.0;
    for (int t = 0; t < kLcT; ++t) {
      acc += z(rng);
      W(t, j) = acc;
    }
  }
  Eigen::MatrixXd D = det_terms(kLcT, det);
  Eigen::MatrixXd Z(kLcT, m2 + D.cols());
  Z.leftCols(m2) = W;
  Z.rightCols(D.cols()) = D;
  Eigen::VectorXd u(kLcT);
  for (int t = 0; t < kLcT; ++t) u[t] = z(rng);

  Eigen::MatrixXd M = Z.transpose() * Z;
  Eigen::LDLT<Eigen::MatrixXd> solver(M);
  Eigen::VectorXd uhat = u - Z * solver.solve(Z.transpose() * u);

  const int m = static_cast<int>(Z.cols());
  Eigen::VectorXd S = Eigen::VectorXd::Zero(m);
  Eigen::MatrixXd SS = Eigen::MatrixXd::Zero(m, m);
  for (int t = 0; t < kLcT; ++t) {
    S += Z.row(t).transpose() * uhat[t];
    SS += S * S.transpose();
  }
  const double omega = uhat.squaredNorm() / kLcT;
  return solver.solve(SS).trace() / kLcT / omega;
}

std::vector<double> quantiles(std::vector<double>& draws, const std::vector<double>& probs) {
  std::sort(draws.begin(), draws.end());
  std::vector<double> out;
  const int n = static_cast<int>(draws.size());
  for (double p : probs) {
    const double pos = p * (n - 1);
    const int lo = static_cast<int>(pos);
    const int hi = std::min(lo + 1, n - 1);
    out.push_back(draws[lo] + (pos - lo) * (draws[hi] - draws[lo]));
  }
  return out;
}

void print_block(const char* indent, const std::vector<double>& v) {
  std::printf("%s{", indent);
  for (std::size_t i = 0; i < v.size(); ++i) {
    std::printf("%s%.4f", i ? ", " : "", v[i]);
  }
  std::printf("}");
}

}  // namespace

int main() {
  using svarkit::ExecMode;
  using svarkit::parallel_for;
  using svarkit::rng_stream;

  std::printf("// Generated by tools/table_gen.cpp -- do not edit by hand.\n");
  std::printf("// tau: T=%d, reps=%d; Lc: T=%d, reps=%d.\n", kTauT, kTauReps, kLcT, kLcReps);
  std::printf("#include \"coint_tables.hpp\"\n\n");
  std::printf("namespace svarkit::coint::tables {\n\n");

  std::printf("const double kTauLevels[kTauLevelCount] = ");
  print_block("", kTauLevels);
  std::printf(";\n\n");
  std::printf("const double kTauQuantiles[3][4][kTauLevelCount] = {\n");
  for (int det = 0; det <= 2; ++det) {
    std::printf("    {   // det=%d\n", det);
    for (int n = 2; n <= 5; ++n) {
      std::vector<double> draws(kTauReps);
      parallel_for(kTauReps, ExecMode::openmp, [&](std::size_t r) {
        auto rng = rng_stream(0x7a0 + det * 16 + n, r);
        draws[r] = tau_draw(n, det, rng);
      });
      auto q = quantiles(draws, kTauLevels);
      print_block("        ", q);
      std::printf(",  // n=%d\n", n);
      std::fflush(stdout);
    }
    std::printf("    },\n");
  }
  std::printf("};\n\n");

  std::printf("const double kLcUpperTail[kLcLevelCount] = ");
  print_block("", kLcUpper);
  std::printf(";\n\n");
  std::printf("const double kLcQuantiles[3][4][kLcLevelCount] = {\n");
  for (int det = 0; det <= 2; ++det) {
    std::printf("    {   // det=%d\n", det);
    for (int m2 = 1; m2 <= 4; ++m2) {
      std::vector<double> draws(kLcReps);
      parallel_for(kLcReps, ExecMode::openmp, [&](std::size_t r) {
        auto rng = rng_stream(0x1c0 + det * 16 + m2, r);
        draws[r] = lc_draw(m2, det, rng);
      });
      // ascending quantiles correspond to descending upper-tail probs
      std::vector<double> probs;
      for (double p : kLcUpper) probs.push_back(1.0 - p);
      auto q = quantiles(draws, probs);
      print_block("        ", q);
      std::printf(",  // m2=%d\n", m2);
      std::fflush(stdout);
    }
    std::printf("    },\n");
  }
  std::printf("};\n\n");
  std::printf("}  // namespace svarkit::coint::tables\n");
  return 0;
}
