#pragma once

// Config-driven replication runner: CSV in, full battery out (descriptive
// tables, stationarity tests, cointegration, VAR diagnostics, AB-model
// estimates, impulse responses, variance decomposition), plus the
// synthetic-data generator and the additive-outlier screen.

#include <json.hpp>
#include <optional>
#include <string>
#include <vector>

#include "svarkit/coint.hpp"
#include "svarkit/dynamics.hpp"
#include "svarkit/hac.hpp"
#include "svarkit/svar.hpp"
#include "svarkit/timeseries.hpp"
#include "svarkit/unitroot.hpp"

namespace svarkit::pipeline {

enum class Transform { none, log, diff, logdiff };

struct VariableSpec {
  std::string name;
  Transform transform = Transform::none;
};

struct OutlierConfig {
  bool enabled = false;
  double threshold = 3.5;
};

struct DynamicsConfig {
  int h = 10;
  int reps = 500;
  std::uint64_t seed = 1;
  double multiplier = 2.0;
};

struct PipelineConfig {
  std::string input_path;
  std::string index_col;
  std::vector<VariableSpec> variables;  // order fixes shock/response ordering
  std::vector<unitroot::KpssSpec> kpss_specs{unitroot::KpssSpec::level,
                                             unitroot::KpssSpec::trend};
  // classical truncation-lag default; the automatic quadratic-spectral
  // bandwidth is a config option
  hac::KernelSpec kpss_kernel = hac::KernelSpec::kpss_bartlett(4);
  coint::CcrSpec ccr;
  int var_p = 1;        // fixed lag order; ignored when var_p_max is set
  std::optional<int> var_p_max;  // automatic selection by BIC up to p_max
  std::vector<std::string> svar_a_rows, svar_b_rows;
  DynamicsConfig dynamics;
  OutlierConfig outliers;
  std::string output_dir = "out";

  static PipelineConfig from_json(const nlohmann::json& j);
  static PipelineConfig from_file(const std::string& path);
  nlohmann::json to_json() const;  // config echo
  void validate() const;           // throws ConfigError
};

struct StageRecord {
  std::string name;
  std::string status;  // "ok", "error", "skipped"
  std::string detail;  // error text or skip reason
  double seconds = 0.0;
  nlohmann::json artifact;
};

struct RunReport {
  std::string version;
  nlohmann::json config_echo;
  std::vector<StageRecord> stages;
  bool ok = true;

  // timings live under one top-level key so they can be stripped when
  // comparing runs byte for byte
  nlohmann::json to_json(bool include_timings = true) const;
};

// Additive-outlier screen: iteratively flags the largest robust z-score of
// the AR(1) residuals and replaces the point with its one-step prediction.
struct OutlierResult {
  tscore::TimeSeries linearized;
  std::vector<int> dummy_dates;
};

OutlierResult detect_outliers(const tscore::TimeSeries& s, double threshold = 3.5);

RunReport run_pipeline(const PipelineConfig& config);

enum class DgpKind { recursive, paper_system11, custom };

struct CustomDgp {
  Eigen::MatrixXd A, B, A1;
};

// Simulates Y_t = A1 Y_{t-1} + A^{-1} B u_t with standard-normal shocks and
// a 200-observation burn-in. paper_system11 uses the published system
// coefficients.
tscore::Dataset synth_generate(DgpKind dgp, int T, std::uint64_t seed,
                               const CustomDgp* custom = nullptr);

inline constexpr const char* kVersion = "0.1.0";
inline constexpr const char* kOutputDirEnv = "SVARKIT_OUTPUT_DIR";

}  // namespace svarkit::pipeline
