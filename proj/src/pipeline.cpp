#include "svarkit/pipeline.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>

#include "svarkit/csv.hpp"
#include "svarkit/errors.hpp"
#include "svarkit/plots.hpp"
#include "svarkit/presets.hpp"
#include "svarkit/rng.hpp"
#include "svarkit/varkit.hpp"

namespace svarkit::pipeline {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

// ---------------------------------------------------------------------------
// config
// ---------------------------------------------------------------------------

Transform transform_from_string(const std::string& s) {
  if (s == "none") return Transform::none;
  if (s == "log") return Transform::log;
  if (s == "diff") return Transform::diff;
  if (s == "logdiff") return Transform::logdiff;
  throw ConfigError("unknown transform '" + s + "'");
}

std::string transform_to_string(Transform t) {
  switch (t) {
    case Transform::none: return "none";
    case Transform::log: return "log";
    case Transform::diff: return "diff";
    case Transform::logdiff: return "logdiff";
  }
  return "none";
}

hac::KernelSpec kernel_from_json(const json& j) {
  hac::KernelSpec k;
  const std::string kind = j.value("kind", "quadratic_spectral");
  if (kind == "quadratic_spectral") {
    k.kind = hac::KernelKind::quadratic_spectral;
  } else if (kind == "bartlett") {
    k.kind = hac::KernelKind::bartlett;
  } else if (kind == "truncated") {
    k.kind = hac::KernelKind::truncated;
  } else {
    throw ConfigError("unknown kernel '" + kind + "'");
  }
  if (!j.contains("bandwidth") || j["bandwidth"] == "auto") {
    k.auto_bandwidth = true;
  } else {
    k.auto_bandwidth = false;
    k.fixed_bandwidth = j["bandwidth"].get<double>();
    if (!(k.fixed_bandwidth >= 0.0)) throw ConfigError("bandwidth must be >= 0");
  }
  return k;
}

json kernel_to_json(const hac::KernelSpec& k) {
  json j;
  switch (k.kind) {
    case hac::KernelKind::quadratic_spectral: j["kind"] = "quadratic_spectral"; break;
    case hac::KernelKind::bartlett: j["kind"] = "bartlett"; break;
    case hac::KernelKind::truncated: j["kind"] = "truncated"; break;
  }
  if (k.auto_bandwidth) {
    j["bandwidth"] = "auto";
  } else {
    j["bandwidth"] = k.fixed_bandwidth;
  }
  return j;
}

coint::Deterministic det_from_string(const std::string& s) {
  if (s == "const") return coint::Deterministic::constant;
  if (s == "const+trend") return coint::Deterministic::constant_trend;
  if (s == "const+trend+trend2") return coint::Deterministic::constant_trend2;
  throw ConfigError("unknown deterministic spec '" + s + "'");
}

std::string det_to_string(coint::Deterministic d) {
  switch (d) {
    case coint::Deterministic::constant: return "const";
    case coint::Deterministic::constant_trend: return "const+trend";
    case coint::Deterministic::constant_trend2: return "const+trend+trend2";
  }
  return "const";
}

json mat_to_json(const Eigen::MatrixXd& m) {
  json rows = json::array();
  for (int i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (int j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

json vec_to_json(const Eigen::VectorXd& v) {
  json out = json::array();
  for (int i = 0; i < v.size(); ++i) out.push_back(v[i]);
  return out;
}

std::string fmt(double x) { return tscore::format_double(x); }

// ---------------------------------------------------------------------------
// stage plumbing
// ---------------------------------------------------------------------------

struct StageRunner {
  RunReport& report;
  bool halted = false;

  template <class Fn>
  void run(const std::string& name, Fn&& fn) {
    if (halted) {
      StageRecord rec;
      rec.name = name;
      rec.status = "skipped";
      rec.detail = "earlier stage failed";
      report.stages.push_back(std::move(rec));
      return;
    }
    StageRecord rec;
    rec.name = name;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      rec.artifact = fn();
      rec.status = "ok";
    } catch (const Error& e) {
      rec.status = "error";
      rec.detail = e.what();
      report.ok = false;
      halted = true;
    }
    rec.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    report.stages.push_back(std::move(rec));
  }
};

std::string kpss_spec_letters(unitroot::KpssSpec s) {
  return s == unitroot::KpssSpec::level ? "C" : "C,T";
}

json kpss_row(const std::string& series, const unitroot::KpssResult& r) {
  json j;
  j["series"] = series;
  j["spec"] = kpss_spec_letters(r.spec);
  j["statistic"] = r.statistic;
  j["bandwidth"] = r.bandwidth_used;
  j["hac_variance"] = r.lrv.scalar();
  j["reject_5pct"] = r.decision_5pct == unitroot::KpssDecision::reject_stationarity;
  return j;
}

json coint_result_json(const coint::CointTestResult& r, const std::string& name) {
  json j;
  j["test"] = name;
  j["statistic"] = r.statistic;
  j["pvalue"] = r.pvalue;
  j["null"] = r.null_hypothesis == coint::CointNull::cointegration ? "cointegration"
                                                                   : "no_cointegration";
  j["pvalue_clamped"] = r.pvalue_clamped;
  return j;
}

}  // namespace

// ---------------------------------------------------------------------------
// PipelineConfig
// ---------------------------------------------------------------------------

PipelineConfig PipelineConfig::from_json(const json& j) {
  PipelineConfig c;
  const json& in = j.at("input");
  c.input_path = in.at("path").get<std::string>();
  c.index_col = in.at("index_col").get<std::string>();

  for (const auto& v : j.at("variables")) {
    VariableSpec vs;
    vs.name = v.at("name").get<std::string>();
    vs.transform = transform_from_string(v.value("transform", "none"));
    c.variables.push_back(std::move(vs));
  }

  if (j.contains("kpss")) {
    const json& k = j["kpss"];
    if (k.contains("specs")) {
      c.kpss_specs.clear();
      for (const auto& s : k["specs"]) {
        const std::string name = s.get<std::string>();
        if (name == "level") {
          c.kpss_specs.push_back(unitroot::KpssSpec::level);
        } else if (name == "trend") {
          c.kpss_specs.push_back(unitroot::KpssSpec::trend);
        } else {
          throw ConfigError("unknown kpss spec '" + name + "'");
        }
      }
    }
    if (k.contains("kernel")) c.kpss_kernel = kernel_from_json(k["kernel"]);
  }

  if (j.contains("ccr")) {
    const json& cc = j["ccr"];
    c.ccr.y = cc.at("y").get<std::string>();
    for (const auto& x : cc.at("x")) c.ccr.x.push_back(x.get<std::string>());
    c.ccr.det = det_from_string(cc.value("deterministic", "const"));
    if (cc.contains("kernel")) c.ccr.kernel = kernel_from_json(cc["kernel"]);
    c.ccr.prewhiten = cc.value("prewhiten", true);
  }

  if (j.contains("var")) {
    const json& v = j["var"];
    if (v.contains("auto")) {
      c.var_p_max = v["auto"].at("p_max").get<int>();
    } else {
      c.var_p = v.value("p", 1);
    }
  }

  if (j.contains("svar")) {
    for (const auto& r : j["svar"].at("A")) c.svar_a_rows.push_back(r.get<std::string>());
    for (const auto& r : j["svar"].at("B")) c.svar_b_rows.push_back(r.get<std::string>());
  }

  if (j.contains("dynamics")) {
    const json& d = j["dynamics"];
    c.dynamics.h = d.value("h", 10);
    c.dynamics.reps = d.value("reps", 500);
    c.dynamics.seed = d.value("seed", std::uint64_t{1});
    c.dynamics.multiplier = d.value("multiplier", 2.0);
  }

  if (j.contains("outliers")) {
    const json& o = j["outliers"];
    const std::string mode = o.value("mode", "off");
    if (mode == "additive") {
      c.outliers.enabled = true;
      c.outliers.threshold = o.value("threshold", 3.5);
    } else if (mode != "off") {
      throw ConfigError("unknown outlier mode '" + mode + "'");
    }
  }

  c.output_dir = j.value("output_dir", "out");
  c.validate();
  return c;
}

PipelineConfig PipelineConfig::from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config '" + path + "'");
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config parse failure: ") + e.what());
  }
  return from_json(j);
}

json PipelineConfig::to_json() const {
  json j;
  j["input"] = {{"path", input_path}, {"index_col", index_col}};
  json vars = json::array();
  for (const auto& v : variables) {
    vars.push_back({{"name", v.name}, {"transform", transform_to_string(v.transform)}});
  }
  j["variables"] = std::move(vars);
  json specs = json::array();
  for (auto s : kpss_specs) specs.push_back(s == unitroot::KpssSpec::level ? "level" : "trend");
  j["kpss"] = {{"specs", std::move(specs)}, {"kernel", kernel_to_json(kpss_kernel)}};
  if (!ccr.y.empty()) {
    j["ccr"] = {{"y", ccr.y},
                {"x", ccr.x},
                {"deterministic", det_to_string(ccr.det)},
                {"kernel", kernel_to_json(ccr.kernel)},
                {"prewhiten", ccr.prewhiten}};
  }
  if (var_p_max) {
    j["var"] = {{"auto", {{"p_max", *var_p_max}}}};
  } else {
    j["var"] = {{"p", var_p}};
  }
  if (!svar_a_rows.empty()) j["svar"] = {{"A", svar_a_rows}, {"B", svar_b_rows}};
  j["dynamics"] = {{"h", dynamics.h},
                   {"reps", dynamics.reps},
                   {"seed", dynamics.seed},
                   {"multiplier", dynamics.multiplier}};
  j["outliers"] = outliers.enabled
                      ? json{{"mode", "additive"}, {"threshold", outliers.threshold}}
                      : json{{"mode", "off"}};
  j["output_dir"] = output_dir;
  return j;
}

void PipelineConfig::validate() const {
  if (input_path.empty()) throw ConfigError("config: input.path is required");
  if (index_col.empty()) throw ConfigError("config: input.index_col is required");
  if (variables.empty()) throw ConfigError("config: at least one variable is required");
  if (!var_p_max && var_p < 1) throw ConfigError("config: var.p must be >= 1");
  if (var_p_max && *var_p_max < 1) throw ConfigError("config: var.auto.p_max must be >= 1");
  if (svar_a_rows.size() != svar_b_rows.size()) {
    throw ConfigError("config: svar.A and svar.B need the same number of rows");
  }
  if (!svar_a_rows.empty() && svar_a_rows.size() != variables.size()) {
    throw ConfigError("config: svar pattern size must match the variable count");
  }
  if (dynamics.h < 1) throw ConfigError("config: dynamics.h must be >= 1");
  if (dynamics.reps < 100) throw ConfigError("config: dynamics.reps must be >= 100");
  if (outliers.enabled && !(outliers.threshold > 0.0)) {
    throw ConfigError("config: outliers.threshold must be positive");
  }
}

// ---------------------------------------------------------------------------
// outlier screen
// ---------------------------------------------------------------------------

OutlierResult detect_outliers(const tscore::TimeSeries& s, double threshold) {
  const int T = s.size();
  if (T < 12) throw LengthError("detect_outliers: need at least 12 observations");
  if (!(threshold > 0.0)) throw ConfigError("detect_outliers: threshold must be positive");

  Eigen::VectorXd y = s.values;
  std::vector<int> flagged;
  const int max_flags = T / 5;  // refuse beyond 20%

  for (int round = 0; round <= max_flags; ++round) {
    // AR(1) with intercept
    Eigen::MatrixXd X(T - 1, 2);
    X.col(0).setOnes();
    X.col(1) = y.head(T - 1);
    Eigen::VectorXd target = y.tail(T - 1);
    const double lag_var = (X.col(1).array() - X.col(1).mean()).square().sum();
    if (lag_var <= 1e-12 * T) throw DegenerateError("detect_outliers: constant series");
    Eigen::VectorXd coef = (X.transpose() * X).ldlt().solve(X.transpose() * target);
    Eigen::VectorXd resid = target - X * coef;

    // robust z via median / MAD
    std::vector<double> sorted(resid.data(), resid.data() + resid.size());
    std::sort(sorted.begin(), sorted.end());
    const int n = static_cast<int>(sorted.size());
    const double med = (n % 2 == 1) ? sorted[n / 2] : 0.5 * (sorted[n / 2 - 1] + sorted[n / 2]);
    std::vector<double> dev(n);
    for (int i = 0; i < n; ++i) dev[i] = std::fabs(resid[i] - med);
    std::sort(dev.begin(), dev.end());
    const double mad = (n % 2 == 1) ? dev[n / 2] : 0.5 * (dev[n / 2 - 1] + dev[n / 2]);
    if (mad <= 0.0) throw DegenerateError("detect_outliers: zero residual spread");
    const double scale = 1.4826 * mad;

    int worst = -1;
    double worst_z = threshold;
    for (int i = 0; i < n; ++i) {
      const double z = std::fabs(resid[i] - med) / scale;
      if (z > worst_z) {
        worst_z = z;
        worst = i;
      }
    }
    if (worst < 0) break;  // nothing above the threshold

    if (static_cast<int>(flagged.size()) >= max_flags) {
      throw OutlierError("detect_outliers: more than 20% of points flagged");
    }
    const int t = worst + 1;  // residual i corresponds to observation i+1
    y[t] = coef[0] + coef[1] * y[t - 1];
    flagged.push_back(s.index[t]);
  }

  OutlierResult out;
  out.linearized = s;
  out.linearized.values = y;
  std::sort(flagged.begin(), flagged.end());
  out.dummy_dates = std::move(flagged);
  return out;
}

// ---------------------------------------------------------------------------
// synthetic data
// ---------------------------------------------------------------------------

tscore::Dataset synth_generate(DgpKind dgp, int T, std::uint64_t seed,
                               const CustomDgp* custom) {
  if (T < 50) throw LengthError("synth_generate: need T >= 50");

  Eigen::MatrixXd A, B, A1;
  std::vector<std::string> names;
  switch (dgp) {
    case DgpKind::recursive:
      A = presets::recursive_a();
      B = presets::recursive_b();
      A1 = presets::recursive_a1();
      names = {"y1", "y2", "y3", "y4"};
      break;
    case DgpKind::paper_system11:
      A = presets::system11_a();
      B = presets::system11_b();
      A1 = presets::system11_a1();
      names = {"dcay", "ds_adr", "dns_adr", "dg_gdp"};
      break;
    case DgpKind::custom:
      if (!custom) throw ConfigError("synth_generate: custom DGP needs matrices");
      A = custom->A;
      B = custom->B;
      A1 = custom->A1;
      for (int k = 0; k < A.rows(); ++k) names.push_back("y" + std::to_string(k + 1));
      break;
  }

  const int K = static_cast<int>(A.rows());
  const double rho = A1.eigenvalues().cwiseAbs().maxCoeff();
  if (rho >= 1.0) throw StabilityError("synth_generate: lag matrix is not stable");
  Eigen::MatrixXd impact = A.partialPivLu().solve(B);

  constexpr int kBurnIn = 200;
  auto rng = rng_stream(seed, 0);
  std::normal_distribution<double> normal(0.0, 1.0);

  Eigen::VectorXd y = Eigen::VectorXd::Zero(K);
  Eigen::MatrixXd out(T, K);
  for (int t = 0; t < kBurnIn + T; ++t) {
    Eigen::VectorXd u(K);
    for (int k = 0; k < K; ++k) u[k] = normal(rng);
    y = A1 * y + impact * u;
    if (t >= kBurnIn) out.row(t - kBurnIn) = y.transpose();
  }

  std::vector<int> index(T);
  for (int t = 0; t < T; ++t) index[t] = t + 1;
  std::vector<tscore::TimeSeries> cols;
  for (int k = 0; k < K; ++k) {
    tscore::TimeSeries ts;
    ts.name = names[k];
    ts.index = index;
    ts.values = out.col(k);
    cols.push_back(std::move(ts));
  }
  return tscore::Dataset(index, std::move(cols));
}

// ---------------------------------------------------------------------------
// report
// ---------------------------------------------------------------------------

json RunReport::to_json(bool include_timings) const {
  json j;
  j["toolkit_version"] = version;
  j["config"] = config_echo;
  j["ok"] = ok;
  json stages_json = json::array();
  json timings;
  for (const auto& s : stages) {
    json sj;
    sj["name"] = s.name;
    sj["status"] = s.status;
    if (!s.detail.empty()) sj["detail"] = s.detail;
    if (!s.artifact.is_null()) sj["artifact"] = s.artifact;
    stages_json.push_back(std::move(sj));
    timings[s.name] = s.seconds;
  }
  j["stages"] = std::move(stages_json);
  if (include_timings) j["timings"] = std::move(timings);
  return j;
}

// ---------------------------------------------------------------------------
// run_pipeline
// ---------------------------------------------------------------------------

RunReport run_pipeline(const PipelineConfig& config_in) {
  PipelineConfig config = config_in;
  if (const char* env = std::getenv(kOutputDirEnv); env && *env) {
    config.output_dir = env;
  }
  config.validate();

  RunReport report;
  report.version = kVersion;
  report.config_echo = config.to_json();

  const fs::path out_dir(config.output_dir);
  const fs::path tables_dir = out_dir / "tables";
  const fs::path plots_dir = out_dir / "plots";
  fs::create_directories(tables_dir);
  fs::create_directories(plots_dir);

  StageRunner runner{report};

  std::optional<tscore::Dataset> raw;
  std::optional<tscore::Dataset> working;  // transformed (and linearized) variables
  std::optional<varkit::VarFit> var;
  std::optional<svar::SvarFit> sfit;
  std::vector<std::string> shock_labels;

  runner.run("load", [&]() -> json {
    raw.emplace(tscore::load_csv(config.input_path, config.index_col));
    for (const auto& v : config.variables) {
      if (!raw->has_column(v.name)) throw ConfigError("input has no column '" + v.name + "'");
    }
    json j;
    j["T"] = raw->T();
    j["columns"] = raw->names();
    return j;
  });

  runner.run("describe", [&]() -> json {
    json stats;
    tscore::CsvTable table;
    table.header = {"statistic"};
    std::vector<std::vector<std::string>> rows(7);
    const char* row_names[7] = {"mean",     "median",  "stddev",    "skewness",
                                "kurtosis", "jarque_bera", "jb_pvalue"};
    for (int r = 0; r < 7; ++r) rows[r].push_back(row_names[r]);
    for (const auto& v : config.variables) {
      const auto s = tscore::describe(raw->column(v.name));
      json js;
      js["mean"] = s.mean;
      js["median"] = s.median;
      js["stddev"] = s.stddev;
      js["skewness"] = s.skewness;
      js["kurtosis"] = s.kurtosis;
      js["jarque_bera"] = s.jarque_bera;
      js["jb_pvalue"] = s.jb_pvalue;
      stats[v.name] = std::move(js);
      table.header.push_back(v.name);
      const double vals[7] = {s.mean,     s.median,      s.stddev, s.skewness,
                              s.kurtosis, s.jarque_bera, s.jb_pvalue};
      for (int r = 0; r < 7; ++r) rows[r].push_back(fmt(vals[r]));
    }
    table.rows = std::move(rows);
    tscore::write_csv((tables_dir / "descriptive_stats.csv").string(), table);

    // lower-triangular correlations with p-values in parentheses
    json corr;
    tscore::CsvTable ct;
    ct.header.push_back("");
    for (const auto& v : config.variables) ct.header.push_back(v.name);
    for (std::size_t i = 0; i < config.variables.size(); ++i) {
      std::vector<std::string> row{config.variables[i].name};
      for (std::size_t j = 0; j < config.variables.size(); ++j) {
        if (j > i) {
          row.push_back("");
          continue;
        }
        if (j == i) {
          row.push_back("1");
          continue;
        }
        const auto r = tscore::pearson_corr_test(raw->column(config.variables[i].name),
                                                 raw->column(config.variables[j].name));
        row.push_back(fmt(r.r) + " (" + fmt(r.pvalue) + ")");
        corr[config.variables[i].name + "/" + config.variables[j].name] = {
            {"r", r.r}, {"pvalue", r.pvalue}};
      }
      ct.rows.push_back(std::move(row));
    }
    tscore::write_csv((tables_dir / "correlations.csv").string(), ct);

    json j;
    j["stats"] = std::move(stats);
    j["correlations"] = std::move(corr);
    return j;
  });

  runner.run("transforms", [&]() -> json {
    std::vector<tscore::TimeSeries> cols;
    for (const auto& v : config.variables) {
      tscore::TimeSeries s = raw->column(v.name);
      if (v.transform == Transform::log || v.transform == Transform::logdiff) {
        if ((s.values.array() <= 0.0).any()) {
          throw DomainError("log transform of non-positive series '" + v.name + "'");
        }
        s.values = s.values.array().log();
        s.name = "log_" + s.name;
      }
      if (v.transform == Transform::diff || v.transform == Transform::logdiff) {
        s = tscore::difference(s, 1);
      }
      cols.push_back(std::move(s));
    }
    // align on the common (latest-starting) index
    std::size_t shortest = 0;
    for (std::size_t i = 1; i < cols.size(); ++i) {
      if (cols[i].index.size() < cols[shortest].index.size()) shortest = i;
    }
    const std::vector<int> index = cols[shortest].index;
    for (auto& c : cols) {
      const int drop = static_cast<int>(c.index.size() - index.size());
      if (drop > 0) {
        c.values = c.values.tail(c.values.size() - drop).eval();
        c.index.erase(c.index.begin(), c.index.begin() + drop);
      }
    }
    working.emplace(index, std::move(cols));
    json j;
    j["T"] = working->T();
    j["columns"] = working->names();
    return j;
  });

  runner.run("outliers", [&]() -> json {
    json j;
    if (!config.outliers.enabled) {
      j["mode"] = "off";
      return j;
    }
    std::vector<tscore::TimeSeries> cols;
    json dates;
    for (const auto& c : working->columns()) {
      OutlierResult r = detect_outliers(c, config.outliers.threshold);
      dates[c.name] = r.dummy_dates;
      cols.push_back(std::move(r.linearized));
    }
    working.emplace(working->index(), std::move(cols));
    j["mode"] = "additive";
    j["threshold"] = config.outliers.threshold;
    j["dummy_dates"] = std::move(dates);
    return j;
  });

  runner.run("kpss", [&]() -> json {
    json rows = json::array();
    tscore::CsvTable table;
    table.header = {"series", "spec", "statistic", "bandwidth", "hac_variance",
                    "reject_5pct"};
    auto add = [&](const std::string& name, const unitroot::KpssResult& r) {
      rows.push_back(kpss_row(name, r));
      table.rows.push_back({name, kpss_spec_letters(r.spec), fmt(r.statistic),
                            fmt(r.bandwidth_used), fmt(r.lrv.scalar()),
                            r.decision_5pct == unitroot::KpssDecision::reject_stationarity
                                ? "yes"
                                : "no"});
    };
    for (const auto& v : config.variables) {
      for (auto spec : config.kpss_specs) {
        const auto proto =
            unitroot::kpss_difference_protocol(raw->column(v.name), spec, config.kpss_kernel);
        add(v.name, proto.levels);
        add("d" + v.name, proto.diffs);
        json last;
        switch (proto.order) {
          case unitroot::IntegrationOrder::I0: last = "I0"; break;
          case unitroot::IntegrationOrder::I1: last = "I1"; break;
          default: last = "inconclusive";
        }
        rows.back()["order_of_integration"] = last;
      }
    }
    tscore::write_csv((tables_dir / "kpss.csv").string(), table);
    json j;
    j["rows"] = std::move(rows);
    return j;
  });

  runner.run("cointegration", [&]() -> json {
    json j;
    if (config.ccr.y.empty()) {
      j["skipped"] = "no ccr block in the config";
      return j;
    }
    coint::CcrFit fit = coint::ccr_fit(*raw, config.ccr);
    json fj;
    fj["beta"] = vec_to_json(fit.beta);
    fj["gamma1"] = vec_to_json(fit.gamma1);
    fj["se"] = vec_to_json(fit.se);
    fj["pvalues"] = vec_to_json(fit.pvalues);
    fj["sigma"] = mat_to_json(fit.sigma);
    fj["omega"] = mat_to_json(fit.omega);
    fj["bandwidth"] = fit.bandwidth_used;
    fj["names"] = fit.names;
    // one-line equation with p-values beneath each coefficient
    {
      const int m = static_cast<int>(fit.beta.size());
      std::string eq = fit.names[0] + "* = " + fmt(fit.gamma1[0]);
      std::string ps = "(" + fmt(fit.pvalues[m]) + ")";
      for (int i = 0; i < m; ++i) {
        eq += (fit.beta[i] < 0 ? " - " : " + ") + fmt(std::fabs(fit.beta[i])) + " " +
              fit.names[i + 1] + "*";
        ps += " (" + fmt(fit.pvalues[i]) + ")";
      }
      fj["equation"] = eq;
      fj["equation_pvalues"] = ps;
    }
    j["ccr"] = std::move(fj);

    json tests = json::array();
    tests.push_back(coint_result_json(coint::hansen_lc_test(fit), "hansen_lc"));
    tests.push_back(coint_result_json(
        coint::park_variable_addition_test(*raw, config.ccr), "park_chi2"));
    tests.push_back(coint_result_json(coint::engle_granger_test(*raw, config.ccr),
                                      "engle_granger"));
    tests.push_back(coint_result_json(coint::phillips_ouliaris_test(*raw, config.ccr),
                                      "phillips_ouliaris"));
    j["tests"] = tests;

    tscore::CsvTable table;
    table.header = {"test", "statistic", "pvalue", "null"};
    for (const auto& t : tests) {
      table.rows.push_back({t["test"].get<std::string>(), fmt(t["statistic"].get<double>()),
                            fmt(t["pvalue"].get<double>()), t["null"].get<std::string>()});
    }
    tscore::write_csv((tables_dir / "cointegration.csv").string(), table);

    tscore::CsvTable cc;
    cc.header = {"term", "estimate", "se", "pvalue"};
    for (int i = 0; i < fit.beta.size(); ++i) {
      cc.rows.push_back({fit.names[i + 1], fmt(fit.beta[i]), fmt(fit.se[i]),
                         fmt(fit.pvalues[i])});
    }
    const int d = coint::deterministic_terms(fit.det);
    const char* det_names[3] = {"const", "trend", "trend2"};
    for (int i = 0; i < d; ++i) {
      const int k = static_cast<int>(fit.beta.size()) + i;
      cc.rows.push_back({det_names[i], fmt(fit.gamma1[i]), fmt(fit.se[k]), fmt(fit.pvalues[k])});
    }
    tscore::write_csv((tables_dir / "ccr.csv").string(), cc);
    return j;
  });

  runner.run("lag_selection", [&]() -> json {
    json j;
    if (!config.var_p_max) {
      j["skipped"] = "fixed lag order configured";
      j["p"] = config.var_p;
      return j;
    }
    const auto sel = varkit::select_lag(*working, *config.var_p_max);
    j["aic"] = sel.aic;
    j["bic"] = sel.bic;
    j["hq"] = sel.hq;
    config.var_p = std::max(1, sel.bic);
    j["p"] = config.var_p;
    tscore::CsvTable table;
    table.header = {"p", "aic", "bic", "hq"};
    for (std::size_t p = 0; p < sel.aic_values.size(); ++p) {
      table.rows.push_back({std::to_string(p), fmt(sel.aic_values[p]), fmt(sel.bic_values[p]),
                            fmt(sel.hq_values[p])});
    }
    tscore::write_csv((tables_dir / "lag_selection.csv").string(), table);
    return j;
  });

  runner.run("var", [&]() -> json {
    var.emplace(varkit::var_fit(*working, config.var_p));
    const int h = std::min(var->p + 5, var->T_eff / 3);
    const auto diag = varkit::diagnostics(*var, h);

    json j;
    j["p"] = var->p;
    j["T_eff"] = var->T_eff;
    j["intercept"] = vec_to_json(var->intercept);
    json lags = json::array();
    for (const auto& a : var->A) lags.push_back(mat_to_json(a));
    j["lag_matrices"] = std::move(lags);
    j["omega_eps"] = mat_to_json(var->omega_eps);
    j["loglik"] = var->loglik;
    j["portmanteau"] = {{"h", h},
                        {"Q", diag.portmanteau.Q},
                        {"df", diag.portmanteau.df},
                        {"pvalue", diag.portmanteau.pvalue}};
    j["brown_forsythe"] = {{"statistic", diag.brown_forsythe.statistic},
                           {"pvalue", diag.brown_forsythe.pvalue}};
    j["lr_diag"] = {{"statistic", diag.lr_diag.statistic},
                    {"df", diag.lr_diag.df},
                    {"pvalue", diag.lr_diag.pvalue}};
    j["lm_diag"] = {{"statistic", diag.lm_diag.statistic},
                    {"df", diag.lm_diag.df},
                    {"pvalue", diag.lm_diag.pvalue}};
    j["stability_moduli"] = vec_to_json(diag.stability_moduli);

    // residual correlation / covariance in the upper-triangular layout
    Eigen::VectorXd sd = var->omega_eps.diagonal().cwiseSqrt();
    auto upper_table = [&](const Eigen::MatrixXd& m, const std::string& path) {
      tscore::CsvTable t;
      t.header.push_back("");
      for (const auto& n : var->names) t.header.push_back("res_" + n);
      for (int i = 0; i < var->K; ++i) {
        std::vector<std::string> row{"res_" + var->names[i]};
        for (int jj = 0; jj < var->K; ++jj) {
          row.push_back(jj >= i ? fmt(m(i, jj)) : "");
        }
        t.rows.push_back(std::move(row));
      }
      tscore::write_csv(path, t);
    };
    Eigen::MatrixXd corr = var->omega_eps.array() / (sd * sd.transpose()).array();
    corr.diagonal().setOnes();
    upper_table(var->omega_eps, (tables_dir / "residual_covariance.csv").string());
    upper_table(corr, (tables_dir / "residual_correlation.csv").string());

    tscore::CsvTable dt;
    dt.header = {"test", "statistic", "df", "pvalue"};
    dt.rows.push_back({"portmanteau", fmt(diag.portmanteau.Q),
                       std::to_string(diag.portmanteau.df), fmt(diag.portmanteau.pvalue)});
    dt.rows.push_back({"brown_forsythe", fmt(diag.brown_forsythe.statistic), "",
                       fmt(diag.brown_forsythe.pvalue)});
    dt.rows.push_back({"lr_diag", fmt(diag.lr_diag.statistic),
                       std::to_string(diag.lr_diag.df), fmt(diag.lr_diag.pvalue)});
    dt.rows.push_back({"lm_diag", fmt(diag.lm_diag.statistic),
                       std::to_string(diag.lm_diag.df), fmt(diag.lm_diag.pvalue)});
    tscore::write_csv((tables_dir / "var_diagnostics.csv").string(), dt);
    return j;
  });

  runner.run("svar", [&]() -> json {
    json j;
    if (config.svar_a_rows.empty()) {
      j["skipped"] = "no svar block in the config";
      return j;
    }
    const auto pattern = svar::RestrictionPattern::parse(config.svar_a_rows, config.svar_b_rows);
    sfit.emplace(svar::svar_ml_fit(*var, pattern));

    svar::BootstrapOptions bo;
    auto boot = svar::bootstrap_se(*sfit, *var, config.dynamics.reps, config.dynamics.seed, bo);
    svar::attach_bootstrap_se(*sfit, boot);
    const auto lr = svar::overid_lr_test(*sfit, *var);

    for (const auto& v : config.variables) shock_labels.push_back("u_" + v.name);

    j["A"] = mat_to_json(sfit->A_hat);
    j["B"] = mat_to_json(sfit->B_hat);
    j["phi0"] = mat_to_json(sfit->phi0);
    j["loglik"] = sfit->loglik;
    j["identification"] = {
        {"required_restrictions", sfit->identification.required_restrictions},
        {"imposed_restrictions", sfit->identification.imposed_restrictions},
        {"free_params", sfit->identification.free_params},
        {"overid_degree", sfit->identification.overid_degree},
        {"order_holds", sfit->identification.order_holds},
        {"rank", sfit->identification.rank == svar::RankCheck::holds ? "holds" : "fails"}};
    j["overid_lr"] = {{"statistic", lr.statistic}, {"df", lr.df}, {"pvalue", lr.pvalue}};
    json params = json::array();
    const auto labels = pattern.labels();
    for (std::size_t i = 0; i < labels.size(); ++i) {
      params.push_back({{"param", labels[i]},
                        {"estimate", sfit->theta[static_cast<int>(i)]},
                        {"se", sfit->se[static_cast<int>(i)]},
                        {"pvalue", sfit->pvalues[static_cast<int>(i)]}});
    }
    j["parameters"] = std::move(params);
    j["bootstrap"] = {{"reps", config.dynamics.reps},
                      {"failures", boot.failures},
                      {"seed", config.dynamics.seed}};

    // per-equation listing: eps_i = sum_j(-A_ij eps_j, j != i) + sum_j B_ij u_j
    tscore::CsvTable table;
    table.header = {"equation", "term", "coefficient", "pvalue"};
    int theta_idx = 0;
    for (int i = 0; i < pattern.K; ++i) {
      for (int jj = 0; jj < pattern.K; ++jj) {
        if (!pattern.a(i, jj).fixed) {
          table.rows.push_back({"eps_" + config.variables[i].name,
                                "eps_" + config.variables[jj].name,
                                fmt(-sfit->A_hat(i, jj)), fmt(sfit->pvalues[theta_idx])});
          ++theta_idx;
        }
      }
    }
    for (int i = 0; i < pattern.K; ++i) {
      for (int jj = 0; jj < pattern.K; ++jj) {
        if (!pattern.b(i, jj).fixed) {
          table.rows.push_back({"eps_" + config.variables[i].name, shock_labels[jj],
                                fmt(sfit->B_hat(i, jj)), fmt(sfit->pvalues[theta_idx])});
          ++theta_idx;
        }
      }
    }
    tscore::write_csv((tables_dir / "svar_system.csv").string(), table);
    return j;
  });

  runner.run("dynamics", [&]() -> json {
    json j;
    if (!sfit) {
      j["skipped"] = "no svar fit";
      return j;
    }
    auto irf = dynamics::mc_bands(*sfit, *var, config.dynamics.h, config.dynamics.reps,
                                  config.dynamics.seed, config.dynamics.multiplier);
    json phis = json::array();
    for (const auto& m : irf.phis) phis.push_back(mat_to_json(m));
    j["impulse_responses"] = std::move(phis);
    j["band_multiplier"] = irf.band_multiplier;
    j["band_reps"] = irf.reps;

    try {
      Eigen::MatrixXd psi = dynamics::long_run_impact(*sfit, *var);
      j["long_run_impact"] = mat_to_json(psi);
      tscore::CsvTable pt;
      pt.header.push_back("");
      for (const auto& s : shock_labels) pt.header.push_back(s);
      for (int i = 0; i < var->K; ++i) {
        std::vector<std::string> row{var->names[i]};
        for (int jj = 0; jj < var->K; ++jj) row.push_back(fmt(psi(i, jj)));
        pt.rows.push_back(std::move(row));
      }
      tscore::write_csv((tables_dir / "psi_inf.csv").string(), pt);
    } catch (const StabilityError& e) {
      j["long_run_impact_error"] = e.what();
    }

    const auto table = dynamics::fevd(*sfit, *var, config.dynamics.h, shock_labels);
    j["fevd"] = mat_to_json(table.shares);
    j["fevd_horizon"] = table.horizon;
    plots::write_fevd_csv((tables_dir / "fevd.csv").string(), table);

    for (int i = 0; i < var->K; ++i) {
      plots::write_irf_csv((tables_dir / ("irf_" + var->names[i] + ".csv")).string(), irf, i,
                           shock_labels);
      plots::write_irf_svg((plots_dir / ("irf_" + var->names[i] + ".svg")).string(), irf, i,
                           var->names[i], shock_labels);
    }
    return j;
  });

  std::ofstream out(out_dir / "report.json");
  out << report.to_json(true).dump(2) << "\n";
  return report;
}

}  // namespace svarkit::pipeline
