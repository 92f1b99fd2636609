// svarkit command line: config-driven replication runs, one-off KPSS tests,
// and synthetic dataset generation.
//
// exit codes: 0 success, 2 config error, 3 stage error

#include <CLI11.hpp>
#include <cstdio>
#include <string>

#include "svarkit/csv.hpp"
#include "svarkit/errors.hpp"
#include "svarkit/pipeline.hpp"
#include "svarkit/unitroot.hpp"

namespace {

int cmd_run(const std::string& config_path) {
  svarkit::pipeline::PipelineConfig config;
  try {
    config = svarkit::pipeline::PipelineConfig::from_file(config_path);
  } catch (const svarkit::Error& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return 2;
  }
  const auto report = svarkit::pipeline::run_pipeline(config);
  for (const auto& s : report.stages) {
    std::printf("%-14s %-7s %s\n", s.name.c_str(), s.status.c_str(), s.detail.c_str());
  }
  std::printf("report: %s/report.json\n", report.config_echo["output_dir"].get<std::string>().c_str());
  return report.ok ? 0 : 3;
}

int cmd_kpss(const std::string& csv_path, const std::string& index_col,
             const std::string& col, const std::string& spec_name,
             const std::string& bandwidth) {
  svarkit::unitroot::KpssSpec spec;
  if (spec_name == "level") {
    spec = svarkit::unitroot::KpssSpec::level;
  } else if (spec_name == "trend") {
    spec = svarkit::unitroot::KpssSpec::trend;
  } else {
    std::fprintf(stderr, "config error: --spec must be level or trend\n");
    return 2;
  }
  svarkit::hac::KernelSpec kernel;
  if (bandwidth == "auto") {
    kernel = svarkit::hac::KernelSpec::qs_auto();
  } else {
    char* end = nullptr;
    const double b = std::strtod(bandwidth.c_str(), &end);
    if (end != bandwidth.c_str() + bandwidth.size() || b < 0) {
      std::fprintf(stderr, "config error: --bandwidth must be 'auto' or a number >= 0\n");
      return 2;
    }
    kernel = svarkit::hac::KernelSpec::fixed(svarkit::hac::KernelKind::quadratic_spectral, b);
  }

  const auto data = svarkit::tscore::load_csv(csv_path, index_col);
  const auto r = svarkit::unitroot::kpss_test(data.column(col), spec, kernel);
  std::printf("series:      %s\n", col.c_str());
  std::printf("spec:        %s\n", spec == svarkit::unitroot::KpssSpec::level ? "level (C)" : "trend (C,T)");
  std::printf("statistic:   %.6f\n", r.statistic);
  std::printf("bandwidth:   %.4f\n", r.bandwidth_used);
  std::printf("hac var:     %.6g\n", r.lrv.scalar());
  std::printf("5%% decision: %s\n",
              r.decision_5pct == svarkit::unitroot::KpssDecision::reject_stationarity
                  ? "reject stationarity"
                  : "not rejected");
  return 0;
}

int cmd_synth(const std::string& dgp, int T, std::uint64_t seed, const std::string& out,
              bool cumulate) {
  svarkit::pipeline::DgpKind kind;
  if (dgp == "recursive") {
    kind = svarkit::pipeline::DgpKind::recursive;
  } else if (dgp == "paper_system11") {
    kind = svarkit::pipeline::DgpKind::paper_system11;
  } else {
    std::fprintf(stderr, "config error: --dgp must be recursive or paper_system11\n");
    return 2;
  }
  auto data = svarkit::pipeline::synth_generate(kind, T, seed);
  if (cumulate) {
    // integrate to levels so a diff-transform pipeline recovers the DGP
    std::vector<svarkit::tscore::TimeSeries> cols;
    for (const auto& c : data.columns()) {
      svarkit::tscore::TimeSeries s = c;
      if (!s.name.empty() && s.name[0] == 'd') s.name = s.name.substr(1);
      double acc = 0.0;
      for (int t = 0; t < s.values.size(); ++t) {
        acc += c.values[t];
        s.values[t] = acc;
      }
      cols.push_back(std::move(s));
    }
    data = svarkit::tscore::Dataset(data.index(), std::move(cols));
  }
  svarkit::tscore::write_csv(out, data, "year");
  std::printf("wrote %s (T=%d)\n", out.c_str(), data.T());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"structural time-series econometrics toolkit"};
  app.require_subcommand(1);

  std::string config_path;
  auto* run = app.add_subcommand("run", "execute a replication pipeline from a JSON config");
  run->add_option("config", config_path, "path to config.json")->required();

  std::string kpss_csv, kpss_col, kpss_spec = "level", kpss_bw = "auto",
              kpss_index = "year";
  auto* kpss = app.add_subcommand("kpss", "KPSS stationarity test on one CSV column");
  kpss->add_option("csv", kpss_csv, "input CSV")->required();
  kpss->add_option("--col", kpss_col, "column to test")->required();
  kpss->add_option("--spec", kpss_spec, "level|trend");
  kpss->add_option("--bandwidth", kpss_bw, "auto or a fixed value");
  kpss->add_option("--index-col", kpss_index, "index column name");

  std::string synth_dgp = "paper_system11", synth_out = "synthetic.csv";
  int synth_t = 5000;
  std::uint64_t synth_seed = 7;
  bool synth_cumulate = false;
  auto* synth = app.add_subcommand("synth", "generate a synthetic dataset");
  synth->add_option("--dgp", synth_dgp, "recursive|paper_system11");
  synth->add_option("--t", synth_t, "observations");
  synth->add_option("--seed", synth_seed, "RNG seed");
  synth->add_option("--out", synth_out, "output CSV path");
  synth->add_flag("--cumulate", synth_cumulate, "emit cumulated (level) series");

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed()) return cmd_run(config_path);
    if (kpss->parsed()) return cmd_kpss(kpss_csv, kpss_index, kpss_col, kpss_spec, kpss_bw);
    if (synth->parsed()) return cmd_synth(synth_dgp, synth_t, synth_seed, synth_out, synth_cumulate);
  } catch (const svarkit::ConfigError& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return 2;
  } catch (const svarkit::Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 3;
  }
  return 0;
}
