// Compares the serial reference implementations against the OpenMP kernels
// (bootstrap, band replication, kernel covariance sums) and verifies that
// both modes produce identical bytes.

#include <chrono>
#include <cstdio>

#include "svarkit/dynamics.hpp"
#include "svarkit/hac.hpp"
#include "svarkit/pipeline.hpp"
#include "svarkit/svar.hpp"

using namespace svarkit;

namespace {

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

template <class Fn>
double timed(Fn&& fn) {
  const auto t0 = std::chrono::steady_clock::now();
  fn();
  return seconds_since(t0);
}

}  // namespace

int main() {
  std::printf("threads available: %d\n\n", hardware_threads());
  std::printf("%-28s %10s %10s %8s %s\n", "kernel", "serial", "openmp", "speedup", "identical");

  // bootstrap SEs on the built-in 4-variable system
  {
    auto data = pipeline::synth_generate(pipeline::DgpKind::paper_system11, 2000, 31);
    auto var = varkit::var_fit(data, 1);
    auto pattern = svar::RestrictionPattern::parse(
        {"1 0 0 0", "0 1 0 0", "* 0 1 0", "* 0 0 1"},
        {"* 0 0 0", "0 * * 0", "0 0 * *", "0 0 0 *"});
    auto fit = svar::svar_ml_fit(var, pattern);

    svar::BootstrapOptions serial_opt;
    serial_opt.exec = ExecMode::serial;
    serial_opt.refit.exec = ExecMode::serial;
    svar::BootstrapOptions omp_opt;

    svar::BootstrapResult r_serial, r_omp;
    const double ts = timed([&] { r_serial = svar::bootstrap_se(fit, var, 200, 7, serial_opt); });
    const double tp = timed([&] { r_omp = svar::bootstrap_se(fit, var, 200, 7, omp_opt); });
    const bool same = (r_serial.se - r_omp.se).lpNorm<Eigen::Infinity>() == 0.0;
    std::printf("%-28s %9.3fs %9.3fs %7.2fx %s\n", "bootstrap_se (200 reps)", ts, tp, ts / tp,
                same ? "yes" : "NO");

    dynamics::ImpulseSet b_serial, b_omp;
    const double bs = timed([&] {
      b_serial = dynamics::mc_bands(fit, var, 10, 200, 7, 2.0, serial_opt);
    });
    const double bp = timed([&] { b_omp = dynamics::mc_bands(fit, var, 10, 200, 7, 2.0, omp_opt); });
    bool bands_same = true;
    for (int s = 0; s <= 10; ++s) {
      if ((b_serial.lower[s] - b_omp.lower[s]).lpNorm<Eigen::Infinity>() != 0.0) bands_same = false;
      if ((b_serial.upper[s] - b_omp.upper[s]).lpNorm<Eigen::Infinity>() != 0.0) bands_same = false;
    }
    std::printf("%-28s %9.3fs %9.3fs %7.2fx %s\n", "mc_bands (200 reps, h=10)", bs, bp, bs / bp,
                bands_same ? "yes" : "NO");
  }

  // long-run covariance on a long multivariate series
  {
    auto data = pipeline::synth_generate(pipeline::DgpKind::recursive, 60000, 5);
    Eigen::MatrixXd u = data.matrix();
    auto spec = hac::KernelSpec::qs_auto();

    hac::LrvOptions serial_opt;
    serial_opt.exec = ExecMode::serial;
    hac::LrvOptions omp_opt;

    hac::LrvEstimate e_serial, e_omp;
    const double ts = timed([&] {
      e_serial = hac::long_run_variance(u, spec, hac::Prewhiten::none(), serial_opt);
    });
    const double tp = timed([&] {
      e_omp = hac::long_run_variance(u, spec, hac::Prewhiten::none(), omp_opt);
    });
    const bool same = (e_serial.value - e_omp.value).lpNorm<Eigen::Infinity>() == 0.0;
    std::printf("%-28s %9.3fs %9.3fs %7.2fx %s\n", "long_run_variance (T=60k)", ts, tp, ts / tp,
                same ? "yes" : "NO");
  }

  return 0;
}
