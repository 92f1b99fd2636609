#include "svarkit/svar.hpp"

#include <cmath>
#include <cstdlib>
#include <limits>
#include <numbers>
#include <sstream>

#include "svarkit/errors.hpp"
#include "svarkit/prob.hpp"
#include "svarkit/rng.hpp"

namespace svarkit::svar {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kDetBarrier = 1e-12;

// ---------------------------------------------------------------------------
// concentrated likelihood, per observation:
//   f(A,B) = K/2 ln 2pi - ln|det A| + ln|det B| + 1/2 tr((B^-1 A)' B^-1 A Omega)
// minimized over the free cells; lnLc = -T f. The per-observation scaling
// keeps the numerical gradient noise well under the convergence tolerance.
// ---------------------------------------------------------------------------
class Objective {
 public:
  Objective(const RestrictionPattern& pattern, Eigen::MatrixXd omega)
      : pattern_(pattern), omega_(std::move(omega)), K_(pattern.K) {}

  double operator()(const Eigen::VectorXd& theta) const {
    auto [A, B] = pattern_.build(theta);
    Eigen::PartialPivLU<Eigen::MatrixXd> lua(A);
    Eigen::PartialPivLU<Eigen::MatrixXd> lub(B);
    const double det_a = lua.determinant();
    const double det_b = lub.determinant();
    if (!(std::fabs(det_b) >= kDetBarrier) || !(std::fabs(det_a) >= kDetBarrier)) {
      return kInf;
    }
    Eigen::MatrixXd S = lub.solve(A);  // B^{-1} A
    const double tr = S.cwiseProduct(S * omega_).sum();
    if (!std::isfinite(tr)) return kInf;
    return 0.5 * K_ * std::log(2.0 * std::numbers::pi) - std::log(std::fabs(det_a)) +
           std::log(std::fabs(det_b)) + 0.5 * tr;
  }

 private:
  const RestrictionPattern& pattern_;
  Eigen::MatrixXd omega_;
  int K_;
};

Eigen::VectorXd numerical_gradient(const Objective& f, const Eigen::VectorXd& x) {
  Eigen::VectorXd g(x.size());
  Eigen::VectorXd xp = x;
  for (int i = 0; i < x.size(); ++i) {
    const double h = 1e-6 * std::max(1.0, std::fabs(x[i]));
    xp[i] = x[i] + h;
    const double fp = f(xp);
    xp[i] = x[i] - h;
    const double fm = f(xp);
    xp[i] = x[i];
    g[i] = (fp - fm) / (2.0 * h);
  }
  return g;
}

struct BfgsResult {
  Eigen::VectorXd x;
  double f = kInf;
  double grad_norm = kInf;
  bool converged = false;
};

BfgsResult bfgs_minimize(const Objective& obj, Eigen::VectorXd x0, double grad_tol,
                         int max_iter) {
  BfgsResult res;
  const int n = static_cast<int>(x0.size());
  double fx = obj(x0);
  if (!std::isfinite(fx)) return res;

  Eigen::VectorXd x = std::move(x0);
  Eigen::VectorXd g = numerical_gradient(obj, x);
  Eigen::MatrixXd H = Eigen::MatrixXd::Identity(n, n);

  for (int iter = 0; iter < max_iter; ++iter) {
    if (g.lpNorm<Eigen::Infinity>() < grad_tol) {
      res.converged = true;
      break;
    }
    Eigen::VectorXd d = -H * g;
    double slope = g.dot(d);
    if (!(slope < 0.0)) {  // reset on loss of descent direction
      H.setIdentity();
      d = -g;
      slope = g.dot(d);
      if (!(slope < 0.0)) break;
    }

    // Armijo backtracking; the det-B barrier shows up as +inf
    double step = 1.0;
    double fnew = kInf;
    Eigen::VectorXd xnew;
    for (int ls = 0; ls < 60; ++ls) {
      xnew = x + step * d;
      fnew = obj(xnew);
      if (std::isfinite(fnew) && fnew <= fx + 1e-4 * step * slope) break;
      step *= 0.5;
    }
    if (!std::isfinite(fnew) || fnew > fx + 1e-4 * step * slope) break;

    Eigen::VectorXd gnew = numerical_gradient(obj, xnew);
    Eigen::VectorXd s = xnew - x;
    Eigen::VectorXd y = gnew - g;
    const double sy = s.dot(y);
    if (sy > 1e-12 * s.norm() * y.norm()) {
      Eigen::VectorXd Hy = H * y;
      const double yHy = y.dot(Hy);
      H += ((sy + yHy) / (sy * sy)) * (s * s.transpose()) -
           (Hy * s.transpose() + s * Hy.transpose()) / sy;
    }
    x = std::move(xnew);
    g = std::move(gnew);
    fx = fnew;
  }
  res.x = std::move(x);
  res.f = fx;
  res.grad_norm = g.lpNorm<Eigen::Infinity>();
  res.converged = res.converged || res.grad_norm < grad_tol;
  return res;
}

// Cholesky-derived starting point: free A cells at zero, free B cells read
// off chol(A0 Omega A0').
Eigen::VectorXd cholesky_start(const RestrictionPattern& pattern,
                               const Eigen::MatrixXd& omega) {
  const int K = pattern.K;
  Eigen::VectorXd zero = Eigen::VectorXd::Zero(pattern.free_count());
  auto [A0, B0] = pattern.build(zero);
  Eigen::MatrixXd target = A0 * omega * A0.transpose();
  Eigen::LLT<Eigen::MatrixXd> llt(target);
  Eigen::MatrixXd L = llt.info() == Eigen::Success
                          ? Eigen::MatrixXd(llt.matrixL())
                          : Eigen::MatrixXd(omega.diagonal().cwiseMax(1e-8).cwiseSqrt().asDiagonal());
  Eigen::MatrixXd Bstart = B0;
  for (int i = 0; i < K; ++i) {
    for (int j = 0; j < K; ++j) {
      if (!pattern.b(i, j).fixed) Bstart(i, j) = L(i, j);
    }
  }
  return pattern.extract(A0, Bstart);
}

void sign_normalize(const RestrictionPattern& pattern, Eigen::MatrixXd& B) {
  const int K = pattern.K;
  for (int j = 0; j < K; ++j) {
    if (B(j, j) >= 0.0) continue;
    bool flippable = true;  // fixed non-zero cells pin the column sign
    for (int i = 0; i < K; ++i) {
      if (pattern.b(i, j).fixed && pattern.b(i, j).value != 0.0) flippable = false;
    }
    if (flippable) B.col(j) = -B.col(j);
  }
}

double exact_decomposition_loglik(const Eigen::MatrixXd& omega, int T) {
  const int K = static_cast<int>(omega.rows());
  Eigen::LLT<Eigen::MatrixXd> llt(omega);
  if (llt.info() != Eigen::Success) {
    throw SingularError("overid_lr_test: residual covariance not positive definite");
  }
  double logdet = 0.0;
  for (int i = 0; i < K; ++i) logdet += 2.0 * std::log(llt.matrixL()(i, i));
  return -0.5 * T * (K * std::log(2.0 * std::numbers::pi) + logdet + K);
}

}  // namespace

// ---------------------------------------------------------------------------
// RestrictionPattern
// ---------------------------------------------------------------------------

RestrictionPattern RestrictionPattern::parse(const std::vector<std::string>& a_rows,
                                             const std::vector<std::string>& b_rows) {
  if (a_rows.empty() || a_rows.size() != b_rows.size()) {
    throw ConfigError("pattern: A and B need the same, non-zero number of rows");
  }
  RestrictionPattern p;
  p.K = static_cast<int>(a_rows.size());
  p.A.assign(p.K * p.K, Cell{});
  p.B.assign(p.K * p.K, Cell{});

  auto parse_rows = [&](const std::vector<std::string>& rows, std::vector<Cell>& cells,
                        const char* which) {
    for (int i = 0; i < p.K; ++i) {
      std::istringstream ss(rows[i]);
      std::string tok;
      int j = 0;
      while (ss >> tok) {
        if (j >= p.K) throw ConfigError(std::string("pattern: too many tokens in ") + which +
                                        " row " + std::to_string(i + 1));
        Cell c;
        if (tok == "*") {
          c.fixed = false;
        } else {
          char* end = nullptr;
          const double v = std::strtod(tok.c_str(), &end);
          if (end != tok.c_str() + tok.size()) {
            throw ConfigError("pattern: bad token '" + tok + "'");
          }
          c.fixed = true;
          c.value = v;
        }
        cells[i * p.K + j] = c;
        ++j;
      }
      if (j != p.K) throw ConfigError(std::string("pattern: too few tokens in ") + which +
                                      " row " + std::to_string(i + 1));
    }
  };
  parse_rows(a_rows, p.A, "A");
  parse_rows(b_rows, p.B, "B");
  return p;
}

RestrictionPattern RestrictionPattern::recursive(int K) {
  RestrictionPattern p;
  p.K = K;
  p.A.assign(K * K, Cell{true, 0.0});
  p.B.assign(K * K, Cell{true, 0.0});
  for (int i = 0; i < K; ++i) {
    p.a(i, i) = Cell{true, 1.0};
    for (int j = 0; j <= i; ++j) p.b(i, j) = Cell{false, 0.0};
  }
  return p;
}

int RestrictionPattern::fixed_count_A() const {
  int c = 0;
  for (const auto& cell : A) c += cell.fixed ? 1 : 0;
  return c;
}

int RestrictionPattern::fixed_count_B() const {
  int c = 0;
  for (const auto& cell : B) c += cell.fixed ? 1 : 0;
  return c;
}

int RestrictionPattern::free_count() const {
  return 2 * K * K - fixed_count_A() - fixed_count_B();
}

std::pair<Eigen::MatrixXd, Eigen::MatrixXd> RestrictionPattern::build(
    const Eigen::VectorXd& theta) const {
  if (theta.size() != free_count()) throw ConfigError("pattern: wrong parameter count");
  Eigen::MatrixXd Am(K, K), Bm(K, K);
  int idx = 0;
  for (int i = 0; i < K; ++i)
    for (int j = 0; j < K; ++j) Am(i, j) = a(i, j).fixed ? a(i, j).value : theta[idx++];
  for (int i = 0; i < K; ++i)
    for (int j = 0; j < K; ++j) Bm(i, j) = b(i, j).fixed ? b(i, j).value : theta[idx++];
  return {Am, Bm};
}

Eigen::VectorXd RestrictionPattern::extract(const Eigen::MatrixXd& A_hat,
                                            const Eigen::MatrixXd& B_hat) const {
  Eigen::VectorXd theta(free_count());
  int idx = 0;
  for (int i = 0; i < K; ++i)
    for (int j = 0; j < K; ++j)
      if (!a(i, j).fixed) theta[idx++] = A_hat(i, j);
  for (int i = 0; i < K; ++i)
    for (int j = 0; j < K; ++j)
      if (!b(i, j).fixed) theta[idx++] = B_hat(i, j);
  return theta;
}

std::vector<std::string> RestrictionPattern::labels() const {
  std::vector<std::string> out;
  for (int i = 0; i < K; ++i)
    for (int j = 0; j < K; ++j)
      if (!a(i, j).fixed)
        out.push_back("A(" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ")");
  for (int i = 0; i < K; ++i)
    for (int j = 0; j < K; ++j)
      if (!b(i, j).fixed)
        out.push_back("B(" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ")");
  return out;
}

// ---------------------------------------------------------------------------
// identification
// ---------------------------------------------------------------------------

Identification check_identification(const RestrictionPattern& pattern) {
  const int K = pattern.K;
  for (int i = 0; i < K; ++i) {
    if (!pattern.a(i, i).fixed || pattern.a(i, i).value != 1.0) {
      throw ConfigError("check_identification: the diagonal of A must be fixed at 1");
    }
  }

  Identification id;
  id.required_restrictions = 2 * K * K - K * (K + 1) / 2;
  id.imposed_restrictions = pattern.fixed_count_A() + pattern.fixed_count_B();
  id.free_params = pattern.free_count();
  id.overid_degree = K * (K + 1) / 2 - id.free_params;
  id.order_holds = id.imposed_restrictions >= id.required_restrictions;

  if (!id.order_holds) {
    id.status = IdentStatus::under;
    id.rank = RankCheck::not_evaluated;
    return id;
  }

  // rank condition: the Jacobian of vech(A^-1 B B' A^-1') in the free cells
  // must reach full column rank at some admissible point
  const int q = K * (K + 1) / 2;
  const int nf = id.free_params;
  bool any_full_rank = false;
  for (int trial = 0; trial < 20 && !any_full_rank && nf > 0; ++trial) {
    auto rng = rng_stream(0x1d3a7ULL, trial);
    std::normal_distribution<double> normal(0.0, 0.5);
    Eigen::VectorXd theta(nf);
    for (int i = 0; i < nf; ++i) theta[i] = normal(rng);
    // keep B's diagonal cells away from zero so B stays invertible
    {
      int idx = 0;
      for (int i = 0; i < K; ++i)
        for (int j = 0; j < K; ++j)
          if (!pattern.a(i, j).fixed) ++idx;
      for (int i = 0; i < K; ++i)
        for (int j = 0; j < K; ++j)
          if (!pattern.b(i, j).fixed) {
            if (i == j) theta[idx] = std::fabs(theta[idx]) + 0.5;
            ++idx;
          }
    }
    auto [Am, Bm] = pattern.build(theta);
    Eigen::PartialPivLU<Eigen::MatrixXd> lua(Am);
    if (std::fabs(lua.determinant()) < 1e-8) continue;
    Eigen::MatrixXd C = lua.solve(Eigen::MatrixXd::Identity(K, K));
    Eigen::MatrixXd BBt = Bm * Bm.transpose();

    Eigen::MatrixXd J(q, nf);
    int col = 0;
    auto vech_into = [&](const Eigen::MatrixXd& M, int c) {
      int r = 0;
      for (int j = 0; j < K; ++j)
        for (int i = j; i < K; ++i) J(r++, c) = M(i, j);
    };
    for (int i = 0; i < K; ++i)
      for (int j = 0; j < K; ++j)
        if (!pattern.a(i, j).fixed) {
          Eigen::MatrixXd E = Eigen::MatrixXd::Zero(K, K);
          E(i, j) = 1.0;
          Eigen::MatrixXd G = -C * E * C * BBt * C.transpose();
          vech_into(G + G.transpose(), col++);
        }
    for (int i = 0; i < K; ++i)
      for (int j = 0; j < K; ++j)
        if (!pattern.b(i, j).fixed) {
          Eigen::MatrixXd E = Eigen::MatrixXd::Zero(K, K);
          E(i, j) = 1.0;
          Eigen::MatrixXd G = C * (E * Bm.transpose() + Bm * E.transpose()) * C.transpose();
          vech_into(G, col++);
        }

    Eigen::JacobiSVD<Eigen::MatrixXd> svd(J);
    const auto& sv = svd.singularValues();
    if (sv.size() > 0 && sv(sv.size() - 1) > 1e-10 * sv(0)) any_full_rank = true;
  }
  id.rank = any_full_rank ? RankCheck::holds : RankCheck::fails;

  if (id.rank == RankCheck::fails || id.overid_degree < 0) {
    id.status = IdentStatus::under;
  } else {
    id.status = id.overid_degree == 0 ? IdentStatus::just : IdentStatus::over;
  }
  return id;
}

// ---------------------------------------------------------------------------
// estimation
// ---------------------------------------------------------------------------

SvarFit svar_ml_fit(const varkit::VarFit& var, const RestrictionPattern& pattern,
                    const SvarOptions& options) {
  if (pattern.K != var.K) throw ConfigError("svar_ml_fit: pattern size does not match VAR");
  Identification id = check_identification(pattern);
  if (id.status == IdentStatus::under) {
    throw IdentificationError("svar_ml_fit: pattern is under-identified");
  }
  Eigen::LLT<Eigen::MatrixXd> llt(var.omega_eps);
  if (llt.info() != Eigen::Success) {
    throw SingularError("svar_ml_fit: residual covariance not positive definite");
  }

  Objective obj(pattern, var.omega_eps);
  const int nf = pattern.free_count();
  Eigen::VectorXd base = cholesky_start(pattern, var.omega_eps);
  const double scale = std::sqrt(var.omega_eps.diagonal().mean());

  std::vector<BfgsResult> runs(options.starts);
  parallel_for(static_cast<std::size_t>(options.starts), options.exec, [&](std::size_t s) {
    Eigen::VectorXd x0 = base;
    if (s > 0) {
      auto rng = rng_stream(options.seed, s);
      std::normal_distribution<double> normal(0.0, 1.0);
      for (int i = 0; i < nf; ++i) {
        x0[i] = x0[i] * (1.0 + 0.2 * normal(rng)) + 0.05 * scale * normal(rng);
      }
    }
    runs[s] = bfgs_minimize(obj, std::move(x0), options.grad_tol, options.max_iter);
  });

  int best = -1;
  for (int s = 0; s < options.starts; ++s) {
    if (!runs[s].converged) continue;
    if (best < 0 || runs[s].f < runs[best].f) best = s;
  }
  if (best < 0) {
    int least_bad = 0;
    for (int s = 1; s < options.starts; ++s) {
      if (runs[s].f < runs[least_bad].f) least_bad = s;
    }
    std::ostringstream msg;
    msg << "svar_ml_fit: no start converged; best objective " << runs[least_bad].f
        << " with gradient norm " << runs[least_bad].grad_norm;
    throw ConvergenceError(msg.str());
  }

  auto [Am, Bm] = pattern.build(runs[best].x);
  sign_normalize(pattern, Bm);

  SvarFit fit;
  fit.pattern = pattern;
  fit.identification = id;
  fit.A_hat = std::move(Am);
  fit.B_hat = std::move(Bm);
  fit.theta = pattern.extract(fit.A_hat, fit.B_hat);
  fit.T = var.T_eff;
  fit.loglik = -static_cast<double>(var.T_eff) * obj(fit.theta);
  fit.phi0 = fit.A_hat.partialPivLu().solve(fit.B_hat);
  return fit;
}

varkit::Chi2TestResult overid_lr_test(const SvarFit& restricted, const varkit::VarFit& var) {
  const int df = restricted.identification.overid_degree;
  if (df < 0) throw IdentificationError("overid_lr_test: fit is not identified");

  varkit::Chi2TestResult out;
  out.df = df;
  const double just = exact_decomposition_loglik(var.omega_eps, var.T_eff);
  out.statistic = std::max(0.0, 2.0 * (just - restricted.loglik));
  out.pvalue = df == 0 ? 1.0 : prob::chi2_sf(out.statistic, df);
  return out;
}

Eigen::MatrixXd structural_shocks(const SvarFit& fit, const varkit::VarFit& var) {
  Eigen::PartialPivLU<Eigen::MatrixXd> lub(fit.B_hat);
  if (std::fabs(lub.determinant()) < kDetBarrier) {
    throw SingularError("structural_shocks: B is singular");
  }
  Eigen::MatrixXd M = lub.solve(fit.A_hat);  // B^{-1} A
  return var.residuals * M.transpose();
}

// ---------------------------------------------------------------------------
// bootstrap
// ---------------------------------------------------------------------------

std::vector<BootstrapDraw> residual_bootstrap(const SvarFit& fit, const varkit::VarFit& var,
                                              int reps, std::uint64_t seed,
                                              const BootstrapOptions& options) {
  if (reps < 100) throw ConfigError("residual_bootstrap: need at least 100 replications");
  const int T_eff = var.T_eff;
  const int K = var.K;
  const int p = var.p;

  std::vector<BootstrapDraw> draws(reps);
  parallel_for(static_cast<std::size_t>(reps), options.exec, [&](std::size_t r) {
    auto rng = rng_stream(seed, r);
    std::uniform_int_distribution<int> pick(0, T_eff - 1);

    Eigen::MatrixXd Y(T_eff + p, K);
    Y.topRows(p) = var.presample;
    for (int t = p; t < T_eff + p; ++t) {
      Eigen::VectorXd acc = var.intercept + var.residuals.row(pick(rng)).transpose();
      for (int i = 0; i < p; ++i) acc += var.A[i] * Y.row(t - 1 - i).transpose();
      Y.row(t) = acc.transpose();
    }

    BootstrapDraw& d = draws[r];
    try {
      varkit::VarFit vb = varkit::var_fit(Y, p, var.names);
      SvarOptions so = options.refit;
      so.seed = mix64(seed) ^ mix64(r);  // decorrelate the multistart stream too
      SvarFit sb = svar_ml_fit(vb, fit.pattern, so);
      d.converged = true;
      d.theta = sb.theta;
      d.A_hat = sb.A_hat;
      d.B_hat = sb.B_hat;
      d.intercept = vb.intercept;
      d.lags = vb.A;
    } catch (const Error&) {
      d.converged = false;
    }
  });
  return draws;
}

BootstrapResult bootstrap_se(const SvarFit& fit, const varkit::VarFit& var, int reps,
                             std::uint64_t seed, const BootstrapOptions& options) {
  auto draws = residual_bootstrap(fit, var, reps, seed, options);

  BootstrapResult out;
  out.requested = reps;
  const int nf = static_cast<int>(fit.theta.size());
  std::vector<Eigen::VectorXd> ok;
  ok.reserve(draws.size());
  for (const auto& d : draws) {
    if (d.converged) ok.push_back(d.theta);
  }
  out.failures = reps - static_cast<int>(ok.size());
  if (out.failures > options.max_failure_rate * reps) {
    throw BootstrapError("bootstrap_se: " + std::to_string(out.failures) + " of " +
                         std::to_string(reps) + " replications failed to converge");
  }

  const int n = static_cast<int>(ok.size());
  out.draws.resize(n, nf);
  for (int i = 0; i < n; ++i) out.draws.row(i) = ok[i].transpose();

  out.se.resize(nf);
  out.ci_lower.resize(nf);
  out.ci_upper.resize(nf);
  for (int j = 0; j < nf; ++j) {
    Eigen::VectorXd col = out.draws.col(j);
    const double mean = col.mean();
    out.se[j] = std::sqrt((col.array() - mean).square().sum() / (n - 1));
    std::vector<double> sorted(col.data(), col.data() + n);
    std::sort(sorted.begin(), sorted.end());
    auto pct = [&](double q) {
      const double pos = q * (n - 1);
      const int lo = static_cast<int>(pos);
      const int hi = std::min(lo + 1, n - 1);
      return sorted[lo] + (pos - lo) * (sorted[hi] - sorted[lo]);
    };
    out.ci_lower[j] = pct(0.025);
    out.ci_upper[j] = pct(0.975);
  }
  return out;
}

void attach_bootstrap_se(SvarFit& fit, const BootstrapResult& boot) {
  fit.se = boot.se;
  fit.pvalues.resize(fit.theta.size());
  for (int i = 0; i < fit.theta.size(); ++i) {
    fit.pvalues[i] = boot.se[i] > 0.0 ? prob::normal_two_sided(fit.theta[i] / boot.se[i]) : 0.0;
  }
}

}  // namespace svarkit::svar
