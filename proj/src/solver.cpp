#include "cscodec/solver.hpp"

#include <cmath>
#include <string>

#include "cscodec/errors.hpp"

namespace cs {

namespace {

double norm2(const Vec& v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}

double soft(double v, double tau) {
  if (v > tau) return v - tau;
  if (v < -tau) return v + tau;
  return 0.0;
}

// Largest eigenvalue of L^T L via 20 power iterations from the all-ones
// vector (deterministic by construction).
double spectral_bound(const LinOp& forward, const LinOp& adjoint, size_t n) {
  Vec v(n, 1.0 / std::sqrt(static_cast<double>(n)));
  double lambda = 0.0;
  for (int it = 0; it < 20; ++it) {
    Vec w = adjoint(forward(v));
    lambda = norm2(w);
    if (lambda <= 0.0) break;
    for (size_t i = 0; i < n; ++i) v[i] = w[i] / lambda;
  }
  return lambda;
}

// Keeps the ADMM iteration map positively homogeneous in (y, epsilon), so
// scaling the data scales the returned solution exactly.
constexpr double kRhoScale = 50.0;

}  // namespace

std::pair<Vec, SolverReport> bpdn_solve(const LinOp& forward, const LinOp& adjoint,
                                        const Vec& y, size_t n,
                                        const SolverOptions& opts) {
  if (opts.epsilon < 0.0 || opts.max_outer_iterations < 1 || !(opts.tolerance > 0.0)) {
    throw InvalidDimensions("bpdn_solve: bad solver options");
  }
  const size_t m = y.size();
  SolverReport report;

  const double ynorm = norm2(y);
  if (!std::isfinite(ynorm)) throw NonFiniteEncountered("bpdn_solve: non-finite y");
  if (ynorm == 0.0) {
    report.converged = true;
    return {Vec(n, 0.0), report};
  }

  const double eps = opts.epsilon > 0.0 ? opts.epsilon : 1e-12 * ynorm;
  const double lambda = spectral_bound(forward, adjoint, n);
  const double mu = lambda > 0.0 ? 1.01 * lambda : 1.0;
  const double rho = kRhoScale / ynorm;
  const double tau = 1.0 / (rho * mu);  // l1 prox threshold of the x step

  Vec x(n, 0.0);
  Vec z(m);
  const double zscale = eps >= ynorm ? 1.0 : eps / ynorm;
  for (size_t i = 0; i < m; ++i) z[i] = y[i] * zscale;
  Vec u(m, 0.0);
  Vec lx = forward(x);
  if (lx.size() != m) throw LengthMismatch("bpdn_solve: forward output length != len(y)");

  report.l1_trace.reserve(opts.max_outer_iterations);
  report.step_trace.reserve(opts.max_outer_iterations);

  double res = ynorm;
  for (int it = 0; it < opts.max_outer_iterations; ++it) {
    // x step (linearized)
    Vec c(m);
    for (size_t i = 0; i < m; ++i) c[i] = lx[i] + z[i] - y[i] + u[i];
    const Vec g = adjoint(c);
    double dx2 = 0.0;
    double l1 = 0.0;
    for (size_t i = 0; i < n; ++i) {
      const double xi = soft(x[i] - g[i] / mu, tau);
      dx2 += (xi - x[i]) * (xi - x[i]);
      x[i] = xi;
      l1 += std::fabs(xi);
    }
    lx = forward(x);

    // z step: project the residual copy onto the epsilon ball
    double dz2 = 0.0, du2 = 0.0, res2 = 0.0;
    Vec r(m);
    for (size_t i = 0; i < m; ++i) {
      r[i] = y[i] - lx[i];
      res2 += r[i] * r[i];
    }
    res = std::sqrt(res2);
    double pnorm2 = 0.0;
    for (size_t i = 0; i < m; ++i) {
      const double p = r[i] - u[i];
      pnorm2 += p * p;
    }
    const double pnorm = std::sqrt(pnorm2);
    const double shrink = pnorm > eps && pnorm > 0.0 ? eps / pnorm : 1.0;
    for (size_t i = 0; i < m; ++i) {
      const double zi = (r[i] - u[i]) * shrink;
      dz2 += (zi - z[i]) * (zi - z[i]);
      z[i] = zi;
      const double ui = u[i] + lx[i] + z[i] - y[i];
      du2 += (ui - u[i]) * (ui - u[i]);
      u[i] = ui;
    }

    if (!std::isfinite(res) || !std::isfinite(l1)) {
      throw NonFiniteEncountered("bpdn_solve: iterates diverged to non-finite values");
    }

    report.iterations = it + 1;
    report.l1_trace.push_back(l1);
    report.step_trace.push_back(std::sqrt(mu * dx2 + dz2 + du2));
    report.l1_norm = l1;
    report.residual_norm = res;

    const double xnorm = std::sqrt([&] {
      double s = 0.0;
      for (double v : x) s += v * v;
      return s;
    }());
    if (res <= eps * (1.0 + opts.tolerance) &&
        std::sqrt(dx2) <= opts.tolerance * (xnorm + 1e-30)) {
      report.converged = true;
      break;
    }
  }
  return {x, report};
}

}  // namespace cs
