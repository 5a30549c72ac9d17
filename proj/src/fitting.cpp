#include "bcqec/fitting.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace bcqec {

namespace {

struct GnState {
  double A, alpha, sse;
  bool converged;
};

double sse_of(const std::vector<double>& n, const std::vector<double>& f,
              double A, double alpha) {
  double s = 0;
  for (size_t i = 0; i < n.size(); ++i) {
    double r = 1.0 - A * std::pow(n[i], -alpha) - f[i];
    s += r * r;
  }
  return s;
}

GnState gauss_newton(const std::vector<double>& n, const std::vector<double>& f,
                     double A0, double alpha0) {
  double A = A0, alpha = alpha0;
  double sse = sse_of(n, f, A, alpha);
  bool converged = false;
  for (int it = 0; it < 200; ++it) {
    // residuals r_i = 1 - A n^-alpha - f_i; J = [dr/dA, dr/dalpha]
    double jtj00 = 0, jtj01 = 0, jtj11 = 0, jtr0 = 0, jtr1 = 0;
    for (size_t i = 0; i < n.size(); ++i) {
      double na = std::pow(n[i], -alpha);
      double r = 1.0 - A * na - f[i];
      double j0 = -na;
      double j1 = A * std::log(n[i]) * na;
      jtj00 += j0 * j0; jtj01 += j0 * j1; jtj11 += j1 * j1;
      jtr0 += j0 * r; jtr1 += j1 * r;
    }
    double grad_norm = std::hypot(jtr0, jtr1);
    if (grad_norm < 1e-10) { converged = true; break; }
    double det = jtj00 * jtj11 - jtj01 * jtj01;
    double dA, dal;
    if (std::abs(det) < 1e-300) {  // singular Jacobian: gradient step
      dA = -jtr0; dal = -jtr1;
    } else {
      dA = -(jtj11 * jtr0 - jtj01 * jtr1) / det;
      dal = -(jtj00 * jtr1 - jtj01 * jtr0) / det;
    }
    // damping 0.5 on step rejection
    double scale = 1.0;
    bool accepted = false;
    for (int h = 0; h < 40; ++h) {
      double A2 = A + scale * dA, al2 = alpha + scale * dal;
      double s2 = sse_of(n, f, A2, al2);
      if (std::isfinite(s2) && s2 <= sse) {
        if (sse - s2 < 1e-16 && grad_norm < 1e-8) converged = true;
        A = A2; alpha = al2; sse = s2;
        accepted = true;
        break;
      }
      scale *= 0.5;
    }
    if (!accepted) { converged = true; break; }
    if (converged) break;
  }
  return {A, alpha, sse, converged};
}

}  // namespace

FitResult fit_power_law(const std::vector<double>& n_values,
                        const std::vector<double>& f_values) {
  if (n_values.size() != f_values.size() || n_values.size() < 3)
    throw std::invalid_argument("fit_power_law: need >= 3 points");
  for (double f : f_values)
    if (f > 1.0 + 1e-12)
      throw std::invalid_argument("fit_power_law: f > 1");
  FitResult out;
  bool all_saturated = true;
  for (double f : f_values) all_saturated = all_saturated && f >= 1.0 - 1e-12;
  if (all_saturated) {  // A -> 0, alpha not identifiable
    out.A = 0.0;
    out.alpha = 0.0;
    out.converged = true;
    out.alpha_unidentifiable = true;
    out.r_squared = 1.0;
    return out;
  }
  double fmin = *std::min_element(f_values.begin(), f_values.end());
  double A0 = std::max(1e-6, 1.0 - fmin);
  GnState best{0, 0, std::numeric_limits<double>::infinity(), false};
  for (double alpha0 : {0.1, 0.5, 1.0, 2.0}) {
    GnState g = gauss_newton(n_values, f_values, A0, alpha0);
    // best residual wins; ties broken by lowest alpha
    if (g.sse < best.sse - 1e-15 ||
        (std::abs(g.sse - best.sse) <= 1e-15 && g.alpha < best.alpha)) {
      best = g;
    }
  }
  out.A = best.A;
  out.alpha = best.alpha;
  out.converged = best.converged;
  // covariance = sigma^2 (J^T J)^-1 from the final Jacobian
  double jtj00 = 0, jtj01 = 0, jtj11 = 0;
  for (size_t i = 0; i < n_values.size(); ++i) {
    double na = std::pow(n_values[i], -best.alpha);
    double j0 = -na, j1 = best.A * std::log(n_values[i]) * na;
    jtj00 += j0 * j0; jtj01 += j0 * j1; jtj11 += j1 * j1;
  }
  double dof = std::max<double>(1.0, static_cast<double>(n_values.size()) - 2.0);
  double sigma2 = best.sse / dof;
  double det = jtj00 * jtj11 - jtj01 * jtj01;
  if (std::abs(det) > 1e-300) {
    out.cov(0, 0) = sigma2 * jtj11 / det;
    out.cov(1, 1) = sigma2 * jtj00 / det;
    out.cov(0, 1) = out.cov(1, 0) = -sigma2 * jtj01 / det;
  } else {
    out.alpha_unidentifiable = true;
  }
  double mean = 0;
  for (double f : f_values) mean += f;
  mean /= static_cast<double>(f_values.size());
  double sstot = 0;
  for (double f : f_values) sstot += (f - mean) * (f - mean);
  out.r_squared = sstot > 0 ? 1.0 - best.sse / sstot : 1.0;
  return out;
}

LinearFit fit_linear(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2)
    throw std::invalid_argument("fit_linear: need >= 2 points");
  const double n = static_cast<double>(x.size());
  double sx = 0, sy = 0, sxx = 0, syy = 0, sxy = 0;
  for (size_t i = 0; i < x.size(); ++i) {
    sx += x[i]; sy += y[i];
    sxx += x[i] * x[i]; syy += y[i] * y[i]; sxy += x[i] * y[i];
  }
  double vx = sxx - sx * sx / n, vy = syy - sy * sy / n, cxy = sxy - sx * sy / n;
  LinearFit lf;
  if (vx <= 0) return lf;
  lf.slope = cxy / vx;
  lf.intercept = (sy - lf.slope * sx) / n;
  lf.pearson_r = vy > 0 ? cxy / std::sqrt(vx * vy) : 0.0;
  lf.r_squared = lf.pearson_r * lf.pearson_r;
  return lf;
}

CrossoverResult crossover_fixed_point(double gamma, double gamma_ad) {
  CrossoverResult cr;
  // 2 gamma_ad d^2 - d + 2 gamma = 0
  if (gamma_ad == 0.0) {
    // degenerate linear case: -d + 2 gamma = 0
    cr.diagnostic = "gamma_ad = 0: quadratic degenerates to -d + 2 gamma = 0";
    if (gamma > 0.0) {
      cr.roots.push_back(2.0 * gamma);
      cr.physical.push_back(2.0 * gamma > 1.0);
    }
    return cr;
  }
  double a = 2.0 * gamma_ad, b = -1.0, c = 2.0 * gamma;
  double disc = b * b - 4.0 * a * c;
  if (disc < 0.0) {
    cr.diagnostic = "no real roots (discriminant " + std::to_string(disc) +
                    " < 0); use the empirical sweep crossover";
    return cr;
  }
  double sq = std::sqrt(disc);
  for (double r : {(-b - sq) / (2 * a), (-b + sq) / (2 * a)}) {
    cr.roots.push_back(r);
    cr.physical.push_back(r > 1.0);
  }
  cr.diagnostic = "real roots found";
  return cr;
}

}  // namespace bcqec
