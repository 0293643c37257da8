#pragma once

#include <utility>

#include "qsat12/error.hpp"

namespace qsat12 {

enum class ThresholdBranch { Saturated2, RootOfH };

struct ThresholdResult {
  double alpha = 0.0;
  double c_star = 0.0;
  ThresholdBranch branch = ThresholdBranch::Saturated2;
  double residual = 0.0;  // |alpha H(c*) - 1| on the RootOfH branch
};

struct GPoint {
  double alpha = 0.0;
  double c = 0.0;
  double beta = 0.0;
  double gamma = 0.0;
  double x0 = 0.0;
  double value = 0.0;
};

// H(c) = ln c + (2/c - 1) ln(2 - c) on [1, 2] (boundaries by continuous
// extension).
double H(double c);
double H_derivative(double c);

// c*(alpha): 2 when alpha ln 2 <= 1, else the unique root of H(c) = 1/alpha
// in (1,2), to |alpha H(c) - 1| < 1e-12.
ThresholdResult critical_ratio(double alpha);

// The unique x0 >= 0 with 1 - e^{-x0} = (beta/gamma) x0; positive iff
// beta < gamma. Residual below 1e-12.
double solve_x0(double beta, double gamma);

// Exponential growth rate of the expected snake counts; evaluates both
// algebraic forms and cross-checks them to 1e-10.
GPoint g(double alpha, double c, double beta, double gamma);

// Closed-form stationary point (beta_hat, gamma_hat) of g on D_alpha.
std::pair<double, double> stationary_point(double alpha, double c);

// gamma_beta = (2 alpha / c) ln(2 alpha / (2 alpha - beta c)), the argmax of
// gamma -> g(beta, gamma).
double gamma_of_beta(double alpha, double c, double beta);

// K_c(x) = x ln c + (2/c - x) ln(1 - cx/2) - (1-x) ln(1-x); satisfies
// g(beta, gamma_beta) = -1 + alpha K_c(beta/alpha).
double K(double c, double x);

// Analytic second derivative of g in gamma: (gamma - beta x0) /
// (gamma (gamma - beta (x0+1))), negative on the open domain.
double g_gamma_second_derivative(double alpha, double c, double beta, double gamma);

}  // namespace qsat12
