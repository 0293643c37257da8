#include "qsat12/threshold.hpp"

#include <cmath>
#include <limits>
#include <utility>

namespace qsat12 {

namespace {

constexpr double kFormAgreement = 1e-10;
constexpr double kE = 2.718281828459045235360287471352662498;

double xlogx(double x) { return x == 0.0 ? 0.0 : x * std::log(x); }

}  // namespace

double H(double c) {
  if (!(c >= 1.0) || !(c <= 2.0)) {
    throw Error(Errc::DomainError, "H is defined on [1,2]");
  }
  if (c == 2.0) return std::log(2.0);  // (2/c-1) ln(2-c) -> 0
  return std::log(c) + (2.0 / c - 1.0) * std::log(2.0 - c);
}

double H_derivative(double c) {
  if (!(c > 1.0) || !(c < 2.0)) {
    throw Error(Errc::DomainError, "H' is defined on (1,2)");
  }
  return 1.0 / c - (2.0 / (c * c)) * std::log(2.0 - c) - (2.0 / c - 1.0) / (2.0 - c);
}

ThresholdResult critical_ratio(double alpha) {
  if (!(alpha > 0.0)) throw Error(Errc::NonPositiveAlpha, "alpha must be positive");
  ThresholdResult res;
  res.alpha = alpha;
  if (alpha * std::log(2.0) <= 1.0) {
    res.c_star = 2.0;
    res.branch = ThresholdBranch::Saturated2;
    res.residual = 0.0;
    return res;
  }
  // H is strictly increasing on (1,2) (checked as a test property); bracket
  // bisection refined by safeguarded Newton
  const double target = 1.0 / alpha;
  double lo = 1.0, hi = 2.0;
  double c = 0.5 * (lo + hi);
  for (int i = 0; i < 80; ++i) {
    c = 0.5 * (lo + hi);
    if (H(c) < target) {
      lo = c;
    } else {
      hi = c;
    }
  }
  c = 0.5 * (lo + hi);
  for (int i = 0; i < 8; ++i) {
    double f = H(c) - target;
    double next = c - f / H_derivative(c);
    if (!(next > lo) || !(next < hi)) break;
    c = next;
  }
  res.c_star = c;
  res.branch = ThresholdBranch::RootOfH;
  res.residual = std::abs(alpha * H(c) - 1.0);
  return res;
}

double solve_x0(double beta, double gamma) {
  if (!(beta > 0.0) || !(beta <= gamma)) {
    throw Error(Errc::DomainError, "need 0 < beta <= gamma");
  }
  if (beta == gamma) return 0.0;
  const double r = beta / gamma;
  auto f = [&](double x) { return -std::expm1(-x) - r * x; };
  // (1 - e^-x)/x is strictly decreasing from 1, so f has one positive root;
  // f > 0 left of it. At x = 2/r, rx = 2 > 1 >= 1 - e^-x, so f < 0.
  double lo = 0.0, hi = 2.0 / r;
  for (int i = 0; i < 200; ++i) {
    double mid = 0.5 * (lo + hi);
    if (mid == lo || mid == hi) break;
    if (f(mid) > 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  double x = 0.5 * (lo + hi);
  for (int i = 0; i < 4; ++i) {
    double deriv = std::exp(-x) - r;
    if (deriv == 0.0) break;
    double next = x - f(x) / deriv;
    if (!(next >= lo) || !(next <= hi)) break;
    x = next;
  }
  return x;
}

GPoint g(double alpha, double c, double beta, double gamma) {
  if (!(beta > 0.0) || !(beta <= alpha) || !(beta <= gamma)) {
    throw Error(Errc::DomainError, "(beta, gamma) outside D_alpha");
  }
  GPoint pt;
  pt.alpha = alpha;
  pt.c = c;
  pt.beta = beta;
  pt.gamma = gamma;
  // Both algebraic forms are evaluated and cross-checked. The product form
  // loses all precision once it leaves the normal double range, so it
  // defers to the expanded log-space form there. The agreement tolerance
  // scales with the magnitude of the cancelling terms.
  auto cross_check = [&](double prod, double expanded, double term_scale) {
    double form_product = std::log(prod);
    if (!std::isfinite(form_product) || prod < std::numeric_limits<double>::min()) {
      return expanded;
    }
    if (std::abs(form_product - expanded) > kFormAgreement * term_scale) {
      throw Error(Errc::InternalMismatch, "g forms disagree beyond tolerance");
    }
    return expanded;
  };
  if (beta == gamma) {
    // diagonal convention: 0^0 = 1 and (e^0 - 1)/0 = 1
    pt.x0 = 0.0;
    double t1 = alpha * std::log(alpha);
    double t2 = xlogx(alpha - beta);
    double t3 = beta * std::log(c / (kE * alpha));
    double prod = (1.0 / kE) * std::pow(c / (kE * alpha), beta) * std::pow(alpha, alpha) /
                  std::pow(alpha - beta, alpha - beta);
    double expanded = -1.0 + t1 - t2 + t3;
    pt.value = cross_check(prod, expanded, 1.0 + std::abs(t1) + std::abs(t2) + std::abs(t3));
    return pt;
  }
  const double x0 = solve_x0(beta, gamma);
  pt.x0 = x0;
  const double em1 = std::expm1(x0);
  double t1 = alpha * std::log(alpha);
  double t2 = xlogx(alpha - beta);
  double t3 = gamma * std::log(c * gamma / (2.0 * kE * x0 * alpha));
  // ln(e^x0 - 1) in log space; expm1 overflows already around x0 = 710
  double log_em1 = x0 + std::log1p(-std::exp(-x0));
  double t4 = beta * (std::log(2.0 / beta) + log_em1);
  double prod = (1.0 / kE) * std::pow(c * gamma / (2.0 * kE * x0 * alpha), gamma) *
                std::pow(alpha, alpha) /
                (std::pow(beta, beta) * std::pow(alpha - beta, alpha - beta)) *
                std::pow(2.0, beta) * std::pow(em1, beta);
  double expanded = -1.0 + t1 - t2 + t3 + t4;
  pt.value = cross_check(
      prod, expanded, 1.0 + std::abs(t1) + std::abs(t2) + std::abs(t3) + std::abs(t4));
  return pt;
}

std::pair<double, double> stationary_point(double alpha, double c) {
  if (!(alpha > 0.0) || !(c > 1.0) || !(c < 2.0)) {
    throw Error(Errc::DomainError, "need alpha > 0 and c in (1,2)");
  }
  double beta_hat = 2.0 * alpha * (c - 1.0) / c;
  double gamma_hat = -2.0 * alpha * std::log(2.0 - c) / c;
  return {beta_hat, gamma_hat};
}

double gamma_of_beta(double alpha, double c, double beta) {
  if (!(beta > 0.0) || !(beta <= alpha) || !(beta * c < 2.0 * alpha)) {
    throw Error(Errc::DomainError, "need 0 < beta <= alpha and beta c < 2 alpha");
  }
  return (2.0 * alpha / c) * std::log(2.0 * alpha / (2.0 * alpha - beta * c));
}

double K(double c, double x) {
  if (!(x > 0.0) || !(x < 1.0) || !(c * x < 2.0)) {
    throw Error(Errc::DomainError, "need 0 < x < 1 and c x < 2");
  }
  return x * std::log(c) + (2.0 / c - x) * std::log(1.0 - c * x / 2.0) -
         (1.0 - x) * std::log(1.0 - x);
}

double g_gamma_second_derivative(double alpha, double c, double beta, double gamma) {
  if (!(beta > 0.0) || !(beta < gamma) || !(beta <= alpha)) {
    throw Error(Errc::DomainError, "second derivative needs beta < gamma in D_alpha");
  }
  (void)c;  // the gamma-curvature of g does not involve c
  const double x0 = solve_x0(beta, gamma);
  return (gamma - beta * x0) / (gamma * (gamma - beta * (x0 + 1.0)));
}

}  // namespace qsat12
