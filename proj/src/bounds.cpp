#include "ucs/bounds.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "ucs/error.hpp"

namespace ucs {

namespace {

void require_valid_triple(std::size_t n, std::size_t m, std::size_t ell) {
  if (n == 0 || !(n < ell && ell < m)) {
    throw DomainError("require 0 < n < ell < m, got n=" + std::to_string(n) + " m=" +
                      std::to_string(m) + " ell=" + std::to_string(ell));
  }
}

}  // namespace

double barrier_objective(std::size_t n, std::size_t m, std::size_t ell, double T_hat) {
  const double nd = static_cast<double>(n);
  const double md = static_cast<double>(m);
  const double ld = static_cast<double>(ell);
  const double ratio = nd / T_hat;
  return (1.0 - ratio) * ld / (md - (ld - 1.0) / 2.0 + T_hat - nd) - ratio;
}

BarrierChoice choose_T(std::size_t n, std::size_t m, std::size_t ell) {
  require_valid_triple(n, m, ell);
  const double nd = static_cast<double>(n);
  const double md = static_cast<double>(m);
  const double ld = static_cast<double>(ell);
  const double d = md + (ld + 1.0) / 2.0 - nd;
  const double e = md - (ld - 1.0) / 2.0;
  BarrierChoice out;
  out.T_hat_star = (nd * d + std::sqrt(nd * ld * e * d)) / (ld - nd);
  out.F_at_star = barrier_objective(n, m, ell, out.T_hat_star);
  out.T = out.T_hat_star * (1.0 + out.F_at_star);
  return out;
}

double kappa_lower_bound(std::size_t n, std::size_t m, std::size_t ell) {
  const double f = choose_T(n, m, ell).F_at_star;
  return f / (1.0 + f);
}

double kappa_lower_bound_closed_form(std::size_t n, std::size_t m, std::size_t ell) {
  require_valid_triple(n, m, ell);
  const double nd = static_cast<double>(n);
  const double md = static_cast<double>(m);
  const double ld = static_cast<double>(ell);
  const double d = md + (ld + 1.0) / 2.0 - nd;
  const double e = md - (ld - 1.0) / 2.0;
  const double gap2 = (ld - nd) * (ld - nd);
  const double root_sum = std::sqrt(nd * d) + std::sqrt(ld * e);
  return gap2 / (root_sum * root_sum + gap2);
}

double ddsss_bound(std::size_t n, std::size_t m, std::size_t ell) {
  if (n == 0 || !(n <= ell && ell <= m)) {
    throw DomainError("require 0 < n <= ell <= m, got n=" + std::to_string(n) + " m=" +
                      std::to_string(m) + " ell=" + std::to_string(ell));
  }
  const double a = std::sqrt(static_cast<double>(ell)) - std::sqrt(static_cast<double>(n));
  const double b = std::sqrt(static_cast<double>(ell)) + std::sqrt(static_cast<double>(m - n));
  return a * a / (b * b + a * a);
}

double ramanujan_degree(std::size_t n, std::size_t ell) {
  if (n <= 1) return std::numeric_limits<double>::infinity();
  return static_cast<double>(ell) / static_cast<double>(n - 1);
}

double ramanujan_factor(std::size_t n, std::size_t ell) {
  const double d = ramanujan_degree(n, ell);
  if (std::isinf(d)) return 1.0;
  if (d <= 1.0) return std::numeric_limits<double>::quiet_NaN();
  const double s = std::sqrt(d);
  return ((s + 1.0) / (s - 1.0)) * ((s + 1.0) / (s - 1.0));
}

double kappa_lower_bound_approx(std::size_t n, std::size_t m, std::size_t ell) {
  const double d = ramanujan_degree(n, ell);
  if (std::isinf(d) || d <= 1.0) return std::numeric_limits<double>::quiet_NaN();
  const double g = (std::sqrt(d) - 1.0) * (std::sqrt(d) - 1.0);
  return g / (static_cast<double>(m) / static_cast<double>(n) + d / 2.0 + g);
}

BoundReport bound_report(std::size_t n, std::size_t m, std::size_t ell) {
  const BarrierChoice choice = choose_T(n, m, ell);
  BoundReport r;
  r.n = n;
  r.m = m;
  r.ell = ell;
  r.T_hat_star = choice.T_hat_star;
  r.F_at_star = choice.F_at_star;
  r.T = choice.T;
  r.kappa_inv_ucs = choice.F_at_star / (1.0 + choice.F_at_star);
  r.kappa_inv_ddsss = ddsss_bound(n, m, ell);
  r.ramanujan_factor = ramanujan_factor(n, ell);
  r.kappa_inv_approx = kappa_lower_bound_approx(n, m, ell);
  return r;
}

}  // namespace ucs
