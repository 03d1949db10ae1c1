#pragma once

#include <cstddef>

namespace ucs {

/// Barrier budget T and the analysis quantities it is derived from.
struct BarrierChoice {
  double T_hat_star = 0.0;  ///< maximizer of barrier_objective over (n, inf)
  double F_at_star = 0.0;   ///< barrier_objective(T_hat_star)
  double T = 0.0;           ///< T_hat_star * (1 + F_at_star)
};

/// F(T_hat) = (1 - n/T_hat) * ell / (m - (ell-1)/2 + T_hat - n) - n/T_hat.
/// The lower bound on lambda_min(A_ell) is F/(1+F) for any T_hat > n.
double barrier_objective(std::size_t n, std::size_t m, std::size_t ell, double T_hat);

/// Closed-form maximizer of barrier_objective. Throws DomainError unless
/// 0 < n < ell < m.
BarrierChoice choose_T(std::size_t n, std::size_t m, std::size_t ell);

/// 1/kappa evaluated as F(T*)/(1+F(T*)); this is the guaranteed lower bound
/// on lambda_min(A_ell).
double kappa_lower_bound(std::size_t n, std::size_t m, std::size_t ell);

/// The same quantity in closed form,
///   (ell-n)^2 / ((sqrt(n D) + sqrt(ell E))^2 + (ell-n)^2),
/// with D = m + (ell+1)/2 - n and E = m - (ell-1)/2.
double kappa_lower_bound_closed_form(std::size_t n, std::size_t m, std::size_t ell);

/// Dual-set bound (sqrt(ell)-sqrt(n))^2 / ((sqrt(ell)+sqrt(m-n))^2 + (sqrt(ell)-sqrt(n))^2).
/// Requires 0 < n <= ell <= m.
double ddsss_bound(std::size_t n, std::size_t m, std::size_t ell);

/// ell / (n - 1), the real-valued degree parameter of a reweighted
/// (twice-Ramanujan) sparsifier with ell edges. Infinite for n == 1.
double ramanujan_degree(std::size_t n, std::size_t ell);

/// ((sqrt(d)+1)/(sqrt(d)-1))^2 with d = ramanujan_degree(n, ell). NaN when d <= 1.
double ramanujan_factor(std::size_t n, std::size_t ell);

/// (sqrt(d)-1)^2 / (m/n + d/2 + (sqrt(d)-1)^2), the large-n approximation of
/// 1/kappa written in terms of the same d. NaN when d <= 1.
double kappa_lower_bound_approx(std::size_t n, std::size_t m, std::size_t ell);

struct BoundReport {
  std::size_t n = 0;
  std::size_t m = 0;
  std::size_t ell = 0;
  double T_hat_star = 0.0;
  double F_at_star = 0.0;
  double T = 0.0;
  double kappa_inv_ucs = 0.0;
  double kappa_inv_ddsss = 0.0;
  double ramanujan_factor = 0.0;
  double kappa_inv_approx = 0.0;
};

BoundReport bound_report(std::size_t n, std::size_t m, std::size_t ell);

}  // namespace ucs
