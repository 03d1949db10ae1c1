#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "ucs/bounds.hpp"
#include "ucs/graph.hpp"
#include "ucs/spectra.hpp"

namespace ucs {

enum class TieRule { first_fit, best_fit };

TieRule parse_tie_rule(const std::string& name);  // "first" | "best"
std::string to_string(TieRule rule);

/// Root of tr(A - lambda I)^{-1} = T below the smallest eigenvalue, to
/// relative accuracy `tol` in the trace. Safeguarded Newton on the bracket
/// [lambda_n - n/T, lambda_n).
double solve_lambda(const EigenSpectrum& spec, double T, double tol = 1e-12);

/// f(x) = (x - lambda)[m - t + sum (1-l_j)/(l_j-lambda)]
///        - sum (1-l_j)/((l_j-lambda)(l_j-x)) / sum 1/((l_j-lambda)(l_j-x)).
double lambda_hat_residual(const EigenSpectrum& spec, double lambda, std::size_t m,
                           std::size_t t, double x);

/// A root of lambda_hat_residual in (lambda, lambda_n), found by bisection.
/// Throws SolverError if the residual does not change sign on the bracket.
double solve_lambda_hat(const EigenSpectrum& spec, double lambda, std::size_t m, std::size_t t,
                        double tol = 1e-12);

/// tr((M + u u^T)^{-1}) from M^{-1}, M^{-2} and tr(M^{-1}) by Sherman-Morrison:
///   base_trace - u^T M^{-2} u / (1 + u^T M^{-1} u).
/// Throws DegenerateUpdateError if |1 + u^T M^{-1} u| < 1e-14.
double candidate_trace(const Eigen::MatrixXd& m_inv, const Eigen::MatrixXd& m_inv2,
                       double base_trace, const Eigen::Ref<const Eigen::VectorXd>& u);

struct SelectionParams {
  std::size_t ell = 0;
  double T = 0.0;
  TieRule tie_rule = TieRule::first_fit;
  double root_tol = 1e-12;
  double trace_slack = 0.0;
  /// Worker threads for the candidate scan. The result never depends on it.
  std::size_t threads = 1;

  /// Defaults for an (n, m, ell) instance: T from choose_T, root_tol 1e-12,
  /// trace_slack 1e-9 T. Throws DomainError unless 0 < n < ell < m.
  static SelectionParams defaults(std::size_t n, std::size_t m, std::size_t ell);
};

/// Caller-facing knobs for sparsify(); unset fields take SelectionParams::defaults.
struct SparsifyOptions {
  std::optional<TieRule> tie_rule;
  std::optional<double> T;
  std::optional<double> root_tol;
  std::optional<double> trace_slack;
  std::optional<std::size_t> threads;
};

/// Algorithm state at the start of an iteration, after both shifts are solved.
struct SelectionState {
  std::size_t t = 0;
  std::vector<EdgeIndex> selected;
  std::vector<bool> is_selected;
  Eigen::MatrixXd A;
  EigenSpectrum spectrum;
  Eigen::MatrixXd eigenvectors;
  double lambda = 0.0;
  double lambda_hat = 0.0;
  Eigen::MatrixXd m_inv;   ///< (A - lambda_hat I)^{-1}
  Eigen::MatrixXd m_inv2;  ///< (A - lambda_hat I)^{-2}
  double base_trace = 0.0; ///< tr(A - lambda_hat I)^{-1}

  /// A_0 = 0 over n dimensions, nothing selected, m candidate columns.
  static SelectionState initial(std::size_t n, std::size_t m);

  /// Recomputes the spectrum of A, both shifts and the cached inverses.
  void prepare(const SelectionParams& params, std::size_t m);

  /// A += u_i u_i^T, marks i selected, advances t.
  void commit(const OrthonormalEdgeBasis& basis, EdgeIndex i);
};

struct IndexChoice {
  EdgeIndex index = 0;
  double trace = 0.0;
  /// Unselected candidates a sequential ascending scan evaluates before
  /// stopping (first_fit) or in total (best_fit).
  std::size_t candidates_examined = 0;
};

/// Picks i not yet selected with candidate_trace(u_i) <= T + trace_slack.
/// first_fit: smallest such i. best_fit: smallest trace, then smallest i.
/// Throws InfeasibleError if nothing qualifies.
IndexChoice select_index(const SelectionState& state, const OrthonormalEdgeBasis& basis,
                         const SelectionParams& params);

struct IterationRecord {
  std::size_t t = 0;
  double lambda = 0.0;
  double lambda_hat = 0.0;
  double trace_at_lambda = 0.0;  ///< tr(A_t - lambda I)^{-1} as computed
  double chosen_trace = 0.0;     ///< tr(A_t - lambda_hat I + u_i u_i^T)^{-1}
  EdgeIndex chosen = 0;
  std::size_t candidates_examined = 0;
};

struct SparsifierResult {
  std::size_t n = 0;
  std::size_t m = 0;
  SelectionParams params;
  std::vector<EdgeIndex> selected_edges;
  double lambda_min_achieved = 0.0;
  double lambda_max_achieved = 0.0;
  double kappa_inv_bound = 0.0;
  std::vector<IterationRecord> per_iteration;
  double wall_time_seconds = 0.0;

  bool bound_satisfied() const noexcept { return lambda_min_achieved > kappa_inv_bound; }
};

/// Greedy unweighted column selection of `ell` columns of the basis.
SparsifierResult sparsify(const OrthonormalEdgeBasis& basis, std::size_t ell,
                          const SparsifyOptions& options = {});
SparsifierResult sparsify(const Graph& g, std::size_t ell, const SparsifyOptions& options = {});

/// Spanning forest (|V| - r edges) obtained by selecting n + 1 columns and
/// dropping the latest-selected edge of the single cycle they contain. When
/// m == n + 1 every edge is taken before the cycle edge is dropped; when
/// m <= n the graph is already a forest and all edges are returned.
std::vector<EdgeIndex> spanning_structure(const Graph& g, const SparsifyOptions& options = {});

}  // namespace ucs
