#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "ucs/graph.hpp"

namespace ucs {

/// Thin SVD factors of W^{1/2} B restricted to its nonzero singular values:
/// W^{1/2} B = U^T diag(sigma) Vt.
///
/// `U` is n x m with orthonormal rows, so its columns u_i (one per edge)
/// satisfy sum_i u_i u_i^T = I_n. n = |V| - r.
struct OrthonormalEdgeBasis {
  Eigen::MatrixXd U;
  Eigen::VectorXd sigma;
  Eigen::MatrixXd Vt;

  std::size_t n() const noexcept { return static_cast<std::size_t>(U.rows()); }
  std::size_t m() const noexcept { return static_cast<std::size_t>(U.cols()); }
  auto column(EdgeIndex i) const { return U.col(static_cast<Eigen::Index>(i)); }
  /// ||u_i||^2, the edge's leverage.
  double leverage(EdgeIndex i) const { return column(i).squaredNorm(); }
};

/// Default relative cutoff for counting nonzero singular values.
double default_rank_tolerance(std::size_t edge_count, std::size_t vertex_count);

/// Keeps the singular values above `rank_tol * sigma_max` and throws
/// RankMismatchError unless exactly |V| - r survive.
OrthonormalEdgeBasis edge_orthonormal_basis(const IncidenceSystem& sys,
                                            const ComponentLabeling& labeling,
                                            std::optional<double> rank_tol = std::nullopt);

OrthonormalEdgeBasis edge_orthonormal_basis(const Graph& g);

/// Eigenvalues sorted in descending order.
struct EigenSpectrum {
  std::vector<double> values;

  std::size_t size() const noexcept { return values.size(); }
  double smallest() const { return values.back(); }
  double largest() const { return values.front(); }
};

/// Descending spectrum plus matching orthonormal eigenvectors (column j of
/// `vectors` belongs to `spectrum.values[j]`).
struct SymmetricEigen {
  EigenSpectrum spectrum;
  Eigen::MatrixXd vectors;
};

/// Eigenvalues of (A + A^T)/2. Throws DimensionError for non-square or
/// noticeably asymmetric input and ValidationError for non-finite entries.
EigenSpectrum sym_eigvals(const Eigen::MatrixXd& a);
SymmetricEigen sym_eigen(const Eigen::MatrixXd& a);

/// sum_j 1 / (lambda_j - shift). Requires shift < smallest eigenvalue.
double shifted_inverse_trace(const EigenSpectrum& spec, double shift);

struct Extremes {
  double lower = 0.0;
  double upper = 0.0;
};

/// Gram accumulation sum_{i in F} u_i u_i^T.
Eigen::MatrixXd accumulate_columns(const OrthonormalEdgeBasis& basis,
                                   std::span<const EdgeIndex> selected);

/// (lambda_min, lambda_max) of sum_{i in F} u_i u_i^T. These are the extreme
/// values of x^T L_H x / x^T L_G x over x outside the kernel of L_G.
Extremes generalized_extremes(const OrthonormalEdgeBasis& basis,
                              std::span<const EdgeIndex> selected);

}  // namespace ucs
