#include "ucs/spectra.hpp"

#include <algorithm>
#include <cmath>

#include "ucs/error.hpp"

namespace ucs {

double default_rank_tolerance(std::size_t edge_count, std::size_t vertex_count) {
  return 1e-10 * static_cast<double>(std::max<std::size_t>({edge_count, vertex_count, 1}));
}

OrthonormalEdgeBasis edge_orthonormal_basis(const IncidenceSystem& sys,
                                            const ComponentLabeling& labeling,
                                            std::optional<double> rank_tol) {
  const Eigen::Index m = sys.incidence.rows();
  const Eigen::Index nv = sys.incidence.cols();
  if (static_cast<std::size_t>(nv) != labeling.labels.size()) {
    throw DimensionError("component labeling covers " + std::to_string(labeling.labels.size()) +
                         " vertices, incidence matrix has " + std::to_string(nv));
  }
  const auto n = static_cast<Eigen::Index>(labeling.labels.size() - labeling.component_count);
  const double tol = rank_tol.value_or(
      default_rank_tolerance(static_cast<std::size_t>(m), static_cast<std::size_t>(nv)));

  OrthonormalEdgeBasis basis;
  if (n == 0) {
    basis.U = Eigen::MatrixXd::Zero(0, m);
    basis.sigma = Eigen::VectorXd::Zero(0);
    basis.Vt = Eigen::MatrixXd::Zero(0, nv);
    return basis;
  }

  const Eigen::MatrixXd scaled = sys.weights.cwiseSqrt().asDiagonal() * sys.incidence;
  Eigen::BDCSVD<Eigen::MatrixXd> svd(scaled, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const Eigen::VectorXd& s = svd.singularValues();
  const double cutoff = tol * s(0);
  const auto numerical_rank = static_cast<Eigen::Index>((s.array() > cutoff).count());
  if (numerical_rank != n) {
    throw RankMismatchError("numerical rank " + std::to_string(numerical_rank) +
                            " of W^{1/2}B differs from |V|-r = " + std::to_string(n) +
                            " at relative tolerance " + std::to_string(tol));
  }
  basis.U = svd.matrixU().leftCols(n).transpose();
  basis.sigma = s.head(n);
  basis.Vt = svd.matrixV().leftCols(n).transpose();
  return basis;
}

OrthonormalEdgeBasis edge_orthonormal_basis(const Graph& g) {
  return edge_orthonormal_basis(incidence_system(g), connected_components(g));
}

namespace {

Eigen::MatrixXd checked_symmetric_part(const Eigen::MatrixXd& a) {
  if (a.rows() != a.cols()) {
    throw DimensionError("matrix is " + std::to_string(a.rows()) + "x" + std::to_string(a.cols()) +
                         ", expected square");
  }
  if (!a.allFinite()) throw ValidationError("matrix has non-finite entries");
  const double scale = a.size() == 0 ? 0.0 : a.cwiseAbs().maxCoeff();
  const double asym = a.size() == 0 ? 0.0 : (a - a.transpose()).cwiseAbs().maxCoeff();
  if (asym > 1e-12 * scale) {
    throw ValidationError("matrix is not symmetric (max asymmetry " + std::to_string(asym) + ")");
  }
  return 0.5 * (a + a.transpose());
}

}  // namespace

SymmetricEigen sym_eigen(const Eigen::MatrixXd& a) {
  const Eigen::MatrixXd sym = checked_symmetric_part(a);
  const Eigen::Index n = sym.rows();
  SymmetricEigen out;
  if (n == 0) return out;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(sym, Eigen::ComputeEigenvectors);
  if (solver.info() != Eigen::Success) throw SolverError("symmetric eigensolver did not converge");
  // Eigen returns ascending order.
  out.spectrum.values.resize(static_cast<std::size_t>(n));
  out.vectors.resize(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    out.spectrum.values[static_cast<std::size_t>(j)] = solver.eigenvalues()(n - 1 - j);
    out.vectors.col(j) = solver.eigenvectors().col(n - 1 - j);
  }
  return out;
}

EigenSpectrum sym_eigvals(const Eigen::MatrixXd& a) {
  const Eigen::MatrixXd sym = checked_symmetric_part(a);
  EigenSpectrum out;
  if (sym.rows() == 0) return out;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(sym, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw SolverError("symmetric eigensolver did not converge");
  const auto& ev = solver.eigenvalues();
  out.values.assign(ev.data(), ev.data() + ev.size());
  std::reverse(out.values.begin(), out.values.end());
  return out;
}

double shifted_inverse_trace(const EigenSpectrum& spec, double shift) {
  if (spec.values.empty()) throw DomainError("empty spectrum");
  if (!(shift < spec.smallest())) {
    throw DomainError("shift " + std::to_string(shift) +
                      " is not below the smallest eigenvalue " + std::to_string(spec.smallest()));
  }
  double sum = 0.0;
  for (double lam : spec.values) sum += 1.0 / (lam - shift);
  return sum;
}

Eigen::MatrixXd accumulate_columns(const OrthonormalEdgeBasis& basis,
                                   std::span<const EdgeIndex> selected) {
  const auto n = static_cast<Eigen::Index>(basis.n());
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
  for (EdgeIndex i : selected) {
    if (i >= basis.m()) throw DimensionError("edge index " + std::to_string(i) + " out of range");
    a.noalias() += basis.column(i) * basis.column(i).transpose();
  }
  return a;
}

Extremes generalized_extremes(const OrthonormalEdgeBasis& basis,
                              std::span<const EdgeIndex> selected) {
  if (basis.n() == 0) return {};
  const EigenSpectrum spec = sym_eigvals(accumulate_columns(basis, selected));
  return {spec.smallest(), spec.largest()};
}

}  // namespace ucs
