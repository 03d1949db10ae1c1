#include "ucs/selection.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <numeric>
#include <thread>

#include "ucs/error.hpp"

namespace ucs {

TieRule parse_tie_rule(const std::string& name) {
  if (name == "first" || name == "first_fit") return TieRule::first_fit;
  if (name == "best" || name == "best_fit") return TieRule::best_fit;
  throw ValidationError("unknown tie rule '" + name + "' (expected first or best)");
}

std::string to_string(TieRule rule) { return rule == TieRule::first_fit ? "first" : "best"; }

double solve_lambda(const EigenSpectrum& spec, double T, double tol) {
  if (!(T > 0.0)) throw DomainError("barrier budget T must be positive");
  if (spec.values.empty()) throw DomainError("empty spectrum");
  const double top = spec.smallest();
  const double n = static_cast<double>(spec.size());

  // Every term is at most T/n at the left end, so the trace there is <= T.
  double lo = top - n / T;
  double hi = top;
  double x = lo;
  double best_x = lo;
  double best_gap = std::numeric_limits<double>::infinity();
  for (int iter = 0; iter < 500; ++iter) {
    double trace = 0.0;
    double slope = 0.0;
    for (double lam : spec.values) {
      const double r = 1.0 / (lam - x);
      trace += r;
      slope += r * r;
    }
    const double g = trace - T;
    if (std::abs(g) < best_gap) {
      best_gap = std::abs(g);
      best_x = x;
    }
    if (std::abs(g) <= tol * T) return x;
    if (g < 0.0) {
      lo = x;
    } else {
      hi = x;
    }
    if (!(std::nextafter(lo, hi) < hi)) return best_x;
    double next = x - g / slope;
    if (!(next > lo && next < hi)) next = lo + 0.5 * (hi - lo);
    x = next;
  }
  throw SolverError("lambda root solve did not converge (residual " + std::to_string(best_gap) +
                    ")");
}

namespace {

struct ResidualParts {
  double value;
  double scale;
};

ResidualParts residual_parts(const EigenSpectrum& spec, double lambda, std::size_t m,
                             std::size_t t, double x) {
  double outer = static_cast<double>(m) - static_cast<double>(t);
  double num = 0.0;
  double den = 0.0;
  for (double lam : spec.values) {
    const double a = lam - lambda;
    const double b = lam - x;
    outer += (1.0 - lam) / a;
    const double w = 1.0 / (a * b);
    num += (1.0 - lam) * w;
    den += w;
  }
  const double left = (x - lambda) * outer;
  const double right = num / den;
  return {left - right, std::abs(left) + std::abs(right)};
}

}  // namespace

double lambda_hat_residual(const EigenSpectrum& spec, double lambda, std::size_t m,
                           std::size_t t, double x) {
  return residual_parts(spec, lambda, m, t, x).value;
}

double solve_lambda_hat(const EigenSpectrum& spec, double lambda, std::size_t m, std::size_t t,
                        double tol) {
  if (spec.values.empty()) throw DomainError("empty spectrum");
  const double top = spec.smallest();
  if (!(lambda < top)) throw DomainError("lambda must lie below the smallest eigenvalue");

  double lo = lambda;
  double hi = top - std::numeric_limits<double>::epsilon() * (1.0 + std::abs(top));
  if (!(hi > lo)) throw SolverError("empty bracket for lambda_hat");
  if (!(residual_parts(spec, lambda, m, t, hi).value > 0.0)) {
    throw SolverError("lambda_hat residual has no sign change on (lambda, lambda_min)");
  }
  // f(lambda) < 0 whenever some eigenvalue is below 1; it is not evaluated.
  for (int iter = 0; iter < 400; ++iter) {
    const double mid = lo + 0.5 * (hi - lo);
    if (!(mid > lo && mid < hi)) return mid > lo ? mid : hi;
    const ResidualParts f = residual_parts(spec, lambda, m, t, mid);
    if (std::abs(f.value) <= tol * (1.0 + f.scale)) return mid;
    if (f.value < 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  throw SolverError("lambda_hat bisection did not converge");
}

double candidate_trace(const Eigen::MatrixXd& m_inv, const Eigen::MatrixXd& m_inv2,
                       double base_trace, const Eigen::Ref<const Eigen::VectorXd>& u) {
  const double q1 = u.dot(m_inv * u);
  const double q2 = u.dot(m_inv2 * u);
  const double denom = 1.0 + q1;
  if (std::abs(denom) < 1e-14) throw DegenerateUpdateError("rank-one update is singular");
  return base_trace - q2 / denom;
}

SelectionParams SelectionParams::defaults(std::size_t n, std::size_t m, std::size_t ell) {
  SelectionParams p;
  p.ell = ell;
  p.T = choose_T(n, m, ell).T;
  p.trace_slack = 1e-9 * p.T;
  return p;
}

SelectionState SelectionState::initial(std::size_t n, std::size_t m) {
  SelectionState s;
  const auto nn = static_cast<Eigen::Index>(n);
  s.A = Eigen::MatrixXd::Zero(nn, nn);
  s.is_selected.assign(m, false);
  return s;
}

void SelectionState::prepare(const SelectionParams& params, std::size_t m) {
  SymmetricEigen eig = sym_eigen(A);
  spectrum = std::move(eig.spectrum);
  eigenvectors = std::move(eig.vectors);
  lambda = solve_lambda(spectrum, params.T, params.root_tol);
  lambda_hat = solve_lambda_hat(spectrum, lambda, m, t, params.root_tol);

  Eigen::VectorXd inv(static_cast<Eigen::Index>(spectrum.size()));
  for (std::size_t j = 0; j < spectrum.size(); ++j) {
    inv(static_cast<Eigen::Index>(j)) = 1.0 / (spectrum.values[j] - lambda_hat);
  }
  base_trace = inv.sum();
  m_inv.noalias() = eigenvectors * inv.asDiagonal() * eigenvectors.transpose();
  m_inv2.noalias() =
      eigenvectors * inv.array().square().matrix().asDiagonal() * eigenvectors.transpose();
}

void SelectionState::commit(const OrthonormalEdgeBasis& basis, EdgeIndex i) {
  A.noalias() += basis.column(i) * basis.column(i).transpose();
  selected.push_back(i);
  is_selected[i] = true;
  ++t;
}

namespace {

// Evaluates candidate traces for `indices` into `out`, splitting the work
// across up to `threads` workers. Each value depends only on its own index.
void evaluate_traces(const SelectionState& state, const OrthonormalEdgeBasis& basis,
                     const std::vector<EdgeIndex>& indices, std::vector<double>& out,
                     std::size_t threads) {
  out.resize(indices.size());
  auto work = [&](std::size_t begin, std::size_t end) {
    for (std::size_t k = begin; k < end; ++k) {
      out[k] = candidate_trace(state.m_inv, state.m_inv2, state.base_trace,
                               basis.column(indices[k]));
    }
  };
  const std::size_t workers = std::max<std::size_t>(1, std::min(threads, indices.size()));
  if (workers == 1) {
    work(0, indices.size());
    return;
  }
  std::vector<std::jthread> pool;
  const std::size_t chunk = (indices.size() + workers - 1) / workers;
  for (std::size_t w = 0; w < workers; ++w) {
    const std::size_t begin = w * chunk;
    const std::size_t end = std::min(indices.size(), begin + chunk);
    if (begin < end) pool.emplace_back(work, begin, end);
  }
}

}  // namespace

IndexChoice select_index(const SelectionState& state, const OrthonormalEdgeBasis& basis,
                         const SelectionParams& params) {
  const double threshold = params.T + params.trace_slack;
  const std::size_t threads = std::max<std::size_t>(1, params.threads);

  std::vector<EdgeIndex> remaining;
  remaining.reserve(basis.m());
  for (EdgeIndex i = 0; i < basis.m(); ++i) {
    if (!state.is_selected[i]) remaining.push_back(i);
  }

  double min_trace = std::numeric_limits<double>::infinity();
  std::vector<double> traces;
  if (params.tie_rule == TieRule::first_fit) {
    const std::size_t block = threads == 1 ? remaining.size() : 64 * threads;
    if (threads == 1) {
      for (std::size_t k = 0; k < remaining.size(); ++k) {
        const double tr = candidate_trace(state.m_inv, state.m_inv2, state.base_trace,
                                          basis.column(remaining[k]));
        if (tr <= threshold) return {remaining[k], tr, k + 1};
        min_trace = std::min(min_trace, tr);
      }
    } else {
      std::vector<EdgeIndex> slice;
      for (std::size_t start = 0; start < remaining.size(); start += block) {
        const std::size_t end = std::min(remaining.size(), start + block);
        slice.assign(remaining.begin() + static_cast<std::ptrdiff_t>(start),
                     remaining.begin() + static_cast<std::ptrdiff_t>(end));
        evaluate_traces(state, basis, slice, traces, threads);
        for (std::size_t k = 0; k < slice.size(); ++k) {
          if (traces[k] <= threshold) return {slice[k], traces[k], start + k + 1};
          min_trace = std::min(min_trace, traces[k]);
        }
      }
    }
  } else {
    evaluate_traces(state, basis, remaining, traces, threads);
    std::size_t best = remaining.size();
    for (std::size_t k = 0; k < remaining.size(); ++k) {
      if (traces[k] < min_trace) {
        min_trace = traces[k];
        best = k;
      }
    }
    if (best < remaining.size() && traces[best] <= threshold) {
      return {remaining[best], traces[best], remaining.size()};
    }
  }
  throw InfeasibleError("no unselected column satisfies the trace test at t=" +
                        std::to_string(state.t) + " (smallest candidate trace " +
                        std::to_string(min_trace) + ", budget " + std::to_string(params.T) + ")");
}

SparsifierResult sparsify(const OrthonormalEdgeBasis& basis, std::size_t ell,
                          const SparsifyOptions& options) {
  const auto start = std::chrono::steady_clock::now();
  const std::size_t n = basis.n();
  const std::size_t m = basis.m();

  SelectionParams params = SelectionParams::defaults(n, m, ell);
  if (options.T) {
    if (!(*options.T > 0.0)) throw DomainError("barrier budget T must be positive");
    params.T = *options.T;
    params.trace_slack = 1e-9 * params.T;
  }
  if (options.tie_rule) params.tie_rule = *options.tie_rule;
  if (options.root_tol) params.root_tol = *options.root_tol;
  if (options.trace_slack) params.trace_slack = *options.trace_slack;
  if (options.threads) params.threads = std::max<std::size_t>(1, *options.threads);

  SparsifierResult result;
  result.n = n;
  result.m = m;
  result.params = params;
  result.per_iteration.reserve(ell);

  SelectionState state = SelectionState::initial(n, m);
  while (state.t < ell) {
    state.prepare(params, m);
    const IndexChoice choice = select_index(state, basis, params);
    result.per_iteration.push_back({state.t, state.lambda, state.lambda_hat,
                                    shifted_inverse_trace(state.spectrum, state.lambda),
                                    choice.trace, choice.index, choice.candidates_examined});
    state.commit(basis, choice.index);
  }

  result.selected_edges = state.selected;
  const Extremes ext = generalized_extremes(basis, result.selected_edges);
  result.lambda_min_achieved = ext.lower;
  result.lambda_max_achieved = ext.upper;
  result.kappa_inv_bound = kappa_lower_bound(n, m, ell);
  result.wall_time_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return result;
}

SparsifierResult sparsify(const Graph& g, std::size_t ell, const SparsifyOptions& options) {
  return sparsify(edge_orthonormal_basis(g), ell, options);
}

namespace {

class DisjointSets {
 public:
  explicit DisjointSets(std::size_t n) : parent_(n) {
    std::iota(parent_.begin(), parent_.end(), std::size_t{0});
  }
  std::size_t find(std::size_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }
  bool unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent_[std::max(a, b)] = std::min(a, b);
    return true;
  }

 private:
  std::vector<std::size_t> parent_;
};

}  // namespace

std::vector<EdgeIndex> spanning_structure(const Graph& g, const SparsifyOptions& options) {
  const ComponentLabeling labels = connected_components(g);
  const std::size_t n = g.vertex_count() - labels.component_count;
  const std::size_t m = g.edge_count();

  std::vector<EdgeIndex> order;
  if (m <= n) {
    order.resize(m);
    std::iota(order.begin(), order.end(), EdgeIndex{0});
    return order;
  }
  if (m == n + 1) {
    order.resize(m);
    std::iota(order.begin(), order.end(), EdgeIndex{0});
  } else {
    order = sparsify(g, n + 1, options).selected_edges;
  }

  // Walking in selection order, the edge that closes the cycle is the cycle
  // edge selected last.
  DisjointSets sets(g.vertex_count());
  std::vector<EdgeIndex> tree;
  std::size_t dropped = 0;
  for (EdgeIndex i : order) {
    const Edge& e = g.edge(i);
    if (sets.unite(e.u, e.v)) {
      tree.push_back(i);
    } else {
      ++dropped;
    }
  }
  if (dropped != 1 || tree.size() != n) {
    throw Error("selected " + std::to_string(order.size()) + " edges closed " +
                std::to_string(dropped) + " cycles; expected exactly one");
  }
  return tree;
}

}  // namespace ucs
