#include "ucs/verify.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <numeric>

#include "ucs/error.hpp"

namespace ucs {

SandwichReport verify_sandwich(const OrthonormalEdgeBasis& basis,
                               std::span<const EdgeIndex> selected, double kappa_inv,
                               double tol) {
  const Extremes ext = generalized_extremes(basis, selected);
  SandwichReport r;
  r.lower = ext.lower;
  r.upper = ext.upper;
  r.kappa_inv_claimed = kappa_inv;
  r.tol = tol;
  r.pass = r.upper <= 1.0 + tol && r.lower >= kappa_inv - tol;
  return r;
}

nlohmann::json to_json(const SandwichReport& report) {
  return {{"lower", report.lower},
          {"upper", report.upper},
          {"kappa_inv_claimed", report.kappa_inv_claimed},
          {"tol", report.tol},
          {"pass", report.pass}};
}

std::size_t binomial(std::size_t m, std::size_t ell) {
  if (ell > m) return 0;
  ell = std::min(ell, m - ell);
  std::size_t c = 1;
  for (std::size_t k = 1; k <= ell; ++k) {
    const std::size_t factor = m - ell + k;
    if (c > std::numeric_limits<std::size_t>::max() / factor) {
      return std::numeric_limits<std::size_t>::max();
    }
    // c * factor is divisible by k at every step.
    c = c * factor / k;
  }
  return c;
}

BruteForceResult brute_force_best(const OrthonormalEdgeBasis& basis, std::size_t ell,
                                  std::size_t limit) {
  const std::size_t m = basis.m();
  const std::size_t count = binomial(m, ell);
  if (count > limit) {
    throw CombinatorialLimitError("C(" + std::to_string(m) + "," + std::to_string(ell) +
                                  ") exceeds the enumeration limit " + std::to_string(limit));
  }
  BruteForceResult best;
  best.lambda_min = -std::numeric_limits<double>::infinity();
  if (ell == 0 || basis.n() == 0) {
    best.lambda_min = 0.0;
    best.subsets_examined = 1;
    return best;
  }

  const auto n = static_cast<Eigen::Index>(basis.n());
  std::vector<EdgeIndex> subset(ell);
  std::iota(subset.begin(), subset.end(), EdgeIndex{0});
  Eigen::MatrixXd a(n, n);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(n);
  while (true) {
    a.setZero();
    for (EdgeIndex i : subset) a.noalias() += basis.column(i) * basis.column(i).transpose();
    solver.compute(a, Eigen::EigenvaluesOnly);
    const double value = solver.eigenvalues()(0);
    ++best.subsets_examined;
    if (value > best.lambda_min + 1e-12) {
      best.lambda_min = value;
      best.subset = subset;
    }

    // Next combination in lexicographic order.
    std::size_t k = ell;
    while (k > 0 && subset[k - 1] == m - ell + (k - 1)) --k;
    if (k == 0) break;
    ++subset[k - 1];
    for (std::size_t j = k; j < ell; ++j) subset[j] = subset[j - 1] + 1;
  }
  return best;
}

std::vector<BoundRow> bound_table(TripleRange n, TripleRange m, TripleRange ell) {
  std::vector<BoundRow> rows;
  for (std::size_t a = n.first; a <= n.last; ++a) {
    for (std::size_t b = m.first; b <= m.last; ++b) {
      for (std::size_t c = ell.first; c <= ell.last; ++c) {
        BoundRow row{a, b, c, std::nullopt, ""};
        if (a == 0 || !(a < c && c < b)) {
          row.note = "skipped: requires 0 < n < ell < m";
        } else {
          row.report = bound_report(a, b, c);
        }
        rows.push_back(std::move(row));
      }
    }
  }
  return rows;
}

namespace {

std::string csv_number(double x) {
  if (std::isnan(x)) return "nan";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

}  // namespace

std::string bound_table_csv(const std::vector<BoundRow>& rows) {
  std::string out =
      "n,m,ell,T_hat_star,F_at_star,T,kappa_inv_ucs,kappa_inv_ddsss,ramanujan_factor,"
      "kappa_inv_approx,note\n";
  for (const auto& row : rows) {
    out += std::to_string(row.n) + "," + std::to_string(row.m) + "," + std::to_string(row.ell);
    if (row.report) {
      const BoundReport& r = *row.report;
      for (double x : {r.T_hat_star, r.F_at_star, r.T, r.kappa_inv_ucs, r.kappa_inv_ddsss,
                       r.ramanujan_factor, r.kappa_inv_approx}) {
        out += "," + csv_number(x);
      }
      out += ",";
    } else {
      out += ",,,,,,,," + row.note;
    }
    out += "\n";
  }
  return out;
}

nlohmann::json bound_table_json(const std::vector<BoundRow>& rows) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& row : rows) {
    nlohmann::json j = {{"n", row.n}, {"m", row.m}, {"ell", row.ell}};
    if (row.report) {
      const BoundReport& r = *row.report;
      j["T_hat_star"] = r.T_hat_star;
      j["F_at_star"] = r.F_at_star;
      j["T"] = r.T;
      j["kappa_inv_ucs"] = r.kappa_inv_ucs;
      j["kappa_inv_ddsss"] = r.kappa_inv_ddsss;
      j["ramanujan_factor"] = r.ramanujan_factor;
      j["kappa_inv_approx"] = r.kappa_inv_approx;
    } else {
      j["note"] = row.note;
    }
    out.push_back(std::move(j));
  }
  return out;
}

}  // namespace ucs
