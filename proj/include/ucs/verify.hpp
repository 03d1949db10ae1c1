#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "ucs/bounds.hpp"
#include "ucs/spectra.hpp"

namespace ucs {

/// Sandwich audit of (1/kappa) L_G <= L_H <= L_G through the extreme
/// eigenvalues of sum_{i in F} u_i u_i^T.
struct SandwichReport {
  double lower = 0.0;
  double upper = 0.0;
  double kappa_inv_claimed = 0.0;
  double tol = 0.0;
  bool pass = false;
};

SandwichReport verify_sandwich(const OrthonormalEdgeBasis& basis,
                               std::span<const EdgeIndex> selected, double kappa_inv,
                               double tol = 1e-8);

nlohmann::json to_json(const SandwichReport& report);

struct BruteForceResult {
  double lambda_min = 0.0;
  std::vector<EdgeIndex> subset;
  std::size_t subsets_examined = 0;
};

/// Number of ell-subsets of m items, saturating at SIZE_MAX.
std::size_t binomial(std::size_t m, std::size_t ell);

/// Exhaustive maximum of lambda_min over all ell-subsets of the columns.
/// Ties (within 1e-12) keep the lexicographically smallest subset. Throws
/// CombinatorialLimitError when C(m, ell) exceeds `limit`.
BruteForceResult brute_force_best(const OrthonormalEdgeBasis& basis, std::size_t ell,
                                  std::size_t limit = 1'000'000);

struct BoundRow {
  std::size_t n = 0;
  std::size_t m = 0;
  std::size_t ell = 0;
  std::optional<BoundReport> report;  ///< empty when the triple is invalid
  std::string note;
};

struct TripleRange {
  std::size_t first = 0;
  std::size_t last = 0;
};

/// One row per (n, m, ell) in the cartesian product, n-major. Invalid
/// triples are kept as rows with a note instead of a report.
std::vector<BoundRow> bound_table(TripleRange n, TripleRange m, TripleRange ell);

/// Header: n,m,ell,T_hat_star,F_at_star,T,kappa_inv_ucs,kappa_inv_ddsss,
/// ramanujan_factor,kappa_inv_approx,note
std::string bound_table_csv(const std::vector<BoundRow>& rows);
nlohmann::json bound_table_json(const std::vector<BoundRow>& rows);

}  // namespace ucs
