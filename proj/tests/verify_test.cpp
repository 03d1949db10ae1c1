#include <gtest/gtest.h>

#include <cmath>
#include <numeric>

#include "test_util.hpp"
#include "ucs/error.hpp"
#include "ucs/selection.hpp"
#include "ucs/verify.hpp"

namespace ucs {
namespace {

using testing::Rng;

std::vector<EdgeIndex> all_edges(std::size_t m) {
  std::vector<EdgeIndex> v(m);
  std::iota(v.begin(), v.end(), EdgeIndex{0});
  return v;
}

TEST(VerifySandwich, AllEdgesAndEmpty) {
  const auto basis = edge_orthonormal_basis(testing::k4());
  const auto all = all_edges(6);
  const auto full = verify_sandwich(basis, all, 1.0);
  EXPECT_NEAR(full.lower, 1.0, 1e-12);
  EXPECT_NEAR(full.upper, 1.0, 1e-12);
  EXPECT_TRUE(full.pass);

  const auto empty = verify_sandwich(basis, {}, 0.01);
  EXPECT_EQ(empty.lower, 0.0);
  EXPECT_FALSE(empty.pass);
}

TEST(VerifySandwich, K4Sparsifier) {
  const auto basis = edge_orthonormal_basis(testing::k4());
  const auto r = sparsify(basis, 5);
  const auto rep = verify_sandwich(basis, r.selected_edges, 0.0316);
  EXPECT_NEAR(rep.lower, 0.5, 1e-10);
  EXPECT_NEAR(rep.upper, 1.0, 1e-10);
  EXPECT_TRUE(rep.pass);
  EXPECT_FALSE(verify_sandwich(basis, r.selected_edges, 0.6).pass);
}

TEST(VerifySandwich, PassRuleUsesTolerance) {
  const auto basis = edge_orthonormal_basis(testing::triangle());
  const std::vector<EdgeIndex> pair = {0, 1};
  EXPECT_TRUE(verify_sandwich(basis, pair, 1.0 / 3.0 + 5e-9).pass);
  EXPECT_FALSE(verify_sandwich(basis, pair, 1.0 / 3.0 + 5e-8).pass);
  EXPECT_TRUE(verify_sandwich(basis, pair, 1.0 / 3.0 + 5e-8, 1e-7).pass);
}

TEST(VerifySandwich, JsonFields) {
  const auto basis = edge_orthonormal_basis(testing::triangle());
  const auto all = all_edges(3);
  const auto j = to_json(verify_sandwich(basis, all, 0.5));
  EXPECT_TRUE(j.at("pass").get<bool>());
  EXPECT_NEAR(j.at("lower").get<double>(), 1.0, 1e-12);
  EXPECT_EQ(j.at("kappa_inv_claimed").get<double>(), 0.5);
}

TEST(Binomial, Values) {
  EXPECT_EQ(binomial(6, 5), 6u);
  EXPECT_EQ(binomial(30, 15), 155117520u);
  EXPECT_EQ(binomial(3, 4), 0u);
  EXPECT_EQ(binomial(5, 0), 1u);
  EXPECT_EQ(binomial(200, 100), SIZE_MAX);
}

TEST(BruteForceBest, Examples) {
  const auto tri = brute_force_best(edge_orthonormal_basis(testing::triangle()), 2);
  EXPECT_NEAR(tri.lambda_min, 1.0 / 3.0, 1e-12);
  EXPECT_EQ(tri.subset, (std::vector<EdgeIndex>{0, 1}));
  EXPECT_EQ(tri.subsets_examined, 3u);

  const auto k4 = brute_force_best(edge_orthonormal_basis(testing::k4()), 5);
  EXPECT_NEAR(k4.lambda_min, 0.5, 1e-12);
  EXPECT_EQ(k4.subset, (std::vector<EdgeIndex>{0, 1, 2, 3, 4}));

  const auto full = brute_force_best(edge_orthonormal_basis(testing::k4()), 6);
  EXPECT_NEAR(full.lambda_min, 1.0, 1e-12);
}

TEST(BruteForceBest, CombinatorialGuard) {
  const auto basis = edge_orthonormal_basis(testing::complete_graph(8));
  EXPECT_THROW(brute_force_best(basis, 14, 1000), CombinatorialLimitError);
}

// Greedy never beats the exhaustive optimum, and both clear the bound; the
// sandwich audit passes for every greedy output.
TEST(BruteForceBest, DominatesGreedyOnTinyInstances) {
  Rng rng(51);
  int checked = 0;
  for (int trial = 0; trial < 80; ++trial) {
    const Graph g = testing::random_connected_graph(rng, 3, 7, 12, trial % 2 == 0);
    const auto basis = edge_orthonormal_basis(g);
    for (std::size_t ell = basis.n() + 1; ell < basis.m(); ++ell) {
      const auto greedy = sparsify(basis, ell);
      const auto best = brute_force_best(basis, ell);
      EXPECT_GE(best.lambda_min, greedy.lambda_min_achieved - 1e-10);
      EXPECT_GT(greedy.lambda_min_achieved, greedy.kappa_inv_bound);
      EXPECT_TRUE(verify_sandwich(basis, greedy.selected_edges, greedy.kappa_inv_bound).pass);
      ++checked;
    }
  }
  EXPECT_GT(checked, 50);
}

TEST(BoundTable, RowsAndNotes) {
  const auto rows = bound_table({1, 3}, {3, 6}, {2, 5});
  EXPECT_EQ(rows.size(), 3u * 4u * 4u);
  EXPECT_EQ(rows.front().n, 1u);
  EXPECT_EQ(rows.front().m, 3u);
  EXPECT_EQ(rows.front().ell, 2u);
  ASSERT_TRUE(rows.front().report.has_value());
  EXPECT_NEAR(rows.front().report->kappa_inv_ucs, 0.0559700, 1e-6);

  const auto skipped = bound_table({3, 3}, {6, 6}, {3, 3});
  ASSERT_EQ(skipped.size(), 1u);
  EXPECT_FALSE(skipped.front().report.has_value());
  EXPECT_FALSE(skipped.front().note.empty());
}

TEST(BoundTable, CsvAndJson) {
  const auto rows = bound_table({2, 3}, {4, 4}, {3, 3});
  const std::string csv = bound_table_csv(rows);
  EXPECT_EQ(csv.substr(0, csv.find('\n')),
            "n,m,ell,T_hat_star,F_at_star,T,kappa_inv_ucs,kappa_inv_ddsss,ramanujan_factor,"
            "kappa_inv_approx,note");
  EXPECT_NE(csv.find("\n2,4,3,"), std::string::npos);
  EXPECT_NE(csv.find("\n3,4,3,"), std::string::npos);
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 3);

  const auto j = bound_table_json(rows);
  ASSERT_EQ(j.size(), 2u);
  EXPECT_NEAR(j[0].at("kappa_inv_ucs").get<double>(), 0.0285954, 1e-6);
  EXPECT_NEAR(j[0].at("kappa_inv_ddsss").get<double>(), 0.0101021, 1e-6);
  EXPECT_TRUE(j[1].contains("note"));
}

}  // namespace
}  // namespace ucs
