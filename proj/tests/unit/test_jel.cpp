#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <numeric>

#include "helpers.hpp"

using namespace ginijel;
using testing_support::error_code_of;
using testing_support::make;
using testing_support::to_dataset;

namespace {

PseudoValues pv_of(std::vector<double> nu) {
  PseudoValues pv;
  pv.n = nu.size();
  pv.delta_hat = std::accumulate(nu.begin(), nu.end(), 0.0) / double(nu.size());
  pv.nu = std::move(nu);
  return pv;
}

Dataset nine_rows() {
  return make({0.3, 1.2, -0.7, 2.2, 0.3, 1.9, -1.1, 0.8, 2.2},
              {"a", "b", "a", "c", "b", "a", "c", "b", "a"});
}

}  // namespace

TEST(PseudoValues, FourRowFixture) {
  const auto pv = pseudo_values(make({1, 2, 3, 4}, {"b", "a", "a", "a"}));
  ASSERT_EQ(pv.nu.size(), 4u);
  for (double v : pv.nu) EXPECT_NEAR(v, 1.0 / 9.0, 1e-14);
  EXPECT_NEAR(pv.delta_hat, 1.0 / 9.0, 1e-15);
}

TEST(PseudoValues, NineRowFixtureMatchesRationalOracle) {
  // Exact rationals from tests/scripts/oracle_values.py.
  const std::vector<double> expect{-0.18154761904761904, -0.002976190476190476,
                                   0.10416666666666667,  -0.9672619047619048,
                                   -0.14583333333333334, -0.002976190476190476,
                                   0.10416666666666667,  -0.002976190476190476,
                                   -0.002976190476190476};
  for (auto method : {JackknifeMethod::downdate, JackknifeMethod::rerun}) {
    const auto pv = pseudo_values(nine_rows(), {method, JackknifeWeights::full_sample});
    for (std::size_t i = 0; i < expect.size(); ++i) EXPECT_NEAR(pv.nu[i], expect[i], 1e-13);
  }
}

TEST(PseudoValues, SingleCategoryAllZero) {
  const auto pv = pseudo_values(make({5, 3, 8, 1, 9}, {"q", "q", "q", "q", "q"}));
  for (double v : pv.nu) EXPECT_EQ(v, 0.0);
}

TEST(PseudoValues, IrisMeanIdentity) {
  const auto d = testing_support::load_iris();
  const auto pv = pseudo_values(d);
  const double mean = std::accumulate(pv.nu.begin(), pv.nu.end(), 0.0) / double(pv.n);
  EXPECT_NEAR(mean, estimate_delta(d).delta_hat, 1e-10);
}

TEST(PseudoValues, TooSmall) {
  EXPECT_EQ(error_code_of([] { pseudo_values(make({1, 2, 3}, {"a", "b", "a"})); }),
            Errc::sample_too_small);
}

// Literal leave-one-out enumeration vs the downdate and rerun routes.
TEST(PseudoValues, LeaveOneOutOracle) {
  std::mt19937_64 gen(77);
  for (int t = 0; t < 150; ++t) {
    const auto s = oracle::random_sample(gen, 4, 22, 4, t % 2 == 0);
    const auto d = to_dataset(s);
    const auto ref = oracle::pseudo_values(s);
    const auto fast = pseudo_values(d);
    const auto slow = pseudo_values(d, {JackknifeMethod::rerun, JackknifeWeights::full_sample});
    for (std::size_t i = 0; i < ref.size(); ++i) {
      EXPECT_NEAR(fast.nu[i], ref[i], 1e-10);
      EXPECT_EQ(fast.nu[i], slow.nu[i]);
    }
  }
}

TEST(PseudoValues, SubsampleWeightsRoutesAgree) {
  std::mt19937_64 gen(78);
  for (int t = 0; t < 50; ++t) {
    const auto d = to_dataset(oracle::random_sample(gen, 4, 60, 5, t % 2 == 0));
    const auto a = pseudo_values(d, {JackknifeMethod::downdate, JackknifeWeights::subsample});
    const auto b = pseudo_values(d, {JackknifeMethod::rerun, JackknifeWeights::subsample});
    for (std::size_t i = 0; i < a.nu.size(); ++i) EXPECT_NEAR(a.nu[i], b.nu[i], 1e-10);
  }
}

TEST(SolveLambda, Symmetric) {
  EXPECT_NEAR(solve_lambda(pv_of({-1, 1})), 0.0, 1e-12);
  EXPECT_NEAR(solve_lambda(pv_of({-2, 1, 1})), 0.0, 1e-12);
}

TEST(SolveLambda, AsymmetricAgainstGridScan) {
  const std::vector<double> nu{-1, 2, 3};
  const double lambda = solve_lambda(pv_of(nu));
  EXPECT_NEAR(lambda, double(oracle::lambda_scan(nu)), 1e-12);
  EXPECT_NEAR(lambda, 0.53022243029541839822, 1e-12);  // mpmath, 50 digits
  EXPECT_NEAR(jel_statistic(pv_of(nu), lambda), 1.8386828855603596084, 1e-11);
}

TEST(SolveLambda, Errors) {
  EXPECT_EQ(error_code_of([] { solve_lambda(pv_of({1, 2, 3})); }), Errc::hull_violation);
  EXPECT_EQ(error_code_of([] { solve_lambda(pv_of({0, -2, 0})); }), Errc::hull_violation);
  EXPECT_EQ(error_code_of([] { solve_lambda(pv_of({0, 0, 0})); }), Errc::all_zero);
  Tolerances t;
  t.max_root_iters = 1;
  EXPECT_EQ(error_code_of([&] { solve_lambda(pv_of({-1, 2, 3, 50, -0.01}), t); }),
            Errc::no_convergence);
}

TEST(SolveLambda, RootCertificateOnRandomData) {
  std::mt19937_64 gen(404);
  int solved = 0;
  for (int t = 0; t < 300; ++t) {
    const auto d = to_dataset(oracle::random_sample(gen, 6, 80, 5, t % 3 == 0));
    const auto pv = pseudo_values(d);
    double lambda = 0.0;
    try {
      lambda = solve_lambda(pv);
    } catch (const Error&) {
      continue;
    }
    ++solved;
    const double lo = -1.0 / *std::max_element(pv.nu.begin(), pv.nu.end());
    const double hi = -1.0 / *std::min_element(pv.nu.begin(), pv.nu.end());
    EXPECT_GT(lambda, lo);
    EXPECT_LT(lambda, hi);
    EXPECT_LE(std::abs(lambda_equation(pv.nu, lambda)), 1e-10);
    for (double v : pv.nu) EXPECT_GT(1.0 + lambda * v, 0.0);
  }
  EXPECT_GT(solved, 150);
}

TEST(JelStatistic, ZeroLambda) {
  EXPECT_EQ(jel_statistic(pv_of({-1, 1}), 0.0), 0.0);
  EXPECT_EQ(jel_statistic(pv_of({3, -7, 0.5}), 0.0), 0.0);
}

TEST(JelStatistic, DomainError) {
  EXPECT_EQ(error_code_of([] { jel_statistic(pv_of({-1, 2}), 1.0); }), Errc::domain_error);
}

TEST(JelTest, NineRowFixture) {
  // mpmath root on the exact pseudo-values.
  const auto r = jel_test(nine_rows());
  EXPECT_NEAR(r.lambda, -4.4073516187806430137, 1e-9);
  EXPECT_NEAR(r.statistic, 3.1360673676723013285, 1e-9);
  EXPECT_NEAR(r.p_value, chi2_1_sf(r.statistic), 1e-15);
  EXPECT_FALSE(r.reject);
  EXPECT_FALSE(r.degenerate);
}

TEST(JelTest, IrisMatchesOracle) {
  // Value produced by tests/scripts/oracle_values.py; the published 6.70 is
  // checked in the acceptance suite.
  const auto r = jel_test(testing_support::load_iris());
  EXPECT_NEAR(r.statistic, 8.2259625326224486, 1e-8);
  EXPECT_NEAR(r.lambda, 1.105726863920869, 1e-8);
  EXPECT_NEAR(r.p_value, 0.0041295297324475211, 1e-10);
  EXPECT_TRUE(r.reject);
  EXPECT_EQ(r.n, 150u);
}

TEST(JelTest, HullViolationConvention) {
  const auto r = jel_test(make({1, 2, 3, 4}, {"b", "a", "a", "a"}));
  EXPECT_TRUE(r.degenerate);
  EXPECT_TRUE(std::isinf(r.statistic));
  EXPECT_EQ(r.p_value, 0.0);
  EXPECT_TRUE(r.reject);
}

TEST(JelTest, AllZeroConvention) {
  const auto r = jel_test(make({5, 3, 8, 1, 9}, {"q", "q", "q", "q", "q"}));
  EXPECT_TRUE(r.degenerate);
  EXPECT_EQ(r.statistic, 0.0);
  EXPECT_EQ(r.p_value, 1.0);
  EXPECT_FALSE(r.reject);
}

TEST(JelTest, InvalidAlpha) {
  const auto d = nine_rows();
  EXPECT_EQ(error_code_of([&] { jel_test(d, 0.0); }), Errc::invalid_alpha);
  EXPECT_EQ(error_code_of([&] { jel_test(d, 1.0); }), Errc::invalid_alpha);
}

TEST(JelTest, DecisionMatchesCriticalValue) {
  std::mt19937_64 gen(12);
  for (int t = 0; t < 200; ++t) {
    const auto r = jel_test(to_dataset(oracle::random_sample(gen, 5, 60, 4, false)), 0.1);
    EXPECT_GE(r.statistic, 0.0);
    if (!r.degenerate) EXPECT_EQ(r.reject, r.statistic > r.critical_value);
  }
}
