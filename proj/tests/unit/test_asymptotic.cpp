#include <gtest/gtest.h>

#include <cmath>

#include "helpers.hpp"

using namespace ginijel;
using testing_support::error_code_of;
using testing_support::make;

TEST(NullVariance, SingleCategory) {
  const std::vector<double> p{1.0};
  EXPECT_NEAR(null_variance(p, VarianceFormula::appendix).value, 1.0 / 30.0, 1e-15);
  EXPECT_NEAR(null_variance(p, VarianceFormula::main_text).value, -17.0 / 90.0, 1e-15);
}

TEST(NullVariance, TwoEqualCategories) {
  const std::vector<double> p{0.5, 0.5};
  // a = (2, 2); sigma_kk = 1/16 - 7/240, sigma_kl = -7/240.
  const double skk = 1.0 / 16.0 - 7.0 / 240.0;
  const double skl = -7.0 / 240.0;
  const double expect = 4.0 * (2 * skk + 2 * skl);
  EXPECT_NEAR(null_variance(p, VarianceFormula::appendix).value, expect, 1e-15);
  EXPECT_NE(null_variance(p, VarianceFormula::main_text).value,
            null_variance(p, VarianceFormula::appendix).value);
}

TEST(NullVariance, ContractionDoesNotDependOnP) {
  for (const std::vector<double>& p : std::vector<std::vector<double>>{
           {0.2, 0.8}, {0.1, 0.3, 0.6}, {0.25, 0.25, 0.25, 0.25}}) {
    EXPECT_NEAR(null_variance(p, VarianceFormula::appendix).value, 1.0 / 30.0, 1e-13);
    EXPECT_NEAR(null_variance(p, VarianceFormula::main_text).value, -17.0 / 90.0, 1e-13);
  }
}

TEST(NullVariance, Validation) {
  EXPECT_EQ(error_code_of([] { null_variance(std::vector<double>{}, VarianceFormula::appendix); }),
            Errc::invalid_probability_vector);
  EXPECT_EQ(error_code_of([] {
              null_variance(std::vector<double>{0.5, 0.6}, VarianceFormula::appendix);
            }),
            Errc::invalid_probability_vector);
  EXPECT_EQ(error_code_of([] {
              null_variance(std::vector<double>{1.0, 0.0}, VarianceFormula::appendix);
            }),
            Errc::invalid_probability_vector);
  EXPECT_EQ(error_code_of([] {
              null_variance(std::vector<double>{1.0}, VarianceFormula::empirical);
            }),
            Errc::invalid_argument);
}

TEST(EmpiricalVariance, SingleCategoryIsZero) {
  const auto v = empirical_null_variance(std::vector<double>{1.0}, 50, 1000, 3, 1);
  EXPECT_EQ(v.value, 0.0);
  EXPECT_EQ(v.mean_delta, 0.0);
}

TEST(EmpiricalVariance, DeterministicAcrossThreads) {
  const std::vector<double> p{0.3, 0.7};
  const auto a = empirical_null_variance(p, 60, 1000, 9, 1);
  const auto b = empirical_null_variance(p, 60, 1000, 9, 4);
  EXPECT_EQ(a.value, b.value);
  EXPECT_EQ(a.std_error, b.std_error);
  EXPECT_GT(a.value, 0.0);
}

TEST(EmpiricalVariance, Preconditions) {
  const std::vector<double> p{0.5, 0.5};
  EXPECT_EQ(error_code_of([&] { empirical_null_variance(p, 49, 1000, 1); }),
            Errc::invalid_argument);
  EXPECT_EQ(error_code_of([&] { empirical_null_variance(p, 50, 999, 1); }),
            Errc::invalid_argument);
}

TEST(Adjudication, VerdictIsStated) {
  const std::vector<double> p{0.5, 0.5};
  const auto a = adjudicate_null_variance(p, 50, 1000, 5, 1);
  EXPECT_NE(a.verdict.find("3 s.e."), std::string::npos);
  EXPECT_EQ(a.appendix_within_3se,
            std::abs(a.appendix - a.empirical.value) <= 3 * a.empirical.std_error);
}

TEST(NormalTest, SingleCategoryNeverRejects) {
  const auto d = make({4, 1, 7, 2, 9, 3}, {"u", "u", "u", "u", "u", "u"});
  for (auto src : {VarianceSource::jackknife, VarianceSource::appendix, VarianceSource::main_text}) {
    const auto r = normal_test(d, 0.05, src);
    EXPECT_EQ(r.statistic, 0.0);
    EXPECT_FALSE(r.reject);
    EXPECT_DOUBLE_EQ(r.p_value, 0.5);
  }
}

TEST(NormalTest, MainTextVarianceIsNegative) {
  const auto d = testing_support::load_iris();
  EXPECT_EQ(error_code_of([&] { normal_test(d, 0.05, VarianceSource::main_text); }),
            Errc::zero_variance);
}

TEST(NormalTest, JackknifeVarianceOnIris) {
  const auto d = testing_support::load_iris();
  const auto r = normal_test(d, 0.05, VarianceSource::jackknife);
  const auto pv = pseudo_values(d);
  double s = 0.0;
  for (double v : pv.nu) s += v * v;
  s /= double(pv.n);
  EXPECT_DOUBLE_EQ(r.sigma0_sq, s / 4.0);
  EXPECT_NEAR(r.statistic, std::sqrt(150.0) * r.delta_hat / std::sqrt(s / 4.0), 1e-12);
  EXPECT_NEAR(r.p_value, 1.0 - std_normal_cdf(r.statistic), 1e-15);
  // Same decision as the JEL test on the same data.
  EXPECT_EQ(r.reject, jel_test(d).reject);
}

TEST(NormalTest, AppendixVarianceFormula) {
  const auto d = testing_support::load_iris();
  const auto r = normal_test(d, 0.05, VarianceSource::appendix);
  EXPECT_NEAR(r.sigma0_sq, 1.0 / 30.0, 1e-13);
  EXPECT_NEAR(r.critical_value, 1.6448536269514722, 1e-12);
}

TEST(NormalTest, Validation) {
  EXPECT_EQ(error_code_of([] { normal_test(make({1, 2, 3}, {"a", "b", "a"})); }),
            Errc::sample_too_small);
  const auto d = make({1, 2, 3, 4, 5}, {"a", "b", "a", "b", "a"});
  EXPECT_EQ(error_code_of([&] { normal_test(d, 1.5); }), Errc::invalid_alpha);
}
