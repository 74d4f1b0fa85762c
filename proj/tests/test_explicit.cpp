#include <mertens/explicit_formula.hpp>

#include "test_support.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

using namespace mertens;
using namespace mertens::explicit_formula;
using test_support::full_table;

TEST(ExplicitEm, BelowFirstZeroIsTheBiasConstant) {
    const auto r = explicit_em(10.0, full_table(), 14.0);
    EXPECT_EQ(r.value, 1.0);
    EXPECT_EQ(r.terms_used, 0u);
    EXPECT_GT(r.bound, 0.0);
}

TEST(ExplicitEm, SingleTermAmplitude) {
    const double g = full_table().gammas()[0];
    const double c = zero_term(g, 0.0);
    const double s = zero_term(g, std::numbers::pi / 2 / g);
    EXPECT_NEAR(std::hypot(c, s), 2.0 / std::sqrt(0.25 + g * g), 1e-15);
    EXPECT_NEAR(std::hypot(c, s), 0.141407, 1e-6);
}

TEST(ExplicitEm, TermsUsedAndBound) {
    const auto& t = full_table();
    for (double T : {100.0, 1000.0, 12345.0}) {
        const auto r = explicit_em(1e4, t, T);
        EXPECT_EQ(r.terms_used, t.count_below(T));
        EXPECT_DOUBLE_EQ(r.bound, explicit_bound(1e4, T));
    }
}

TEST(ExplicitEm, AgreesWithSieveAtTenThousand) {
    const auto r = explicit_em(1e4, full_table(), 1e4);
    EXPECT_LE(std::fabs(r.value - primes::em_remainder(1e4).em), r.bound);
    // Much tighter than the gate in practice.
    EXPECT_LE(std::fabs(r.value - primes::em_remainder(1e4).em), 0.1);
}

TEST(ExplicitEm, StabilizesInT) {
    for (double x : {1e3, 1e4}) {
        const double a = explicit_em(x, full_table(), 5e4).value;
        const double b = explicit_em(x, full_table(), 7e4).value;
        const double l = std::log(x * 5e4);
        EXPECT_LE(std::fabs(a - b), 10.0 * std::sqrt(x) * l * l / 5e4) << x;
    }
}

TEST(ExplicitEm, ChunkedSummationInvariant) {
    // T = height excludes the top ordinate (strict inequality).
    const auto g = full_table().gammas().first(full_table().count() - 1);
    const double x = 31622.0, lx = std::log(x);
    CompensatedSum<double> total(1.0);
    for (std::size_t lo = 0; lo < g.size(); lo += 4096) {
        CompensatedSum<double> chunk;
        for (std::size_t i = lo; i < std::min(g.size(), lo + 4096); ++i) chunk += zero_term(g[i], lx);
        total += chunk;
    }
    EXPECT_NEAR(total.value(), explicit_em(x, full_table(), full_table().height_max()).value, 1e-13);
}

TEST(ExplicitEm, Errors) {
    EXPECT_THROW(explicit_em(4.9, full_table(), 100), DomainError);
    EXPECT_THROW(explicit_em(10, full_table(), 4.0), RangeError);
    EXPECT_THROW(explicit_em(10, full_table(), full_table().height_max() + 1), RangeError);
}

TEST(SineSum, Properties) {
    EXPECT_EQ(sine_sum(0.0, full_table(), 100), 0.0);
    EXPECT_DOUBLE_EQ(sine_sum(-1.7, full_table(), 100), -sine_sum(1.7, full_table(), 100));
    double brute = 0.0;
    int terms = 0;
    for (double g : full_table().gammas()) {
        if (g >= 100) break;
        brute += std::sin(g) / g;
        ++terms;
    }
    EXPECT_EQ(terms, 29);
    EXPECT_NEAR(sine_sum(1.0, full_table(), 100), brute, 1e-12);
    EXPECT_THROW(sine_sum(1.0, full_table(), 1e6), RangeError);
}

TEST(SineSum, DrivesTheOscillation) {
    // E_M(x) - 1 ~ -2 sum sin(gamma log x)/gamma for large gamma.
    const double y = std::log(5e4);
    const double ex = explicit_em(5e4, full_table(), 5e4).value - 1.0;
    EXPECT_NEAR(ex, -2.0 * sine_sum(y, full_table(), 5e4), 0.05);
}

TEST(CompareScan, Examples) {
    EXPECT_TRUE(compare_scan({}, full_table(), 100).empty());
    const auto one = compare_scan({10.0}, full_table(), 14.0);
    ASSERT_EQ(one.size(), 1u);
    EXPECT_NEAR(one[0].direct, 0.4708, 1e-4);
    EXPECT_EQ(one[0].formula, 1.0);
    EXPECT_TRUE(one[0].ok);
    const auto recs = compare_scan({1e3, 1e4, 1e5}, full_table(), full_table().height_max());
    for (const auto& r : recs) {
        EXPECT_TRUE(r.ok) << r.x;
        EXPECT_DOUBLE_EQ(r.direct, primes::em_remainder(r.x).em);
    }
    EXPECT_NEAR(recs[2].bound, 22.6, 0.2);
}

TEST(CompareScan, Errors) {
    EXPECT_THROW(compare_scan({100.0, 50.0}, full_table(), 100), DomainError);
    EXPECT_THROW(compare_scan({4.0, 50.0}, full_table(), 100), DomainError);
}
