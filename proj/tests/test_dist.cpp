#include <mertens/dist.hpp>

#include "test_support.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

using namespace mertens;
using namespace mertens::dist;
using test_support::full_table;

namespace {

CharFnParams single_zero() {
    const auto t = full_table().prefix(1);
    return {t, t.height_max(), 0.25, 1.0, false};
}

}  // namespace

TEST(CharFn, AtZero) {
    const auto p = CharFnParams::for_table(full_table().prefix(10000));
    EXPECT_EQ(char_fn(0.0, p), std::complex<double>(1.0, 0.0));
}

TEST(CharFn, Bounded) {
    const auto p = CharFnParams::for_table(full_table().prefix(10000));
    for (double t : {0.5, 1.0, 5.0, 20.0}) EXPECT_LE(std::abs(char_fn(t, p)), 1.0) << t;
}

TEST(CharFn, SingleZero) {
    const auto v = char_fn(1.0, single_zero());
    EXPECT_NEAR(std::abs(v), 0.99500725516958470515, 1e-14);
    EXPECT_NEAR(std::abs(v), 0.995006, 2e-6);
    EXPECT_NEAR(std::arg(v), 1.0, 1e-15);
}

TEST(CharFn, ImaginaryPartPositiveForSmallT) {
    const auto p = CharFnParams::for_table(full_table().prefix(10000));
    for (double t : {1e-3, 0.01, 0.1, 0.5, 1.0}) EXPECT_GT(char_fn(t, p).imag(), 0.0) << t;
}

TEST(CharFn, SignTrackingThroughBesselRoots) {
    // One zero: B(t) = J0(a t) changes sign at a t = 2.404825...
    const auto p = single_zero();
    const CharacteristicKernel k(p);
    const double a = 2.0 / std::sqrt(0.25 + p.table.gammas()[0] * p.table.gammas()[0]);
    EXPECT_GT(k.evaluate(2.40 / a).b(), 0.0);
    EXPECT_LT(k.evaluate(2.41 / a).b(), 0.0);
    EXPECT_NEAR(k.evaluate(10.0 / a).b(), specfun::bessel_j0(10.0), 1e-15);
}

TEST(CharFn, TailFactor) {
    const auto t = full_table().prefix(1000);
    auto with_tail = CharFnParams::for_table(t);
    auto without = with_tail;
    without.gaussian_tail = false;
    const double tt = 7.0;
    const double ratio = CharacteristicKernel(with_tail).evaluate(tt).b() / CharacteristicKernel(without).evaluate(tt).b();
    EXPECT_NEAR(ratio, std::exp(-tt * tt * zeros::tail_inverse_square(t.height_max())), 1e-14);
}

TEST(CharFn, RangeAndConfigErrors) {
    const auto p = CharFnParams::for_table(full_table().prefix(1000));
    EXPECT_THROW(char_fn(p.gamma_cut * 0.25 + 1.0, p), DomainError);
    EXPECT_THROW(char_fn(-1.0, p), DomainError);
    auto bad = p;
    bad.gamma_cut = p.table.height_max() + 1.0;
    EXPECT_THROW(char_fn(1.0, bad), ConfigError);
    bad = p;
    bad.t_max_factor = 0.6;
    EXPECT_THROW(char_fn(1.0, bad), ConfigError);
    bad = p;
    bad.gamma_cut = 50.0;  // tail needs a cut of at least 100
    EXPECT_THROW(char_fn(1.0, bad), ConfigError);
}

TEST(Density, BiasDensityWithTenThousandZeros) {
    const auto r = density_pz_positive(CharFnParams::for_table(full_table().prefix(10000)));
    EXPECT_GE(r.one_minus_delta, 2.2e-7);
    EXPECT_LE(r.one_minus_delta, 3.2e-7);
    EXPECT_NEAR(r.delta, 0.99999973, 5e-8);
    EXPECT_LE(std::fabs(r.delta + r.one_minus_delta - 1.0), 10.0 * r.quad_error_estimate);
    EXPECT_GT(r.panels, 0u);
    EXPECT_GT(r.t_cutoff, 0.0);
}

TEST(Density, StableInTableHeight) {
    const auto a = density_pz_positive(CharFnParams::for_table(full_table().prefix(5000)));
    const auto b = density_pz_positive(CharFnParams::for_table(full_table().prefix(10000)));
    EXPECT_LE(std::fabs(a.delta - b.delta), 1e-7);
    EXPECT_LE(std::fabs(a.one_minus_delta - b.one_minus_delta), 1e-7);
}

TEST(Density, ZeroFreeIsPointMass) {
    const auto r = density_pz_positive(CharFnParams::zero_free(full_table()));
    EXPECT_NEAR(r.delta, 1.0, 1e-10);
    EXPECT_EQ(r.one_minus_delta, 0.0);
}

TEST(Density, SymmetricWithoutBias) {
    const auto r = density_pz_positive(CharFnParams::zero_free(full_table(), 0.0));
    EXPECT_NEAR(r.delta, 0.5, 1e-15);
    auto sym = CharFnParams::for_table(full_table().prefix(2000));
    sym.bias = 0.0;
    const auto s = density_pz_positive(sym);
    EXPECT_NEAR(s.delta, 0.5, s.quad_error_estimate + 1e-15);
    EXPECT_NEAR(s.one_minus_delta, 0.5, s.quad_error_estimate + 1e-15);
}

TEST(Density, ModerateBiasAgainstIndependentMonteCarlo) {
    // Z = 0.3 + sum over 1000 zeros + Gaussian tail: P(Z > 0) is far from 1,
    // so a plain simulation resolves it.
    const auto t = full_table().prefix(1000);
    auto p = CharFnParams::for_table(t);
    p.bias = 0.3;
    const auto r = density_pz_positive(p);

    std::vector<double> amp;
    for (double g : t.gammas()) amp.push_back(2.0 / std::sqrt(0.25 + g * g));
    const double tail_sd = std::sqrt(2.0 * zeros::tail_inverse_square(t.height_max()));
    std::mt19937_64 rng(2024);
    std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
    std::normal_distribution<double> normal(0.0, tail_sd);
    const int n = 200000;
    int positive = 0;
    for (int k = 0; k < n; ++k) {
        double z = 0.3 + normal(rng);
        for (double a : amp) z += a * std::cos(angle(rng));
        positive += z > 0.0;
    }
    const double mc = static_cast<double>(positive) / n;
    EXPECT_NEAR(r.delta, mc, 4.0 * std::sqrt(mc * (1 - mc) / n));
    EXPECT_GT(r.delta, 0.8);
    EXPECT_LT(r.delta, 0.99);
}

TEST(Density, NegativeBiasMirrors) {
    auto p = CharFnParams::for_table(full_table().prefix(3000));
    const auto plus = density_pz_positive(p);
    p.bias = -1.0;
    const auto minus = density_pz_positive(p);
    EXPECT_EQ(minus.delta, plus.one_minus_delta);
    EXPECT_EQ(minus.one_minus_delta, plus.delta);
}

TEST(Density, ConfigErrors) {
    QuadSpec q;
    q.subpanels = 3;
    EXPECT_THROW(density_pz_positive(CharFnParams::for_table(full_table().prefix(1000)), q), ConfigError);
    // Height ~ 143 gives t_max ~ 36, short of the ~53 the inversion needs.
    try {
        density_pz_positive(CharFnParams::for_table(full_table().prefix(50)));
        ADD_FAILURE() << "expected ConfigError";
    } catch (const ConfigError& e) {
        EXPECT_NE(std::string(e.what()).find("taller"), std::string::npos);
    }
    QuadSpec capped;
    capped.max_panels = 5;
    EXPECT_THROW(density_pz_positive(single_zero(), capped), ConfigError);
}

TEST(Duality, FullAndDegenerate) {
    const auto d = pi_li_duality_check(CharFnParams::for_table(full_table().prefix(10000)));
    EXPECT_LE(std::fabs(d.gap), 1e-9);
    EXPECT_LE(std::fabs(d.gap), 10.0 * d.quad_error_estimate);
    EXPECT_GE(d.delta_tilde, 2.2e-7);
    EXPECT_LE(d.delta_tilde, 3.2e-7);
    const auto z = pi_li_duality_check(CharFnParams::zero_free(full_table()));
    EXPECT_EQ(z.delta_tilde, 0.0);
    EXPECT_EQ(z.gap, 0.0);
}

TEST(Random, CounterUniformRange) {
    for (std::uint64_t k = 0; k < 10000; ++k) {
        const double u = counter_uniform(99, k, k % 7);
        EXPECT_GE(u, 0.0);
        EXPECT_LT(u, 1.0);
    }
    EXPECT_NE(counter_uniform(1, 0, 0), counter_uniform(2, 0, 0));
    EXPECT_NE(counter_uniform(1, 0, 0), counter_uniform(1, 1, 0));
    EXPECT_NE(counter_uniform(1, 0, 0), counter_uniform(1, 0, 1));
}

TEST(Random, RunningStatsMerge) {
    std::mt19937_64 rng(5);
    std::normal_distribution<double> nd(3.0, 2.0);
    RunningStats all, a, b, c;
    for (int i = 0; i < 30000; ++i) {
        const double x = nd(rng);
        all.push(x);
        (i < 7000 ? a : i < 19000 ? b : c).push(x);
    }
    a.merge(b);
    a.merge(c);
    EXPECT_EQ(a.count(), all.count());
    EXPECT_NEAR(a.mean(), all.mean(), 1e-12 * std::fabs(all.mean()));
    EXPECT_NEAR(a.variance(), all.variance(), 1e-12 * all.variance());
}

TEST(Sample, Moments) {
    const auto t = full_table().prefix(1000);
    const std::uint64_t n = 100000;
    const auto r = sample_z(t, n, 12345);
    const double var = model_variance(t);
    EXPECT_NEAR(var, 0.046192, 1e-5);
    EXPECT_LE(std::fabs(r.stats.mean - 1.0), 4.0 * std::sqrt(var / n));
    EXPECT_NEAR(r.stats.variance / var, 1.0, 0.1);
    EXPECT_EQ(r.stats.n, n);
    EXPECT_EQ(r.stats.seed, 12345u);
    EXPECT_GE(r.stats.fraction_positive, 0.0);
    EXPECT_LE(r.stats.fraction_positive, 1.0);
}

TEST(Sample, DualSharesAngles) {
    const auto t = full_table().prefix(500);
    SampleOptions opt;
    opt.keep_samples = true;
    const auto z = sample_z(t, 20000, 77, opt);
    opt.dual = true;
    const auto zt = sample_z(t, 20000, 77, opt);
    EXPECT_NEAR(zt.stats.mean, -1.0, 4.0 * std::sqrt(model_variance(t) / 20000));
    for (std::size_t k = 0; k < 20000; k += 997) EXPECT_NEAR(z.samples[k] - zt.samples[k], 2.0, 1e-14);
    EXPECT_NEAR(z.stats.mean + zt.stats.mean, 2.0 * (z.stats.mean - 1.0), 1e-12);
    EXPECT_LE(std::fabs(z.stats.mean + zt.stats.mean), 8.0 * std::sqrt(model_variance(t) / 20000));
}

TEST(Sample, ReproducibleAcrossThreadCounts) {
    const auto t = full_table().prefix(300);
    SampleOptions one;
    one.keep_samples = true;
    SampleOptions four = one;
    four.threads = 4;
    const auto a = sample_z(t, 10001, 9, one);
    const auto b = sample_z(t, 10001, 9, four);
    EXPECT_EQ(a.samples, b.samples);
    EXPECT_NEAR(a.stats.mean, b.stats.mean, 1e-12 * std::fabs(a.stats.mean));
    EXPECT_NEAR(a.stats.variance, b.stats.variance, 1e-12 * a.stats.variance);
    const auto c = sample_z(t, 10001, 9, one);
    EXPECT_EQ(a.stats.mean, c.stats.mean);
    EXPECT_EQ(a.stats.variance, c.stats.variance);
}

TEST(Sample, Errors) {
    EXPECT_THROW(sample_z(full_table(), 0, 1), DomainError);
    EXPECT_THROW(sample_z(zeros::ZeroTable{}, 10, 1), DomainError);
}
