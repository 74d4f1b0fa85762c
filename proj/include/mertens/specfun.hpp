#pragma once

// Special functions used by the distribution kernel and the identity checks:
// Bessel J0, zeta(sigma) for real sigma > 1, E1, and the sine-integral tail.

#include "error.hpp"
#include "quadrature.hpp"

#include <cmath>
#include <cstddef>
#include <limits>
#include <numbers>
#include <string>

namespace mertens::specfun {

inline constexpr double kEulerGamma = 0.57721566490153286061;

struct SpecFunConfig {
    /// |z| at or below which J0 uses its power series.
    double j0_series_cut = 12.0;
    /// Euler-Maclaurin correction terms in zeta(sigma).
    int em_terms = 8;
    /// Absolute tolerance of the adaptive sine-integral quadrature.
    double quad_tol = 1e-12;

    void validate() const {
        if (!(j0_series_cut >= 4.0 && j0_series_cut <= 20.0)) throw ConfigError("j0_series_cut must lie in [4, 20]");
        if (em_terms < 2 || em_terms > 12) throw ConfigError("em_terms must lie in [2, 12]");
        if (!(quad_tol > 0.0 && quad_tol <= 1e-6)) throw ConfigError("quad_tol must lie in (0, 1e-6]");
    }
};

namespace detail {

// sum (-1)^m (z/2)^{2m} / m!^2, in extended precision: the largest term at
// |z| = 12 is ~4.2e3, so double would leave ~1e-12 of cancellation noise.
inline double j0_series(long double z) {
    const long double q = z * z / 4;
    long double term = 1, sum = 1;
    for (int m = 1; m < 200; ++m) {
        term *= -q / (static_cast<long double>(m) * m);
        sum += term;
        if (std::fabs(term) < 1e-22L && m > z) break;
    }
    return static_cast<double>(sum);
}

// Miller's backward recurrence normalized by J0 + 2 sum J_{2k} = 1.
inline double j0_miller(long double z) {
    const int start = 2 * static_cast<int>((z + 40 + 4 * std::cbrt(static_cast<double>(z))) / 2);
    long double next = 0, cur = 1e-30L, even_sum = 0;
    for (int n = start; n >= 1; --n) {
        const long double prev = 2 * n / z * cur - next;
        next = cur;
        cur = prev;
        if (std::fabs(cur) > 1e300L) {
            next *= 1e-300L;
            cur *= 1e-300L;
            even_sum *= 1e-300L;
        }
        if ((n - 1) % 2 == 0 && n - 1 > 0) even_sum += cur;
    }
    return static_cast<double>(cur / (cur + 2 * even_sum));
}

// Hankel expansion, summed to its smallest term.
inline double j0_hankel(long double z) {
    const long double inv8z = 1 / (8 * z);
    long double p = 1, q = 0, c = 1, last = 1;
    for (int k = 1; k < 200; ++k) {
        const long double odd = 2.0L * k - 1;
        c *= odd * odd / k * inv8z;
        if (c > last || c < 1e-21L) break;
        last = c;
        switch (k % 4) {
            case 1: q -= c; break;
            case 2: p -= c; break;
            case 3: q += c; break;
            case 0: p += c; break;
        }
    }
    const long double cs = std::cos(z), sn = std::sin(z);
    const long double chi_cos = (cs + sn) / std::numbers::sqrt2_v<long double>;
    const long double chi_sin = (sn - cs) / std::numbers::sqrt2_v<long double>;
    return static_cast<double>(std::sqrt(2 / (std::numbers::pi_v<long double> * z)) * (p * chi_cos - q * chi_sin));
}

}  // namespace detail

/// Bessel J0 for real z: power series up to the configured cut, Miller
/// recurrence up to 30, Hankel expansion beyond.
inline double bessel_j0(double z, const SpecFunConfig& cfg = {}) {
    if (!std::isfinite(z)) throw DomainError("bessel_j0: argument must be finite");
    const long double a = std::fabs(z);
    if (a <= cfg.j0_series_cut) return detail::j0_series(a);
    if (a < 30) return detail::j0_miller(a);
    return detail::j0_hankel(a);
}

/// J0(z) - 1 without cancellation, for |z| <= 4.
inline double bessel_j0_minus_one(double z) {
    if (!std::isfinite(z) || std::fabs(z) > 4.0) throw DomainError("bessel_j0_minus_one: requires |z| <= 4");
    const long double q = static_cast<long double>(z) * z / 4;
    long double term = 1, sum = 0;
    for (int m = 1; m < 100; ++m) {
        term *= -q / (static_cast<long double>(m) * m);
        sum += term;
        if (std::fabs(term) <= 1e-21L * std::fabs(sum)) break;
    }
    return static_cast<double>(sum);
}

/// zeta(sigma) for real sigma > 1 by Euler-Maclaurin summation.
inline double real_zeta(double sigma, const SpecFunConfig& cfg = {}) {
    if (!(sigma > 1.0) || std::isnan(sigma)) throw DomainError("real_zeta: requires sigma > 1");
    if (std::isinf(sigma)) return 1.0;
    // B_{2k} / (2k)!
    static constexpr long double kB[] = {
        1.0L / 12,
        -1.0L / 720,
        1.0L / 30240,
        -1.0L / 1209600,
        1.0L / 47900160,
        -691.0L / 1307674368000.0L,
        1.0L / 74724249600.0L,
        -3617.0L / 10670622842880000.0L,
        43867.0L / 5109094217170944000.0L,
        -174611.0L / 802857662698291200000.0L,
        854513.0L / 155112100433309859840000.0L,
        -236364091.0L / 1693824136731743669452800000.0L,
    };
    constexpr int n_terms = 12;
    const long double s = sigma;
    long double sum = 0;
    for (int n = n_terms - 1; n >= 1; --n) sum += std::pow(static_cast<long double>(n), -s);
    const long double big_n = n_terms;
    const long double n_pow = std::pow(big_n, -s);
    sum += n_pow * big_n / (s - 1) + n_pow / 2;
    long double rising = s;
    long double n_power = n_pow / big_n;
    for (int k = 0; k < cfg.em_terms; ++k) {
        sum += kB[k] * rising * n_power;
        rising *= (s + 2 * k + 1) * (s + 2 * k + 2);
        n_power /= big_n * big_n;
    }
    return static_cast<double>(sum);
}

/// E1(w) = int_w^inf e^{-y}/y dy: series below 1, continued fraction above.
inline double exp_integral_e1(double w) {
    if (!(w > 0.0)) throw DomainError("exp_integral_e1: requires w > 0");
    if (std::isinf(w)) return 0.0;
    const long double x = w;
    if (w < 1.0) {
        long double term = 1, sum = 0;
        for (int k = 1; k < 100; ++k) {
            term *= -x / k;
            const long double add = term / k;
            sum += add;
            if (std::fabs(add) < 1e-21L * std::fabs(sum)) break;
        }
        return static_cast<double>(-static_cast<long double>(kEulerGamma) - std::log(x) - sum);
    }
    // Modified Lentz on the continued fraction e^{-x}/(x+1- 1/(x+3- 4/(x+5- ...))).
    constexpr long double tiny = 1e-300L;
    long double b = x + 1, c = 1 / tiny, d = 1 / b, h = d;
    for (int i = 1; i < 1000; ++i) {
        const long double an = -static_cast<long double>(i) * i;
        b += 2;
        d = 1 / (an * d + b);
        c = b + an / c;
        const long double del = c * d;
        h *= del;
        if (std::fabs(del - 1) < 1e-19L) break;
    }
    return static_cast<double>(h * std::exp(-x));
}

/// int_x^inf sin(t)/t dt = pi/2 - Si(x), for x >= 0.
inline double sine_integral_tail(double x, const SpecFunConfig& cfg = {}) {
    if (!(x >= 0.0)) throw DomainError("sine_integral_tail: requires x >= 0");
    if (std::isinf(x)) return 0.0;
    if (x >= 40.0) {
        // Auxiliary functions f, g by their asymptotic series.
        const long double z = x, z2 = z * z;
        long double f = 0, g = 0, tf = 1 / z, tg = 1 / z2;
        for (int k = 0; k < 30; ++k) {
            f += tf;
            g += tg;
            const long double nf = -tf * (2 * k + 1) * (2 * k + 2) / z2;
            const long double ng = -tg * (2 * k + 2) * (2 * k + 3) / z2;
            if (std::fabs(nf) > std::fabs(tf) || std::fabs(nf) < 1e-22L) break;
            tf = nf;
            tg = ng;
        }
        return static_cast<double>(f * std::cos(z) + g * std::sin(z));
    }
    // Si(x) by composite Gauss-Legendre on panels of width <= pi/4, doubling
    // the panel count until two successive estimates agree to quad_tol.
    static const quad::GaussLegendre rule(16);
    auto sinc = [](double t) { return t == 0.0 ? 1.0 : std::sin(t) / t; };
    auto composite = [&](int panels) {
        double acc = 0.0;
        for (int i = 0; i < panels; ++i) acc += rule.integrate(sinc, x * i / panels, x * (i + 1) / panels);
        return acc;
    };
    int panels = std::max(1, static_cast<int>(std::ceil(x / (std::numbers::pi / 4))));
    double si = composite(panels);
    for (int it = 0; it < 8; ++it) {
        panels *= 2;
        const double refined = composite(panels);
        const bool done = std::fabs(refined - si) <= cfg.quad_tol;
        si = refined;
        if (done) break;
    }
    return std::numbers::pi / 2 - si;
}

struct GammaIdentity {
    double lhs = 0.0;  ///< log zeta(sigma) - E1((sigma-1) log x)
    double rhs = 0.0;  ///< log log x + gamma
    double gap = 0.0;  ///< lhs - rhs
};

/// Finite-sigma evaluation of lim_{sigma->1+} (log zeta(sigma) + int_sigma^inf
/// x^{1-a}/(1-a) da) = log log x + gamma, where the integral equals
/// -E1((sigma-1) log x).
inline GammaIdentity gamma_identity_check(double x, double sigma, const SpecFunConfig& cfg = {}) {
    if (!(x >= 2.0) || !std::isfinite(x)) throw DomainError("gamma_identity_check: requires x >= 2");
    if (!(sigma > 1.0 && sigma <= 1.1)) throw DomainError("gamma_identity_check: requires 1 < sigma <= 1.1");
    GammaIdentity r;
    r.lhs = std::log(real_zeta(sigma, cfg)) - exp_integral_e1((sigma - 1.0) * std::log(x));
    r.rhs = std::log(std::log(x)) + kEulerGamma;
    r.gap = r.lhs - r.rhs;
    return r;
}

/// Accepted |gap| for gamma_identity_check: 5 (1 + log log x) (sigma - 1).
inline double gamma_identity_bound(double x, double sigma) {
    return 5.0 * (1.0 + std::log(std::log(x))) * (sigma - 1.0);
}

}  // namespace mertens::specfun
