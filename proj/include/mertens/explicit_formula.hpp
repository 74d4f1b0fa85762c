#pragma once

// Truncated explicit formula for E_M(x) in terms of the zeros 1/2 + i gamma:
//
//   E_M(x) = 1 - 2 Re sum_{0<gamma<T} x^{i gamma} / (-1/2 + i gamma) + O(sqrt(x) log^2(xT)/T + 1/log x)
//
// The zero sum enters with a minus sign: sum_{n<=x} Lambda(n)/(n log n) picks
// up -sum_rho x^{rho-1} / ((rho-1) log x) from -int_x^inf d(psi(t)-t)/(t log t).
// The sine sum sum_{0<gamma<T} sin(gamma y)/gamma drives the oscillation in
// y = log x, with E_M(e^y) ~ 1 - 2 sum sin(gamma y)/gamma.

#include "compensated.hpp"
#include "error.hpp"
#include "primes.hpp"
#include "zeros.hpp"

#include <cmath>
#include <cstddef>
#include <numbers>
#include <vector>

namespace mertens::explicit_formula {

/// Constant placed on the big-O error term of the truncated formula.
inline constexpr double kBoundConstant = 10.0;

struct ExplicitResult {
    double x = 0.0;
    double height_T = 0.0;
    double value = 0.0;
    double bound = 0.0;
    std::size_t terms_used = 0;
};

inline double explicit_bound(double x, double T) {
    const double l = std::log(x * T);
    return kBoundConstant * (std::sqrt(x) * l * l / T + 1.0 / std::log(x));
}

/// -2 Re(x^{i gamma} / (-1/2 + i gamma)) = 2(cos(gamma log x)/2 - gamma sin(gamma log x)) / (1/4 + gamma^2).
inline double zero_term(double gamma, double log_x) {
    const double phase = std::fmod(gamma * log_x, 2.0 * std::numbers::pi);
    return 2.0 * (0.5 * std::cos(phase) - gamma * std::sin(phase)) / (0.25 + gamma * gamma);
}

inline ExplicitResult explicit_em(double x, const zeros::ZeroTable& table, double T) {
    if (!(x >= 5.0) || !std::isfinite(x)) throw DomainError("explicit_em: requires x >= 5");
    if (!(T >= 5.0) || T > table.height_max()) throw RangeError("explicit_em: requires 5 <= T <= table height");
    const double log_x = std::log(x);
    CompensatedSum<double> acc(1.0);
    std::size_t used = 0;
    for (double g : table.gammas()) {
        if (!(g < T)) break;
        acc += zero_term(g, log_x);
        ++used;
    }
    return {x, T, acc.value(), explicit_bound(x, T), used};
}

/// sum_{0<gamma<T} sin(gamma y) / gamma in ascending gamma order.
inline double sine_sum(double y, const zeros::ZeroTable& table, double T) {
    if (T > table.height_max()) throw RangeError("sine_sum: T above table height");
    CompensatedSum<double> acc;
    for (double g : table.gammas()) {
        if (!(g < T)) break;
        acc += std::sin(g * y) / g;
    }
    return acc.value();
}

struct CompareRecord {
    double x = 0.0;
    double direct = 0.0;   ///< E_M(x) from the sieve
    double formula = 0.0;  ///< truncated explicit formula
    double bound = 0.0;
    bool ok = false;       ///< |direct - formula| <= bound
};

/// Evaluates both sides on a sorted grid, streaming the sieve once.
inline std::vector<CompareRecord> compare_scan(const std::vector<double>& x_grid, const zeros::ZeroTable& table,
                                               double T, primes::SieveConfig cfg = {}) {
    std::vector<CompareRecord> out;
    if (x_grid.empty()) return out;
    for (std::size_t i = 0; i < x_grid.size(); ++i) {
        if (!(x_grid[i] >= 5.0)) throw DomainError("compare_scan: every x must be >= 5");
        if (i > 0 && x_grid[i] < x_grid[i - 1]) throw DomainError("compare_scan: grid must be sorted");
    }
    primes::MertensState state(primes::floor_limit(x_grid.back()), cfg);
    out.reserve(x_grid.size());
    for (double x : x_grid) {
        state.advance_to(x);
        const double direct = primes::EmPoint::compute_em(x, state.log_product());
        const ExplicitResult ex = explicit_em(x, table, T);
        out.push_back({x, direct, ex.value, ex.bound, std::abs(direct - ex.value) <= ex.bound});
    }
    return out;
}

}  // namespace mertens::explicit_formula
