#pragma once

#include "error.hpp"

#include <cmath>
#include <cstddef>
#include <numbers>
#include <vector>

namespace mertens::quad {

/// Gauss-Legendre nodes and weights on [-1, 1].
struct GaussLegendre {
    std::vector<double> nodes;
    std::vector<double> weights;

    explicit GaussLegendre(std::size_t n) : nodes(n), weights(n) {
        if (n == 0) throw ConfigError("GaussLegendre: need at least one node");
        for (std::size_t i = 0; i < (n + 1) / 2; ++i) {
            // Newton iteration on P_n from the Chebyshev-like initial guess.
            long double x = std::cos(std::numbers::pi * (static_cast<double>(i) + 0.75) / (static_cast<double>(n) + 0.5));
            long double dp = 0;
            for (int it = 0; it < 100; ++it) {
                long double p0 = 1, p1 = x;
                for (std::size_t k = 2; k <= n; ++k) {
                    const long double pk = ((2.0L * k - 1) * x * p1 - (k - 1.0L) * p0) / k;
                    p0 = p1;
                    p1 = pk;
                }
                dp = n * (x * p1 - p0) / (x * x - 1);
                const long double dx = p1 / dp;
                x -= dx;
                if (std::fabs(dx) < 1e-19L) break;
            }
            const auto w = static_cast<double>(2 / ((1 - x * x) * dp * dp));
            nodes[i] = -static_cast<double>(x);
            nodes[n - 1 - i] = static_cast<double>(x);
            weights[i] = weights[n - 1 - i] = w;
        }
        if (n % 2 == 1) nodes[n / 2] = 0.0;
    }

    std::size_t size() const noexcept { return nodes.size(); }

    /// Rule applied on [a, b].
    template <typename F>
    double integrate(F&& f, double a, double b) const {
        const double half = 0.5 * (b - a), mid = 0.5 * (a + b);
        double acc = 0.0;
        for (std::size_t i = 0; i < nodes.size(); ++i) acc += weights[i] * f(mid + half * nodes[i]);
        return acc * half;
    }
};

}  // namespace mertens::quad
