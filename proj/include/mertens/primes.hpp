#pragma once

// Ground-truth side: segmented sieve, the streaming accumulator for
// log prod_{p<=x} (1-1/p)^{-1}, the normalized remainder E_M(x) and the race
// scan over [2, x_max].

#include "compensated.hpp"
#include "error.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <numbers>
#include <optional>
#include <queue>
#include <string>
#include <thread>
#include <utility>
#include <vector>

namespace mertens::primes {

inline constexpr double kEulerGamma = 0.57721566490153286061;

/// Gap below a prime used for the left-limit ("pre-prime") evaluation point.
inline constexpr double kPrePrimeOffset = 0x1p-20;

struct SieveConfig {
    /// Largest limit accepted by the sieve and the scans built on it.
    std::uint64_t max_limit = 100'000'000;
    /// Odd numbers per sieve segment.
    std::size_t segment_odds = std::size_t{1} << 16;
};

namespace detail {

inline void check_limit(std::uint64_t limit, const SieveConfig& cfg) {
    if (limit > cfg.max_limit) {
        throw CapacityError("limit " + std::to_string(limit) + " exceeds configured cap " +
                            std::to_string(cfg.max_limit));
    }
}

inline void check_x(double x, const char* what) {
    if (!(x >= 2.0) || !std::isfinite(x)) {
        throw DomainError(std::string(what) + ": requires x >= 2");
    }
}

inline std::uint64_t isqrt(std::uint64_t n) {
    auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(n)));
    while (r * r > n) --r;
    while ((r + 1) * (r + 1) <= n) ++r;
    return r;
}

inline std::vector<std::uint32_t> small_odd_primes(std::uint64_t bound) {
    std::vector<std::uint32_t> out;
    if (bound < 3) return out;
    std::vector<bool> composite(bound + 1, false);
    for (std::uint64_t i = 3; i <= bound; i += 2) {
        if (composite[i]) continue;
        out.push_back(static_cast<std::uint32_t>(i));
        for (std::uint64_t j = i * i; j <= bound; j += 2 * i) composite[j] = true;
    }
    return out;
}

}  // namespace detail

/// Streams the primes in [lo, hi] in ascending order using an odd-only
/// segmented sieve. Memory is O(sqrt(hi) + segment).
class SegmentedSieve {
public:
    explicit SegmentedSieve(std::uint64_t hi, SieveConfig cfg = {}) : SegmentedSieve(0, hi, cfg) {}

    SegmentedSieve(std::uint64_t lo, std::uint64_t hi, SieveConfig cfg = {})
        : hi_(hi), segment_odds_(std::max<std::size_t>(cfg.segment_odds, 64)) {
        detail::check_limit(hi, cfg);
        emit_two_ = lo <= 2 && hi >= 2;
        // First odd number >= max(lo, 3).
        next_odd_ = std::max<std::uint64_t>(lo, 3) | 1;
        base_ = detail::small_odd_primes(detail::isqrt(hi));
        seg_.resize(segment_odds_);
    }

    /// Next prime, or nullopt once the range is exhausted.
    std::optional<std::uint64_t> next() {
        if (emit_two_) {
            emit_two_ = false;
            return 2;
        }
        while (true) {
            while (pos_ < seg_len_) {
                const std::size_t i = pos_++;
                if (seg_[i]) return seg_lo_ + 2 * i;
            }
            if (!fill_segment()) return std::nullopt;
        }
    }

    template <typename F>
    void for_each(F&& f) {
        while (auto p = next()) f(*p);
    }

private:
    bool fill_segment() {
        if (next_odd_ > hi_) return false;
        seg_lo_ = next_odd_;
        const std::uint64_t span_hi = std::min(hi_, seg_lo_ + 2 * (segment_odds_ - 1));
        seg_len_ = static_cast<std::size_t>((span_hi - seg_lo_) / 2 + 1);
        std::fill(seg_.begin(), seg_.begin() + static_cast<std::ptrdiff_t>(seg_len_), 1);
        for (const std::uint64_t p : base_) {
            const std::uint64_t sq = p * p;
            if (sq > span_hi) break;
            std::uint64_t start = sq;
            if (start < seg_lo_) {
                start = (seg_lo_ + p - 1) / p * p;
                if (start % 2 == 0) start += p;
            }
            for (std::uint64_t m = start; m <= span_hi; m += 2 * p) seg_[(m - seg_lo_) / 2] = 0;
        }
        pos_ = 0;
        next_odd_ = span_hi + 2;
        return true;
    }

    std::uint64_t hi_;
    std::size_t segment_odds_;
    bool emit_two_ = false;
    std::uint64_t next_odd_ = 3;
    std::vector<std::uint32_t> base_;
    std::vector<std::uint8_t> seg_;
    std::uint64_t seg_lo_ = 0;
    std::size_t seg_len_ = 0;
    std::size_t pos_ = 0;
};

/// All primes <= limit, ascending.
inline std::vector<std::uint64_t> sieve_primes(std::uint64_t limit, SieveConfig cfg = {}) {
    SegmentedSieve sieve(limit, cfg);
    std::vector<std::uint64_t> out;
    sieve.for_each([&](std::uint64_t p) { out.push_back(p); });
    return out;
}

/// -log(1 - 1/p), without cancellation for large p.
inline double log_euler_factor(std::uint64_t p) { return -std::log1p(-1.0 / static_cast<double>(p)); }

/// Streaming accumulator of log prod_{p<=x}(1-1/p)^{-1} as x increases.
/// Also tracks sum_{n<=x} Lambda(n)/(n log n) so both sides of the prime-power
/// approximation can be read at every scan position.
class MertensState {
public:
    explicit MertensState(std::uint64_t x_limit, SieveConfig cfg = {})
        : limit_(x_limit), sieve_(x_limit, cfg), root_(detail::isqrt(x_limit)) {
        pending_ = sieve_.next();
    }

    /// Moves the scan position to x (right-continuous: a prime p == x is included).
    void advance_to(double x) {
        if (x < x_current_) throw DomainError("MertensState: scan position must not decrease");
        if (!(x < static_cast<double>(limit_) + 1.0)) {
            throw RangeError("MertensState: x beyond sieve limit");
        }
        x_current_ = x;
        while (pending_ && static_cast<double>(*pending_) <= x) {
            const std::uint64_t p = *pending_;
            consume_powers_below(p);
            log_product_ += log_euler_factor(p);
            lambda_ += 1.0 / static_cast<double>(p);
            ++prime_count_;
            if (p <= root_) powers_.push({p * p, p, 2});
            pending_ = sieve_.next();
        }
        consume_powers_below(static_cast<std::uint64_t>(std::floor(x)) + 1);
    }

    double x_current() const noexcept { return x_current_; }
    double log_product() const noexcept { return log_product_.value(); }
    double comp_residual() const noexcept { return log_product_.residual(); }
    std::uint64_t prime_count() const noexcept { return prime_count_; }
    double lambda_sum() const noexcept { return lambda_.value(); }

    /// Smallest prime above the scan position, if within the sieve limit.
    std::optional<std::uint64_t> peek_next_prime() const noexcept { return pending_; }

private:
    struct Power {
        std::uint64_t value;
        std::uint64_t prime;
        int exponent;
        bool operator>(const Power& o) const noexcept { return value > o.value; }
    };

    // Adds Lambda(n)/(n log n) = 1/(k p^k) for every proper prime power n < bound.
    void consume_powers_below(std::uint64_t bound) {
        while (!powers_.empty() && powers_.top().value < bound) {
            const Power pw = powers_.top();
            powers_.pop();
            lambda_ += 1.0 / (pw.exponent * static_cast<double>(pw.value));
            if (pw.value <= limit_ / pw.prime) powers_.push({pw.value * pw.prime, pw.prime, pw.exponent + 1});
        }
    }

    std::uint64_t limit_;
    SegmentedSieve sieve_;
    std::uint64_t root_;
    std::optional<std::uint64_t> pending_;
    std::priority_queue<Power, std::vector<Power>, std::greater<>> powers_;
    double x_current_ = 0.0;
    CompensatedSum<double> log_product_;
    CompensatedSum<double> lambda_;
    std::uint64_t prime_count_ = 0;
};

/// One evaluation of E_M(x) = sqrt(x) log x (log prod - log log x - gamma).
struct EmPoint {
    double x = 0.0;
    double em = 0.0;
    double log_product = 0.0;

    static double compute_em(double x, double log_product) {
        const double lx = std::log(x);
        return std::sqrt(x) * lx * (log_product - std::log(lx) - kEulerGamma);
    }

    static EmPoint at(double x, double log_product) { return {x, compute_em(x, log_product), log_product}; }

    bool operator==(const EmPoint&) const = default;
};

inline std::uint64_t floor_limit(double x) { return static_cast<std::uint64_t>(std::floor(x)); }

/// log prod_{p<=x}(1-1/p)^{-1}, sequential compensated summation in prime order.
inline double mertens_log_product(double x, SieveConfig cfg = {}) {
    detail::check_x(x, "mertens_log_product");
    MertensState state(floor_limit(x), cfg);
    state.advance_to(x);
    return state.log_product();
}

/// Same sum with the prime range split over `threads` workers. Chunk sums are
/// merged in range order; differs from the sequential value by rounding only.
inline double mertens_log_product_parallel(double x, unsigned threads, SieveConfig cfg = {}) {
    detail::check_x(x, "mertens_log_product_parallel");
    const std::uint64_t hi = floor_limit(x);
    detail::check_limit(hi, cfg);
    threads = std::max(1u, threads);
    std::vector<CompensatedSum<double>> partial(threads);
    std::vector<std::thread> workers;
    const std::uint64_t chunk = hi / threads + 1;
    for (unsigned w = 0; w < threads; ++w) {
        const std::uint64_t lo = w * chunk;
        const std::uint64_t top = std::min(hi, lo + chunk - 1);
        if (lo > top) break;
        workers.emplace_back([&, w, lo, top] {
            SegmentedSieve sieve(lo, top, cfg);
            sieve.for_each([&](std::uint64_t p) { partial[w] += log_euler_factor(p); });
        });
    }
    for (auto& t : workers) t.join();
    CompensatedSum<double> total;
    for (const auto& s : partial) total += s;
    return total.value();
}

inline EmPoint em_remainder(double x, SieveConfig cfg = {}) {
    detail::check_x(x, "em_remainder");
    return EmPoint::at(x, mertens_log_product(x, cfg));
}

/// sum_{n<=x} Lambda(n)/(n log n), enumerating prime powers p^k <= x directly.
inline double lambda_sum(double x, SieveConfig cfg = {}) {
    detail::check_x(x, "lambda_sum");
    const std::uint64_t n = floor_limit(x);
    CompensatedSum<double> acc;
    SegmentedSieve(n, cfg).for_each([&](std::uint64_t p) {
        std::uint64_t pk = p;
        for (int k = 1;; ++k) {
            acc += 1.0 / (k * static_cast<double>(pk));
            if (pk > n / p) break;
            pk *= p;
        }
    });
    return acc.value();
}

/// log prod - Lambda-sum - 1/(sqrt(x) log x); O(1/(sqrt(x) log^2 x)) for large x.
inline double approx1_residual(double x, SieveConfig cfg = {}) {
    detail::check_x(x, "approx1_residual");
    return mertens_log_product(x, cfg) - lambda_sum(x, cfg) - 1.0 / (std::sqrt(x) * std::log(x));
}

struct ProductDifference {
    double difference = 0.0;   ///< prod - e^gamma log x
    double first_order = 0.0;  ///< e^gamma E_M(x) / sqrt(x)
};

inline ProductDifference product_difference(double x, SieveConfig cfg = {}) {
    detail::check_x(x, "product_difference");
    const EmPoint pt = em_remainder(x, cfg);
    const double eg = std::exp(kEulerGamma);
    return {std::exp(pt.log_product) - eg * std::log(x), eg * pt.em / std::sqrt(x)};
}

// ---------------------------------------------------------------------------
// Race scan

struct GridSpec {
    enum class Kind { every_integer, log_spaced };
    Kind kind = Kind::log_spaced;
    /// Number of log-spaced checkpoints in [2, x_max].
    std::size_t log_points = 1000;
    /// Largest x_max accepted for every_integer grids.
    std::uint64_t integer_cap = 1'000'000;
    /// Evaluate E_M at every prime p and at p - 2^-20 (left limit) as well.
    bool primes = true;

    static GridSpec full_resolution(std::size_t log_points = 1000) { return {Kind::log_spaced, log_points}; }
    static GridSpec integers(std::uint64_t cap = 1'000'000) { return {Kind::every_integer, 0, cap}; }
};

/// Normalized extrema are tracked from here on, where log log log x is bounded away from 0.
inline constexpr double kNormalizedStart = 1000.0;

/// 2 pi (E_M(x) - 1) / (log log log x)^2: the bias-centred remainder scaled so
/// the expected limsup/liminf are +1 / -1.
inline double normalized_extremum(double x, double em) {
    const double lll = std::log(std::log(std::log(x)));
    return 2.0 * std::numbers::pi * (em - 1.0) / (lll * lll);
}

struct RaceScanReport {
    std::vector<EmPoint> checkpoints;
    double min_em = std::numeric_limits<double>::infinity();
    double argmin_x = 0.0;
    std::vector<std::pair<double, double>> sign_changes;
    double normalized_sup = std::numeric_limits<double>::quiet_NaN();
    double normalized_inf = std::numeric_limits<double>::quiet_NaN();
    /// Evaluations performed (grid + prime + pre-prime points).
    std::uint64_t evaluations = 0;

    bool operator==(const RaceScanReport& o) const {
        auto same = [](double a, double b) { return a == b || (std::isnan(a) && std::isnan(b)); };
        return checkpoints == o.checkpoints && min_em == o.min_em && argmin_x == o.argmin_x &&
               sign_changes == o.sign_changes && same(normalized_sup, o.normalized_sup) &&
               same(normalized_inf, o.normalized_inf) && evaluations == o.evaluations;
    }
};

/// Single pass over [2, x_max]. Between consecutive primes E_M is smooth and
/// decreasing, so evaluating at every prime and just below the next one
/// captures the extrema and every sign change.
inline RaceScanReport race_scan(double x_max, GridSpec grid = {}, SieveConfig cfg = {}) {
    detail::check_x(x_max, "race_scan");
    const std::uint64_t hi = floor_limit(x_max);
    detail::check_limit(hi, cfg);
    if (grid.kind == GridSpec::Kind::every_integer && hi > grid.integer_cap) {
        throw CapacityError("every-integer grid limited to " + std::to_string(grid.integer_cap));
    }

    std::vector<double> grid_points;
    if (grid.kind == GridSpec::Kind::every_integer) {
        for (std::uint64_t n = 2; n <= hi; ++n) grid_points.push_back(static_cast<double>(n));
    } else {
        const std::size_t n = std::max<std::size_t>(grid.log_points, 2);
        const double ratio = std::log(x_max / 2.0);
        for (std::size_t i = 0; i < n; ++i) {
            grid_points.push_back(i + 1 == n ? x_max : 2.0 * std::exp(ratio * static_cast<double>(i) / (n - 1)));
        }
    }
    if (grid_points.empty() || grid_points.back() != x_max) grid_points.push_back(x_max);

    RaceScanReport rep;
    MertensState state(hi, cfg);
    std::optional<EmPoint> prev;
    auto evaluate = [&](double x, bool record) {
        state.advance_to(x);
        const EmPoint pt = EmPoint::at(x, state.log_product());
        ++rep.evaluations;
        if (pt.em < rep.min_em) {
            rep.min_em = pt.em;
            rep.argmin_x = x;
        }
        if (x >= kNormalizedStart) {
            const double v = normalized_extremum(x, pt.em);
            if (std::isnan(rep.normalized_sup) || v > rep.normalized_sup) rep.normalized_sup = v;
            if (std::isnan(rep.normalized_inf) || v < rep.normalized_inf) rep.normalized_inf = v;
        }
        auto push = [&](const EmPoint& p) {
            if (rep.checkpoints.empty() || rep.checkpoints.back().x < p.x) rep.checkpoints.push_back(p);
        };
        if (prev && ((prev->em > 0) != (pt.em > 0))) {
            rep.sign_changes.emplace_back(prev->x, x);
            push(*prev);
            push(pt);
        } else if (record) {
            push(pt);
        }
        prev = pt;
    };

    std::size_t gi = 0;
    double last = 0.0;
    while (true) {
        const double next_grid = gi < grid_points.size() ? grid_points[gi] : std::numeric_limits<double>::infinity();
        double next_prime_event = std::numeric_limits<double>::infinity();
        if (grid.primes) {
            if (auto q = state.peek_next_prime()) {
                // Left limit first, then the jump at q itself.
                const auto qd = static_cast<double>(*q);
                next_prime_event = (qd > 2.0 && qd - kPrePrimeOffset > last) ? qd - kPrePrimeOffset : qd;
            }
        }
        const double x = std::min(next_grid, next_prime_event);
        if (!std::isfinite(x) || x > x_max) break;
        if (x < 2.0) {
            last = x;
            ++gi;
            continue;
        }
        const bool is_grid = x == next_grid;
        if (is_grid) ++gi;
        if (x > last || rep.evaluations == 0) {
            evaluate(x, is_grid);
        } else if (is_grid && !rep.checkpoints.empty() && rep.checkpoints.back().x < x) {
            rep.checkpoints.push_back(*prev);
        }
        last = x;
    }
    return rep;
}

}  // namespace mertens::primes
