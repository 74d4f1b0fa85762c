#pragma once

// Limiting logarithmic distribution of E_M under RH and LI: the law of
//
//   Z = 1 + 2 Re sum_{gamma>0} X(gamma) / sqrt(1/4 + gamma^2),   X uniform on |z| = 1.
//
// Its characteristic function is phi(t) = E[e^{itZ}] = e^{it} prod J0(2t / sqrt(1/4 + gamma^2)).
// P(Z > 0) follows from Gil-Pelaez inversion, and the Monte Carlo sampler
// draws Z directly.

#include "compensated.hpp"
#include "error.hpp"
#include "quadrature.hpp"
#include "specfun.hpp"
#include "zeros.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <numbers>
#include <string>
#include <thread>
#include <vector>

namespace mertens::dist {

struct CharFnParams {
    zeros::ZeroTable table;
    /// Zeros at or below this height enter the Bessel product; the rest enter
    /// through the Gaussian tail factor exp(-t^2 * tail).
    double gamma_cut = 0.0;
    /// With the tail active, t is limited to gamma_cut * t_max_factor.
    double t_max_factor = 0.25;
    /// Location of the point mass the oscillating part is centred on: +1 for
    /// Z, -1 for the pi(x) vs Li(x) variable, 0 for the symmetric part alone.
    double bias = 1.0;
    /// Replace the zeros above gamma_cut by exp(-t^2 * tail_inverse_square(gamma_cut)).
    bool gaussian_tail = true;

    static CharFnParams for_table(const zeros::ZeroTable& t) { return {t, t.height_max()}; }

    /// Kernel that is identically 1: no zeros, no tail (Z is a point mass at bias).
    static CharFnParams zero_free(const zeros::ZeroTable& t, double bias = 1.0) {
        return {t, 0.0, 0.25, bias, false};
    }

    void validate() const {
        if (!(gamma_cut >= 0.0) || gamma_cut > table.height_max()) {
            throw ConfigError("gamma_cut must lie in [0, table height]");
        }
        if (!(t_max_factor > 0.0 && t_max_factor <= 0.5)) throw ConfigError("t_max_factor must lie in (0, 0.5]");
        if (gaussian_tail && gamma_cut < 100.0) {
            throw ConfigError("Gaussian tail needs gamma_cut >= 100; load a taller zero table or disable the tail");
        }
        if (!std::isfinite(bias)) throw ConfigError("bias must be finite");
    }
};

/// Precomputed form of B(t) = prod_{gamma <= cut} J0(2t/s_gamma) * exp(-t^2 * tail),
/// s_gamma = sqrt(1/4 + gamma^2).
class CharacteristicKernel {
public:
    explicit CharacteristicKernel(const CharFnParams& params) : params_(params) {
        params_.validate();
        for (double g : params_.table.gammas()) {
            if (g > params_.gamma_cut) break;
            scales_.push_back(2.0 / std::sqrt(0.25 + g * g));
        }
        tail_ = params_.gaussian_tail ? zeros::tail_inverse_square(params_.gamma_cut) : 0.0;
    }

    const CharFnParams& params() const noexcept { return params_; }
    std::size_t zeros_in_product() const noexcept { return scales_.size(); }
    double tail_sum() const noexcept { return tail_; }

    /// B is identically 1.
    bool trivial() const noexcept { return scales_.empty() && tail_ == 0.0; }

    /// Largest t at which the tail approximation J0(w) ~ exp(-w^2/4) is trusted.
    double t_max() const noexcept {
        return params_.gaussian_tail ? params_.gamma_cut * params_.t_max_factor
                                     : std::numeric_limits<double>::infinity();
    }

    struct Value {
        double log_abs = 0.0;  ///< log|B(t)|, -inf when a factor vanishes
        bool negative = false;
        double b() const { return negative ? -std::exp(log_abs) : std::exp(log_abs); }
        /// 1 - B(t), accurate when B is close to 1.
        double one_minus_b() const { return negative ? 1.0 + std::exp(log_abs) : -std::expm1(log_abs); }
    };

    Value evaluate(double t) const {
        if (!(t >= 0.0) || t > t_max()) {
            throw DomainError("characteristic function: t = " + std::to_string(t) +
                              " outside the validity range of the tail approximation");
        }
        CompensatedSum<double> log_abs;
        bool negative = false;
        for (double scale : scales_) {
            const double w = scale * t;
            if (w < 2.0) {
                log_abs += std::log1p(specfun::bessel_j0_minus_one(w));
                continue;
            }
            const double j = specfun::bessel_j0(w);
            if (j == 0.0) return {-std::numeric_limits<double>::infinity(), false};
            if (j < 0.0) negative = !negative;
            log_abs += std::log(std::fabs(j));
        }
        log_abs += -t * t * tail_;
        return {log_abs.value(), negative};
    }

    std::complex<double> phi(double t) const {
        const double b = evaluate(t).b();
        return {std::cos(params_.bias * t) * b, std::sin(params_.bias * t) * b};
    }

private:
    CharFnParams params_;
    std::vector<double> scales_;
    double tail_ = 0.0;
};

/// phi(t) = E[e^{itZ}] = e^{i bias t} B(t), 0 <= t <= t_max.
inline std::complex<double> char_fn(double t, const CharFnParams& params) {
    return CharacteristicKernel(params).phi(t);
}

struct QuadSpec {
    /// Gauss-Legendre nodes per sub-panel.
    std::size_t nodes = 10;
    /// Sub-panels per half-period of sin(|bias| t); width must be <= pi/4.
    int subpanels = 4;
    /// Stop once max|B| over a half-period panel drops below this.
    double envelope_stop = 1e-18;
    /// Hard cap on half-period panels; a kernel without the Gaussian tail can
    /// decay too slowly to ever reach envelope_stop.
    std::size_t max_panels = 100000;

    void validate() const {
        if (subpanels < 4) throw ConfigError("quadrature panel width must be <= pi/4 (subpanels >= 4)");
        if (nodes < 2) throw ConfigError("quadrature needs at least 2 nodes per panel");
        if (!(envelope_stop > 0.0)) throw ConfigError("envelope_stop must be positive");
        if (max_panels == 0) throw ConfigError("max_panels must be positive");
    }
};

struct DensityResult {
    double delta = 0.0;            ///< P(Z > 0)
    double one_minus_delta = 0.0;  ///< P(Z < 0), computed without forming 1 - delta
    double t_cutoff = 0.0;
    std::size_t panels = 0;
    double quad_error_estimate = 0.0;
};

/// Gil-Pelaez: P(Z > 0) = 1/2 + (1/pi) int_0^inf sin(bias t) B(t) / t dt.
///
/// With a = |bias| > 0 the complementary probability is evaluated as
/// (1/pi) [int_0^K sin(a t)(1 - B(t))/t dt + int_{aK}^inf sin(u)/u du], which
/// never subtracts two numbers close to 1.
inline DensityResult density_pz_positive(const CharFnParams& params, const QuadSpec& quad = {}) {
    quad.validate();
    const CharacteristicKernel kernel(params);
    DensityResult res;
    const double a = std::fabs(params.bias);
    if (a == 0.0) {
        res.delta = res.one_minus_delta = 0.5;
        return res;
    }
    // Probability on the side of the bias and its complement; a trivial
    // kernel is a point mass at the bias.
    double upper = 1.0;
    double lower = 0.0;
    if (!kernel.trivial()) {
        const quad::GaussLegendre rule(quad.nodes);
        const double half_period = std::numbers::pi / a;
        CompensatedSum<double> main_sum, comp_sum;
        double abs_sum = 0.0, last_panel = 0.0, envelope = 1.0;
        std::size_t k = 0;
        for (;; ++k) {
            const double lo = k * half_period;
            const double hi = lo + half_period;
            if (k >= quad.max_panels) {
                throw ConfigError("characteristic function still above envelope_stop after " +
                                  std::to_string(quad.max_panels) + " panels");
            }
            if (hi > kernel.t_max()) {
                throw ConfigError("inversion needs t up to " + std::to_string(hi) + " but the tail approximation is valid only to " +
                                  std::to_string(kernel.t_max()) + "; use a taller zero table");
            }
            double panel_main = 0.0, panel_comp = 0.0;
            envelope = 0.0;
            for (int s = 0; s < quad.subpanels; ++s) {
                const double sl = lo + (hi - lo) * s / quad.subpanels;
                const double sh = lo + (hi - lo) * (s + 1) / quad.subpanels;
                const double half = 0.5 * (sh - sl), mid = 0.5 * (sh + sl);
                for (std::size_t i = 0; i < rule.size(); ++i) {
                    const double t = mid + half * rule.nodes[i];
                    const auto v = kernel.evaluate(t);
                    const double b = v.b();
                    const double w = rule.weights[i] * half * std::sin(a * t) / t;
                    panel_main += w * b;
                    panel_comp += w * v.one_minus_b();
                    envelope = std::max(envelope, std::fabs(b));
                }
            }
            main_sum += panel_main;
            comp_sum += panel_comp;
            abs_sum += std::fabs(panel_main) + std::fabs(panel_comp);
            last_panel = panel_main;
            if (envelope < quad.envelope_stop) break;
        }
        const double cutoff = (k + 1) * half_period;
        const double inv_pi = std::numbers::inv_pi;
        upper = 0.5 + inv_pi * main_sum.value();
        lower = inv_pi * (comp_sum.value() + specfun::sine_integral_tail(a * cutoff));
        res.t_cutoff = cutoff;
        res.panels = k + 1;
        res.quad_error_estimate = inv_pi * (std::fabs(last_panel) + envelope / (a * cutoff) +
                                            8.0 * std::numeric_limits<double>::epsilon() * (abs_sum + 2.0));
    }
    if (params.bias > 0.0) {
        res.delta = upper;
        res.one_minus_delta = lower;
    } else {
        res.delta = lower;
        res.one_minus_delta = upper;
    }
    return res;
}

struct DualityResult {
    double delta_m = 0.0;      ///< P(Z > 0)
    double delta_tilde = 0.0;  ///< P(Z~ > 0), Z~ = Z - 2 (bias -1)
    double gap = 0.0;          ///< delta_m + delta_tilde - 1
    double quad_error_estimate = 0.0;
};

/// Z and -Z~ share a law, so P(Z > 0) = 1 - P(Z~ > 0); both sides are
/// computed independently by inversion.
inline DualityResult pi_li_duality_check(const CharFnParams& params, const QuadSpec& quad = {}) {
    CharFnParams plus = params, minus = params;
    plus.bias = std::fabs(params.bias);
    minus.bias = -std::fabs(params.bias);
    const DensityResult dm = density_pz_positive(plus, quad);
    const DensityResult dt = density_pz_positive(minus, quad);
    return {dm.delta, dt.delta, dm.delta + dt.delta - 1.0, std::max(dm.quad_error_estimate, dt.quad_error_estimate)};
}

// ---------------------------------------------------------------------------
// Monte Carlo

/// SplitMix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/// Counter-based uniform on [0, 1): U(seed, k, j) = top 53 bits of
/// mix64(mix64(seed ^ mix64(k)) + (j + 1) * 0x9E3779B97F4A7C15) / 2^53.
/// Sample k, stream j; identical for any sharding of the sample range.
constexpr std::uint64_t sample_key(std::uint64_t seed, std::uint64_t k) noexcept { return mix64(seed ^ mix64(k)); }

constexpr double keyed_uniform(std::uint64_t key, std::uint64_t j) noexcept {
    return static_cast<double>(mix64(key + (j + 1) * 0x9E3779B97F4A7C15ULL) >> 11) * 0x1p-53;
}

constexpr double counter_uniform(std::uint64_t seed, std::uint64_t k, std::uint64_t j) noexcept {
    return keyed_uniform(sample_key(seed, k), j);
}

/// Streams reserved for the Gaussian tail deviate (Box-Muller pair).
inline constexpr std::uint64_t kTailStream = std::uint64_t{1} << 40;

struct SampleStats {
    std::uint64_t n = 0;
    std::uint64_t seed = 0;
    double mean = 0.0;
    double variance = 0.0;  ///< unbiased (n - 1 denominator)
    double fraction_positive = 0.0;
};

/// Welford accumulator with Chan's pairwise merge.
class RunningStats {
public:
    void push(double x) noexcept {
        ++n_;
        const double d = x - mean_;
        mean_ += d / static_cast<double>(n_);
        m2_ += d * (x - mean_);
        if (x > 0.0) ++positive_;
    }

    void merge(const RunningStats& o) noexcept {
        if (o.n_ == 0) return;
        if (n_ == 0) {
            *this = o;
            return;
        }
        const double na = static_cast<double>(n_), nb = static_cast<double>(o.n_);
        const double d = o.mean_ - mean_;
        const double n = na + nb;
        mean_ += d * nb / n;
        m2_ += o.m2_ + d * d * na * nb / n;
        n_ += o.n_;
        positive_ += o.positive_;
    }

    std::uint64_t count() const noexcept { return n_; }
    std::uint64_t positive() const noexcept { return positive_; }
    double mean() const noexcept { return mean_; }
    double variance() const noexcept { return n_ > 1 ? m2_ / static_cast<double>(n_ - 1) : 0.0; }

private:
    std::uint64_t n_ = 0;
    std::uint64_t positive_ = 0;
    double mean_ = 0.0;
    double m2_ = 0.0;
};

struct SampleOptions {
    /// Draw Z~ = -1 + 2 Re sum instead of Z.
    bool dual = false;
    /// Model zeros above the table height by one Gaussian of variance
    /// 2 * tail_inverse_square(height) (requires height >= 100).
    bool gaussian_tail = true;
    bool keep_samples = false;
    unsigned threads = 1;
};

struct SampleResult {
    SampleStats stats;
    std::uint64_t negative_count = 0;
    std::vector<double> samples;  ///< filled when keep_samples
};

/// Var Z = 2 sum_{gamma>0} 1/(1/4 + gamma^2): table part plus the tail estimate.
inline double model_variance(const zeros::ZeroTable& table, bool with_tail = true) {
    double v = 0.0;
    for (double g : table.gammas()) v += 1.0 / (0.25 + g * g);
    if (with_tail && table.height_max() >= 100.0) v += zeros::tail_inverse_square(table.height_max());
    return 2.0 * v;
}

/// n independent draws of Z (or Z~). Draw k uses angles
/// theta_{k,j} = 2 pi U(seed, k, j) for the j-th zero.
inline SampleResult sample_z(const zeros::ZeroTable& table, std::uint64_t n, std::uint64_t seed,
                             const SampleOptions& opt = {}) {
    if (n == 0) throw DomainError("sample_z: n must be >= 1");
    if (table.empty()) throw DomainError("sample_z: zero table is empty");
    const auto g = table.gammas();
    std::vector<double> amp(g.size());
    for (std::size_t j = 0; j < g.size(); ++j) amp[j] = 2.0 / std::sqrt(0.25 + g[j] * g[j]);
    const bool tail = opt.gaussian_tail && table.height_max() >= 100.0;
    const double tail_sd = tail ? std::sqrt(2.0 * zeros::tail_inverse_square(table.height_max())) : 0.0;
    const double centre = opt.dual ? -1.0 : 1.0;
    constexpr double two_pi = 2.0 * std::numbers::pi;

    auto draw = [&](std::uint64_t k) {
        const std::uint64_t key = sample_key(seed, k);
        double s = 0.0;
        for (std::size_t j = 0; j < amp.size(); ++j) s += amp[j] * std::cos(two_pi * keyed_uniform(key, j));
        if (tail) {
            const double u1 = 1.0 - keyed_uniform(key, kTailStream);
            const double u2 = keyed_uniform(key, kTailStream + 1);
            s += tail_sd * std::sqrt(-2.0 * std::log(u1)) * std::cos(two_pi * u2);
        }
        return centre + s;
    };

    SampleResult out;
    if (opt.keep_samples) out.samples.resize(n);
    const unsigned threads = std::max(1u, opt.threads);
    std::vector<RunningStats> shard(threads);
    std::vector<std::uint64_t> negatives(threads, 0);
    auto run = [&](unsigned w) {
        const std::uint64_t lo = n * w / threads, hi = n * (w + 1) / threads;
        for (std::uint64_t k = lo; k < hi; ++k) {
            const double z = draw(k);
            shard[w].push(z);
            if (z < 0.0) ++negatives[w];
            if (opt.keep_samples) out.samples[k] = z;
        }
    };
    if (threads == 1) {
        run(0);
    } else {
        std::vector<std::thread> pool;
        for (unsigned w = 0; w < threads; ++w) pool.emplace_back(run, w);
        for (auto& t : pool) t.join();
    }
    RunningStats total;
    for (unsigned w = 0; w < threads; ++w) {
        total.merge(shard[w]);
        out.negative_count += negatives[w];
    }
    out.stats = {total.count(), seed, total.mean(), total.variance(),
                 static_cast<double>(total.positive()) / static_cast<double>(total.count())};
    return out;
}

}  // namespace mertens::dist
