// Generates a table of ordinates of the first N nontrivial zeros of zeta,
// in the one-ordinate-per-line text format read by mertens::zeros::load_zeros.
//
// Hardy's Z(t) is evaluated with Euler-Maclaurin summation below t = 1000 and
// with the Riemann-Siegel formula (corrections C0..C4) above. Zeros are
// isolated Gram block by Gram block: Rosser's rule (a block of k Gram
// intervals holds exactly k zeros) is exact far beyond the heights produced
// here, so each block is resampled more finely until it shows k sign changes.
// Brackets are then polished with the Illinois variant of regula falsi.

#include <CLI11.hpp>

#include <cmath>
#include <complex>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace {

#include "rs_coefficients.inc"

using Real = long double;

constexpr Real kPi = std::numbers::pi_v<long double>;
constexpr Real kTwoPi = 2 * kPi;

Real theta(Real t) {
    const Real t2 = t * t;
    return t / 2 * std::log(t / kTwoPi) - t / 2 - kPi / 8 + 1 / (48 * t) +
           7 / (5760 * t * t2) + 31 / (80640 * t * t2 * t2) +
           127 / (430080 * t * t2 * t2 * t2) +
           511 / (1216512 * t * t2 * t2 * t2 * t2);
}

template <std::size_t N>
double horner(const double (&c)[N], double u) {
    double acc = 0.0;
    for (std::size_t i = N; i-- > 0;) acc = acc * u + c[i];
    return acc;
}

// Z(t) = exp(i theta) zeta(1/2 + it) via Euler-Maclaurin with complex doubles.
double hardy_z_euler_maclaurin(Real t) {
    using C = std::complex<Real>;
    // B_{2k} / (2k)!
    static constexpr Real kB[] = {
        1.0L / 12,        -1.0L / 720,        1.0L / 30240,
        -1.0L / 1209600,  1.0L / 47900160,    -691.0L / 1307674368000,
        1.0L / 74724249600, -3617.0L / 10670622842880000,
        43867.0L / 5109094217170944000,
        -174611.0L / 802857662698291200000.0L,
    };
    const C s(0.5L, t);
    const auto n_terms = static_cast<int>(30 + t);
    C sum = 0;
    for (int n = 1; n < n_terms; ++n) sum += std::exp(-s * std::log(static_cast<Real>(n)));
    const Real big_n = n_terms;
    const C n_pow = std::exp(-s * std::log(big_n));
    sum += n_pow * big_n / (s - C(1)) + n_pow / Real(2);
    C rising = s;
    C n_power = n_pow / big_n;
    for (std::size_t k = 0; k < std::size(kB); ++k) {
        sum += kB[k] * rising * n_power;
        rising *= (s + C(2 * k + 1)) * (s + C(2 * k + 2));
        n_power /= big_n * big_n;
    }
    return static_cast<double>((std::exp(C(0, theta(t))) * sum).real());
}

double hardy_z_riemann_siegel(Real t) {
    const Real tau = std::sqrt(t / kTwoPi);
    const auto n_max = static_cast<long>(tau);
    const auto u = static_cast<double>(tau - n_max - 0.5L);
    const Real th = theta(t);
    Real sum = 0;
    for (long n = 1; n <= n_max; ++n) {
        Real phase = std::fmod(th - t * std::log(static_cast<Real>(n)), kTwoPi);
        sum += std::cos(static_cast<double>(phase)) / std::sqrt(static_cast<double>(n));
    }
    const double w = 1.0 / static_cast<double>(tau);
    const double corr =
        horner(kRsC0, u) +
        w * (horner(kRsC1, u) +
             w * (horner(kRsC2, u) + w * (horner(kRsC3, u) + w * horner(kRsC4, u))));
    const double sign = (n_max % 2 == 1) ? 1.0 : -1.0;
    return static_cast<double>(2 * sum) + sign * corr / std::sqrt(static_cast<double>(tau));
}

double hardy_z(Real t) {
    return t < 1000 ? hardy_z_euler_maclaurin(t) : hardy_z_riemann_siegel(t);
}

// theta(g_n) = n pi
Real gram_point(long n, Real guess) {
    Real t = guess;
    for (int i = 0; i < 60; ++i) {
        const Real step = (theta(t) - n * kPi) / (std::log(t / kTwoPi) / 2);
        t -= step;
        if (std::fabs(step) < 1e-15L * t) break;
    }
    return t;
}

double refine(Real a, Real b, double za, double zb) {
    // Illinois regula falsi.
    int side = 0;
    for (int i = 0; i < 200 && b - a > 1e-13L * b; ++i) {
        const Real c = (a * zb - b * za) / (zb - za);
        const double zc = hardy_z(c);
        if (zc == 0.0) return static_cast<double>(c);
        if ((zc > 0) == (zb > 0)) {
            b = c;
            zb = zc;
            if (side == -1) za /= 2;
            side = -1;
        } else {
            a = c;
            za = zc;
            if (side == 1) zb /= 2;
            side = 1;
        }
    }
    return static_cast<double>((a * zb - b * za) / (zb - za));
}

struct Bracket {
    Real lo, hi;
    double zlo, zhi;
};

std::vector<Bracket> sign_changes(Real lo, Real hi, int samples) {
    std::vector<Bracket> out;
    Real prev_t = lo;
    double prev_z = hardy_z(lo);
    for (int i = 1; i <= samples; ++i) {
        const Real t = lo + (hi - lo) * i / samples;
        const double z = hardy_z(t);
        if ((z > 0) != (prev_z > 0)) out.push_back({prev_t, t, prev_z, z});
        prev_t = t;
        prev_z = z;
    }
    return out;
}

std::vector<double> compute_zeros(long count) {
    std::vector<double> zeros;
    zeros.reserve(static_cast<std::size_t>(count));
    // g_{-1} ~ 9.667 lies below the first zero.
    long n = -1;
    Real g = gram_point(n, 9.7L);
    while (static_cast<long>(zeros.size()) < count) {
        // Extend the block until the next good Gram point.
        long k = 0;
        std::vector<Real> points{g};
        Real next = g;
        long m = n;
        do {
            ++m;
            ++k;
            next = gram_point(m, next + kTwoPi / std::log(next / kTwoPi));
            points.push_back(next);
        } while ((m % 2 == 0 ? 1.0 : -1.0) * hardy_z(next) <= 0.0);

        std::vector<Bracket> found;
        for (int density = 6; density <= 6 * 4096; density *= 4) {
            found.clear();
            for (std::size_t i = 0; i + 1 < points.size(); ++i) {
                auto seg = sign_changes(points[i], points[i + 1], density);
                found.insert(found.end(), seg.begin(), seg.end());
            }
            if (static_cast<long>(found.size()) == k) break;
        }
        if (static_cast<long>(found.size()) != k) {
            throw std::runtime_error("Gram block at t=" + std::to_string(static_cast<double>(g)) +
                                     " does not satisfy Rosser's rule");
        }
        for (const auto& br : found) {
            if (static_cast<long>(zeros.size()) == count) break;
            zeros.push_back(refine(br.lo, br.hi, br.zlo, br.zhi));
        }
        n = m;
        g = next;
    }
    return zeros;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Generate ordinates of the first N nontrivial zeta zeros"};
    long count = 100000;
    std::string out_path;
    app.add_option("-n,--count", count, "number of zeros")->check(CLI::Range(1L, 2000000L));
    app.add_option("-o,--out", out_path, "output file (stdout if omitted)");
    CLI11_PARSE(app, argc, argv);

    std::vector<double> zeros;
    try {
        zeros = compute_zeros(count);
    } catch (const std::exception& e) {
        std::cerr << "zeta_zeros_gen: " << e.what() << '\n';
        return 1;
    }

    std::ofstream file;
    if (!out_path.empty()) {
        file.open(out_path);
        if (!file) {
            std::cerr << "zeta_zeros_gen: cannot open " << out_path << '\n';
            return 1;
        }
    }
    std::ostream& os = out_path.empty() ? std::cout : file;
    os << "# ordinates of the first " << count
       << " nontrivial zeros of zeta (Riemann-Siegel / Euler-Maclaurin)\n";
    char buf[64];
    for (double z : zeros) {
        std::snprintf(buf, sizeof buf, "%.12f\n", z);
        os << buf;
    }
    return os ? 0 : 1;
}
