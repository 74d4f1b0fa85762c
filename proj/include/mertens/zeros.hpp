#pragma once

// Tables of positive ordinates gamma_n of nontrivial zeta zeros 1/2 + i gamma_n.
//
// Text format: one decimal ordinate per line, strictly increasing, '#' comment
// lines, LF or CRLF endings, surrounding blanks ignored, blank lines skipped.

#include "compensated.hpp"
#include "error.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <istream>
#include <memory>
#include <numbers>
#include <ostream>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

namespace mertens::zeros {

/// Smooth Riemann-von Mangoldt main term N(T) ~ (T/2pi) log(T/(2pi e)) + 7/8.
inline double rvm_count(double T) {
    if (!(T > 0.0)) throw DomainError("rvm_count: requires T > 0");
    constexpr double two_pi = 2.0 * std::numbers::pi;
    return T / two_pi * std::log(T / (two_pi * std::numbers::e)) + 0.875;
}

/// Allowed |count - N(height)| for a complete table prefix.
inline double rvm_tolerance(double height) {
    const double l = std::log(height);
    return 2.0 + 0.05 * l * l;
}

/// Integral estimate of sum_{gamma > T} 1/(1/4 + gamma^2) using the zero
/// density (1/2pi) log(t/2pi): (log(T/2pi) + 1) / (2 pi T).
inline double tail_inverse_square(double T) {
    if (!(T >= 100.0)) throw DomainError("tail_inverse_square: estimate requires T >= 100");
    constexpr double two_pi = 2.0 * std::numbers::pi;
    return (std::log(T / two_pi) + 1.0) / (two_pi * T);
}

/// Immutable, validated table of ordinates.
class ZeroTable {
public:
    ZeroTable() = default;

    /// Validates and takes ownership; throws FormatError / ValidationError.
    static ZeroTable from_ordinates(std::vector<double> gammas) {
        if (gammas.empty()) throw FormatError("empty zero table: no ordinates found");
        for (std::size_t i = 0; i < gammas.size(); ++i) {
            if (!std::isfinite(gammas[i]) || gammas[i] <= 0.0) {
                throw FormatError("ordinate must be a positive finite number", i + 1);
            }
            if (i > 0 && !(gammas[i] > gammas[i - 1])) throw FormatError("ordinates not strictly increasing", i + 1);
        }
        validate_first(gammas.front());
        ZeroTable t;
        t.gammas_ = std::make_shared<const std::vector<double>>(std::move(gammas));
        t.checksum_ = checksum_of(*t.gammas_);
        t.validate_count();
        return t;
    }

    std::span<const double> gammas() const noexcept {
        return gammas_ ? std::span<const double>(*gammas_) : std::span<const double>{};
    }
    std::size_t count() const noexcept { return gammas_ ? gammas_->size() : 0; }
    double height_max() const noexcept { return gammas_ ? gammas_->back() : 0.0; }
    std::uint64_t source_checksum() const noexcept { return checksum_; }
    bool empty() const noexcept { return count() == 0; }

    /// Number of ordinates strictly below T.
    std::size_t count_below(double T) const {
        const auto g = gammas();
        return static_cast<std::size_t>(std::lower_bound(g.begin(), g.end(), T) - g.begin());
    }

    /// Table of the first n ordinates.
    ZeroTable prefix(std::size_t n) const {
        const auto g = gammas();
        return from_ordinates(std::vector<double>(g.begin(), g.begin() + static_cast<std::ptrdiff_t>(std::min(n, g.size()))));
    }

    friend bool operator==(const ZeroTable& a, const ZeroTable& b) {
        return a.checksum_ == b.checksum_ && std::ranges::equal(a.gammas(), b.gammas());
    }

private:
    static void validate_first(double first) {
        if (!(first > 14.0 && first < 14.2)) {
            throw ValidationError("first ordinate " + std::to_string(first) +
                                  " is not in (14.0, 14.2): not a table of zeta zeros");
        }
    }

    void validate_count() const {
        const double h = height_max();
        const double expected = rvm_count(h);
        if (std::abs(static_cast<double>(count()) - expected) > rvm_tolerance(h)) {
            throw ValidationError("table holds " + std::to_string(count()) + " zeros up to height " +
                                  std::to_string(h) + " but Riemann-von Mangoldt predicts " +
                                  std::to_string(expected) + ": zeros missing or duplicated");
        }
    }

    // FNV-1a over the IEEE-754 bit patterns of the ordinates.
    static std::uint64_t checksum_of(const std::vector<double>& g) {
        std::uint64_t h = 0xcbf29ce484222325ULL;
        for (double v : g) {
            std::uint64_t bits;
            std::memcpy(&bits, &v, sizeof bits);
            for (int i = 0; i < 8; ++i) {
                h ^= (bits >> (8 * i)) & 0xffU;
                h *= 0x100000001b3ULL;
            }
        }
        return h;
    }

    std::shared_ptr<const std::vector<double>> gammas_;
    std::uint64_t checksum_ = 0;
};

namespace detail {

inline std::string_view trim(std::string_view s) {
    constexpr std::string_view blanks = " \t\r\f\v";
    const auto b = s.find_first_not_of(blanks);
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(blanks);
    return s.substr(b, e - b + 1);
}

}  // namespace detail

inline ZeroTable load_zeros(std::istream& in) {
    std::vector<double> gammas;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const std::string_view tok = detail::trim(line);
        if (tok.empty() || tok.front() == '#') continue;
        double v = 0.0;
        const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
        if (ec != std::errc{} || ptr != tok.data() + tok.size() || !std::isfinite(v)) {
            throw FormatError("cannot parse ordinate '" + std::string(tok) + "'", line_no);
        }
        if (v <= 0.0) throw FormatError("ordinate must be positive", line_no);
        if (!gammas.empty() && !(v > gammas.back())) throw FormatError("ordinates not strictly increasing", line_no);
        gammas.push_back(v);
    }
    return ZeroTable::from_ordinates(std::move(gammas));
}

inline ZeroTable load_zeros(std::string_view text) {
    std::istringstream in{std::string(text)};
    return load_zeros(in);
}

inline ZeroTable load_zeros_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw FormatError("cannot open zero table '" + path + "'");
    return load_zeros(in);
}

/// Shortest round-trip decimal per ordinate; reloading gives an identical table.
inline void save_zeros(const ZeroTable& table, std::ostream& out) {
    char buf[32];
    for (double g : table.gammas()) {
        const auto res = std::to_chars(buf, buf + sizeof buf, g);
        out.write(buf, res.ptr - buf);
        out.put('\n');
    }
}

/// sum_{0 < gamma < T} 1/gamma^2.
inline double inverse_square_sum(const ZeroTable& table, double T) {
    if (T > table.height_max()) throw RangeError("inverse_square_sum: T above table height (tail unknown)");
    CompensatedSum<double> acc;
    for (double g : table.gammas()) {
        if (!(g < T)) break;
        acc += 1.0 / (g * g);
    }
    return acc.value();
}

/// sum_{0 < gamma < T} 1/(1/4 + gamma^2) = sum 1/|rho|^2 over the upper half.
inline double inverse_quadratic_sum(const ZeroTable& table, double T) {
    if (T > table.height_max()) throw RangeError("inverse_quadratic_sum: T above table height (tail unknown)");
    CompensatedSum<double> acc;
    for (double g : table.gammas()) {
        if (!(g < T)) break;
        acc += 1.0 / (0.25 + g * g);
    }
    return acc.value();
}

/// 2 + gamma - log(4 pi) = sum over all zeros of 1/(rho(1-rho)).
inline double rho_reciprocal_identity() {
    return 2.0 + 0.57721566490153286061 - std::log(4.0 * std::numbers::pi);
}

}  // namespace mertens::zeros
