#pragma once

// JSON and CSV serialization of engine results. Field names follow the C++
// member names; numbers carry 17 significant digits so doubles round-trip,
// NaN is written as null, and keys keep declaration order.

#include "dist.hpp"
#include "explicit_formula.hpp"
#include "primes.hpp"

#include <json.hpp>

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <limits>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace mertens::report {

enum class Format { json, csv };

inline std::string format_number(double v) {
    if (!std::isfinite(v)) return "null";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

/// Minimal streaming JSON object writer with insertion-ordered keys.
class JsonObject {
public:
    JsonObject& field(std::string_view key, double v) { return raw(key, format_number(v)); }
    JsonObject& field(std::string_view key, std::uint64_t v) { return raw(key, std::to_string(v)); }
    JsonObject& field(std::string_view key, bool v) { return raw(key, v ? "true" : "false"); }
    JsonObject& field(std::string_view key, const std::string& v) { return raw(key, nlohmann::json(v).dump()); }
    JsonObject& field(std::string_view key, const JsonObject& v) { return raw(key, v.str()); }

    template <typename T, typename F>
    JsonObject& array(std::string_view key, const std::vector<T>& items, F&& to_json) {
        std::string s = "[";
        for (std::size_t i = 0; i < items.size(); ++i) {
            if (i) s += ",";
            s += to_json(items[i]);
        }
        return raw(key, s + "]");
    }

    JsonObject& raw(std::string_view key, const std::string& value) {
        body_ += body_.empty() ? "" : ",";
        body_ += nlohmann::json(std::string(key)).dump() + ":" + value;
        return *this;
    }

    std::string str() const { return "{" + body_ + "}"; }

private:
    std::string body_;
};

inline std::string to_json(const primes::EmPoint& p) {
    return JsonObject().field("x", p.x).field("em", p.em).field("log_product", p.log_product).str();
}

inline std::string to_json(const primes::RaceScanReport& r) {
    return JsonObject()
        .array("checkpoints", r.checkpoints, [](const primes::EmPoint& p) { return to_json(p); })
        .field("min_em", r.min_em)
        .field("argmin_x", r.argmin_x)
        .array("sign_changes", r.sign_changes,
               [](const std::pair<double, double>& s) {
                   return "[" + format_number(s.first) + "," + format_number(s.second) + "]";
               })
        .field("normalized_sup", r.normalized_sup)
        .field("normalized_inf", r.normalized_inf)
        .field("evaluations", r.evaluations)
        .str();
}

inline std::string to_json(const dist::DensityResult& d) {
    return JsonObject()
        .field("delta", d.delta)
        .field("one_minus_delta", d.one_minus_delta)
        .field("t_cutoff", d.t_cutoff)
        .field("panels", static_cast<std::uint64_t>(d.panels))
        .field("quad_error_estimate", d.quad_error_estimate)
        .str();
}

inline std::string to_json(const dist::DualityResult& d) {
    return JsonObject()
        .field("delta_m", d.delta_m)
        .field("delta_tilde", d.delta_tilde)
        .field("gap", d.gap)
        .field("quad_error_estimate", d.quad_error_estimate)
        .str();
}

inline std::string to_json(const dist::SampleStats& s) {
    return JsonObject()
        .field("n", s.n)
        .field("seed", s.seed)
        .field("mean", s.mean)
        .field("variance", s.variance)
        .field("fraction_positive", s.fraction_positive)
        .str();
}

inline std::string to_json(const explicit_formula::ExplicitResult& e) {
    return JsonObject()
        .field("x", e.x)
        .field("height_T", e.height_T)
        .field("value", e.value)
        .field("bound", e.bound)
        .field("terms_used", static_cast<std::uint64_t>(e.terms_used))
        .str();
}

inline std::string to_json(const explicit_formula::CompareRecord& c) {
    return JsonObject()
        .field("x", c.x)
        .field("direct", c.direct)
        .field("formula", c.formula)
        .field("bound", c.bound)
        .field("ok", c.ok)
        .str();
}

inline std::string to_json(const std::vector<explicit_formula::CompareRecord>& recs) {
    return JsonObject().array("records", recs, [](const auto& c) { return to_json(c); }).str();
}

// CSV -----------------------------------------------------------------------

inline std::string to_csv(const primes::RaceScanReport& r) {
    std::string out = "x,em,log_product\n";
    for (const auto& p : r.checkpoints) {
        out += format_number(p.x) + "," + format_number(p.em) + "," + format_number(p.log_product) + "\n";
    }
    return out;
}

inline std::string to_csv(const std::vector<explicit_formula::CompareRecord>& recs) {
    std::string out = "x,direct,formula,bound,ok\n";
    for (const auto& c : recs) {
        out += format_number(c.x) + "," + format_number(c.direct) + "," + format_number(c.formula) + "," +
               format_number(c.bound) + "," + (c.ok ? "1" : "0") + "\n";
    }
    return out;
}

inline std::string to_csv(const dist::DensityResult& d) {
    return "delta,one_minus_delta,t_cutoff,panels,quad_error_estimate\n" + format_number(d.delta) + "," +
           format_number(d.one_minus_delta) + "," + format_number(d.t_cutoff) + "," + std::to_string(d.panels) +
           "," + format_number(d.quad_error_estimate) + "\n";
}

inline std::string to_csv(const dist::SampleStats& s) {
    return "n,seed,mean,variance,fraction_positive\n" + std::to_string(s.n) + "," + std::to_string(s.seed) + "," +
           format_number(s.mean) + "," + format_number(s.variance) + "," + format_number(s.fraction_positive) +
           "\n";
}

inline std::string to_csv(const explicit_formula::ExplicitResult& e) {
    return "x,height_T,value,bound,terms_used\n" + format_number(e.x) + "," + format_number(e.height_T) + "," +
           format_number(e.value) + "," + format_number(e.bound) + "," + std::to_string(e.terms_used) + "\n";
}

template <typename R>
std::string emit(const R& result, Format fmt) {
    return fmt == Format::json ? to_json(result) + "\n" : to_csv(result);
}

// Parsing -------------------------------------------------------------------

namespace detail {
inline double number_or_nan(const nlohmann::json& j) {
    return j.is_null() ? std::numeric_limits<double>::quiet_NaN() : j.get<double>();
}
}  // namespace detail

inline dist::DensityResult parse_density(const nlohmann::json& j) {
    return {j.at("delta").get<double>(), j.at("one_minus_delta").get<double>(), j.at("t_cutoff").get<double>(),
            j.at("panels").get<std::size_t>(), j.at("quad_error_estimate").get<double>()};
}

inline dist::SampleStats parse_sample_stats(const nlohmann::json& j) {
    return {j.at("n").get<std::uint64_t>(), j.at("seed").get<std::uint64_t>(), j.at("mean").get<double>(),
            j.at("variance").get<double>(), j.at("fraction_positive").get<double>()};
}

inline primes::RaceScanReport parse_race_scan(const nlohmann::json& j) {
    primes::RaceScanReport r;
    for (const auto& c : j.at("checkpoints")) {
        r.checkpoints.push_back({c.at("x").get<double>(), c.at("em").get<double>(), c.at("log_product").get<double>()});
    }
    r.min_em = detail::number_or_nan(j.at("min_em"));
    r.argmin_x = j.at("argmin_x").get<double>();
    for (const auto& s : j.at("sign_changes")) r.sign_changes.emplace_back(s.at(0).get<double>(), s.at(1).get<double>());
    r.normalized_sup = detail::number_or_nan(j.at("normalized_sup"));
    r.normalized_inf = detail::number_or_nan(j.at("normalized_inf"));
    r.evaluations = j.at("evaluations").get<std::uint64_t>();
    return r;
}

}  // namespace mertens::report
