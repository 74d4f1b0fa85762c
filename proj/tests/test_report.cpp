#include <mertens/report.hpp>

#include "test_support.hpp"

#include <gtest/gtest.h>

#include <string>

using namespace mertens;
using namespace mertens::report;
using test_support::full_table;

TEST(Report, SeventeenDigits) {
    EXPECT_EQ(format_number(0.1), "0.10000000000000001");
    EXPECT_EQ(format_number(1.0), "1");
    EXPECT_EQ(format_number(std::nan("")), "null");
    for (double v : {1.0 / 3.0, 2.6299748261826341e-07, 74920.827498994186, -1e-300}) {
        EXPECT_EQ(std::stod(format_number(v)), v);
    }
}

TEST(Report, DensitySchemaAndRoundTrip) {
    const auto d = dist::density_pz_positive(dist::CharFnParams::for_table(full_table().prefix(2000)));
    const std::string text = to_json(d);
    const auto j = nlohmann::json::parse(text);
    std::vector<std::string> keys;
    for (auto it = j.begin(); it != j.end(); ++it) keys.push_back(it.key());
    for (const char* k : {"delta", "one_minus_delta", "t_cutoff", "panels", "quad_error_estimate"}) {
        EXPECT_TRUE(j.contains(k)) << k;
    }
    EXPECT_LT(text.find("\"delta\""), text.find("\"one_minus_delta\""));
    EXPECT_LT(text.find("\"t_cutoff\""), text.find("\"quad_error_estimate\""));
    const auto back = parse_density(j);
    EXPECT_EQ(back.delta, d.delta);
    EXPECT_EQ(back.one_minus_delta, d.one_minus_delta);
    EXPECT_EQ(back.t_cutoff, d.t_cutoff);
    EXPECT_EQ(back.panels, d.panels);
    EXPECT_EQ(back.quad_error_estimate, d.quad_error_estimate);
    EXPECT_EQ(to_json(back), text);
}

TEST(Report, RaceScanCsvAndRoundTrip) {
    const auto rep = primes::race_scan(5e4);
    const std::string csv = to_csv(rep);
    EXPECT_EQ(csv.substr(0, csv.find('\n')), "x,em,log_product");
    EXPECT_EQ(static_cast<std::size_t>(std::count(csv.begin(), csv.end(), '\n')), rep.checkpoints.size() + 1);
    EXPECT_EQ(parse_race_scan(nlohmann::json::parse(to_json(rep))), rep);

    // Below the normalization start the extrema are NaN and travel as null.
    const auto small = primes::race_scan(100);
    const std::string js = to_json(small);
    EXPECT_NE(js.find("\"normalized_sup\":null"), std::string::npos);
    EXPECT_EQ(parse_race_scan(nlohmann::json::parse(js)), small);
}

TEST(Report, SampleStatsRoundTrip) {
    const auto s = dist::sample_z(full_table().prefix(100), 1000, 3).stats;
    const auto back = parse_sample_stats(nlohmann::json::parse(to_json(s)));
    EXPECT_EQ(back.n, s.n);
    EXPECT_EQ(back.seed, s.seed);
    EXPECT_EQ(back.mean, s.mean);
    EXPECT_EQ(back.variance, s.variance);
    EXPECT_EQ(back.fraction_positive, s.fraction_positive);
}

TEST(Report, CompareRecordsCsv) {
    const auto recs = explicit_formula::compare_scan({10.0, 100.0}, full_table(), 14.0);
    const std::string csv = emit(recs, Format::csv);
    EXPECT_EQ(csv.substr(0, csv.find('\n')), "x,direct,formula,bound,ok");
    const auto j = nlohmann::json::parse(emit(recs, Format::json));
    ASSERT_EQ(j.at("records").size(), 2u);
    EXPECT_EQ(j["records"][0]["formula"].get<double>(), 1.0);
    EXPECT_EQ(j["records"][1]["direct"].get<double>(), recs[1].direct);
}

TEST(Report, Stable) {
    const auto rep = primes::race_scan(2e4);
    EXPECT_EQ(emit(rep, Format::json), emit(primes::race_scan(2e4), Format::json));
}
