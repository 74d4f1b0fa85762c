// mertens_bias: command-line front end for the sieve, explicit-formula and
// distribution engines.
//
//   mertens_bias scan     --x-max 1e6 [--every-integer] [--log-points N]
//   mertens_bias explicit --zeros FILE [--T H] [--x X ...] [--x-min A --x-max B --points N]
//   mertens_bias density  --zeros FILE [--prefix N] [--dual]
//   mertens_bias sample   --zeros FILE --n N --seed S [--prefix N] [--dual]
//   mertens_bias verify   --zeros FILE [--x-max X]
//
// Exit status: 0 success, 1 bad input or I/O failure, 2 a verify check failed.

#include <mertens/mertens.hpp>

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <thread>
#include <vector>

namespace {

using namespace mertens;

enum class Command { scan, explicit_cmp, density, sample, verify };

struct RunConfig {
    Command command = Command::scan;
    double x_max = 1e6;
    double x_min = 1e3;
    std::vector<double> x_values;
    std::size_t points = 200;
    bool every_integer = false;
    std::size_t log_points = 1000;
    std::string zeros_path;
    std::optional<double> height_T;
    std::size_t prefix = 0;
    bool dual = false;
    bool no_tail = false;
    std::uint64_t n_samples = 100000;
    std::uint64_t seed = 1;
    bool deterministic = false;
    unsigned threads = 0;
    std::string output_path;
    report::Format output_format = report::Format::json;
};

unsigned resolve_threads(const RunConfig& cfg) {
    if (cfg.deterministic) return 1;
    if (cfg.threads > 0) return cfg.threads;
    if (const char* env = std::getenv("THREADS")) {
        const long v = std::strtol(env, nullptr, 10);
        if (v > 0) return static_cast<unsigned>(v);
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

zeros::ZeroTable load_table(const RunConfig& cfg) {
    auto table = zeros::load_zeros_file(cfg.zeros_path);
    if (cfg.prefix > 0 && cfg.prefix < table.count()) table = table.prefix(cfg.prefix);
    return table;
}

std::vector<double> log_grid(double lo, double hi, std::size_t n) {
    std::vector<double> xs;
    if (n == 1) return {lo};
    for (std::size_t i = 0; i < n; ++i) {
        xs.push_back(std::exp(std::log(lo) + (std::log(hi) - std::log(lo)) * static_cast<double>(i) / (n - 1)));
    }
    return xs;
}

// verify ---------------------------------------------------------------------

struct Check {
    std::string name;
    bool passed = false;
    double value = 0.0;
    double limit = 0.0;
};

std::vector<Check> run_verify(const RunConfig& cfg) {
    std::vector<Check> checks;
    auto add = [&](std::string name, double value, double limit, bool passed) {
        checks.push_back({std::move(name), passed, value, limit});
    };
    const auto table = zeros::load_zeros_file(cfg.zeros_path);

    const auto scan = primes::race_scan(cfg.x_max, primes::GridSpec::full_resolution());
    add("race_scan_min_em_positive", scan.min_em, 0.0, scan.min_em > 0.0);
    add("race_scan_no_sign_changes", static_cast<double>(scan.sign_changes.size()), 0.0, scan.sign_changes.empty());

    for (double x : log_grid(100.0, cfg.x_max, 5)) {
        const double lx = std::log(x);
        const double r = primes::approx1_residual(x);
        add("approx1_residual@" + report::format_number(x), std::fabs(r), 10.0 / (std::sqrt(x) * lx * lx),
            std::fabs(r) <= 10.0 / (std::sqrt(x) * lx * lx));
        const auto pd = primes::product_difference(x);
        const double gap = std::fabs(pd.difference - pd.first_order);
        add("product_difference@" + report::format_number(x), gap, 5.0 * lx * lx * lx / x, gap <= 5.0 * lx * lx * lx / x);
    }

    for (double x : {10.0, 100.0, 1e4}) {
        for (double s : {1.01, 1.001, 1.0001}) {
            const auto g = specfun::gamma_identity_check(x, s);
            const double bound = specfun::gamma_identity_bound(x, s);
            add("gamma_identity@" + report::format_number(x) + "," + report::format_number(s), std::fabs(g.gap), bound,
                std::fabs(g.gap) <= bound);
        }
    }

    for (double T : {50.0, 100.0, 500.0, 1000.0}) {
        const double d = std::fabs(static_cast<double>(table.count_below(T)) - zeros::rvm_count(T));
        add("rvm_count@" + report::format_number(T), d, 2.0, d < 2.0);
    }

    const double T = table.height_max();
    for (const auto& rec : explicit_formula::compare_scan({1e3, 1e4, cfg.x_max}, table, T)) {
        add("explicit_bound@" + report::format_number(rec.x), std::fabs(rec.direct - rec.formula), rec.bound, rec.ok);
    }

    const auto density_table = table.prefix(std::min<std::size_t>(table.count(), 10000));
    const auto dens = dist::density_pz_positive(dist::CharFnParams::for_table(density_table));
    add("one_minus_delta_low", dens.one_minus_delta, 2.2e-7, dens.one_minus_delta >= 2.2e-7);
    add("one_minus_delta_high", dens.one_minus_delta, 3.2e-7, dens.one_minus_delta <= 3.2e-7);
    const auto dual = dist::pi_li_duality_check(dist::CharFnParams::for_table(density_table));
    add("duality_gap", std::fabs(dual.gap), 1e-9, std::fabs(dual.gap) <= 1e-9);

    const auto sample_table = table.prefix(std::min<std::size_t>(table.count(), 1000));
    const std::uint64_t n = 20000;
    dist::SampleOptions opt;
    opt.threads = resolve_threads(cfg);
    const auto smp = dist::sample_z(sample_table, n, cfg.seed, opt);
    const double var_model = dist::model_variance(sample_table);
    const double mean_dev = std::fabs(smp.stats.mean - 1.0);
    const double mean_lim = 4.0 * std::sqrt(var_model / static_cast<double>(n));
    add("sample_mean", mean_dev, mean_lim, mean_dev <= mean_lim);
    const double var_rel = std::fabs(smp.stats.variance / var_model - 1.0);
    add("sample_variance", var_rel, 0.1, var_rel <= 0.1);
    return checks;
}

std::string emit_checks(const std::vector<Check>& checks, report::Format fmt) {
    bool all = true;
    for (const auto& c : checks) all = all && c.passed;
    if (fmt == report::Format::csv) {
        std::string out = "name,passed,value,limit\n";
        for (const auto& c : checks) {
            out += c.name + "," + (c.passed ? "1" : "0") + "," + report::format_number(c.value) + "," +
                   report::format_number(c.limit) + "\n";
        }
        return out;
    }
    return report::JsonObject()
               .array("checks", checks,
                      [](const Check& c) {
                          return report::JsonObject()
                              .field("name", c.name)
                              .field("passed", c.passed)
                              .field("value", c.value)
                              .field("limit", c.limit)
                              .str();
                      })
               .field("passed", all)
               .str() +
           "\n";
}

// dispatch -------------------------------------------------------------------

int run(const RunConfig& cfg) {
    std::string text;
    int status = 0;
    switch (cfg.command) {
        case Command::scan: {
            primes::GridSpec grid = cfg.every_integer ? primes::GridSpec::integers()
                                                      : primes::GridSpec::full_resolution(cfg.log_points);
            text = report::emit(primes::race_scan(cfg.x_max, grid), cfg.output_format);
            break;
        }
        case Command::explicit_cmp: {
            const auto table = load_table(cfg);
            const double T = cfg.height_T.value_or(table.height_max());
            std::vector<double> xs = cfg.x_values;
            if (xs.empty()) xs = log_grid(cfg.x_min, cfg.x_max, cfg.points);
            std::sort(xs.begin(), xs.end());
            text = report::emit(explicit_formula::compare_scan(xs, table, T), cfg.output_format);
            break;
        }
        case Command::density: {
            auto params = dist::CharFnParams::for_table(load_table(cfg));
            if (cfg.dual) params.bias = -1.0;
            text = report::emit(dist::density_pz_positive(params), cfg.output_format);
            break;
        }
        case Command::sample: {
            dist::SampleOptions opt;
            opt.dual = cfg.dual;
            opt.gaussian_tail = !cfg.no_tail;
            opt.threads = resolve_threads(cfg);
            text = report::emit(dist::sample_z(load_table(cfg), cfg.n_samples, cfg.seed, opt).stats, cfg.output_format);
            break;
        }
        case Command::verify: {
            const auto checks = run_verify(cfg);
            text = emit_checks(checks, cfg.output_format);
            for (const auto& c : checks) {
                if (!c.passed) {
                    std::cerr << "verify: " << c.name << " failed (value " << report::format_number(c.value)
                              << ", limit " << report::format_number(c.limit) << ")\n";
                    status = 2;
                }
            }
            break;
        }
    }
    if (cfg.output_path.empty()) {
        std::cout << text;
    } else {
        std::ofstream out(cfg.output_path, std::ios::binary);
        if (!out || !(out << text) || !out.flush()) {
            std::cerr << "error: cannot write " << cfg.output_path << "\n";
            return 1;
        }
    }
    return status;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Mertens product bias: sieve scans, explicit formula, limiting distribution"};
    app.require_subcommand(1);
    RunConfig cfg;

    auto common = [&](CLI::App* sub) {
        sub->add_option("--out", cfg.output_path, "Report file (default stdout)");
        sub->add_option("--format", cfg.output_format, "Report format: json or csv")
            ->transform(CLI::CheckedTransformer(
                std::map<std::string, report::Format>{{"json", report::Format::json}, {"csv", report::Format::csv}}));
        sub->add_flag("--deterministic", cfg.deterministic, "Single-threaded, reproducible run");
        sub->add_option("--threads", cfg.threads, "Worker threads (default: THREADS env or hardware count)");
    };
    auto zeros_opt = [&](CLI::App* sub) {
        sub->add_option("--zeros", cfg.zeros_path, "Zero ordinate file, one per line")->required();
    };

    auto* scan = app.add_subcommand("scan", "Race scan of E_M over [2, x_max]");
    common(scan);
    scan->add_option("--x-max", cfg.x_max, "Upper end of the scan")->check(CLI::Range(2.0, 1e8));
    scan->add_flag("--every-integer", cfg.every_integer, "Evaluate at every integer (x_max <= 1e6)");
    scan->add_option("--log-points", cfg.log_points, "Log-spaced checkpoints in addition to prime events");

    auto* expl = app.add_subcommand("explicit", "Compare the explicit formula with the sieve");
    common(expl);
    zeros_opt(expl);
    expl->add_option("--T", cfg.height_T, "Truncation height (default: table height)");
    expl->add_option("--x", cfg.x_values, "Evaluation points (overrides the log grid)");
    expl->add_option("--x-min", cfg.x_min, "Log grid lower end")->check(CLI::Range(5.0, 1e8));
    expl->add_option("--x-max", cfg.x_max, "Log grid upper end")->check(CLI::Range(5.0, 1e8));
    expl->add_option("--points", cfg.points, "Log grid size")->check(CLI::Range(1, 1000000));

    auto* dens = app.add_subcommand("density", "P(Z > 0) by characteristic-function inversion");
    common(dens);
    zeros_opt(dens);
    dens->add_option("--prefix", cfg.prefix, "Use only the first N zeros");
    dens->add_flag("--dual", cfg.dual, "Compute P(Z~ > 0) for the pi(x) vs Li(x) variable");

    auto* smp = app.add_subcommand("sample", "Monte Carlo draws of the random model Z");
    common(smp);
    zeros_opt(smp);
    smp->add_option("--n", cfg.n_samples, "Number of draws")->check(CLI::PositiveNumber);
    smp->add_option("--seed", cfg.seed, "Generator seed");
    smp->add_option("--prefix", cfg.prefix, "Use only the first N zeros");
    smp->add_flag("--dual", cfg.dual, "Draw Z~ = -1 + 2 Re sum instead of Z");
    smp->add_flag("--no-tail", cfg.no_tail, "Omit the Gaussian stand-in for zeros above the table");

    auto* ver = app.add_subcommand("verify", "Run the built-in invariant suite; exit 2 on failure");
    common(ver);
    zeros_opt(ver);
    ver->add_option("--x-max", cfg.x_max, "Sieve range for the scan and prime-power checks")->check(CLI::Range(1e3, 1e8));
    ver->add_option("--seed", cfg.seed, "Generator seed for the sampling checks");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        std::cout << app.help();
        return 0;
    } catch (const CLI::CallForAllHelp&) {
        std::cout << app.help("", CLI::AppFormatMode::All);
        return 0;
    } catch (const CLI::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n" << app.help();
        return 1;
    }

    if (scan->parsed()) cfg.command = Command::scan;
    if (expl->parsed()) {
        cfg.command = Command::explicit_cmp;
        if (!expl->count("--x-max")) cfg.x_max = 1e5;
    }
    if (dens->parsed()) cfg.command = Command::density;
    if (smp->parsed()) cfg.command = Command::sample;
    if (ver->parsed()) {
        cfg.command = Command::verify;
        if (!ver->count("--x-max")) cfg.x_max = 1e5;
    }

    try {
        return run(cfg);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
