#include <charconv>
#include <cmath>
#include <iostream>
#include <memory>

#include "commands.hpp"
#include "evssta/corrections.hpp"
#include "evssta/gumbel.hpp"
#include "evssta/io.hpp"
#include "evssta/montecarlo.hpp"

namespace evssta::cli {

namespace {

struct McOptions {
    std::int64_t n = 0;
    double rho = 0.0;
    std::string rho_sweep;
    double sigma = 1.0;
    std::int64_t reps = 10000;
    std::uint64_t seed = 0;
    int workers = 1;
    int bins = 0;
    std::string out = "mc";
};

// "a:b:step" -> a, a + step, ... <= b
std::vector<double> parse_sweep(const std::string& text) {
    std::vector<double> parts;
    std::size_t pos = 0;
    for (;;) {
        const std::size_t end = std::min(text.find(':', pos), text.size());
        double v = 0.0;
        const auto [ptr, ec] = std::from_chars(text.data() + pos, text.data() + end, v);
        if (ec != std::errc() || ptr != text.data() + end) {
            parts.clear();
            break;
        }
        parts.push_back(v);
        if (end == text.size()) break;
        pos = end + 1;
    }
    if (parts.size() != 3) {
        throw UsageError("--rho-sweep", "expected start:stop:step, got '" + text + "'");
    }
    const double a = parts[0];
    const double b = parts[1];
    const double step = parts[2];
    if (!(step > 0.0) || !(a >= 0.0) || !(b <= 1.0) || !(b >= a)) {
        throw UsageError("--rho-sweep", "needs 0 <= start <= stop <= 1 and step > 0");
    }
    std::vector<double> values;
    for (std::int64_t k = 0;; ++k) {
        const double v = a + static_cast<double>(k) * step;
        if (v > b + 1e-9 * step) break;
        values.push_back(v);
    }
    return values;
}

void run_mc(const CLI::App& sub, const McOptions& o) {
    mc::McConfig cfg{o.reps, o.seed, o.workers};
    const auto prefix = resolve_output(o.out);

    if (o.rho_sweep.empty()) {
        const mc::Ar1Model model{o.n, o.rho, o.sigma};
        const auto result = mc::sample_max_distribution(model, cfg, o.bins);
        const std::vector<std::string> header{"sample"};
        const std::vector<std::vector<double>> columns{result.samples};
        io::write_columns_csv(with_suffix(prefix, ".csv"), header, columns);
        // No timestamp or worker count here: this file is part of the
        // reproducible output.
        nlohmann::json stats = io::stats_json(result);
        stats["model"] = {{"n", o.n}, {"rho", o.rho}, {"sigma", o.sigma}};
        stats["seed"] = o.seed;
        io::write_json(with_suffix(prefix, ".json"), stats);
        write_manifest(prefix, make_manifest(sub, o.seed));
        std::cout << "mean " << io::format_double(result.mean) << "  std " << io::format_double(result.std)
                  << "  se " << io::format_double(result.standard_error()) << '\n';
        return;
    }

    const auto rhos = parse_sweep(o.rho_sweep);
    if (o.n < 2) {
        throw UsageError("--n", "a sweep needs n >= 2 for the analytic columns");
    }
    const auto params = gumbel::GumbelParams::from_count(o.n);
    const double gumbel_mean = gumbel::gumbel_moments(params).mean * o.sigma;
    std::vector<std::vector<double>> columns(7);
    for (double rho : rhos) {
        // Same seed for every rho: common random numbers keep the curve smooth.
        const auto result = mc::sample_max_distribution({o.n, rho, o.sigma}, cfg, o.bins);
        const auto s = corrections::ar1_correlation_sum(o.n, rho);
        columns[0].push_back(rho);
        columns[1].push_back(result.mean);
        columns[2].push_back(result.std);
        columns[3].push_back(result.standard_error());
        columns[4].push_back(gumbel_mean);
        columns[5].push_back(o.sigma * corrections::corrected_moments(params, s, corrections::Order::First).mean);
        columns[6].push_back(o.sigma * corrections::corrected_moments(params, s, corrections::Order::Second).mean);
    }
    const std::vector<std::string> header{"rho", "mc_mean", "mc_std", "mc_se",
                                          "gumbel_mean", "first_mean", "second_mean"};
    io::write_columns_csv(with_suffix(prefix, ".csv"), header, columns);
    write_manifest(prefix, make_manifest(sub, o.seed));
    std::cout << "wrote " << with_suffix(prefix, ".csv").string() << " (" << rhos.size() << " rho values)\n";
}

}  // namespace

void register_mc(CLI::App& app) {
    auto o = std::make_shared<McOptions>();
    CLI::App* sub = app.add_subcommand("mc", "Monte Carlo maxima of stationary AR(1) Gaussian chains");
    sub->add_option("--n", o->n, "chain length")->required()->check(CLI::PositiveNumber);
    auto* rho = sub->add_option("--rho", o->rho, "lag-1 correlation in [0, 1]")->check(CLI::Range(0.0, 1.0));
    auto* sweep = sub->add_option("--rho-sweep", o->rho_sweep, "start:stop:step, writes a mean-vs-rho table");
    rho->excludes(sweep);
    sub->add_option("--sigma", o->sigma, "marginal standard deviation")->check(CLI::PositiveNumber);
    sub->add_option("--reps", o->reps, "repetitions")->check(CLI::Range(std::int64_t{1}, std::int64_t{1} << 40));
    sub->add_option("--seed", o->seed, "RNG seed");
    sub->add_option("--workers", o->workers, "OpenMP threads (results do not depend on it)")
        ->check(CLI::Range(1, 1024));
    sub->add_option("--bins", o->bins, "histogram bins (0 = Freedman-Diaconis)")->check(CLI::NonNegativeNumber);
    sub->add_option("--out", o->out, "output prefix");
    sub->callback([sub, o] { run_mc(*sub, *o); });
}

}  // namespace evssta::cli
