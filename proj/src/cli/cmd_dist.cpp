#include <algorithm>
#include <iostream>
#include <memory>
#include <optional>

#include "commands.hpp"
#include "evssta/analysis.hpp"
#include "evssta/corrections.hpp"
#include "evssta/errors.hpp"
#include "evssta/gumbel.hpp"
#include "evssta/io.hpp"

namespace evssta::cli {

namespace {

struct DistOptions {
    std::string kind;
    std::int64_t n = 0;
    std::optional<double> rho;
    std::string eps_file;
    std::optional<double> z_min;
    std::optional<double> z_max;
    std::size_t steps = 700;
    bool clamp = false;
    double threshold = corrections::kDefaultSmallnessThreshold;
    std::string out;
};

void run_dist(const CLI::App& sub, const DistOptions& o) {
    using namespace corrections;
    const bool plain = o.kind == "gumbel";
    const Order order = plain ? Order::First : *parse_order(o.kind);

    std::int64_t n = o.n;
    CorrelationSum s{0.0};
    double max_abs_eps = 0.0;
    if (!o.eps_file.empty()) {
        std::size_t dim = 0;
        const auto entries = io::read_matrix(o.eps_file, dim);
        if (n != 0 && static_cast<std::size_t>(n) != dim) {
            throw UsageError("--n", "does not match the " + std::to_string(dim) + "x" +
                                        std::to_string(dim) + " matrix in --eps-file");
        }
        n = static_cast<std::int64_t>(dim);
        try {
            const auto eps = EpsilonMatrix::from_covariance(dim, entries);
            s = correlation_sum(eps);
            max_abs_eps = eps.max_abs();
        } catch (const DomainError& e) {
            throw UsageError("--eps-file", e.what());
        }
    } else if (o.rho && n >= 1) {
        s = ar1_correlation_sum(n, *o.rho);
        max_abs_eps = n > 1 ? *o.rho : 0.0;
    }
    if (n < 2) {
        throw UsageError("--n", "must be >= 2 (or given through --eps-file)");
    }
    if (plain) {
        s = {0.0};
        max_abs_eps = 0.0;
    }

    const auto params = gumbel::GumbelParams::from_count(n);
    const double lo = o.z_min.value_or(params.alpha() - 2.0);
    const double hi = o.z_max.value_or(params.alpha() + 4.0);
    if (!(hi > lo)) {
        throw UsageError("--z-max", "must be greater than --z-min");
    }
    const auto z = linspace(lo, hi, o.steps);

    GridEvaluation grid{z, std::vector<double>(z.size()), std::vector<double>(z.size())};
    if (plain) {
        for (std::size_t k = 0; k < z.size(); ++k) {
            grid.cdf[k] = gumbel::gumbel_cdf(z[k], params);
            grid.pdf[k] = gumbel::gumbel_pdf(z[k], params);
        }
    } else {
        grid = evaluate_grid(z, params, s, order);
    }
    const auto validity = validity_check(params, s, max_abs_eps, z, order, o.threshold);
    if (o.clamp) {
        for (double& f : grid.cdf) f = std::clamp(f, 0.0, 1.0);
        for (double& f : grid.pdf) f = std::max(f, 0.0);
    }

    const auto prefix = resolve_output(o.out.empty() ? "dist_" + o.kind : o.out);
    const std::vector<std::string> header{"z", "cdf", "pdf"};
    const std::vector<std::vector<double>> columns{grid.z, grid.cdf, grid.pdf};
    io::write_columns_csv(with_suffix(prefix, ".csv"), header, columns);

    const RunManifest manifest = make_manifest(sub, 0);
    nlohmann::json sidecar{
        {"kind", o.kind},
        {"gumbel", {{"n", params.n()}, {"alpha", params.alpha()}, {"beta", params.beta()}}},
        {"correlation_sum", s.s},
        {"validity", analysis::to_json(validity)},
        {"clamped", o.clamp},
        {"manifest", to_json(manifest)},
    };
    io::write_json(with_suffix(prefix, ".json"), sidecar);
    write_manifest(prefix, manifest);

    std::cout << "wrote " << with_suffix(prefix, ".csv").string() << " (" << z.size() << " points, S = "
              << io::format_double(s.s) << ")\n";
    if (!validity.smallness_ok) {
        std::cout << "warning: max |eps| = " << io::format_double(max_abs_eps)
                  << " exceeds the smallness threshold " << io::format_double(o.threshold) << '\n';
    }
    if (!validity.shape_ok()) {
        std::cout << "warning: " << validity.flagged_points()
                  << " grid points violate CDF bounds, monotonicity or PDF sign\n";
    }
}

}  // namespace

void register_dist(CLI::App& app) {
    auto o = std::make_shared<DistOptions>();
    CLI::App* sub = app.add_subcommand("dist", "Tabulate the Gumbel law or a corrected law of the maximum");
    sub->add_option("kind", o->kind, "gumbel | first | second | complete")
        ->required()
        ->check(CLI::IsMember({"gumbel", "first", "second", "complete"}));
    sub->add_option("--n", o->n, "number of variables (>= 2)")->check(CLI::PositiveNumber);
    auto* rho = sub->add_option("--rho", o->rho, "AR(1) correlation eps_ij = rho^|i-j|")
                    ->check(CLI::Range(0.0, 1.0));
    auto* eps = sub->add_option("--eps-file", o->eps_file, "explicit correlation matrix (CSV or whitespace)")
                    ->check(CLI::ExistingFile);
    rho->excludes(eps);
    sub->add_option("--z-min", o->z_min, "grid start (default alpha - 2)");
    sub->add_option("--z-max", o->z_max, "grid end (default alpha + 4)");
    sub->add_option("--steps", o->steps, "grid points")->check(CLI::Range(2, 10000000));
    sub->add_flag("--clamp", o->clamp, "clamp CDF to [0, 1] and PDF to >= 0 in the CSV");
    sub->add_option("--threshold", o->threshold, "smallness threshold for max |eps|")
        ->check(CLI::PositiveNumber);
    sub->add_option("--out", o->out, "output prefix (default dist_<kind>)");
    sub->callback([sub, o] { run_dist(*sub, *o); });
}

}  // namespace evssta::cli
