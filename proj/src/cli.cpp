#include "otdp/cli.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>

#include "CLI11.hpp"
#include "json.hpp"

#include "otdp/config.hpp"
#include "otdp/covering.hpp"
#include "otdp/dp.hpp"
#include "otdp/estimator.hpp"
#include "otdp/io.hpp"
#include "otdp/metrics.hpp"
#include "otdp/models.hpp"

namespace otdp {
namespace {

namespace fs = std::filesystem;

std::ofstream open_output(const fs::path& path) {
    std::ofstream out(path);
    if (!out) {
        throw std::ios_base::failure("cannot open output file: " + path.string());
    }
    return out;
}

std::ifstream open_input(const fs::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw std::ios_base::failure("cannot open input file: " + path.string());
    }
    return in;
}

nlohmann::json params_json(const AttractionRepulsionParams& p) {
    return {{"alpha1", p.alpha1}, {"alpha2", p.alpha2}, {"mu1", p.mu1},
            {"mu2", p.mu2},       {"sigma1", p.sigma1}, {"sigma2", p.sigma2}};
}

AttractionRepulsionParams params_from_json(const nlohmann::json& j) {
    AttractionRepulsionParams p;
    p.alpha1 = j.at("alpha1").get<double>();
    p.alpha2 = j.at("alpha2").get<double>();
    p.mu1 = j.at("mu1").get<std::vector<double>>();
    p.mu2 = j.at("mu2").get<std::vector<double>>();
    p.sigma1 = j.at("sigma1").get<double>();
    p.sigma2 = j.at("sigma2").get<double>();
    p.validate();
    return p;
}

nlohmann::json config_record(const RunConfig& config, const std::string& command) {
    return {{"record", "config"}, {"command", command}, {"config", config.json()}};
}

ExperimentModel model_from_config(const RunConfig& config) {
    const GridSpec grid = config.grid();
    ExperimentModel model;
    SeededRng params_stream = SeededRng(config.seed(), 0).derive(1);
    const auto fam = config.family_model();
    model.true_params =
        sample_random_params(params_stream, fam.sigma_loc, fam.alpha1, fam.alpha2,
                             fam.sigma1, fam.sigma2, grid.dim());
    model.box_lo = grid.lo();
    model.box_hi = grid.hi();
    model.n = config.n();
    model.seed = config.seed();
    return model;
}

int cmd_generate(const RunConfig& config) {
    const fs::path dir = config.output_dir();
    fs::create_directories(dir);

    const ExperimentModel model = model_from_config(config);
    PointSet x, y;
    generate_samples(model, SeededRng(config.seed(), 0).derive(2), x, y);

    {
        auto out = open_output(dir / "X.csv");
        write_points_csv(out, x);
    }
    {
        auto out = open_output(dir / "Y.csv");
        write_points_csv(out, y);
    }
    nlohmann::json meta = config_record(config, "generate");
    meta["model"] = {{"true_params", params_json(model.true_params)},
                     {"box_lo", model.box_lo},
                     {"box_hi", model.box_hi},
                     {"n", model.n},
                     {"seed", model.seed}};
    auto out = open_output(dir / "generate.meta.json");
    out << meta.dump(2) << '\n';
    return kOk;
}

CandidateFamily family_from_config(const RunConfig& config, const GridSpec& grid,
                                   const std::string& truth_meta_path) {
    const std::size_t total = config.family_size();
    const bool include_true = config.family_includes_true();
    std::optional<AttractionRepulsionParams> truth;
    if (include_true) {
        if (truth_meta_path.empty()) {
            throw ConfigError(
                "family.mode=include-true requires --truth <generate.meta.json>");
        }
        auto in = open_input(truth_meta_path);
        const auto meta = nlohmann::json::parse(in);
        truth = params_from_json(meta.at("model").at("true_params"));
    }

    const std::size_t decoys = include_true ? total - 1 : total;
    CandidateFamily family;
    if (decoys > 0) {
        family = generate_family(SeededRng(config.seed(), 0).derive(3), decoys,
                                 config.family_model(), grid, config.threads());
    } else {
        family.spec = grid;
    }
    if (truth) {
        family.add(discretize(
                       [&truth](std::span<const double> p) {
                           return attraction_repulsion_potential(p, *truth);
                       },
                       grid),
                   CandidateLabel{"attraction_repulsion", *truth});
    }
    return family;
}

int cmd_fit(const RunConfig& config, const std::string& x_path,
            const std::string& y_path, const std::string& truth_meta_path,
            bool non_private, bool unsafe_diagnostics) {
    const fs::path dir = config.output_dir();
    fs::create_directories(dir);
    const GridSpec grid = config.grid();

    PointSet x, y;
    {
        auto in = open_input(x_path);
        x = read_points_csv(in);
    }
    {
        auto in = open_input(y_path);
        y = read_points_csv(in);
    }
    if (x.d != grid.dim()) {
        throw std::invalid_argument("dataset dimension does not match configured grid");
    }
    const Dataset data = Dataset::from_samples(std::move(x), std::move(y), grid);
    const CandidateFamily family = family_from_config(config, grid, truth_meta_path);

    FitConfig fit_config;
    if (!non_private) fit_config.budget = PrivacyBudget(config.epsilon());
    fit_config.clip = ClipConfig(config.clip_c());
    fit_config.grid = grid;
    fit_config.seed = config.seed();
    fit_config.threads = config.threads();

    const FitResult result = non_private ? fit_nonprivate(data, family, fit_config)
                                         : fit_private(data, family, fit_config);

    nlohmann::json out = config_record(config, "fit");
    out["record"] = "fit";
    out["chosen_index"] = result.chosen_index;
    out["chosen_label"] = {{"kind", result.chosen_label.kind}};
    if (result.chosen_label.params) {
        out["chosen_label"]["params"] = params_json(*result.chosen_label.params);
    }
    out["privacy_certificate"] = {{"is_private", result.certificate.is_private},
                                  {"epsilon", result.certificate.epsilon},
                                  {"delta", result.certificate.delta},
                                  {"mechanism", result.certificate.mechanism}};
    out["noise_scale"] = result.noise_scale;
    out["clamp_saturation"] = result.clamp_saturation;
    out["map_csv"] = "map.csv";
    if (unsafe_diagnostics) {
        // Raw and noisy scores are not DP-protected outputs.
        out["raw_scores"] = result.raw_scores;
        out["noisy_scores"] = result.noisy_scores;
    } else {
        out["raw_scores"] = "redacted";
        out["noisy_scores"] = "redacted";
    }
    {
        auto os = open_output(dir / "fit.json");
        os << out.dump(2) << '\n';
    }
    {
        auto os = open_output(dir / "map.csv");
        write_map_csv(os, result.chosen_map);
    }
    return kOk;
}

int cmd_sweep(const RunConfig& config) {
    const fs::path dir = config.output_dir();
    fs::create_directories(dir);
    const GridSpec grid = config.grid();

    SweepConfig sweep;
    for (auto n : config.get_ints("sweep", "n_values")) {
        if (n < 1) throw ConfigError("sweep.n_values entries must be positive");
        sweep.n_values.push_back(static_cast<std::size_t>(n));
    }
    sweep.epsilon_values = config.get_doubles("sweep", "epsilon_values");
    for (auto s : config.get_ints("sweep", "seeds")) {
        sweep.seeds.push_back(static_cast<std::uint64_t>(s));
    }
    sweep.grid = grid;
    sweep.model = config.family_model();
    sweep.box_lo = grid.lo();
    sweep.box_hi = grid.hi();
    sweep.family_size = config.family_size();
    sweep.include_true = config.family_includes_true();
    sweep.clip_c = config.clip_c();
    sweep.n_mc = static_cast<std::size_t>(config.get_int("sweep", "n_mc"));
    sweep.threads = config.threads();

    auto os = open_output(dir / "sweep.ndjson");
    os << config_record(config, "sweep").dump() << '\n';
    run_sweep(sweep, [&os](const SweepRow& row) {
        nlohmann::json j{{"record", "row"},
                         {"n", row.n},
                         {"epsilon", row.epsilon},
                         {"seed", row.seed},
                         {"error_private", row.error_private},
                         {"error_nonprivate", row.error_nonprivate},
                         {"chosen_rank", row.chosen_rank},
                         {"runtime_s", row.runtime_s}};
        os << j.dump() << '\n';
    });
    return kOk;
}

int cmd_verify_dp(const RunConfig& config) {
    const fs::path dir = config.output_dir();
    fs::create_directories(dir);
    const GridSpec grid = config.grid();

    const auto n = static_cast<std::size_t>(config.get_int("verify_dp", "n"));
    const auto n_candidates =
        static_cast<std::size_t>(config.get_int("verify_dp", "candidates"));
    const auto pairs = static_cast<std::size_t>(config.get_int("verify_dp", "pairs"));
    const auto trials = static_cast<std::size_t>(config.get_int("verify_dp", "trials"));
    const double noise_factor = config.get_double("verify_dp", "noise_factor");
    if (n < 1 || n_candidates < 1 || pairs < 1 || trials < 1 || noise_factor <= 0.0) {
        throw ConfigError("verify_dp parameters must be positive");
    }
    const ClipConfig clip(config.clip_c());
    const PrivacyBudget budget(config.epsilon());

    SeededRng root(config.seed(), 0xd9);

    // Stress instance: the first two candidates carry opposite +-C
    // half-split sign patterns and the source records sit half in each
    // half, so the base scores tie and one cross-half replacement moves
    // the score gap by the full 2 * sensitivity. Further candidates get
    // random sign patterns.
    CandidateFamily family;
    family.spec = grid;
    SeededRng cand_stream = root.derive(0);
    for (std::size_t c = 0; c < n_candidates; ++c) {
        std::vector<double> values(grid.size());
        for (std::size_t i = 0; i < grid.size(); ++i) {
            if (c == 0) {
                values[i] = i < grid.size() / 2 ? -clip.C : clip.C;
            } else if (c == 1) {
                values[i] = i < grid.size() / 2 ? clip.C : -clip.C;
            } else {
                values[i] = cand_stream.uniform() < 0.5 ? -clip.C : clip.C;
            }
        }
        family.add(GridPotential(grid, std::move(values)),
                   CandidateLabel{"stress", std::nullopt});
    }

    PointSet xs(n, grid.dim()), ys(n, grid.dim());
    const auto corner = grid.point(0);
    const auto opposite = grid.point(grid.size() / 2);
    for (std::size_t i = 0; i < n; ++i) {
        const auto& home = i % 2 == 0 ? corner : opposite;
        std::copy(home.begin(), home.end(), xs.row(i).begin());
        std::copy(corner.begin(), corner.end(), ys.row(i).begin());
    }
    const Dataset base = Dataset::from_samples(std::move(xs), std::move(ys), grid);

    const double delta = sensitivity_clipped(n, clip);
    const double mech_delta = delta * noise_factor;

    // Score cache shared across trials; the mechanism itself is
    // deterministic given data, only the noise is per trial.
    std::map<const Dataset*, std::vector<double>> score_cache;
    const auto scores_of = [&](const Dataset& data) -> const std::vector<double>& {
        auto it = score_cache.find(&data);
        if (it == score_cache.end()) {
            std::vector<double> scores(family.size());
            for (std::size_t c = 0; c < family.size(); ++c) {
                scores[c] = empirical_semidual_clipped(family.members[c], data, clip);
            }
            it = score_cache.emplace(&data, std::move(scores)).first;
        }
        return it->second;
    };
    const IndexMechanism mechanism = [&](const Dataset& data, SeededRng rng) {
        return report_noisy_argmin(scores_of(data), mech_delta, budget, rng).index;
    };

    // Sample `pairs` one-record replacements from the exhaustive
    // (slot, grid point) enumeration.
    const std::size_t universe = 2 * n * grid.size();
    SeededRng pair_stream = root.derive(2);
    std::vector<std::size_t> chosen;
    while (chosen.size() < std::min(pairs, universe)) {
        const auto pick = static_cast<std::size_t>(
            pair_stream.uniform() * static_cast<double>(universe));
        if (std::find(chosen.begin(), chosen.end(), pick) == chosen.end()) {
            chosen.push_back(pick);
        }
    }

    auto os = open_output(dir / "dp_report.ndjson");
    os << config_record(config, "verify-dp").dump() << '\n';
    bool all_pass = true;
    for (std::size_t k = 0; k < chosen.size(); ++k) {
        const std::size_t slot = chosen[k] / grid.size();
        const std::size_t point_idx = chosen[k] % grid.size();
        const auto replacement = grid.point(point_idx);
        const Dataset neighbor = slot < n
                                     ? base.with_replaced_x(slot, replacement)
                                     : base.with_replaced_y(slot - n, replacement);
        score_cache.clear();
        const auto report = verify_dp_ratio(mechanism, base, neighbor, budget, trials,
                                            root.derive(1000 + k), family.size());
        all_pass = all_pass && report.pass;
        for (const auto& row : report.rows) {
            nlohmann::json j{{"record", "pair"},
                             {"pair", k},
                             {"slot", slot},
                             {"replacement", point_idx},
                             {"index", row.index},
                             {"count_D", row.count_d},
                             {"count_Dn", row.count_dn},
                             {"ratio", std::isfinite(row.ratio)
                                           ? nlohmann::json(row.ratio)
                                           : nlohmann::json("inf")},
                             {"bound", row.bound},
                             {"pass", row.pass}};
            os << j.dump() << '\n';
        }
    }
    os << nlohmann::json{{"record", "summary"},
                         {"pairs", chosen.size()},
                         {"noise_factor", noise_factor},
                         {"pass", all_pass}}
              .dump()
       << '\n';
    return all_pass ? kOk : kValidationError;
}

int cmd_verify_packing(const RunConfig& config) {
    const fs::path dir = config.output_dir();
    fs::create_directories(dir);

    const int m = static_cast<int>(config.get_int("packing", "m"));
    const int d = static_cast<int>(config.get_int("packing", "d"));
    const double alpha = config.get_double("packing", "alpha");
    const auto h_values = config.get_doubles("packing", "h_values");
    if (h_values.empty()) throw ConfigError("packing.h_values must be non-empty");
    double amplitude = config.get_double("packing", "amplitude");
    int resolution = static_cast<int>(config.get_int("packing", "resolution"));

    const double h_max = *std::max_element(h_values.begin(), h_values.end());
    const double h_min = *std::min_element(h_values.begin(), h_values.end());
    if (amplitude <= 0.0) {
        // Largest amplitude admissible at the widest bandwidth works for
        // all smaller ones; a fixed amplitude keeps the h-scaling clean.
        amplitude = default_packing_amplitude(h_max, alpha, d);
    }
    if (resolution <= 0) {
        resolution = static_cast<int>(std::ceil(16.0 / h_min));
    }

    auto os = open_output(dir / "packing_report.ndjson");
    os << config_record(config, "verify-packing").dump() << '\n';

    std::size_t n_centers = 1;
    for (int i = 0; i < d; ++i) n_centers *= static_cast<std::size_t>(m);
    if (n_centers < 2) throw ConfigError("packing verification needs m^d >= 2");

    std::vector<std::uint8_t> theta0(n_centers, 0), theta1 = theta0, theta2 = theta0;
    theta1[0] = 1;
    theta2[0] = 1;
    theta2[1] = 1;

    std::vector<double> log_h, log_dist;
    bool additive_ok = true;
    double tv_ratio_min = std::numeric_limits<double>::infinity();
    double tv_ratio_max = 0.0;
    for (double h : h_values) {
        const auto spec = PackingSpec::make(m, d, h, alpha, theta0, amplitude);
        const double dist1 = packing_pairwise_distance(theta0, theta1, spec, resolution);
        const double dist2 = packing_pairwise_distance(theta0, theta2, spec, resolution);
        const double dist_between = packing_pairwise_distance(theta1, theta2, spec, resolution);
        additive_ok = additive_ok && dist2 == dist1 + dist_between;

        double tv = std::numeric_limits<double>::quiet_NaN();
        if (d == 1) {
            tv = packing_tv_distance_1d(theta0, theta1, spec, resolution);
            const double ratio = tv / std::pow(h, alpha - 1.0 + d);
            tv_ratio_min = std::min(tv_ratio_min, ratio);
            tv_ratio_max = std::max(tv_ratio_max, ratio);
        }
        log_h.push_back(std::log(h));
        log_dist.push_back(std::log(dist1));
        nlohmann::json j{{"record", "row"},  {"h", h},
                         {"ham", 1},         {"distance", dist1},
                         {"distance_ham2", dist2}};
        if (d == 1) j["tv"] = tv;
        os << j.dump() << '\n';
    }

    // Least-squares slope of ln(distance) against ln(h).
    double slope = 0.0;
    {
        const double n_pts = static_cast<double>(log_h.size());
        double mx = 0.0, my = 0.0;
        for (std::size_t i = 0; i < log_h.size(); ++i) {
            mx += log_h[i];
            my += log_dist[i];
        }
        mx /= n_pts;
        my /= n_pts;
        double num = 0.0, den = 0.0;
        for (std::size_t i = 0; i < log_h.size(); ++i) {
            num += (log_h[i] - mx) * (log_dist[i] - my);
            den += (log_h[i] - mx) * (log_h[i] - mx);
        }
        slope = den > 0.0 ? num / den : 0.0;
    }

    const double expected_slope = 2.0 * alpha + d;
    const bool slope_ok = h_values.size() < 2 || std::abs(slope - expected_slope) <= 0.1;
    const bool tv_ok =
        d != 1 || tv_ratio_max <= 1.25 * tv_ratio_min;
    nlohmann::json summary{{"record", "summary"},
                           {"amplitude", amplitude},
                           {"resolution", resolution},
                           {"slope", slope},
                           {"expected_slope", expected_slope},
                           {"slope_pass", slope_ok},
                           {"additivity_pass", additive_ok},
                           {"pass", slope_ok && additive_ok && tv_ok}};
    if (d == 1) {
        summary["tv_ratio_spread"] = tv_ratio_max / tv_ratio_min;
        summary["tv_pass"] = tv_ok;
    }
    os << summary.dump() << '\n';
    return (slope_ok && additive_ok && tv_ok) ? kOk : kValidationError;
}

int cmd_covering_stats(const RunConfig& config) {
    const fs::path dir = config.output_dir();
    fs::create_directories(dir);

    const int j_level = static_cast<int>(config.get_int("covering", "J"));
    const int d = static_cast<int>(config.get_int("covering", "d"));
    const AdmissibilityParams params(config.get_double("covering", "M"),
                                     config.get_double("covering", "R"),
                                     config.get_double("covering", "alpha"), d);
    const double delta = config.get_double("covering", "delta");
    const auto cap = static_cast<std::size_t>(config.get_int("covering", "cap"));
    const int screen_m = static_cast<int>(config.get_int("covering", "screen_m"));
    const auto screen_limit =
        static_cast<std::size_t>(config.get_int("covering", "screen_limit"));

    const auto basis = WaveletBasisSpec::make(
        j_level, d, std::vector<double>(static_cast<std::size_t>(d), -1.0),
        std::vector<double>(static_cast<std::size_t>(d), 2.0));
    const double b_inf = 2.0 * params.M * params.M;
    DeltaGridCovering covering(basis.dimension(), delta, b_inf, cap);
    const double log_exact = covering_log_cardinality(j_level, delta, params);
    const double c_prime = 4.0 * params.M * params.M;
    const double log_bound =
        std::pow(2.0, j_level * static_cast<double>(d)) *
        std::log(c_prime * std::pow(2.0, 0.5 * j_level * d) / delta + 1.0);

    const GridSpec screen_grid = make_uniform_grid(-1.0, 2.0, screen_m, d);
    const std::size_t to_screen = std::min<std::size_t>(covering.count(), screen_limit);
    std::size_t accepted = 0;
    CoeffVector coeffs;
    for (std::size_t i = 0; i < to_screen; ++i) {
        coeffs = covering.at(i);
        const auto f = synthesize(coeffs, basis, screen_grid);
        if (admissibility_check(f, params).pass) ++accepted;
    }

    auto os = open_output(dir / "covering_stats.ndjson");
    os << config_record(config, "covering-stats").dump() << '\n';
    nlohmann::json row{
        {"record", "stats"},
        {"J", j_level},
        {"d", d},
        {"dimension", basis.dimension()},
        {"dimension_bound_constant", basis.dimension_bound_constant()},
        {"generator", "haar"},
        {"generator_smoothness", basis.generator_smoothness()},
        {"delta", delta},
        {"count", covering.count()},
        {"log_cardinality_exact", log_exact},
        {"log_cardinality_bound", log_bound},
        {"bound_constant_c", 1.0},
        {"bound_constant_c_prime", c_prime},
        {"screened", to_screen},
        {"accepted", accepted},
        {"acceptance_rate",
         to_screen == 0 ? 0.0
                        : static_cast<double>(accepted) / static_cast<double>(to_screen)}};
    os << row.dump() << '\n';
    return kOk;
}

int cmd_kde(const RunConfig& config, const std::string& input_path,
            double bandwidth_flag) {
    const fs::path dir = config.output_dir();
    fs::create_directories(dir);
    const GridSpec grid = config.grid();

    PointSet points;
    {
        auto in = open_input(input_path);
        points = read_points_csv(in);
    }
    if (points.d != grid.dim()) {
        throw std::invalid_argument("input dimension does not match configured grid");
    }

    double bandwidth = bandwidth_flag > 0.0 ? bandwidth_flag
                                            : config.get_double("kde", "bandwidth");
    if (bandwidth <= 0.0) bandwidth = scott_bandwidth(points);

    const GridPotential density = kde_grid(points, bandwidth, grid, config.threads());

    // Midpoint-style mass over the grid box, for the meta record.
    double cell = 1.0;
    for (int a = 0; a < grid.dim(); ++a) cell *= grid.step(a);
    double mass = 0.0;
    for (double v : density.values) mass += v;
    mass *= cell;

    {
        auto os = open_output(dir / "density.csv");
        write_density_csv(os, density);
    }
    nlohmann::json meta = config_record(config, "kde");
    meta["bandwidth"] = bandwidth;
    meta["n"] = points.n;
    meta["mass"] = mass;
    auto os = open_output(dir / "kde.meta.json");
    os << meta.dump(2) << '\n';
    return kOk;
}

}  // namespace

int run_cli(int argc, const char* const* argv) {
    CLI::App app{"Differentially private estimation of smooth optimal transport maps"};
    app.require_subcommand(1);

    std::string config_path, out_dir, x_path, y_path, truth_path, input_path;
    std::int64_t seed_flag = -1;
    int threads_flag = -1;
    bool unsafe_diagnostics = false;
    bool non_private = false;
    double bandwidth_flag = 0.0;

    app.add_option("--config", config_path, "JSON config file");
    app.add_option("--seed", seed_flag, "Override data.seed");
    app.add_option("--threads", threads_flag, "Cap worker threads");
    app.add_option("--out", out_dir, "Override output directory");

    auto* generate = app.add_subcommand("generate", "Sample a synthetic dataset");
    auto* fit = app.add_subcommand("fit", "Privately fit a transport map");
    fit->add_option("--x", x_path, "Source samples CSV")->required();
    fit->add_option("--y", y_path, "Target samples CSV")->required();
    fit->add_option("--truth", truth_path, "generate.meta.json with the true potential");
    fit->add_flag("--non-private", non_private, "Exact argmin baseline");
    fit->add_flag("--unsafe-diagnostics", unsafe_diagnostics,
                  "Emit raw scores (not covered by the privacy certificate)");
    auto* sweep = app.add_subcommand("sweep", "Run the (n, epsilon) sweep harness");
    auto* verify_dp = app.add_subcommand("verify-dp", "Empirical DP ratio check");
    auto* verify_packing =
        app.add_subcommand("verify-packing", "Packing distance and TV scaling checks");
    auto* covering_stats =
        app.add_subcommand("covering-stats", "Covering dimension and screening stats");
    auto* kde = app.add_subcommand("kde", "Kernel density estimate on the grid");
    kde->add_option("--input", input_path, "Points CSV")->required();
    kde->add_option("--bandwidth", bandwidth_flag, "Kernel bandwidth (0 = Scott rule)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kConfigError;
    }

    try {
        RunConfig config = config_path.empty() ? RunConfig() : RunConfig::load(config_path);
        if (seed_flag >= 0) config.set_seed(static_cast<std::uint64_t>(seed_flag));
        if (threads_flag >= 0) config.set_threads(threads_flag);
        if (!out_dir.empty()) config.set_output_dir(out_dir);

        if (generate->parsed()) return cmd_generate(config);
        if (fit->parsed()) {
            return cmd_fit(config, x_path, y_path, truth_path, non_private,
                           unsafe_diagnostics);
        }
        if (sweep->parsed()) return cmd_sweep(config);
        if (verify_dp->parsed()) return cmd_verify_dp(config);
        if (verify_packing->parsed()) return cmd_verify_packing(config);
        if (covering_stats->parsed()) return cmd_covering_stats(config);
        if (kde->parsed()) return cmd_kde(config, input_path, bandwidth_flag);
        return kConfigError;
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kConfigError;
    } catch (const std::ios_base::failure& e) {
        std::cerr << "i/o error: " << e.what() << '\n';
        return kIoError;
    } catch (const std::filesystem::filesystem_error& e) {
        std::cerr << "i/o error: " << e.what() << '\n';
        return kIoError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kValidationError;
    }
}

}  // namespace otdp
