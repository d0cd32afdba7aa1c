#include "otdp/metrics.hpp"

#include <chrono>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "otdp/parallel.hpp"

namespace otdp {

PointSampler uniform_box_sampler(std::vector<double> lo, std::vector<double> hi) {
    if (lo.size() != hi.size() || lo.empty()) {
        throw std::invalid_argument("sampler box bounds must be non-empty and equal length");
    }
    for (std::size_t a = 0; a < lo.size(); ++a) {
        if (!(lo[a] < hi[a])) throw std::invalid_argument("sampler box requires lo < hi");
    }
    return [lo = std::move(lo), hi = std::move(hi)](SeededRng& rng,
                                                    std::span<double> out) {
        for (std::size_t a = 0; a < lo.size(); ++a) {
            out[a] = rng.uniform(lo[a], hi[a]);
        }
    };
}

ErrorEstimate l2_error(const GridVectorField& t_hat, const AnalyticMap& t_true,
                       const PointSampler& sample_p, std::size_t n_mc,
                       SeededRng rng) {
    if (n_mc < 1) throw std::invalid_argument("need at least one Monte-Carlo sample");
    const auto d = static_cast<std::size_t>(t_hat.spec.dim());
    std::vector<double> x(d), hat(d), truth(d);
    double sum = 0.0, sum_sq = 0.0;
    for (std::size_t i = 0; i < n_mc; ++i) {
        sample_p(rng, x);
        interpolate_multilinear(t_hat, x, hat);
        t_true(x, truth);
        double err = 0.0;
        for (std::size_t a = 0; a < d; ++a) {
            const double delta = hat[a] - truth[a];
            err += delta * delta;
        }
        sum += err;
        sum_sq += err * err;
    }
    const double n = static_cast<double>(n_mc);
    ErrorEstimate estimate;
    estimate.value = sum / n;
    const double variance = std::max(0.0, sum_sq / n - estimate.value * estimate.value);
    estimate.std_error = std::sqrt(variance / n);
    return estimate;
}

double scott_bandwidth(const PointSet& points) {
    if (points.n < 2) throw std::invalid_argument("bandwidth rule needs at least 2 points");
    const double n = static_cast<double>(points.n);
    double mean_std = 0.0;
    for (int a = 0; a < points.d; ++a) {
        double mean = 0.0, sq = 0.0;
        for (std::size_t i = 0; i < points.n; ++i) {
            mean += points.row(i)[a];
        }
        mean /= n;
        for (std::size_t i = 0; i < points.n; ++i) {
            const double c = points.row(i)[a] - mean;
            sq += c * c;
        }
        mean_std += std::sqrt(sq / (n - 1.0));
    }
    mean_std /= static_cast<double>(points.d);
    return mean_std * std::pow(n, -1.0 / (points.d + 4.0));
}

GridPotential kde_grid(const PointSet& points, double bandwidth,
                       const GridSpec& spec, int threads) {
    if (!(bandwidth > 0.0)) throw std::invalid_argument("bandwidth must be positive");
    if (points.n == 0) throw std::invalid_argument("need at least one sample");
    if (points.d != spec.dim()) throw std::invalid_argument("dimension mismatch");

    const double norm =
        1.0 / (static_cast<double>(points.n) *
               std::pow(2.0 * std::numbers::pi * bandwidth * bandwidth,
                        0.5 * spec.dim()));
    const double inv_two_bw2 = 1.0 / (2.0 * bandwidth * bandwidth);

    std::vector<double> density(spec.size());
    parallel_for(spec.size(), threads, [&](std::size_t begin, std::size_t end) {
        std::vector<double> g(static_cast<std::size_t>(spec.dim()));
        for (std::size_t j = begin; j < end; ++j) {
            spec.point(j, g);
            double sum = 0.0;
            for (std::size_t i = 0; i < points.n; ++i) {
                const auto p = points.row(i);
                double r2 = 0.0;
                for (int a = 0; a < spec.dim(); ++a) {
                    const double c = g[a] - p[a];
                    r2 += c * c;
                }
                sum += std::exp(-r2 * inv_two_bw2);
            }
            density[j] = norm * sum;
        }
    });
    return GridPotential(spec, std::move(density));
}

namespace {

AnalyticMap true_map_of(const AttractionRepulsionParams& params) {
    return [params](std::span<const double> x, std::span<double> out) {
        const auto g = attraction_repulsion_gradient(x, params);
        std::copy(g.begin(), g.end(), out.begin());
    };
}

}  // namespace

std::vector<SweepRow> run_sweep(const SweepConfig& config,
                                const std::function<void(const SweepRow&)>& sink) {
    if (config.n_values.empty() || config.epsilon_values.empty() ||
        config.seeds.empty()) {
        throw std::invalid_argument("sweep ranges must be non-empty");
    }
    if (config.family_size < 1) throw std::invalid_argument("family size must be >= 1");

    struct Cell {
        std::size_t n;
        double epsilon;
        std::uint64_t seed;
    };
    std::vector<Cell> cells;
    for (std::size_t n : config.n_values) {
        for (double eps : config.epsilon_values) {
            for (std::uint64_t seed : config.seeds) {
                cells.push_back({n, eps, seed});
            }
        }
    }

    std::vector<SweepRow> rows(cells.size());
    // Cells are parallel as a whole; per-cell fits run single threaded so
    // worker count never changes the arithmetic.
    parallel_for(cells.size(), config.threads, [&](std::size_t begin, std::size_t end) {
        for (std::size_t c = begin; c < end; ++c) {
            const auto& cell = cells[c];
            const auto start = std::chrono::steady_clock::now();

            SeededRng root(cell.seed, 0);
            SeededRng params_stream = root.derive(1);
            ExperimentModel model;
            model.true_params = sample_random_params(
                params_stream, config.model.sigma_loc, config.model.alpha1,
                config.model.alpha2, config.model.sigma1, config.model.sigma2,
                config.grid.dim());
            model.box_lo = config.box_lo;
            model.box_hi = config.box_hi;
            model.n = cell.n;
            model.seed = cell.seed;

            const Dataset data = generate_dataset(model, config.grid, root.derive(2));

            const std::size_t decoys =
                config.include_true ? config.family_size - 1 : config.family_size;
            CandidateFamily family;
            if (decoys > 0) {
                family = generate_family(root.derive(3), decoys, config.model,
                                         config.grid, 1);
            } else {
                family.spec = config.grid;
            }
            if (config.include_true) {
                family.add(discretize(
                               [&model](std::span<const double> x) {
                                   return attraction_repulsion_potential(
                                       x, model.true_params);
                               },
                               config.grid),
                           CandidateLabel{"attraction_repulsion", model.true_params});
            }

            FitConfig fit_config;
            fit_config.budget = PrivacyBudget(cell.epsilon);
            fit_config.clip = ClipConfig(config.clip_c);
            fit_config.grid = config.grid;
            fit_config.seed = cell.seed;
            fit_config.threads = 1;
            const FitResult fit_priv = fit_private(data, family, fit_config);

            FitConfig nonpriv_config = fit_config;
            nonpriv_config.budget.reset();
            const FitResult fit_base = fit_nonprivate(data, family, nonpriv_config);

            const auto sampler = uniform_box_sampler(config.box_lo, config.box_hi);
            const auto truth = true_map_of(model.true_params);
            const auto err_priv = l2_error(fit_priv.chosen_map, truth, sampler,
                                           config.n_mc, root.derive(4));
            const auto err_base = l2_error(fit_base.chosen_map, truth, sampler,
                                           config.n_mc, root.derive(4));

            SweepRow row;
            row.n = cell.n;
            row.epsilon = cell.epsilon;
            row.seed = cell.seed;
            row.error_private = err_priv.value;
            row.error_nonprivate = err_base.value;
            std::size_t rank = 0;
            for (double s : fit_priv.raw_scores) {
                if (s < fit_priv.raw_scores[fit_priv.chosen_index]) ++rank;
            }
            row.chosen_rank = rank;
            row.runtime_s = std::chrono::duration<double>(
                                std::chrono::steady_clock::now() - start)
                                .count();
            rows[c] = row;
        }
    });

    if (sink) {
        for (const auto& row : rows) sink(row);
    }
    return rows;
}

}  // namespace otdp
