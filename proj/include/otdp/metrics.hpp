#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "otdp/candidates.hpp"
#include "otdp/estimator.hpp"
#include "otdp/grid.hpp"
#include "otdp/models.hpp"
#include "otdp/rng.hpp"

namespace otdp {

struct ErrorEstimate {
    double value = 0.0;
    double std_error = 0.0;
};

/// Draws one point from the source distribution into `out`.
using PointSampler = std::function<void(SeededRng&, std::span<double>)>;

PointSampler uniform_box_sampler(std::vector<double> lo, std::vector<double> hi);

/// Analytic map x -> T(x), written into `out`.
using AnalyticMap =
    std::function<void(std::span<const double>, std::span<double>)>;

/// Monte-Carlo estimate of int |T_hat - T_true|^2 dP with fresh samples
/// from `sample_p`; T_hat is evaluated by multilinear interpolation.
ErrorEstimate l2_error(const GridVectorField& t_hat, const AnalyticMap& t_true,
                       const PointSampler& sample_p, std::size_t n_mc,
                       SeededRng rng);

/// Scott-style bandwidth: mean per-axis standard deviation times
/// n^(-1/(d+4)).
double scott_bandwidth(const PointSet& points);

/// Gaussian-kernel density estimate evaluated at every grid point.
GridPotential kde_grid(const PointSet& points, double bandwidth,
                       const GridSpec& spec, int threads = 0);

struct SweepRow {
    std::size_t n = 0;
    double epsilon = 0.0;
    std::uint64_t seed = 0;
    double error_private = 0.0;
    double error_nonprivate = 0.0;
    std::size_t chosen_rank = 0;  // rank of the private choice by raw score
    double runtime_s = 0.0;
};

struct SweepConfig {
    std::vector<std::size_t> n_values;
    std::vector<double> epsilon_values;
    std::vector<std::uint64_t> seeds;
    GridSpec grid;
    FamilyModelParams model;
    std::vector<double> box_lo, box_hi;
    std::size_t family_size = 0;
    bool include_true = true;
    double clip_c = 0.25;
    std::size_t n_mc = 20000;
    int threads = 0;
};

/// One cell per (n, epsilon, seed): generate data, fit privately and
/// non-privately, measure both errors against the true analytic map.
/// Cells run concurrently with disjoint rng streams; rows are emitted to
/// the sink in deterministic (n, epsilon, seed) order.
std::vector<SweepRow> run_sweep(const SweepConfig& config,
                                const std::function<void(const SweepRow&)>& sink);

}  // namespace otdp
