#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "otdp/grid.hpp"

namespace otdp {

/// Symmetric clipping bound C > 0 applied to both semi-dual terms.
struct ClipConfig {
    double C;
    explicit ClipConfig(double c);
};

/// Paired source/target samples with cached nearest-grid-point indices.
class Dataset {
public:
    static Dataset from_samples(PointSet x, PointSet y, const GridSpec& spec);

    std::size_t size() const { return x_.n; }
    int dim() const { return x_.d; }
    const GridSpec& grid() const { return spec_; }

    std::span<const double> x(std::size_t i) const { return x_.row(i); }
    std::span<const double> y(std::size_t i) const { return y_.row(i); }
    std::uint32_t x_index(std::size_t i) const { return x_idx_[i]; }
    std::uint32_t y_index(std::size_t i) const { return y_idx_[i]; }

    const PointSet& x_points() const { return x_; }
    const PointSet& y_points() const { return y_; }

    /// Copy with one source (resp. target) record replaced; indices recomputed.
    Dataset with_replaced_x(std::size_t i, std::span<const double> p) const;
    Dataset with_replaced_y(std::size_t i, std::span<const double> p) const;

private:
    Dataset() = default;
    GridSpec spec_;
    PointSet x_, y_;
    std::vector<std::uint32_t> x_idx_, y_idx_;
};

/// Number of records in which the two datasets differ (source and target
/// rows compared elementwise).
std::size_t dataset_hamming(const Dataset& a, const Dataset& b);

/// Grid Fenchel-Legendre transform: max over all grid points x of
/// <x, y> - f(x). The maximum is exact (no pruning).
double fenchel_grid_transform(const GridPotential& f, std::span<const double> y);

/// f* evaluated at every grid point; O(G^2), parallel over outputs.
GridPotential fenchel_transform_all(const GridPotential& f, int threads = 0);

/// Clipped empirical semi-dual objective:
/// mean of clamp(f(X_i)) plus mean of clamp(f*_grid(Y_i)), both terms
/// clamped to [-C, C], with samples snapped to their cached grid indices.
double empirical_semidual_clipped(const GridPotential& f, const Dataset& data,
                                  const ClipConfig& clip);

struct ClippedScore {
    double value = 0.0;
    std::size_t saturated_terms = 0;  // of the 2n clamped terms
};

/// Clipped objective plus a count of terms that hit the clamp boundary.
ClippedScore empirical_semidual_clipped_detail(const GridPotential& f,
                                               const Dataset& data,
                                               const ClipConfig& clip);

/// Unclipped variant of the empirical semi-dual objective.
double empirical_semidual_unclipped(const GridPotential& f, const Dataset& data);

/// Per-query sensitivity of the clipped objective: 2C/n.
double sensitivity_clipped(std::size_t n, const ClipConfig& clip);

/// Theoretical sensitivity bound for the unclipped objective:
/// max(2 * f_sup, 2 * domain_radius^2) / n.
double sensitivity_theoretical(double f_sup, double domain_radius, std::size_t n);

}  // namespace otdp
