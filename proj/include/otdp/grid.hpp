#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace otdp {

/// Flat row-major container for n points in R^d.
struct PointSet {
    std::size_t n = 0;
    int d = 0;
    std::vector<double> data;  // n * d, row-major

    PointSet() = default;
    PointSet(std::size_t n_, int d_) : n(n_), d(d_), data(n_ * d_, 0.0) {}

    std::span<const double> row(std::size_t i) const {
        return {data.data() + i * static_cast<std::size_t>(d),
                static_cast<std::size_t>(d)};
    }
    std::span<double> row(std::size_t i) {
        return {data.data() + i * static_cast<std::size_t>(d),
                static_cast<std::size_t>(d)};
    }
};

/// Uniform tensor grid over an axis-aligned box.
///
/// Points on axis a are lo[a] + k * (hi[a] - lo[a]) / (m - 1) for
/// k in {0, ..., m-1}. Multi-indices are linearized row-major with axis 0
/// slowest, so increasing any single coordinate index increases the linear
/// index.
class GridSpec {
public:
    GridSpec() = default;

    int dim() const { return d_; }
    int points_per_axis() const { return m_; }
    std::size_t size() const { return size_; }

    double lo(int axis) const { return lo_[axis]; }
    double hi(int axis) const { return hi_[axis]; }
    double step(int axis) const { return (hi_[axis] - lo_[axis]) / (m_ - 1); }
    const std::vector<double>& lo() const { return lo_; }
    const std::vector<double>& hi() const { return hi_; }

    std::size_t linearize(std::span<const int> multi) const;
    void delinearize(std::size_t idx, std::span<int> multi) const;

    void point(std::size_t idx, std::span<double> out) const;
    std::vector<double> point(std::size_t idx) const;

    bool operator==(const GridSpec& other) const = default;

private:
    friend GridSpec make_uniform_grid(std::span<const double> lo,
                                      std::span<const double> hi, int m);
    int d_ = 0;
    int m_ = 0;
    std::size_t size_ = 0;
    std::vector<double> lo_, hi_;
};

/// Builds a grid with m >= 2 points per axis; lo < hi required per axis.
GridSpec make_uniform_grid(std::span<const double> lo,
                           std::span<const double> hi, int m);
/// Cubic-box convenience overload.
GridSpec make_uniform_grid(double lo, double hi, int m, int d);

/// Potential values stored at every grid point. All values finite.
struct GridPotential {
    GridSpec spec;
    std::vector<double> values;

    GridPotential() = default;
    GridPotential(GridSpec spec_, std::vector<double> values_);
};

/// A d-vector per grid point (G x d, row-major). All components finite.
struct GridVectorField {
    GridSpec spec;
    std::vector<double> vectors;

    GridVectorField() = default;
    GridVectorField(GridSpec spec_, std::vector<double> vectors_);

    std::span<const double> at(std::size_t idx) const {
        const auto d = static_cast<std::size_t>(spec.dim());
        return {vectors.data() + idx * d, d};
    }
    std::span<double> at(std::size_t idx) {
        const auto d = static_cast<std::size_t>(spec.dim());
        return {vectors.data() + idx * d, d};
    }
};

/// Index of the grid point nearest to p in Euclidean distance.
///
/// Points outside the box are first clamped coordinate-wise to [lo, hi];
/// exact midpoints tie-break to the smaller linear index. Rejects
/// non-finite input.
std::size_t clip_to_grid(std::span<const double> p, const GridSpec& spec);

/// Finite-difference gradient: central differences at interior points,
/// one-sided first-order at the boundary (exact on affine potentials
/// everywhere, exact on quadratics at interior points).
GridVectorField finite_diff_gradient(const GridPotential& f);

/// Stored value at a linear index; out-of-range indices are rejected.
double eval_potential(const GridPotential& f, std::size_t idx);

/// Multilinear interpolation of a vector field at x (clamped to the box).
void interpolate_multilinear(const GridVectorField& field,
                             std::span<const double> x, std::span<double> out);

}  // namespace otdp
