#include "otdp/grid.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace otdp {

namespace {

void check_finite(std::span<const double> v, const char* what) {
    for (double x : v) {
        if (!std::isfinite(x)) {
            throw std::invalid_argument(std::string(what) + " must be finite");
        }
    }
}

}  // namespace

GridSpec make_uniform_grid(std::span<const double> lo,
                           std::span<const double> hi, int m) {
    if (lo.size() != hi.size() || lo.empty()) {
        throw std::invalid_argument("grid bounds must be non-empty and of equal length");
    }
    if (lo.size() > 31) {
        throw std::invalid_argument("grid dimension too large");
    }
    if (m < 2) {
        throw std::invalid_argument("grid needs at least 2 points per axis");
    }
    GridSpec g;
    g.d_ = static_cast<int>(lo.size());
    g.m_ = m;
    g.lo_.assign(lo.begin(), lo.end());
    g.hi_.assign(hi.begin(), hi.end());
    std::size_t total = 1;
    for (int a = 0; a < g.d_; ++a) {
        if (!std::isfinite(lo[a]) || !std::isfinite(hi[a]) || !(lo[a] < hi[a])) {
            throw std::invalid_argument("grid requires finite lo < hi per axis");
        }
        if (total > (std::size_t{1} << 31) / static_cast<std::size_t>(m)) {
            throw std::invalid_argument("grid point count too large");
        }
        total *= static_cast<std::size_t>(m);
    }
    g.size_ = total;
    return g;
}

GridSpec make_uniform_grid(double lo, double hi, int m, int d) {
    if (d < 1) throw std::invalid_argument("grid dimension must be positive");
    std::vector<double> los(static_cast<std::size_t>(d), lo);
    std::vector<double> his(static_cast<std::size_t>(d), hi);
    return make_uniform_grid(los, his, m);
}

std::size_t GridSpec::linearize(std::span<const int> multi) const {
    std::size_t idx = 0;
    for (int a = 0; a < d_; ++a) {
        if (multi[a] < 0 || multi[a] >= m_) {
            throw std::out_of_range("multi-index out of range");
        }
        idx = idx * static_cast<std::size_t>(m_) + static_cast<std::size_t>(multi[a]);
    }
    return idx;
}

void GridSpec::delinearize(std::size_t idx, std::span<int> multi) const {
    if (idx >= size_) throw std::out_of_range("linear index out of range");
    for (int a = d_ - 1; a >= 0; --a) {
        multi[a] = static_cast<int>(idx % static_cast<std::size_t>(m_));
        idx /= static_cast<std::size_t>(m_);
    }
}

void GridSpec::point(std::size_t idx, std::span<double> out) const {
    if (idx >= size_) throw std::out_of_range("linear index out of range");
    for (int a = d_ - 1; a >= 0; --a) {
        const int k = static_cast<int>(idx % static_cast<std::size_t>(m_));
        idx /= static_cast<std::size_t>(m_);
        out[a] = lo_[a] + static_cast<double>(k) * step(a);
    }
}

std::vector<double> GridSpec::point(std::size_t idx) const {
    std::vector<double> p(static_cast<std::size_t>(d_));
    point(idx, p);
    return p;
}

GridPotential::GridPotential(GridSpec spec_, std::vector<double> values_)
    : spec(std::move(spec_)), values(std::move(values_)) {
    if (values.size() != spec.size()) {
        throw std::invalid_argument("potential value count must match grid size");
    }
    check_finite(values, "potential values");
}

GridVectorField::GridVectorField(GridSpec spec_, std::vector<double> vectors_)
    : spec(std::move(spec_)), vectors(std::move(vectors_)) {
    if (vectors.size() != spec.size() * static_cast<std::size_t>(spec.dim())) {
        throw std::invalid_argument("vector count must match grid size times dimension");
    }
    check_finite(vectors, "vector field components");
}

std::size_t clip_to_grid(std::span<const double> p, const GridSpec& spec) {
    if (p.size() != static_cast<std::size_t>(spec.dim())) {
        throw std::invalid_argument("point dimension does not match grid");
    }
    check_finite(p, "clip_to_grid input");
    std::size_t idx = 0;
    for (int a = 0; a < spec.dim(); ++a) {
        const double x = std::clamp(p[a], spec.lo(a), spec.hi(a));
        const double t = (x - spec.lo(a)) / spec.step(a);
        // Round half down: exact midpoints snap to the smaller axis index,
        // which is also the smaller linear index (strides are positive).
        double k = std::ceil(t - 0.5);
        k = std::clamp(k, 0.0, static_cast<double>(spec.points_per_axis() - 1));
        idx = idx * static_cast<std::size_t>(spec.points_per_axis()) +
              static_cast<std::size_t>(k);
    }
    return idx;
}

GridVectorField finite_diff_gradient(const GridPotential& f) {
    const GridSpec& spec = f.spec;
    const int d = spec.dim();
    const int m = spec.points_per_axis();
    const std::size_t g = spec.size();
    std::vector<double> vectors(g * static_cast<std::size_t>(d), 0.0);

    // Stride of axis a in the linearization.
    std::vector<std::size_t> stride(static_cast<std::size_t>(d), 1);
    for (int a = d - 2; a >= 0; --a) {
        stride[a] = stride[a + 1] * static_cast<std::size_t>(m);
    }

    std::vector<int> multi(static_cast<std::size_t>(d), 0);
    for (std::size_t i = 0; i < g; ++i) {
        spec.delinearize(i, multi);
        for (int a = 0; a < d; ++a) {
            const double h = spec.step(a);
            const int k = multi[a];
            double deriv;
            if (k == 0) {
                deriv = (f.values[i + stride[a]] - f.values[i]) / h;
            } else if (k == m - 1) {
                deriv = (f.values[i] - f.values[i - stride[a]]) / h;
            } else {
                deriv = (f.values[i + stride[a]] - f.values[i - stride[a]]) / (2.0 * h);
            }
            vectors[i * static_cast<std::size_t>(d) + static_cast<std::size_t>(a)] = deriv;
        }
    }
    return GridVectorField(spec, std::move(vectors));
}

double eval_potential(const GridPotential& f, std::size_t idx) {
    if (idx >= f.values.size()) {
        throw std::out_of_range("potential index out of range");
    }
    return f.values[idx];
}

void interpolate_multilinear(const GridVectorField& field,
                             std::span<const double> x, std::span<double> out) {
    const GridSpec& spec = field.spec;
    const int d = spec.dim();
    if (x.size() != static_cast<std::size_t>(d) ||
        out.size() != static_cast<std::size_t>(d)) {
        throw std::invalid_argument("interpolation point dimension mismatch");
    }
    const int m = spec.points_per_axis();

    // Cell base index and in-cell fraction per axis.
    std::vector<std::size_t> base(static_cast<std::size_t>(d));
    std::vector<double> frac(static_cast<std::size_t>(d));
    for (int a = 0; a < d; ++a) {
        const double t =
            std::clamp((std::clamp(x[a], spec.lo(a), spec.hi(a)) - spec.lo(a)) /
                           spec.step(a),
                       0.0, static_cast<double>(m - 1));
        double cell = std::floor(t);
        if (cell > static_cast<double>(m - 2)) cell = static_cast<double>(m - 2);
        base[static_cast<std::size_t>(a)] = static_cast<std::size_t>(cell);
        frac[static_cast<std::size_t>(a)] = t - cell;
    }

    std::vector<std::size_t> stride(static_cast<std::size_t>(d), 1);
    for (int a = d - 2; a >= 0; --a) {
        stride[a] = stride[a + 1] * static_cast<std::size_t>(m);
    }
    std::size_t base_idx = 0;
    for (int a = 0; a < d; ++a) base_idx += base[a] * stride[a];

    for (auto& v : out) v = 0.0;
    const std::size_t corners = std::size_t{1} << d;
    for (std::size_t c = 0; c < corners; ++c) {
        double w = 1.0;
        std::size_t idx = base_idx;
        for (int a = 0; a < d; ++a) {
            if (c & (std::size_t{1} << a)) {
                w *= frac[a];
                idx += stride[a];
            } else {
                w *= 1.0 - frac[a];
            }
        }
        if (w == 0.0) continue;
        const auto v = field.at(idx);
        for (int a = 0; a < d; ++a) out[a] += w * v[a];
    }
}

}  // namespace otdp
