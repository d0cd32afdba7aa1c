#include "otdp/semidual.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "otdp/parallel.hpp"

namespace otdp {

ClipConfig::ClipConfig(double c) : C(c) {
    if (!(c > 0.0) || !std::isfinite(c)) {
        throw std::invalid_argument("clipping constant must be positive and finite");
    }
}

Dataset Dataset::from_samples(PointSet x, PointSet y, const GridSpec& spec) {
    if (x.n != y.n || x.n == 0) {
        throw std::invalid_argument("dataset needs equally many source and target samples, at least one");
    }
    if (x.d != spec.dim() || y.d != spec.dim()) {
        throw std::invalid_argument("sample dimension does not match grid");
    }
    Dataset data;
    data.spec_ = spec;
    data.x_ = std::move(x);
    data.y_ = std::move(y);
    data.x_idx_.resize(data.x_.n);
    data.y_idx_.resize(data.y_.n);
    for (std::size_t i = 0; i < data.x_.n; ++i) {
        data.x_idx_[i] = static_cast<std::uint32_t>(clip_to_grid(data.x_.row(i), spec));
        data.y_idx_[i] = static_cast<std::uint32_t>(clip_to_grid(data.y_.row(i), spec));
    }
    return data;
}

Dataset Dataset::with_replaced_x(std::size_t i, std::span<const double> p) const {
    if (i >= x_.n) throw std::out_of_range("record index out of range");
    Dataset out = *this;
    std::copy(p.begin(), p.end(), out.x_.row(i).begin());
    out.x_idx_[i] = static_cast<std::uint32_t>(clip_to_grid(p, spec_));
    return out;
}

Dataset Dataset::with_replaced_y(std::size_t i, std::span<const double> p) const {
    if (i >= y_.n) throw std::out_of_range("record index out of range");
    Dataset out = *this;
    std::copy(p.begin(), p.end(), out.y_.row(i).begin());
    out.y_idx_[i] = static_cast<std::uint32_t>(clip_to_grid(p, spec_));
    return out;
}

std::size_t dataset_hamming(const Dataset& a, const Dataset& b) {
    if (a.size() != b.size() || a.dim() != b.dim()) {
        throw std::invalid_argument("datasets must have equal shape");
    }
    std::size_t distance = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const auto ax = a.x(i), bx = b.x(i);
        const auto ay = a.y(i), by = b.y(i);
        if (!std::equal(ax.begin(), ax.end(), bx.begin())) ++distance;
        if (!std::equal(ay.begin(), ay.end(), by.begin())) ++distance;
    }
    return distance;
}

double fenchel_grid_transform(const GridPotential& f, std::span<const double> y) {
    const GridSpec& spec = f.spec;
    const int d = spec.dim();
    if (y.size() != static_cast<std::size_t>(d)) {
        throw std::invalid_argument("point dimension does not match grid");
    }
    for (double c : y) {
        if (!std::isfinite(c)) throw std::invalid_argument("fenchel argument must be finite");
    }
    double best = -std::numeric_limits<double>::infinity();
    std::vector<double> x(static_cast<std::size_t>(d));
    for (std::size_t i = 0; i < spec.size(); ++i) {
        spec.point(i, x);
        double dot = 0.0;
        for (int a = 0; a < d; ++a) dot += x[a] * y[a];
        best = std::max(best, dot - f.values[i]);
    }
    return best;
}

GridPotential fenchel_transform_all(const GridPotential& f, int threads) {
    const GridSpec& spec = f.spec;
    std::vector<double> out(spec.size());
    parallel_for(spec.size(), threads, [&](std::size_t begin, std::size_t end) {
        std::vector<double> y(static_cast<std::size_t>(spec.dim()));
        for (std::size_t j = begin; j < end; ++j) {
            spec.point(j, y);
            out[j] = fenchel_grid_transform(f, y);
        }
    });
    return GridPotential(spec, std::move(out));
}

namespace {

// Mean of g over the cached indices, with f* values computed once per
// distinct grid index.
template <typename Clamp>
double semidual_terms(const GridPotential& f, const Dataset& data, Clamp clamp) {
    constexpr double kUnset = std::numeric_limits<double>::quiet_NaN();
    const std::size_t n = data.size();

    double x_sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        x_sum += clamp(f.values[data.x_index(i)]);
    }

    std::vector<double> fstar_cache(f.spec.size(), kUnset);
    std::vector<double> y(static_cast<std::size_t>(f.spec.dim()));
    double y_sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const std::uint32_t idx = data.y_index(i);
        if (std::isnan(fstar_cache[idx])) {
            f.spec.point(idx, y);
            fstar_cache[idx] = fenchel_grid_transform(f, y);
        }
        y_sum += clamp(fstar_cache[idx]);
    }
    return x_sum / static_cast<double>(n) + y_sum / static_cast<double>(n);
}

}  // namespace

double empirical_semidual_clipped(const GridPotential& f, const Dataset& data,
                                  const ClipConfig& clip) {
    return empirical_semidual_clipped_detail(f, data, clip).value;
}

ClippedScore empirical_semidual_clipped_detail(const GridPotential& f,
                                               const Dataset& data,
                                               const ClipConfig& clip) {
    if (!(f.spec == data.grid())) {
        throw std::invalid_argument("potential and dataset use different grids");
    }
    const double c = clip.C;
    ClippedScore out;
    std::size_t saturated = 0;
    out.value = semidual_terms(f, data, [c, &saturated](double v) {
        if (std::abs(v) >= c) ++saturated;
        return std::clamp(v, -c, c);
    });
    out.saturated_terms = saturated;
    return out;
}

double empirical_semidual_unclipped(const GridPotential& f, const Dataset& data) {
    if (!(f.spec == data.grid())) {
        throw std::invalid_argument("potential and dataset use different grids");
    }
    return semidual_terms(f, data, [](double v) { return v; });
}

double sensitivity_clipped(std::size_t n, const ClipConfig& clip) {
    if (n < 1) throw std::invalid_argument("sample count must be at least 1");
    return 2.0 * clip.C / static_cast<double>(n);
}

double sensitivity_theoretical(double f_sup, double domain_radius, std::size_t n) {
    if (n < 1) throw std::invalid_argument("sample count must be at least 1");
    if (f_sup < 0.0 || domain_radius < 0.0) {
        throw std::invalid_argument("sup norm and domain radius must be non-negative");
    }
    return std::max(2.0 * f_sup, 2.0 * domain_radius * domain_radius) /
           static_cast<double>(n);
}

}  // namespace otdp
