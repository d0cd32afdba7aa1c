#include "otdp/covering.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include <Eigen/Dense>

namespace otdp {

AdmissibilityParams::AdmissibilityParams(double m, double r, double a, int dim)
    : M(m), R(r), alpha(a), d(dim) {
    if (!(m > 2.0)) throw std::invalid_argument("regularity constant M must exceed 2");
    if (!(a > 1.0)) throw std::invalid_argument("smoothness alpha must exceed 1");
    if (dim < 1) throw std::invalid_argument("dimension must be positive");
    // Holder norm of the identity on the reference box [-1, 2]^d:
    // per component sup|x_i| + sup|grad| = 2 + 1.
    if (!(r > 3.0 * dim)) {
        throw std::invalid_argument("Holder budget R must exceed the identity norm 3d");
    }
}

WaveletBasisSpec WaveletBasisSpec::make(int J, int d, std::vector<double> lo,
                                        std::vector<double> hi,
                                        WaveletGenerator generator) {
    if (J < 0) throw std::invalid_argument("resolution J must be non-negative");
    if (d < 1 || d > 16) throw std::invalid_argument("unsupported dimension");
    if (lo.size() != static_cast<std::size_t>(d) || hi.size() != lo.size()) {
        throw std::invalid_argument("box bounds must have length d");
    }
    for (int a = 0; a < d; ++a) {
        if (!(lo[a] < hi[a])) throw std::invalid_argument("box requires lo < hi per axis");
    }
    WaveletBasisSpec basis;
    basis.J_ = J;
    basis.d_ = d;
    basis.lo_ = std::move(lo);
    basis.hi_ = std::move(hi);
    basis.generator_ = generator;

    // Pure scaling function, then per level j < J all mixed father/mother
    // type vectors (mask != 0) over the 2^j shifts per axis.
    basis.entries_.push_back(Entry{0, 0, std::vector<int>(static_cast<std::size_t>(d), 0)});
    for (int j = 0; j < J; ++j) {
        const int shifts = 1 << j;
        const std::uint32_t masks = 1u << d;
        std::vector<int> shift(static_cast<std::size_t>(d), 0);
        for (std::uint32_t mask = 1; mask < masks; ++mask) {
            std::fill(shift.begin(), shift.end(), 0);
            while (true) {
                basis.entries_.push_back(Entry{j, mask, shift});
                int axis = d - 1;
                while (axis >= 0 && ++shift[static_cast<std::size_t>(axis)] == shifts) {
                    shift[static_cast<std::size_t>(axis)] = 0;
                    --axis;
                }
                if (axis < 0) break;
            }
        }
    }
    return basis;
}

double WaveletBasisSpec::box_volume() const {
    double vol = 1.0;
    for (int a = 0; a < d_; ++a) vol *= hi_[a] - lo_[a];
    return vol;
}

double WaveletBasisSpec::eval(std::size_t index, std::span<const double> x) const {
    if (index >= entries_.size()) throw std::out_of_range("basis index out of range");
    if (x.size() != static_cast<std::size_t>(d_)) {
        throw std::invalid_argument("point dimension mismatch");
    }
    const Entry& e = entries_[index];
    const double scale_j = std::pow(2.0, 0.5 * e.level);
    const double last_cell = static_cast<double>((1 << e.level) - 1);
    double value = 1.0;
    for (int a = 0; a < d_; ++a) {
        const double width = hi_[a] - lo_[a];
        const double u = (x[a] - lo_[a]) / width;
        if (u < 0.0 || u > 1.0) return 0.0;
        // Dyadic cells are half-open; the right box edge belongs to the
        // last cell so every point lies in exactly one cell per level.
        const double s = std::ldexp(u, e.level);
        const double cell = std::min(std::floor(s), last_cell);
        if (cell != static_cast<double>(e.shift[static_cast<std::size_t>(a)])) {
            return 0.0;
        }
        const bool mother = (e.mask >> a) & 1u;
        const double w = mother ? (s - cell < 0.5 ? 1.0 : -1.0) : 1.0;
        value *= scale_j * w / std::sqrt(width);
    }
    return value;
}

double WaveletBasisSpec::synth(std::span<const double> coeffs,
                               std::span<const double> x) const {
    if (coeffs.size() != entries_.size()) {
        throw std::invalid_argument("coefficient length must match basis dimension");
    }
    double sum = 0.0;
    for (std::size_t i = 0; i < coeffs.size(); ++i) {
        if (coeffs[i] == 0.0) continue;
        sum += coeffs[i] * eval(i, x);
    }
    return sum;
}

std::size_t basis_dimension(int J, int d) {
    if (J < 0 || d < 1) throw std::invalid_argument("invalid resolution or dimension");
    if (static_cast<std::size_t>(J) * static_cast<std::size_t>(d) > 40) {
        throw std::invalid_argument("basis dimension overflows the supported range");
    }
    return std::size_t{1} << (static_cast<std::size_t>(J) * static_cast<std::size_t>(d));
}

GridPotential synthesize(const CoeffVector& coeffs, const WaveletBasisSpec& basis,
                         const GridSpec& grid) {
    if (coeffs.size() != basis.dimension()) {
        throw std::invalid_argument("coefficient length must match basis dimension");
    }
    if (grid.dim() != basis.dim()) {
        throw std::invalid_argument("grid dimension must match basis dimension");
    }
    std::vector<double> values(grid.size());
    std::vector<double> x(static_cast<std::size_t>(grid.dim()));
    for (std::size_t i = 0; i < grid.size(); ++i) {
        grid.point(i, x);
        values[i] = basis.synth(coeffs, x);
    }
    return GridPotential(grid, std::move(values));
}

DeltaGridCovering::DeltaGridCovering(std::size_t dim, double delta, double b_inf,
                                     std::size_t cap)
    : dim_(dim), delta_(delta), b_inf_(b_inf) {
    if (dim == 0) throw std::invalid_argument("covering dimension must be positive");
    if (!(delta > 0.0)) throw std::invalid_argument("covering step must be positive");
    if (!(b_inf > 0.0)) throw std::invalid_argument("amplitude bound must be positive");
    per_coord_ = static_cast<std::size_t>(std::ceil(2.0 * b_inf / delta));
    if (per_coord_ == 0) per_coord_ = 1;

    double total = std::pow(static_cast<double>(per_coord_), static_cast<double>(dim));
    if (total > static_cast<double>(cap)) {
        throw std::length_error("covering enumeration exceeds the configured cap");
    }
    count_ = 1;
    for (std::size_t a = 0; a < dim; ++a) count_ *= per_coord_;
}

double DeltaGridCovering::log_count() const {
    return static_cast<double>(dim_) * std::log(static_cast<double>(per_coord_));
}

CoeffVector DeltaGridCovering::at(std::size_t i) const {
    if (i >= count_) throw std::out_of_range("covering element index out of range");
    CoeffVector out(dim_);
    // Centered grid: spacing delta, symmetric about 0, covering radius
    // delta/2 once per_coord * delta >= 2 * b_inf.
    const double origin = -0.5 * delta_ * static_cast<double>(per_coord_ - 1);
    for (std::size_t a = dim_; a-- > 0;) {
        const std::size_t digit = i % per_coord_;
        i /= per_coord_;
        out[a] = origin + delta_ * static_cast<double>(digit);
    }
    return out;
}

bool DeltaGridCovering::next(CoeffVector& out) {
    if (cursor_ >= count_) return false;
    out = at(cursor_++);
    return true;
}

AdmissibilityReport admissibility_check(const GridPotential& f,
                                        const AdmissibilityParams& params) {
    const GridSpec& spec = f.spec;
    const int d = spec.dim();
    const int m = spec.points_per_axis();
    if (d != params.d) throw std::invalid_argument("dimension mismatch");
    if (m < 5) {
        throw std::invalid_argument("admissibility screening needs at least 5 points per axis");
    }

    const double value_bound = 2.0 * params.M * params.M;
    AdmissibilityReport report;

    for (std::size_t i = 0; i < spec.size(); ++i) {
        if (std::abs(f.values[i]) > value_bound) {
            return {false, "value", i, f.values[i]};
        }
    }

    const GridVectorField grad = finite_diff_gradient(f);
    for (std::size_t i = 0; i < spec.size(); ++i) {
        double norm2 = 0.0;
        for (double c : grad.at(i)) norm2 += c * c;
        if (std::sqrt(norm2) > params.M) {
            return {false, "gradient", i, std::sqrt(norm2)};
        }
    }

    // Central second differences at interior points.
    std::vector<std::size_t> stride(static_cast<std::size_t>(d), 1);
    for (int a = d - 2; a >= 0; --a) {
        stride[a] = stride[a + 1] * static_cast<std::size_t>(m);
    }
    std::vector<int> multi(static_cast<std::size_t>(d));
    Eigen::MatrixXd hess(d, d);
    for (std::size_t i = 0; i < spec.size(); ++i) {
        spec.delinearize(i, multi);
        bool interior = true;
        for (int a = 0; a < d; ++a) {
            if (multi[a] == 0 || multi[a] == m - 1) {
                interior = false;
                break;
            }
        }
        if (!interior) continue;
        for (int a = 0; a < d; ++a) {
            const double ha = spec.step(a);
            hess(a, a) = (f.values[i + stride[a]] - 2.0 * f.values[i] +
                          f.values[i - stride[a]]) /
                         (ha * ha);
            for (int b = a + 1; b < d; ++b) {
                const double hb = spec.step(b);
                const double cross =
                    (f.values[i + stride[a] + stride[b]] -
                     f.values[i + stride[a] - stride[b]] -
                     f.values[i - stride[a] + stride[b]] +
                     f.values[i - stride[a] - stride[b]]) /
                    (4.0 * ha * hb);
                hess(a, b) = cross;
                hess(b, a) = cross;
            }
        }
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(hess,
                                                           Eigen::EigenvaluesOnly);
        const double lo_eig = eig.eigenvalues().minCoeff();
        const double hi_eig = eig.eigenvalues().maxCoeff();
        if (lo_eig < 1.0 / params.M) return {false, "hessian", i, lo_eig};
        if (hi_eig > params.M) return {false, "hessian", i, hi_eig};
    }
    return report;
}

double resolution_bound(int J, std::size_t n, double epsilon,
                        const AdmissibilityParams& params) {
    if (J < 1) throw std::invalid_argument("resolution J must be at least 1");
    const double nd = static_cast<double>(n);
    const double ne = nd * epsilon;
    const double bias = params.R * params.R * std::pow(2.0, -2.0 * J * params.alpha);
    const double sampling =
        static_cast<double>(J) * std::pow(2.0, J * (params.d - 2.0)) * std::log(nd) / nd;
    const double privacy = std::pow(2.0, J * static_cast<double>(params.d)) *
                           std::log(ne) / ne;
    return bias + sampling + 1.0 / nd + privacy;
}

int select_resolution(std::size_t n, const PrivacyBudget& budget,
                      const AdmissibilityParams& params) {
    if (n < 2) throw std::invalid_argument("need at least 2 samples");
    if (!(static_cast<double>(n) * budget.epsilon >= 2.0)) {
        throw std::invalid_argument("need n * epsilon >= 2");
    }
    int best_j = 1;
    double best = std::numeric_limits<double>::infinity();
    for (int j = 1; j <= 30; ++j) {
        const double value = resolution_bound(j, n, budget.epsilon, params);
        if (value < best) {
            best = value;
            best_j = j;
        }
    }
    return best_j;
}

double covering_log_cardinality(int J, double delta,
                                const AdmissibilityParams& params) {
    if (!(delta > 0.0)) throw std::invalid_argument("covering step must be positive");
    const double b_inf = 2.0 * params.M * params.M;
    const auto dim = static_cast<double>(basis_dimension(J, params.d));
    const double per_coord = std::ceil(2.0 * b_inf / delta);
    const double exact = dim * std::log(std::max(per_coord, 1.0));

    // Recorded constants: c = 1 (Haar dimension is exactly 2^(Jd)),
    // c' = 4 M^2 (so ceil(4M^2/delta) <= c' 2^(Jd/2)/delta + 1).
    const double c_prime = 4.0 * params.M * params.M;
    const double bound =
        std::pow(2.0, J * static_cast<double>(params.d)) *
        std::log(c_prime * std::pow(2.0, 0.5 * J * params.d) / delta + 1.0);
    if (exact > bound + 1e-9) {
        throw std::logic_error("covering log-cardinality exceeded its certified bound");
    }
    return exact;
}

}  // namespace otdp
