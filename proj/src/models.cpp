#include "otdp/models.hpp"

#include <array>
#include <cmath>
#include <stdexcept>

#include <Eigen/Dense>

#include "otdp/parallel.hpp"

namespace otdp {

void ExperimentModel::validate() const {
    true_params.validate();
    if (n < 1) throw std::invalid_argument("sample count must be at least 1");
    if (box_lo.size() != box_hi.size() ||
        box_lo.size() != static_cast<std::size_t>(true_params.dim())) {
        throw std::invalid_argument("sampling box dimension mismatch");
    }
    for (std::size_t a = 0; a < box_lo.size(); ++a) {
        if (!(box_lo[a] < box_hi[a])) {
            throw std::invalid_argument("sampling box requires lo < hi per axis");
        }
    }
}

void generate_samples(const ExperimentModel& model, const SeededRng& rng,
                      PointSet& x_out, PointSet& y_out) {
    model.validate();
    const int d = model.true_params.dim();
    x_out = PointSet(model.n, d);
    y_out = PointSet(model.n, d);
    SeededRng x_stream = rng.derive(0);
    SeededRng u_stream = rng.derive(1);
    std::vector<double> u(static_cast<std::size_t>(d));
    for (std::size_t i = 0; i < model.n; ++i) {
        auto xr = x_out.row(i);
        for (int a = 0; a < d; ++a) {
            xr[a] = x_stream.uniform(model.box_lo[a], model.box_hi[a]);
        }
        for (int a = 0; a < d; ++a) {
            u[a] = u_stream.uniform(model.box_lo[a], model.box_hi[a]);
        }
        const auto y = attraction_repulsion_gradient(u, model.true_params);
        std::copy(y.begin(), y.end(), y_out.row(i).begin());
    }
}

Dataset generate_dataset(const ExperimentModel& model, const GridSpec& spec,
                         const SeededRng& rng) {
    PointSet x, y;
    generate_samples(model, rng, x, y);
    return Dataset::from_samples(std::move(x), std::move(y), spec);
}

double bump_function(double t) {
    if (std::abs(t) >= 1.0) return 0.0;
    return std::exp(-1.0 / (1.0 - t * t));
}

double bump_function_d1(double t) {
    if (std::abs(t) >= 1.0) return 0.0;
    const double q = 1.0 - t * t;
    return bump_function(t) * (-2.0 * t) / (q * q);
}

double bump_function_d2(double t) {
    if (std::abs(t) >= 1.0) return 0.0;
    const double q = 1.0 - t * t;
    const double q2 = q * q;
    // (B')' with B' = B * (-2t)/q^2.
    return bump_function(t) *
           (4.0 * t * t / (q2 * q2) - 2.0 / q2 - 8.0 * t * t / (q2 * q));
}

double packing_psi(std::span<const double> x, double a) {
    if (!(a > 0.0)) throw std::invalid_argument("bump amplitude must be positive");
    double value = a;
    for (double c : x) {
        value *= bump_function(0.5 * c);
        if (value == 0.0) return 0.0;
    }
    return value;
}

std::vector<double> packing_psi_gradient(std::span<const double> x, double a) {
    if (!(a > 0.0)) throw std::invalid_argument("bump amplitude must be positive");
    const std::size_t d = x.size();
    std::vector<double> b(d), db(d);
    for (std::size_t i = 0; i < d; ++i) {
        b[i] = bump_function(0.5 * x[i]);
        db[i] = 0.5 * bump_function_d1(0.5 * x[i]);
    }
    std::vector<double> grad(d, a);
    for (std::size_t i = 0; i < d; ++i) {
        for (std::size_t j = 0; j < d; ++j) {
            grad[i] *= (i == j) ? db[j] : b[j];
        }
    }
    return grad;
}

std::vector<double> packing_psi_hessian(std::span<const double> x, double a) {
    if (!(a > 0.0)) throw std::invalid_argument("bump amplitude must be positive");
    const std::size_t d = x.size();
    std::vector<double> b(d), db(d), d2b(d);
    for (std::size_t i = 0; i < d; ++i) {
        b[i] = bump_function(0.5 * x[i]);
        db[i] = 0.5 * bump_function_d1(0.5 * x[i]);
        d2b[i] = 0.25 * bump_function_d2(0.5 * x[i]);
    }
    std::vector<double> hess(d * d, a);
    for (std::size_t i = 0; i < d; ++i) {
        for (std::size_t j = 0; j < d; ++j) {
            double& entry = hess[i * d + j];
            for (std::size_t k = 0; k < d; ++k) {
                if (k == i && k == j) {
                    entry *= d2b[k];
                } else if (k == i || k == j) {
                    entry *= db[k];
                } else {
                    entry *= b[k];
                }
            }
        }
    }
    return hess;
}

double packing_psi_hessian_opnorm_sup(int d) {
    if (d < 1 || d > 3) throw std::invalid_argument("packing supports d in {1, 2, 3}");
    // Fixed sampling lattice over the support [-2, 2]^d.
    const int per_axis = d == 1 ? 801 : (d == 2 ? 161 : 41);
    std::vector<double> x(static_cast<std::size_t>(d));
    std::vector<int> idx(static_cast<std::size_t>(d), 0);
    Eigen::MatrixXd h(d, d);
    double sup = 0.0;
    while (true) {
        for (int a = 0; a < d; ++a) {
            x[a] = -2.0 + 4.0 * static_cast<double>(idx[a]) /
                              static_cast<double>(per_axis - 1);
        }
        const auto hess = packing_psi_hessian(x, 1.0);
        for (int i = 0; i < d; ++i) {
            for (int j = 0; j < d; ++j) h(i, j) = hess[i * d + j];
        }
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(h, Eigen::EigenvaluesOnly);
        sup = std::max(sup, eig.eigenvalues().cwiseAbs().maxCoeff());
        int a = d - 1;
        while (a >= 0 && ++idx[a] == per_axis) {
            idx[a] = 0;
            --a;
        }
        if (a < 0) break;
    }
    return sup;
}

double default_packing_amplitude(double h, double alpha, int d) {
    if (!(h > 0.0) || !(h <= 1.0)) throw std::invalid_argument("bandwidth must be in (0, 1]");
    const double opnorm_unit = packing_psi_hessian_opnorm_sup(d);
    const double budget = 0.5;
    const double factor = std::pow(h, alpha - 1.0);
    // Bisect the largest a with a * opnorm_unit * h^(alpha-1) <= budget.
    double lo = 0.0, hi = 1.0;
    while (hi * opnorm_unit * factor <= budget) hi *= 2.0;
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (mid * opnorm_unit * factor <= budget) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return lo;
}

PackingSpec PackingSpec::make(int m, int d, double h, double alpha,
                              std::vector<std::uint8_t> theta, double a) {
    if (m < 1) throw std::invalid_argument("packing grid count must be at least 1");
    if (d < 1 || d > 3) throw std::invalid_argument("packing supports d in {1, 2, 3}");
    if (!(alpha >= 1.0)) throw std::invalid_argument("packing smoothness must be at least 1");
    if (!(h > 0.0) || !(h < 1.0 / (2.0 * (m + 1)))) {
        throw std::invalid_argument("bandwidth must satisfy 0 < h < 1/(2(m+1))");
    }
    PackingSpec spec;
    spec.m = m;
    spec.d = d;
    spec.h = h;
    spec.alpha = alpha;
    spec.a = a > 0.0 ? a : default_packing_amplitude(h, alpha, d);
    std::size_t n = 1;
    for (int i = 0; i < d; ++i) n *= static_cast<std::size_t>(m);
    if (theta.size() != n) {
        throw std::invalid_argument("theta length must equal m^d");
    }
    for (auto bit : theta) {
        if (bit > 1) throw std::invalid_argument("theta entries must be 0 or 1");
    }
    spec.theta = std::move(theta);
    return spec;
}

std::size_t PackingSpec::center_count() const {
    std::size_t n = 1;
    for (int i = 0; i < d; ++i) n *= static_cast<std::size_t>(m);
    return n;
}

std::vector<double> PackingSpec::center(std::size_t i) const {
    if (i >= center_count()) throw std::out_of_range("center index out of range");
    std::vector<double> p(static_cast<std::size_t>(d));
    for (int a = d - 1; a >= 0; --a) {
        const auto k = i % static_cast<std::size_t>(m);
        i /= static_cast<std::size_t>(m);
        p[static_cast<std::size_t>(a)] =
            static_cast<double>(k + 1) / static_cast<double>(m + 1);
    }
    return p;
}

namespace {

// Invokes fn(ball_index, u) for every active bump ball B_inf(p_i, 2h)
// containing x, with u = (x - p_i)/h. Supports are pairwise disjoint when
// h <= 1/(4(m+1)); under the looser constructor bound adjacent balls may
// overlap, in which case every overlapping term is still visited (the
// candidate set per axis has at most two entries since 4h < 2/(m+1)).
template <typename Fn>
void for_each_containing_ball(std::span<const double> x, const PackingSpec& spec,
                              Fn&& fn) {
    const int d = spec.d;
    std::vector<std::array<std::size_t, 2>> axis_ks(static_cast<std::size_t>(d));
    std::vector<int> axis_counts(static_cast<std::size_t>(d), 0);
    for (int a = 0; a < d; ++a) {
        const double spacing = 1.0 / (spec.m + 1);
        const int lo = std::max(1, static_cast<int>(std::ceil((x[a] - 2.0 * spec.h) / spacing)));
        const int hi = std::min(spec.m, static_cast<int>(std::floor((x[a] + 2.0 * spec.h) / spacing)));
        for (int k = lo; k <= hi; ++k) {
            if (std::abs(x[a] - k * spacing) < 2.0 * spec.h) {
                axis_ks[a][static_cast<std::size_t>(axis_counts[a]++)] =
                    static_cast<std::size_t>(k - 1);
            }
        }
        if (axis_counts[a] == 0) return;
    }

    std::vector<int> pick(static_cast<std::size_t>(d), 0);
    std::vector<double> u(static_cast<std::size_t>(d));
    while (true) {
        std::size_t idx = 0;
        for (int a = 0; a < d; ++a) {
            idx = idx * static_cast<std::size_t>(spec.m) +
                  axis_ks[a][static_cast<std::size_t>(pick[a])];
        }
        if (spec.theta[idx]) {
            const auto p = spec.center(idx);
            for (int a = 0; a < d; ++a) u[a] = (x[a] - p[a]) / spec.h;
            fn(idx, std::span<const double>(u));
        }
        int axis = d - 1;
        while (axis >= 0 && ++pick[axis] == axis_counts[axis]) {
            pick[axis] = 0;
            --axis;
        }
        if (axis < 0) break;
    }
}

}  // namespace

double packing_potential(std::span<const double> x, const PackingSpec& spec) {
    if (x.size() != static_cast<std::size_t>(spec.d)) {
        throw std::invalid_argument("point dimension mismatch");
    }
    double quad = 0.0;
    for (double c : x) quad += c * c;
    double value = 0.5 * quad;
    const double scale = std::pow(spec.h, spec.alpha + 1.0);
    for_each_containing_ball(x, spec, [&](std::size_t, std::span<const double> u) {
        value += scale * packing_psi(u, spec.a);
    });
    return value;
}

std::vector<double> packing_potential_gradient(std::span<const double> x,
                                               const PackingSpec& spec) {
    if (x.size() != static_cast<std::size_t>(spec.d)) {
        throw std::invalid_argument("point dimension mismatch");
    }
    std::vector<double> grad(x.begin(), x.end());
    const double scale = std::pow(spec.h, spec.alpha);
    for_each_containing_ball(x, spec, [&](std::size_t, std::span<const double> u) {
        const auto psi_grad = packing_psi_gradient(u, spec.a);
        for (std::size_t a = 0; a < x.size(); ++a) grad[a] += scale * psi_grad[a];
    });
    return grad;
}

double packing_potential_second_derivative_1d(double x, const PackingSpec& spec) {
    if (spec.d != 1) throw std::invalid_argument("only supported for d = 1");
    double value = 1.0;
    const double scale = std::pow(spec.h, spec.alpha - 1.0);
    const double xs[1] = {x};
    for_each_containing_ball(xs, spec, [&](std::size_t, std::span<const double> u) {
        value += scale * packing_psi_hessian(u, spec.a)[0];
    });
    return value;
}

namespace {

void check_quadrature(const PackingSpec& spec, int resolution) {
    if (resolution < 1) throw std::invalid_argument("quadrature resolution must be positive");
    // h must span at least 8 quadrature cells per axis.
    if (spec.h * static_cast<double>(resolution) < 8.0) {
        throw std::invalid_argument("quadrature resolution below bump resolution");
    }
    // The per-ball decomposition is exact only for geometrically disjoint
    // supports (radius 2h against spacing 1/(m+1)).
    if (spec.m > 1 && !(spec.h <= 1.0 / (4.0 * (spec.m + 1)))) {
        throw std::invalid_argument(
            "ball quadrature needs disjoint supports: h <= 1/(4(m+1))");
    }
}

// Midpoint quadrature of fn over the ball B_inf(center, 2h), using the
// same center-relative cell layout for every ball.
template <typename Fn>
double ball_quadrature(const PackingSpec& spec, std::size_t ball, int resolution,
                       Fn&& fn) {
    const auto center = spec.center(ball);
    const double radius = 2.0 * spec.h;
    const int cells = std::max(1, static_cast<int>(std::ceil(
                                      2.0 * radius * static_cast<double>(resolution))));
    const double width = 2.0 * radius / static_cast<double>(cells);
    const int d = spec.d;

    std::size_t total = 1;
    for (int a = 0; a < d; ++a) total *= static_cast<std::size_t>(cells);
    std::vector<double> contributions(total);
    std::vector<double> x(static_cast<std::size_t>(d));
    double cell_volume = 1.0;
    for (int a = 0; a < d; ++a) cell_volume *= width;

    for (std::size_t c = 0; c < total; ++c) {
        std::size_t rest = c;
        for (int a = d - 1; a >= 0; --a) {
            const auto k = rest % static_cast<std::size_t>(cells);
            rest /= static_cast<std::size_t>(cells);
            x[static_cast<std::size_t>(a)] =
                center[static_cast<std::size_t>(a)] - radius +
                (static_cast<double>(k) + 0.5) * width;
        }
        contributions[c] = fn(std::span<const double>(x));
    }
    return cell_volume * pairwise_sum(contributions);
}

}  // namespace

double packing_pairwise_distance(std::span<const std::uint8_t> theta1,
                                 std::span<const std::uint8_t> theta2,
                                 const PackingSpec& spec, int resolution) {
    const std::size_t n = spec.center_count();
    if (theta1.size() != n || theta2.size() != n) {
        throw std::invalid_argument("theta length must equal m^d");
    }
    check_quadrature(spec, resolution);

    // Disjoint supports: the distance decomposes over differing balls, and
    // each ball contributes the identical center-relative integral.
    const double scale = std::pow(spec.h, 2.0 * spec.alpha);
    std::vector<double> per_ball;
    for (std::size_t i = 0; i < n; ++i) {
        if (theta1[i] == theta2[i]) continue;
        per_ball.push_back(ball_quadrature(
            spec, i, resolution, [&](std::span<const double> x) {
                std::vector<double> u(x.size());
                const auto p = spec.center(i);
                for (std::size_t a = 0; a < x.size(); ++a) u[a] = (x[a] - p[a]) / spec.h;
                const auto g = packing_psi_gradient(u, spec.a);
                double norm2 = 0.0;
                for (double c : g) norm2 += c * c;
                return scale * norm2;
            }));
    }
    return pairwise_sum(per_ball);
}

double packing_tv_distance_1d(std::span<const std::uint8_t> theta1,
                              std::span<const std::uint8_t> theta2,
                              const PackingSpec& spec, int resolution) {
    if (spec.d != 1) throw std::invalid_argument("TV quadrature is implemented for d = 1");
    const std::size_t n = spec.center_count();
    if (theta1.size() != n || theta2.size() != n) {
        throw std::invalid_argument("theta length must equal m^1");
    }
    check_quadrature(spec, resolution);

    // Change-of-variables form: on each differing ball exactly one of the
    // two potentials carries the bump, and
    // int |1 - 1/phi''| |phi''| dx = int |phi'' - 1| dx.
    PackingSpec bumped = spec;
    std::fill(bumped.theta.begin(), bumped.theta.end(), std::uint8_t{1});
    std::vector<double> per_ball;
    for (std::size_t i = 0; i < n; ++i) {
        if (theta1[i] == theta2[i]) continue;
        per_ball.push_back(ball_quadrature(
            bumped, i, resolution, [&](std::span<const double> x) {
                const double det = packing_potential_second_derivative_1d(x[0], bumped);
                return std::abs(1.0 - 1.0 / det) * std::abs(det);
            }));
    }
    return 0.5 * pairwise_sum(per_ball);
}

}  // namespace otdp
