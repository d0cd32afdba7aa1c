#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "otdp/candidates.hpp"
#include "otdp/rng.hpp"
#include "otdp/semidual.hpp"

namespace otdp {

/// Synthetic Gaussian attraction/repulsion experiment: source P is uniform
/// on the box, target Q is the push-forward of P through the gradient of
/// the true potential.
struct ExperimentModel {
    AttractionRepulsionParams true_params;
    std::vector<double> box_lo, box_hi;
    std::size_t n = 0;
    std::uint64_t seed = 0;

    void validate() const;
};

/// X uniform on the box; Y = grad f_true(U) for fresh independent uniform
/// U (the analytic gradient, not the grid one). Indices are cached against
/// `spec`.
Dataset generate_dataset(const ExperimentModel& model, const GridSpec& spec,
                         const SeededRng& rng);

/// Raw sample generation without grid clipping (X and Y as above).
void generate_samples(const ExperimentModel& model, const SeededRng& rng,
                      PointSet& x_out, PointSet& y_out);

/// C-infinity bump: exp(-1/(1-t^2)) on (-1, 1), zero outside.
double bump_function(double t);
double bump_function_d1(double t);
double bump_function_d2(double t);

/// psi(x) = a * prod_i B(x_i / 2); support [-2, 2]^d.
double packing_psi(std::span<const double> x, double a);
std::vector<double> packing_psi_gradient(std::span<const double> x, double a);
/// Row-major d x d Hessian of psi.
std::vector<double> packing_psi_hessian(std::span<const double> x, double a);

/// Sampled sup of the psi Hessian operator norm at unit amplitude.
double packing_psi_hessian_opnorm_sup(int d);

/// Largest amplitude keeping sampled |hess psi|_op * h^(alpha-1) <= 0.5,
/// located by bisection.
double default_packing_amplitude(double h, double alpha, int d);

/// Parameters of the lower-bound packing family
/// phi_theta = 0.5*|x|^2 + h^(alpha+1) sum_i theta_i psi((x - p_i)/h)
/// with bump centers (k_1/(m+1), ..., k_d/(m+1)), k in {1..m}^d.
struct PackingSpec {
    int m = 1;
    int d = 1;
    double h = 0.0;
    double a = 0.0;
    double alpha = 2.0;
    std::vector<std::uint8_t> theta;

    /// a <= 0 requests the default amplitude.
    static PackingSpec make(int m, int d, double h, double alpha,
                            std::vector<std::uint8_t> theta, double a = -1.0);

    std::size_t center_count() const;
    std::vector<double> center(std::size_t i) const;
};

double packing_potential(std::span<const double> x, const PackingSpec& spec);
std::vector<double> packing_potential_gradient(std::span<const double> x,
                                               const PackingSpec& spec);
/// Second derivative of the (d = 1) packing potential.
double packing_potential_second_derivative_1d(double x, const PackingSpec& spec);

/// Midpoint tensor quadrature of the squared map distance
/// int_{[0,1]^d} |grad phi_theta1 - grad phi_theta2|^2 dx, computed per
/// differing bump ball so Hamming additivity is exact. `resolution` is the
/// number of quadrature cells per unit length per axis; h must span at
/// least 8 cells.
double packing_pairwise_distance(std::span<const std::uint8_t> theta1,
                                 std::span<const std::uint8_t> theta2,
                                 const PackingSpec& spec, int resolution);

/// Total variation between the push-forwards of Unif([0,1]) through the
/// two packing gradients (d = 1 only), via the change-of-variables form
/// (1/2) sum over differing balls of int |1 - 1/phi''| * |phi''| dx.
double packing_tv_distance_1d(std::span<const std::uint8_t> theta1,
                              std::span<const std::uint8_t> theta2,
                              const PackingSpec& spec, int resolution);

}  // namespace otdp
