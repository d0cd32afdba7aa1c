#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "otdp/dp.hpp"
#include "otdp/grid.hpp"

namespace otdp {

/// Constants of the admissible-potential class: value bound 2*M^2,
/// gradient bound M, Hessian eigenvalues in [1/M, M]; alpha and R drive
/// the resolution selector.
struct AdmissibilityParams {
    double M;
    double R;
    double alpha;
    int d;

    AdmissibilityParams(double m, double r, double a, int dim);
};

enum class WaveletGenerator { haar };

/// Coefficients ordered by (level j, type g, shift k); length must equal
/// the basis dimension.
using CoeffVector = std::vector<double>;

/// Tensor-product orthonormal wavelet basis on a box, truncated at
/// resolution J. Supports of all basis functions lie inside the box.
///
/// The shipped generator is Haar (smoothness order 0): V_J is then the
/// space of piecewise constants on the dyadic partition with 2^J cells per
/// axis and the dimension is exactly 2^(J*d).
class WaveletBasisSpec {
public:
    static WaveletBasisSpec make(int J, int d, std::vector<double> lo,
                                 std::vector<double> hi,
                                 WaveletGenerator generator = WaveletGenerator::haar);

    int max_level() const { return J_; }
    int dim() const { return d_; }
    std::size_t dimension() const { return entries_.size(); }
    WaveletGenerator generator() const { return generator_; }
    int generator_smoothness() const { return 0; }  // Haar

    const std::vector<double>& lo() const { return lo_; }
    const std::vector<double>& hi() const { return hi_; }
    double box_volume() const;

    /// Recorded constant c with dimension <= c * 2^(J*d); exact for Haar.
    double dimension_bound_constant() const { return 1.0; }

    /// Value of basis function `index` at x.
    double eval(std::size_t index, std::span<const double> x) const;

    /// Value of the expansion sum_i coeffs[i] * basis_i(x).
    double synth(std::span<const double> coeffs, std::span<const double> x) const;

    struct Entry {
        int level;           // j; level 0 with mask 0 is the pure scaling function
        std::uint32_t mask;  // bit a set = mother wavelet on axis a
        std::vector<int> shift;
    };
    const Entry& entry(std::size_t index) const { return entries_[index]; }

private:
    int J_ = 0;
    int d_ = 0;
    std::vector<double> lo_, hi_;
    WaveletGenerator generator_ = WaveletGenerator::haar;
    std::vector<Entry> entries_;
};

/// Exact dimension of the implemented basis at resolution J in dimension d.
std::size_t basis_dimension(int J, int d);

/// Expansion evaluated at every grid point.
GridPotential synthesize(const CoeffVector& coeffs, const WaveletBasisSpec& basis,
                         const GridSpec& grid);

/// Lazy odometer enumeration of coefficient vectors on the per-coordinate
/// delta-grid covering [-b_inf, b_inf]: ceil(2*b_inf/delta) points per
/// coordinate at spacing delta, so every in-ball vector is within delta/2
/// per coordinate of some element. Enumeration refuses to start when the
/// total count exceeds the cap.
class DeltaGridCovering {
public:
    DeltaGridCovering(std::size_t dim, double delta, double b_inf,
                      std::size_t cap = 1'000'000);

    std::size_t count() const { return count_; }
    std::size_t points_per_coord() const { return per_coord_; }
    double log_count() const;

    /// Element at enumeration position i (odometer order, last coordinate
    /// fastest).
    CoeffVector at(std::size_t i) const;

    /// Streams elements in odometer order; returns false when exhausted.
    bool next(CoeffVector& out);
    void reset() { cursor_ = 0; }

private:
    std::size_t dim_;
    double delta_;
    double b_inf_;
    std::size_t per_coord_;
    std::size_t count_;
    std::size_t cursor_ = 0;
};

struct AdmissibilityReport {
    bool pass = true;
    std::string violated;           // "value", "gradient" or "hessian"
    std::size_t witness_index = 0;  // first violating grid point
    double witness_value = 0.0;
};

/// Screens a grid potential against the admissibility bounds using
/// finite-difference gradients (all points) and Hessians (interior
/// points). Requires at least 5 grid points per axis.
AdmissibilityReport admissibility_check(const GridPotential& f,
                                        const AdmissibilityParams& params);

/// Bias/variance bound driving the resolution choice:
/// R^2 2^(-2 J alpha) + J 2^(J(d-2)) ln(n)/n + 1/n + 2^(J d) ln(n eps)/(n eps),
/// all other constants set to one.
double resolution_bound(int J, std::size_t n, double epsilon,
                        const AdmissibilityParams& params);

/// Integer J >= 1 minimizing resolution_bound over J in [1, 30].
/// Requires n >= 2 and n*eps >= 2.
int select_resolution(std::size_t n, const PrivacyBudget& budget,
                      const AdmissibilityParams& params);

/// Exact log-cardinality dim(V_J) * ln(ceil(4 M^2 / delta)) of the
/// implemented covering with coefficient ball radius 2*M^2; checks it
/// against the bound c * 2^(Jd) * ln(c' * 2^(Jd/2)/delta + 1) with
/// recorded constants c = 1, c' = 4*M^2.
double covering_log_cardinality(int J, double delta,
                                const AdmissibilityParams& params);

}  // namespace otdp
