#pragma once

#include <functional>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "otdp/grid.hpp"
#include "otdp/rng.hpp"

namespace otdp {

/// Parameters of the Gaussian attraction/repulsion potential
/// 0.5*|x|^2 + alpha1 * exp(-|x-mu1|^2 / (2 sigma1^2))
///           - alpha2 * exp(-|x-mu2|^2 / (2 sigma2^2)).
struct AttractionRepulsionParams {
    double alpha1 = 0.0;
    double alpha2 = 0.0;
    std::vector<double> mu1, mu2;
    double sigma1 = 1.0;
    double sigma2 = 1.0;

    void validate() const;
    int dim() const { return static_cast<int>(mu1.size()); }
};

/// exp(-|x - mu|^2 / (2 sigma^2)); value in (0, 1].
double gaussian_bump(std::span<const double> x, std::span<const double> mu,
                     double sigma);

double attraction_repulsion_potential(std::span<const double> x,
                                      const AttractionRepulsionParams& p);

/// Analytic gradient:
/// x - alpha1 (x-mu1)/sigma1^2 exp(...) + alpha2 (x-mu2)/sigma2^2 exp(...).
std::vector<double> attraction_repulsion_gradient(std::span<const double> x,
                                                  const AttractionRepulsionParams& p);

/// Random locations mu1, mu2 ~ N(0, sigma_loc^2 I_d); amplitudes and widths
/// are fixed by the arguments.
AttractionRepulsionParams sample_random_params(SeededRng& rng, double sigma_loc,
                                               double alpha1, double alpha2,
                                               double sigma1, double sigma2,
                                               int d);

using AnalyticPotential = std::function<double(std::span<const double>)>;

/// Pointwise evaluation of an analytic potential at every grid point.
GridPotential discretize(const AnalyticPotential& f, const GridSpec& spec);

struct CandidateLabel {
    std::string kind;  // "attraction_repulsion", "synthesized", ...
    std::optional<AttractionRepulsionParams> params;
};

/// Finite set of grid potentials sharing one grid.
struct CandidateFamily {
    GridSpec spec;
    std::vector<GridPotential> members;
    std::vector<CandidateLabel> labels;

    std::size_t size() const { return members.size(); }
    void add(GridPotential member, CandidateLabel label);
    void validate() const;
};

struct FamilyModelParams {
    double sigma_loc = 0.1;
    double alpha1 = 0.005;
    double alpha2 = 0.005;
    double sigma1 = 0.1;
    double sigma2 = 0.1;
};

/// count independent attraction/repulsion potentials discretized on spec,
/// one derived rng stream per member.
CandidateFamily generate_family(const SeededRng& rng, std::size_t count,
                                const FamilyModelParams& model,
                                const GridSpec& spec, int threads = 0);

/// Parameter-only serialization; grids are regenerated on load.
void save_family(const CandidateFamily& family, std::ostream& os);
CandidateFamily load_family(std::istream& is);

}  // namespace otdp
