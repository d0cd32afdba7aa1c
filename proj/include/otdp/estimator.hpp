#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "otdp/candidates.hpp"
#include "otdp/dp.hpp"
#include "otdp/grid.hpp"
#include "otdp/semidual.hpp"

namespace otdp {

/// Pipeline parameters for one fit. A missing budget selects the explicit
/// non-private mode.
struct FitConfig {
    std::optional<PrivacyBudget> budget;
    ClipConfig clip{0.25};
    GridSpec grid;
    std::uint64_t seed = 0;
    int threads = 0;
};

struct PrivacyCertificate {
    bool is_private = false;
    double epsilon = 0.0;
    double delta = 0.0;  // per-query sensitivity 2C/n
    std::string mechanism;
};

/// Outcome of a fit. Only chosen_index and its post-processings
/// (chosen_map, chosen_label) are covered by the privacy certificate;
/// raw_scores and noisy_scores are diagnostics and must not be released.
struct FitResult {
    std::size_t chosen_index = 0;
    std::vector<double> raw_scores;
    std::vector<double> noisy_scores;
    double noise_scale = 0.0;  // 4C/(n eps), 0 when non-private
    GridVectorField chosen_map;
    CandidateLabel chosen_label;
    PrivacyCertificate certificate;
    /// Fraction of clipped objective terms that hit the clamp boundary.
    double clamp_saturation = 0.0;
};

/// Scores every candidate with the clipped empirical semi-dual, selects via
/// report-noisy-argmin at sensitivity 2C/n (noise scale 4C/(n eps)), and
/// returns the finite-difference gradient of the winner.
FitResult fit_private(const Dataset& data, const CandidateFamily& family,
                      const FitConfig& config);

/// Zero-noise baseline: exact argmin of the clipped scores.
FitResult fit_nonprivate(const Dataset& data, const CandidateFamily& family,
                         const FitConfig& config);

inline const GridVectorField& transport_map_of(const FitResult& result) {
    return result.chosen_map;
}

}  // namespace otdp
