#include "otdp/estimator.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "otdp/parallel.hpp"

namespace otdp {

namespace {

void check_inputs(const Dataset& data, const CandidateFamily& family,
                  const FitConfig& config) {
    family.validate();
    if (!(family.spec == config.grid) || !(data.grid() == config.grid)) {
        throw std::invalid_argument("dataset, family and config must share one grid");
    }
}

// Clipped scores for all candidates plus the overall clamp saturation rate.
std::vector<double> score_all(const Dataset& data, const CandidateFamily& family,
                              const FitConfig& config, double& saturation) {
    std::vector<double> scores(family.size());
    std::vector<std::size_t> saturated(family.size(), 0);
    parallel_for(family.size(), config.threads, [&](std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i) {
            const auto detail =
                empirical_semidual_clipped_detail(family.members[i], data, config.clip);
            scores[i] = detail.value;
            saturated[i] = detail.saturated_terms;
        }
    });
    std::size_t total_hits = 0;
    for (auto h : saturated) total_hits += h;
    saturation = static_cast<double>(total_hits) /
                 (2.0 * static_cast<double>(data.size()) * static_cast<double>(family.size()));
    return scores;
}

FitResult finish(const CandidateFamily& family, std::vector<double> raw_scores,
                 NoisyArgminResult selection, PrivacyCertificate certificate,
                 double saturation) {
    FitResult result;
    result.chosen_index = selection.index;
    result.raw_scores = std::move(raw_scores);
    result.noisy_scores = std::move(selection.noisy_scores);
    result.noise_scale = selection.noise_scale;
    // The released map depends on the data only through the chosen index.
    result.chosen_map = finite_diff_gradient(family.members[selection.index]);
    result.chosen_label = family.labels[selection.index];
    result.certificate = std::move(certificate);
    result.clamp_saturation = saturation;
    return result;
}

}  // namespace

FitResult fit_private(const Dataset& data, const CandidateFamily& family,
                      const FitConfig& config) {
    check_inputs(data, family, config);
    if (!config.budget) {
        throw std::invalid_argument("fit_private requires a privacy budget");
    }
    double saturation = 0.0;
    auto scores = score_all(data, family, config, saturation);

    const double delta = sensitivity_clipped(data.size(), config.clip);
    SeededRng rng(config.seed, 0x70726976);  // dedicated mechanism stream
    auto selection = report_noisy_argmin(scores, delta, *config.budget, rng);

    PrivacyCertificate cert;
    cert.is_private = true;
    cert.epsilon = config.budget->epsilon;
    cert.delta = delta;
    cert.mechanism = "report_noisy_argmin_laplace";
    return finish(family, std::move(scores), std::move(selection),
                  std::move(cert), saturation);
}

FitResult fit_nonprivate(const Dataset& data, const CandidateFamily& family,
                         const FitConfig& config) {
    check_inputs(data, family, config);
    double saturation = 0.0;
    auto scores = score_all(data, family, config, saturation);

    // Zero noise: exact argmin, ties broken uniformly by the same rule as
    // the mechanism.
    SeededRng rng(config.seed, 0x70726976);
    auto selection = report_noisy_argmin(scores, 0.0, PrivacyBudget(1.0), rng);
    selection.noise_scale = 0.0;

    PrivacyCertificate cert;
    cert.is_private = false;
    cert.epsilon = 0.0;
    cert.delta = sensitivity_clipped(data.size(), config.clip);
    cert.mechanism = "exact_argmin";
    return finish(family, std::move(scores), std::move(selection),
                  std::move(cert), saturation);
}

}  // namespace otdp
