#include "otdp/dp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>
#include <stdexcept>

#include "json.hpp"

namespace otdp {

PrivacyBudget::PrivacyBudget(double eps) : epsilon(eps) {
    if (!(eps > 0.0) || !std::isfinite(eps)) {
        throw std::invalid_argument("epsilon must be positive and finite");
    }
}

double sample_laplace(SeededRng& rng, double scale) {
    if (!(scale > 0.0) || !std::isfinite(scale)) {
        throw std::invalid_argument("laplace scale must be positive and finite");
    }
    const double u = rng.uniform();  // strictly inside (0, 1)
    const double l = u < 0.5 ? std::log(2.0 * u) : -std::log(2.0 * (1.0 - u));
    return scale * l;
}

double max_laplace_bound(std::size_t n) {
    if (n < 1) throw std::invalid_argument("need at least one variable");
    return 1.0 + std::log(static_cast<double>(n));
}

NoisyArgminResult report_noisy_argmin(std::span<const double> scores,
                                      double delta, const PrivacyBudget& budget,
                                      const SeededRng& rng) {
    if (scores.empty()) throw std::invalid_argument("scores must be non-empty");
    if (delta < 0.0 || !std::isfinite(delta)) {
        throw std::invalid_argument("sensitivity must be non-negative and finite");
    }

    NoisyArgminResult result;
    result.noise_scale = 2.0 * delta / budget.epsilon;
    result.noisy_scores.assign(scores.begin(), scores.end());
    if (result.noise_scale > 0.0) {
        for (std::size_t i = 0; i < scores.size(); ++i) {
            SeededRng stream = rng.derive(i);
            result.noisy_scores[i] += sample_laplace(stream, result.noise_scale);
        }
    }

    const double best =
        *std::min_element(result.noisy_scores.begin(), result.noisy_scores.end());
    std::vector<std::size_t> argmins;
    for (std::size_t i = 0; i < result.noisy_scores.size(); ++i) {
        if (result.noisy_scores[i] == best) argmins.push_back(i);
    }
    if (argmins.size() == 1) {
        result.index = argmins.front();
    } else {
        SeededRng tie = rng.derive(scores.size());
        result.index = argmins[static_cast<std::size_t>(
            tie.uniform() * static_cast<double>(argmins.size()))];
        result.tie_broken = true;
    }
    return result;
}

namespace {

// Wilson score interval bounds for a binomial proportion.
double wilson_lower(std::size_t count, std::size_t trials, double z) {
    const double n = static_cast<double>(trials);
    const double p = static_cast<double>(count) / n;
    const double z2 = z * z;
    const double center = (p + z2 / (2.0 * n)) / (1.0 + z2 / n);
    const double half = (z / (1.0 + z2 / n)) *
                        std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n));
    return std::max(0.0, center - half);
}

double wilson_upper(std::size_t count, std::size_t trials, double z) {
    const double n = static_cast<double>(trials);
    const double p = static_cast<double>(count) / n;
    const double z2 = z * z;
    const double center = (p + z2 / (2.0 * n)) / (1.0 + z2 / n);
    const double half = (z / (1.0 + z2 / n)) *
                        std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n));
    return std::min(1.0, center + half);
}

}  // namespace

DpRatioReport verify_dp_ratio(const IndexMechanism& mechanism, const Dataset& d,
                              const Dataset& d_neighbor,
                              const PrivacyBudget& budget, std::size_t trials,
                              const SeededRng& rng, std::size_t n_outputs) {
    if (trials == 0) throw std::invalid_argument("need at least one trial");
    if (n_outputs == 0) throw std::invalid_argument("need at least one output index");
    if (dataset_hamming(d, d_neighbor) > 1) {
        throw std::invalid_argument("datasets are not neighbors (Hamming distance > 1)");
    }

    std::vector<std::size_t> count_d(n_outputs, 0), count_dn(n_outputs, 0);
    for (std::size_t t = 0; t < trials; ++t) {
        const std::size_t i = mechanism(d, rng.derive(2 * t));
        const std::size_t j = mechanism(d_neighbor, rng.derive(2 * t + 1));
        if (i >= n_outputs || j >= n_outputs) {
            throw std::out_of_range("mechanism returned an index outside [0, n_outputs)");
        }
        ++count_d[i];
        ++count_dn[j];
    }

    const double z = 3.0;
    DpRatioReport report;
    report.epsilon = budget.epsilon;
    report.trials = trials;
    report.slack_z = z;
    const double bound = std::exp(budget.epsilon);
    report.pass = true;
    for (std::size_t i = 0; i < n_outputs; ++i) {
        DpRatioRow row;
        row.index = i;
        row.count_d = count_d[i];
        row.count_dn = count_dn[i];
        row.bound = bound;
        const double p = static_cast<double>(count_d[i]) / static_cast<double>(trials);
        const double q = static_cast<double>(count_dn[i]) / static_cast<double>(trials);
        row.ratio = q > 0.0 ? p / q
                            : (p > 0.0 ? std::numeric_limits<double>::infinity() : 1.0);
        // Both directions: the ratio test must hold for (D, D') and (D', D).
        const bool forward =
            wilson_lower(count_d[i], trials, z) <= bound * wilson_upper(count_dn[i], trials, z);
        const bool backward =
            wilson_lower(count_dn[i], trials, z) <= bound * wilson_upper(count_d[i], trials, z);
        row.pass = forward && backward;
        report.pass = report.pass && row.pass;
        report.rows.push_back(row);
    }
    return report;
}

void DpRatioReport::write_ndjson(std::ostream& os) const {
    for (const auto& row : rows) {
        nlohmann::json j{{"index", row.index},
                         {"count_D", row.count_d},
                         {"count_Dn", row.count_dn},
                         {"ratio", std::isfinite(row.ratio) ? nlohmann::json(row.ratio)
                                                            : nlohmann::json("inf")},
                         {"bound", row.bound},
                         {"pass", row.pass}};
        os << j.dump() << '\n';
    }
}

}  // namespace otdp
