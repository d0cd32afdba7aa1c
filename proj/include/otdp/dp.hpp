#pragma once

#include <cstddef>
#include <functional>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "otdp/rng.hpp"
#include "otdp/semidual.hpp"

namespace otdp {

/// Privacy budget for pure epsilon-DP. A non-private run is represented by
/// the absence of a budget (e.g. std::optional at the call site), never by
/// an infinite epsilon.
struct PrivacyBudget {
    double epsilon;
    explicit PrivacyBudget(double eps);
};

/// Draw from scale * standard Laplace via the inverse CDF of a single
/// uniform draw. Rejects scale <= 0.
double sample_laplace(SeededRng& rng, double scale);

/// Expected-maximum bound E max|L_1..L_N| <= 1 + ln N for standard Laplace.
double max_laplace_bound(std::size_t n);

struct NoisyArgminResult {
    std::size_t index = 0;
    std::vector<double> noisy_scores;
    double noise_scale = 0.0;  // 2 * delta / epsilon
    bool tie_broken = false;
};

/// Report-noisy-argmin: returns argmin_i scores[i] + (2 delta / eps) L_i
/// with i.i.d. standard Laplace noise, one derived rng stream per
/// candidate. Exact ties (delta = 0 or float collisions) are broken
/// uniformly at random.
NoisyArgminResult report_noisy_argmin(std::span<const double> scores,
                                      double delta, const PrivacyBudget& budget,
                                      const SeededRng& rng);

/// Randomized index-valued mechanism over datasets.
using IndexMechanism = std::function<std::size_t(const Dataset&, SeededRng)>;

struct DpRatioRow {
    std::size_t index = 0;
    std::size_t count_d = 0;
    std::size_t count_dn = 0;
    double ratio = 0.0;  // forward empirical ratio p_D / p_D'
    double bound = 0.0;  // e^epsilon
    bool pass = false;
};

struct DpRatioReport {
    std::vector<DpRatioRow> rows;
    bool pass = false;
    double epsilon = 0.0;
    std::size_t trials = 0;
    double slack_z = 0.0;

    /// One JSON record per output index: count_D, count_D', ratio, bound, pass.
    void write_ndjson(std::ostream& os) const;
};

/// Empirical check of the epsilon-DP ratio bound on one neighboring pair.
///
/// Runs the mechanism `trials` times on each dataset with disjoint derived
/// rng streams and tests, per output index and in both directions, that the
/// probability ratio is at most e^eps within a z = 3 Wilson-interval slack.
/// Statistical, not formal. Rejects inputs at Hamming distance > 1.
DpRatioReport verify_dp_ratio(const IndexMechanism& mechanism, const Dataset& d,
                              const Dataset& d_neighbor,
                              const PrivacyBudget& budget, std::size_t trials,
                              const SeededRng& rng, std::size_t n_outputs);

}  // namespace otdp
