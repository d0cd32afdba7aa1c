#include "otdp/candidates.hpp"

#include <cmath>
#include <istream>
#include <ostream>
#include <stdexcept>

#include "json.hpp"

#include "otdp/parallel.hpp"

namespace otdp {

void AttractionRepulsionParams::validate() const {
    if (!(alpha1 >= 0.0) || !(alpha2 >= 0.0)) {
        throw std::invalid_argument("bump amplitudes must be non-negative");
    }
    if (!(sigma1 > 0.0) || !(sigma2 > 0.0)) {
        throw std::invalid_argument("bump widths must be positive");
    }
    if (mu1.size() != mu2.size() || mu1.empty()) {
        throw std::invalid_argument("bump locations must be non-empty and of equal dimension");
    }
}

double gaussian_bump(std::span<const double> x, std::span<const double> mu,
                     double sigma) {
    if (!(sigma > 0.0)) throw std::invalid_argument("bump width must be positive");
    if (x.size() != mu.size()) throw std::invalid_argument("dimension mismatch");
    double r2 = 0.0;
    for (std::size_t a = 0; a < x.size(); ++a) {
        const double d = x[a] - mu[a];
        r2 += d * d;
    }
    return std::exp(-r2 / (2.0 * sigma * sigma));
}

double attraction_repulsion_potential(std::span<const double> x,
                                      const AttractionRepulsionParams& p) {
    double quad = 0.0;
    for (double c : x) quad += c * c;
    return 0.5 * quad + p.alpha1 * gaussian_bump(x, p.mu1, p.sigma1) -
           p.alpha2 * gaussian_bump(x, p.mu2, p.sigma2);
}

std::vector<double> attraction_repulsion_gradient(std::span<const double> x,
                                                  const AttractionRepulsionParams& p) {
    const double g1 = gaussian_bump(x, p.mu1, p.sigma1);
    const double g2 = gaussian_bump(x, p.mu2, p.sigma2);
    std::vector<double> grad(x.size());
    for (std::size_t a = 0; a < x.size(); ++a) {
        grad[a] = x[a] -
                  p.alpha1 * (x[a] - p.mu1[a]) / (p.sigma1 * p.sigma1) * g1 +
                  p.alpha2 * (x[a] - p.mu2[a]) / (p.sigma2 * p.sigma2) * g2;
    }
    return grad;
}

AttractionRepulsionParams sample_random_params(SeededRng& rng, double sigma_loc,
                                               double alpha1, double alpha2,
                                               double sigma1, double sigma2,
                                               int d) {
    if (d < 1) throw std::invalid_argument("dimension must be positive");
    if (sigma_loc < 0.0) throw std::invalid_argument("location spread must be non-negative");
    AttractionRepulsionParams p;
    p.alpha1 = alpha1;
    p.alpha2 = alpha2;
    p.sigma1 = sigma1;
    p.sigma2 = sigma2;
    p.mu1.resize(static_cast<std::size_t>(d));
    p.mu2.resize(static_cast<std::size_t>(d));
    for (auto& c : p.mu1) c = sigma_loc * rng.gaussian();
    for (auto& c : p.mu2) c = sigma_loc * rng.gaussian();
    p.validate();
    return p;
}

GridPotential discretize(const AnalyticPotential& f, const GridSpec& spec) {
    std::vector<double> values(spec.size());
    std::vector<double> x(static_cast<std::size_t>(spec.dim()));
    for (std::size_t i = 0; i < spec.size(); ++i) {
        spec.point(i, x);
        values[i] = f(x);
    }
    return GridPotential(spec, std::move(values));
}

void CandidateFamily::add(GridPotential member, CandidateLabel label) {
    if (!(member.spec == spec)) {
        throw std::invalid_argument("family members must share the family grid");
    }
    members.push_back(std::move(member));
    labels.push_back(std::move(label));
}

void CandidateFamily::validate() const {
    if (members.empty()) throw std::invalid_argument("candidate family must be non-empty");
    if (members.size() != labels.size()) {
        throw std::invalid_argument("family members and labels out of sync");
    }
    for (const auto& m : members) {
        if (!(m.spec == spec)) {
            throw std::invalid_argument("family members must share the family grid");
        }
    }
}

CandidateFamily generate_family(const SeededRng& rng, std::size_t count,
                                const FamilyModelParams& model,
                                const GridSpec& spec, int threads) {
    if (count < 1) throw std::invalid_argument("family size must be at least 1");
    CandidateFamily family;
    family.spec = spec;
    family.members.resize(count);
    family.labels.resize(count);
    parallel_for(count, threads, [&](std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i) {
            SeededRng stream = rng.derive(i);
            const auto params = sample_random_params(
                stream, model.sigma_loc, model.alpha1, model.alpha2, model.sigma1,
                model.sigma2, spec.dim());
            family.members[i] = discretize(
                [&params](std::span<const double> x) {
                    return attraction_repulsion_potential(x, params);
                },
                spec);
            family.labels[i] = CandidateLabel{"attraction_repulsion", params};
        }
    });
    return family;
}

namespace {

nlohmann::json params_to_json(const AttractionRepulsionParams& p) {
    return {{"alpha1", p.alpha1}, {"alpha2", p.alpha2}, {"mu1", p.mu1},
            {"mu2", p.mu2},       {"sigma1", p.sigma1}, {"sigma2", p.sigma2}};
}

AttractionRepulsionParams params_from_json(const nlohmann::json& j) {
    AttractionRepulsionParams p;
    p.alpha1 = j.at("alpha1").get<double>();
    p.alpha2 = j.at("alpha2").get<double>();
    p.mu1 = j.at("mu1").get<std::vector<double>>();
    p.mu2 = j.at("mu2").get<std::vector<double>>();
    p.sigma1 = j.at("sigma1").get<double>();
    p.sigma2 = j.at("sigma2").get<double>();
    p.validate();
    return p;
}

}  // namespace

void save_family(const CandidateFamily& family, std::ostream& os) {
    family.validate();
    nlohmann::json j;
    j["grid"] = {{"lo", family.spec.lo()},
                 {"hi", family.spec.hi()},
                 {"m", family.spec.points_per_axis()}};
    auto& members = j["members"] = nlohmann::json::array();
    for (std::size_t i = 0; i < family.size(); ++i) {
        const auto& label = family.labels[i];
        if (label.kind != "attraction_repulsion" || !label.params) {
            throw std::invalid_argument(
                "only parameterized attraction/repulsion families are serializable");
        }
        members.push_back({{"kind", label.kind}, {"params", params_to_json(*label.params)}});
    }
    os << j.dump(2) << '\n';
}

CandidateFamily load_family(std::istream& is) {
    const auto j = nlohmann::json::parse(is);
    const auto& grid = j.at("grid");
    const auto spec = make_uniform_grid(grid.at("lo").get<std::vector<double>>(),
                                        grid.at("hi").get<std::vector<double>>(),
                                        grid.at("m").get<int>());
    CandidateFamily family;
    family.spec = spec;
    for (const auto& member : j.at("members")) {
        const auto params = params_from_json(member.at("params"));
        family.add(discretize(
                       [&params](std::span<const double> x) {
                           return attraction_repulsion_potential(x, params);
                       },
                       spec),
                   CandidateLabel{member.at("kind").get<std::string>(), params});
    }
    family.validate();
    return family;
}

}  // namespace otdp
