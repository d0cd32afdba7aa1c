#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "otdp/candidates.hpp"
#include "otdp/grid.hpp"

namespace otdp {

/// Thrown on malformed configuration (unknown keys, bad values).
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Resolved run configuration: defaults, overlaid with the config file,
/// overlaid with OTDP_<SECTION>_<KEY> environment overrides. Unknown keys
/// are rejected. The defaults mirror the full-scale experiment (64^2 grid
/// on [-1/2,1/2]^2, eps = 1, n = 200000, T = 2000, C = 0.25).
class RunConfig {
public:
    /// Defaults only.
    RunConfig();

    static RunConfig load(const std::string& path);
    static RunConfig from_json(const nlohmann::json& file_config);

    /// Applies OTDP_* environment overrides; called by load()/from_json().
    void apply_env_overrides();

    const nlohmann::json& json() const { return resolved_; }

    // Typed views.
    GridSpec grid() const;
    FamilyModelParams family_model() const;
    std::size_t family_size() const;
    bool family_includes_true() const;
    double epsilon() const;
    double clip_c() const;
    std::size_t n() const;
    std::uint64_t seed() const;
    int threads() const;
    std::string output_dir() const;

    void set_seed(std::uint64_t seed);
    void set_threads(int threads);
    void set_output_dir(const std::string& dir);

    double get_double(const std::string& section, const std::string& key) const;
    std::int64_t get_int(const std::string& section, const std::string& key) const;
    std::string get_string(const std::string& section, const std::string& key) const;
    std::vector<double> get_doubles(const std::string& section,
                                    const std::string& key) const;
    std::vector<std::int64_t> get_ints(const std::string& section,
                                       const std::string& key) const;

private:
    nlohmann::json resolved_;
};

}  // namespace otdp
