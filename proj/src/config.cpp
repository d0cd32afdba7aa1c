#include "otdp/config.hpp"

#include <cctype>
#include <cstdlib>
#include <fstream>

extern char** environ;

namespace otdp {

namespace {

nlohmann::json default_config() {
    return nlohmann::json{
        {"grid", {{"lo", -0.5}, {"hi", 0.5}, {"m", 64}, {"d", 2}}},
        {"model",
         {{"alpha1", 0.005},
          {"alpha2", 0.005},
          {"sigma", 0.1},
          {"sigma1", 0.1},
          {"sigma2", 0.1}}},
        {"family", {{"T", 2000}, {"mode", "decoys-only"}}},
        {"privacy", {{"epsilon", 1.0}, {"C", 0.25}}},
        {"data", {{"n", 200000}, {"seed", 42}}},
        {"sweep",
         {{"n_values", nlohmann::json::array({2000, 8000, 32000})},
          {"epsilon_values", nlohmann::json::array({1.0})},
          {"seeds", nlohmann::json::array({1, 2, 3, 4, 5})},
          {"n_mc", 20000}}},
        {"verify_dp",
         {{"n", 10},
          {"candidates", 3},
          {"pairs", 50},
          {"trials", 100000},
          {"noise_factor", 1.0}}},
        {"packing",
         {{"m", 2},
          {"d", 1},
          {"alpha", 2.0},
          {"amplitude", 0.0},
          {"h_values", nlohmann::json::array({0.04, 0.02, 0.01})},
          {"resolution", 0}}},
        {"covering",
         {{"J", 1},
          {"d", 1},
          {"M", 3.0},
          {"R", 10.0},
          {"alpha", 2.0},
          {"delta", 0.5},
          {"cap", 1000000},
          {"screen_m", 9},
          {"screen_limit", 5000}}},
        {"kde", {{"bandwidth", 0.0}}},
        {"output", {{"dir", "."}}},
        {"threads", 0},
    };
}

void merge_checked(nlohmann::json& base, const nlohmann::json& overlay,
                   const std::string& path) {
    if (overlay.is_null()) return;  // empty config, keep defaults
    if (!overlay.is_object()) {
        throw ConfigError("config section '" + path + "' must be an object");
    }
    for (const auto& [key, value] : overlay.items()) {
        const std::string where = path.empty() ? key : path + "." + key;
        if (!base.contains(key)) {
            throw ConfigError("unknown config key '" + where + "'");
        }
        if (base[key].is_object()) {
            merge_checked(base[key], value, where);
        } else {
            if (base[key].is_array() != value.is_array()) {
                throw ConfigError("config key '" + where + "' has the wrong shape");
            }
            base[key] = value;
        }
    }
}

std::string to_lower(std::string s) {
    for (char& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return s;
}

}  // namespace

RunConfig::RunConfig() : resolved_(default_config()) {}

RunConfig RunConfig::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw std::ios_base::failure("cannot open config file: " + path);
    }
    nlohmann::json file_config;
    try {
        in >> file_config;
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError("config file is not valid JSON: " + std::string(e.what()));
    }
    return from_json(file_config);
}

RunConfig RunConfig::from_json(const nlohmann::json& file_config) {
    RunConfig config;
    merge_checked(config.resolved_, file_config, "");
    config.apply_env_overrides();
    return config;
}

void RunConfig::apply_env_overrides() {
    // OTDP_<SECTION>_<KEY>=<json or literal>; e.g. OTDP_PRIVACY_EPSILON=0.5,
    // OTDP_SWEEP_N_VALUES=[1000,2000]. Key names may contain underscores;
    // the first segment selects the section.
    for (char** env = environ; env != nullptr && *env != nullptr; ++env) {
        const std::string entry(*env);
        if (entry.rfind("OTDP_", 0) != 0) continue;
        const auto eq = entry.find('=');
        if (eq == std::string::npos) continue;
        const std::string name = entry.substr(5, eq - 5);
        const std::string value = entry.substr(eq + 1);

        const auto sep = name.find('_');
        std::string section = to_lower(sep == std::string::npos ? name : name.substr(0, sep));
        std::string key = sep == std::string::npos ? "" : to_lower(name.substr(sep + 1));

        nlohmann::json* slot = nullptr;
        if (key.empty()) {
            if (resolved_.contains(section) && !resolved_[section].is_object()) {
                slot = &resolved_[section];
            }
        } else if (resolved_.contains(section) && resolved_[section].is_object() &&
                   resolved_[section].contains(key)) {
            slot = &resolved_[section][key];
        }
        if (slot == nullptr) {
            throw ConfigError("environment override OTDP_" + name +
                              " does not match any config key");
        }
        nlohmann::json parsed = nlohmann::json::parse(value, nullptr, false);
        if (parsed.is_discarded()) parsed = value;  // plain string
        if (slot->is_array() != parsed.is_array()) {
            throw ConfigError("environment override OTDP_" + name + " has the wrong shape");
        }
        *slot = parsed;
    }
}

namespace {

GridSpec grid_from(const nlohmann::json& g) {
    return make_uniform_grid(g.at("lo").get<double>(), g.at("hi").get<double>(),
                             g.at("m").get<int>(), g.at("d").get<int>());
}

}  // namespace

GridSpec RunConfig::grid() const {
    try {
        return grid_from(resolved_.at("grid"));
    } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string("invalid grid config: ") + e.what());
    }
}

FamilyModelParams RunConfig::family_model() const {
    const auto& m = resolved_.at("model");
    FamilyModelParams params;
    params.sigma_loc = m.at("sigma").get<double>();
    params.alpha1 = m.at("alpha1").get<double>();
    params.alpha2 = m.at("alpha2").get<double>();
    params.sigma1 = m.at("sigma1").get<double>();
    params.sigma2 = m.at("sigma2").get<double>();
    if (!(params.sigma1 > 0.0) || !(params.sigma2 > 0.0) || params.sigma_loc < 0.0 ||
        params.alpha1 < 0.0 || params.alpha2 < 0.0) {
        throw ConfigError("invalid model parameters");
    }
    return params;
}

std::size_t RunConfig::family_size() const {
    const auto t = resolved_.at("family").at("T").get<std::int64_t>();
    if (t < 1) throw ConfigError("family.T must be at least 1");
    return static_cast<std::size_t>(t);
}

bool RunConfig::family_includes_true() const {
    const auto mode = resolved_.at("family").at("mode").get<std::string>();
    if (mode == "include-true") return true;
    if (mode == "decoys-only") return false;
    throw ConfigError("family.mode must be 'include-true' or 'decoys-only'");
}

double RunConfig::epsilon() const {
    const auto eps = resolved_.at("privacy").at("epsilon").get<double>();
    if (!(eps > 0.0)) throw ConfigError("privacy.epsilon must be positive");
    return eps;
}

double RunConfig::clip_c() const {
    const auto c = resolved_.at("privacy").at("C").get<double>();
    if (!(c > 0.0)) throw ConfigError("privacy.C must be positive");
    return c;
}

std::size_t RunConfig::n() const {
    const auto n = resolved_.at("data").at("n").get<std::int64_t>();
    if (n < 1) throw ConfigError("data.n must be at least 1");
    return static_cast<std::size_t>(n);
}

std::uint64_t RunConfig::seed() const {
    return resolved_.at("data").at("seed").get<std::uint64_t>();
}

int RunConfig::threads() const { return resolved_.at("threads").get<int>(); }

std::string RunConfig::output_dir() const {
    return resolved_.at("output").at("dir").get<std::string>();
}

void RunConfig::set_seed(std::uint64_t seed) { resolved_["data"]["seed"] = seed; }

void RunConfig::set_threads(int threads) { resolved_["threads"] = threads; }

void RunConfig::set_output_dir(const std::string& dir) {
    resolved_["output"]["dir"] = dir;
}

double RunConfig::get_double(const std::string& section, const std::string& key) const {
    return resolved_.at(section).at(key).get<double>();
}

std::int64_t RunConfig::get_int(const std::string& section, const std::string& key) const {
    return resolved_.at(section).at(key).get<std::int64_t>();
}

std::string RunConfig::get_string(const std::string& section,
                                  const std::string& key) const {
    return resolved_.at(section).at(key).get<std::string>();
}

std::vector<double> RunConfig::get_doubles(const std::string& section,
                                           const std::string& key) const {
    return resolved_.at(section).at(key).get<std::vector<double>>();
}

std::vector<std::int64_t> RunConfig::get_ints(const std::string& section,
                                              const std::string& key) const {
    return resolved_.at(section).at(key).get<std::vector<std::int64_t>>();
}

}  // namespace otdp
