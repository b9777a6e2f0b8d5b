#include "fresco/config.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace fresco::cli {

std::vector<double> GridSpec::values() const {
    if (count < 1) throw std::invalid_argument("grid count must be positive");
    std::vector<double> v(count);
    if (count == 1) {
        v[0] = min;
        return v;
    }
    for (int i = 0; i < count; ++i) v[i] = min + (max - min) * i / (count - 1);
    return v;
}

void RunConfig::validate() const {
    if (model == ModelKind::RF)
        rf.validate();
    else
        cavity.validate();
    if (filter_gamma <= 0.0) throw std::invalid_argument("filter_gamma must be positive");
    if (homodyne_fraction < 0.0 || homodyne_fraction > 1.0)
        throw std::invalid_argument("homodyne_F must lie in [0,1]");
    if (!(grid1.min <= grid1.max) || !(grid2.min <= grid2.max))
        throw std::invalid_argument("grid bounds must be finite and ascending");
    if (!std::isfinite(grid1.min) || !std::isfinite(grid1.max) || !std::isfinite(grid2.min) ||
        !std::isfinite(grid2.max))
        throw std::invalid_argument("grid bounds must be finite and ascending");
    if (tau_max <= 0.0 || tau_count < 2) throw std::invalid_argument("invalid tau grid");
    if (workers < 0) throw std::invalid_argument("workers must be non-negative");
}

Command parse_command(const std::string& name) {
    if (name == "spectrum") return Command::Spectrum;
    if (name == "g2map") return Command::G2Map;
    if (name == "g2tau") return Command::G2Tau;
    if (name == "decompose") return Command::Decompose;
    if (name == "quantifiers") return Command::Quantifiers;
    if (name == "gaussian-check") return Command::GaussianCheck;
    throw std::invalid_argument("unknown command: " + name);
}

GridSpec parse_grid_spec(const std::string& text) {
    GridSpec g;
    std::istringstream is(text);
    std::string part;
    std::vector<std::string> parts;
    while (std::getline(is, part, ':')) parts.push_back(part);
    if (parts.size() != 3) throw std::invalid_argument("grid spec must be min:max:count");
    g.min = std::stod(parts[0]);
    g.max = std::stod(parts[1]);
    g.count = std::stoi(parts[2]);
    return g;
}

namespace {

void apply_key(RunConfig& c, const std::string& key, const std::string& value,
               const std::string& where) {
    auto num = [&]() { return std::stod(value); };
    auto integer = [&]() { return std::stoi(value); };
    try {
        if (key == "model") {
            if (value == "rf")
                c.model = ModelKind::RF;
            else if (value == "cavity")
                c.model = ModelKind::Cavity;
            else
                throw std::invalid_argument("model must be rf or cavity");
        } else if (key == "delta_sigma")
            c.rf.delta_sigma = num();
        else if (key == "omega_sigma")
            c.rf.omega_sigma = num();
        else if (key == "gamma_sigma")
            c.rf.gamma_sigma = num();
        else if (key == "delta_a")
            c.cavity.delta_a = num();
        else if (key == "lambda")
            c.cavity.lambda = num();
        else if (key == "gamma_a")
            c.cavity.gamma_a = num();
        else if (key == "omega_a")
            c.cavity.omega_a = num();
        else if (key == "theta_drive")
            c.cavity.theta_drive = num();
        else if (key == "n_max")
            c.cavity.n_max = integer();
        else if (key == "filter_gamma")
            c.filter_gamma = num();
        else if (key == "epsilon")
            c.epsilon = num();
        else if (key == "homodyne_F")
            c.homodyne_fraction = num();
        else if (key == "grid1")
            c.grid1 = parse_grid_spec(value);
        else if (key == "grid2")
            c.grid2 = parse_grid_spec(value);
        else if (key == "grid_units") {
            if (value == "omega")
                c.grid_in_omega = true;
            else if (value == "varpi")
                c.grid_in_omega = false;
            else
                throw std::invalid_argument("grid_units must be varpi or omega");
        } else if (key == "tau_max")
            c.tau_max = num();
        else if (key == "tau_count")
            c.tau_count = integer();
        else if (key == "sensor_varpi1")
            c.sensor_varpi1 = num();
        else if (key == "sensor_varpi2")
            c.sensor_varpi2 = num();
        else if (key == "gaussian_draws")
            c.gaussian_draws = integer();
        else if (key == "gaussian_epsilon")
            c.gaussian_epsilon = num();
        else if (key == "gaussian_nmax")
            c.gaussian_nmax = integer();
        else if (key == "gaussian_seed")
            c.gaussian_seed = static_cast<unsigned long>(std::stoul(value));
        else if (key == "out")
            c.out_path = value;
        else if (key == "workers")
            c.workers = integer();
        else
            throw std::invalid_argument("unknown key");
    } catch (const std::invalid_argument& e) {
        throw std::invalid_argument(where + ": key '" + key + "': " + e.what());
    } catch (const std::exception&) {
        throw std::invalid_argument(where + ": key '" + key + "': malformed value '" + value + "'");
    }
}

std::pair<std::string, std::string> split_kv(const std::string& line, const std::string& where) {
    const auto eq = line.find('=');
    if (eq == std::string::npos)
        throw std::invalid_argument(where + ": expected key=value, got '" + line + "'");
    auto trim = [](std::string s) {
        const auto b = s.find_first_not_of(" \t");
        const auto e = s.find_last_not_of(" \t");
        return b == std::string::npos ? std::string{} : s.substr(b, e - b + 1);
    };
    return {trim(line.substr(0, eq)), trim(line.substr(eq + 1))};
}

}  // namespace

RunConfig parse_config(Command command, const std::optional<std::string>& config_path,
                       const std::vector<std::string>& overrides) {
    RunConfig c;
    c.command = command;

    if (config_path) {
        std::ifstream in(*config_path);
        if (!in) throw std::invalid_argument("cannot open config file: " + *config_path);
        std::string line;
        int lineno = 0;
        while (std::getline(in, line)) {
            ++lineno;
            const auto hash = line.find('#');
            if (hash != std::string::npos) line = line.substr(0, hash);
            if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
            if (!line.empty() && line.back() == '\r') line.pop_back();
            const std::string where = *config_path + ":" + std::to_string(lineno);
            const auto [key, value] = split_kv(line, where);
            apply_key(c, key, value, where);
        }
    }
    for (const auto& ov : overrides) {
        const auto [key, value] = split_kv(ov, "--set");
        apply_key(c, key, value, "--set");
    }
    c.validate();
    return c;
}

}  // namespace fresco::cli
