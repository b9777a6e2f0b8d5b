// config.hpp — Run configuration: flat key=value files, flag overrides, defaults.

#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "fresco/models.hpp"

namespace fresco::cli {

enum class Command { Spectrum, G2Map, G2Tau, Decompose, Quantifiers, GaussianCheck };
enum class ModelKind { RF, Cavity };

struct GridSpec {
    double min = -2.5;
    double max = 2.5;
    int count = 101;

    std::vector<double> values() const;
};

struct RunConfig {
    Command command = Command::Spectrum;
    ModelKind model = ModelKind::RF;

    RFParams rf;
    CavityParams cavity;
    double filter_gamma = 2.0;
    double epsilon = 0.0;          // finite-ε path coupling (0 = default rule)
    double homodyne_fraction = 0.0;

    GridSpec grid1;                 // ϖ₁ (or the spectrum axis)
    GridSpec grid2;                 // ϖ₂
    bool grid_in_omega = false;     // raw laser-frame ω instead of ϖ units

    double tau_max = 10.0;
    int tau_count = 201;
    double sensor_varpi1 = 0.0;     // sensor frequencies for g2tau (ϖ units)
    double sensor_varpi2 = 0.0;

    int gaussian_draws = 50;
    double gaussian_epsilon = 0.04;
    int gaussian_nmax = 14;
    unsigned long gaussian_seed = 20240901;

    std::string out_path;
    int workers = 0;

    void validate() const;
};

Command parse_command(const std::string& name);

// Flat key=value text (one per line, '#' comments). Later --set overrides win.
RunConfig parse_config(Command command, const std::optional<std::string>& config_path,
                       const std::vector<std::string>& overrides);

// "min:max:count" → GridSpec
GridSpec parse_grid_spec(const std::string& text);

}  // namespace fresco::cli
