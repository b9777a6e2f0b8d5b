#include "fresco/runner.hpp"

#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include <json.hpp>

#include "fresco/gaussian.hpp"
#include "fresco/spectra.hpp"
#include "fresco/twophoton.hpp"

namespace fresco::cli {

namespace fs = std::filesystem;
using nlohmann::json;

void write_file_atomic(const std::string& path, const std::string& content) {
    const fs::path target(path);
    const fs::path tmp = target.parent_path() / (target.filename().string() + ".tmp");
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot open output file: " + tmp.string());
        out << content;
        if (!out) throw std::runtime_error("write failed: " + tmp.string());
    }
    fs::rename(tmp, target);
}

std::string format_value(double v) {
    if (std::isnan(v)) return "";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.11e", v);
    return buf;
}

namespace {

QuantumModel build_model(const RunConfig& c) {
    QuantumModel m = c.model == ModelKind::RF ? resonance_fluorescence(c.rf)
                                              : squeezed_cavity(c.cavity);
    if (c.homodyne_fraction > 0.0) {
        Superoperator L = build_liouvillian(m.hamiltonian, m.collapses);
        DensityMatrix rho = steady_state(L);
        const cplx mean = expectation(rho.matrix, rho.signature,
                                      std::span<const Operator>(&m.detection_op, 1));
        m = homodyne(m, -c.homodyne_fraction * mean);
    }
    return m;
}

json model_metadata(const RunConfig& c, const QuantumModel& m) {
    json j;
    j["command"] = [&] {
        switch (c.command) {
            case Command::Spectrum: return "spectrum";
            case Command::G2Map: return "g2map";
            case Command::G2Tau: return "g2tau";
            case Command::Decompose: return "decompose";
            case Command::Quantifiers: return "quantifiers";
            case Command::GaussianCheck: return "gaussian-check";
        }
        return "?";
    }();
    if (c.model == ModelKind::RF) {
        j["model"] = "rf";
        j["delta_sigma"] = c.rf.delta_sigma;
        j["omega_sigma"] = c.rf.omega_sigma;
        j["gamma_sigma"] = c.rf.gamma_sigma;
    } else {
        j["model"] = "cavity";
        j["delta_a"] = c.cavity.delta_a;
        j["lambda"] = c.cavity.lambda;
        j["gamma_a"] = c.cavity.gamma_a;
        j["omega_a"] = c.cavity.omega_a.value_or(optimum_drive(c.cavity));
        j["theta_drive"] = c.cavity.theta_drive.value_or(phase_matching_angle(c.cavity));
        j["n_max"] = c.cavity.n_max;
    }
    j["filter_gamma"] = c.filter_gamma;
    j["homodyne_F"] = c.homodyne_fraction;
    j["varpi_scale"] = m.varpi_scale;
    j["sensor_method"] = "vanishing-coupling";
    return j;
}

void write_sidecar(const RunConfig& c, const json& meta) {
    if (c.out_path.empty()) return;
    write_file_atomic(c.out_path + ".json", meta.dump(2) + "\n");
}

void emit(const RunConfig& c, const std::string& csv) {
    if (c.out_path.empty())
        std::cout << csv;
    else
        write_file_atomic(c.out_path, csv);
}

int run_spectrum(const RunConfig& c) {
    QuantumModel m = build_model(c);
    const double scale = c.grid_in_omega ? 1.0 : m.varpi_scale;
    std::vector<double> omegas;
    for (double v : c.grid1.values()) omegas.push_back(v * scale);

    auto samples = spectra::spectrum_numeric(m, omegas, c.filter_gamma,
                                             spectra::SensorMethod::Vanishing, c.epsilon);
    std::ostringstream csv;
    csv << "varpi,omega,S\n";
    for (const auto& s : samples)
        csv << format_value(s.varpi) << ',' << format_value(s.omega) << ','
            << format_value(s.value) << '\n';
    emit(c, csv.str());
    json meta = model_metadata(c, m);
    meta["grid"] = {{"min", c.grid1.min}, {"max", c.grid1.max}, {"count", c.grid1.count},
                    {"units", c.grid_in_omega ? "omega" : "varpi"}};
    write_sidecar(c, meta);
    return kExitOk;
}

int run_map(const RunConfig& c) {
    QuantumModel m = build_model(c);
    twophoton::LandscapeRequest req;
    const double units = c.grid_in_omega ? 1.0 / m.varpi_scale : 1.0;
    for (double v : c.grid1.values()) req.varpi1_grid.push_back(v * units);
    for (double v : c.grid2.values()) req.varpi2_grid.push_back(v * units);
    req.big_gamma = c.filter_gamma;
    req.with_interference = c.command == Command::Decompose;
    req.with_quantifiers = c.command == Command::Quantifiers;
    req.workers = c.workers;

    twophoton::Landscape land = twophoton::g2_landscape(m, req);

    std::ostringstream csv;
    csv << "varpi1,varpi2,g2,I0,I1,I2,R,B,S\n";
    const char* names[] = {"g2", "I0", "I1", "I2", "R", "B", "S"};
    for (std::size_t i = 0; i < land.varpi1_grid.size(); ++i)
        for (std::size_t j = 0; j < land.varpi2_grid.size(); ++j) {
            csv << format_value(land.varpi1_grid[i]) << ',' << format_value(land.varpi2_grid[j]);
            for (const char* name : names) {
                csv << ',';
                auto it = land.channels.find(name);
                if (it != land.channels.end())
                    csv << format_value(it->second[i * land.varpi2_grid.size() + j]);
            }
            csv << '\n';
        }
    emit(c, csv.str());

    json meta = model_metadata(c, m);
    meta["grid1"] = {{"min", c.grid1.min}, {"max", c.grid1.max}, {"count", c.grid1.count}};
    meta["grid2"] = {{"min", c.grid2.min}, {"max", c.grid2.max}, {"count", c.grid2.count}};
    meta["channels"] = [&] {
        std::vector<std::string> ch;
        for (const auto& [name, _] : land.channels) ch.push_back(name);
        return ch;
    }();
    write_sidecar(c, meta);
    return kExitOk;
}

int run_g2tau(const RunConfig& c) {
    QuantumModel m = build_model(c);
    std::vector<double> taus(c.tau_count);
    for (int i = 0; i < c.tau_count; ++i) taus[i] = c.tau_max * i / (c.tau_count - 1);

    SensorConfig s;
    s.omega_1 = c.sensor_varpi1 * (c.grid_in_omega ? 1.0 : m.varpi_scale);
    s.omega_2 = c.sensor_varpi2 * (c.grid_in_omega ? 1.0 : m.varpi_scale);
    s.big_gamma = c.filter_gamma;
    auto g2 = twophoton::g2_tau(m, s, taus);

    std::ostringstream csv;
    csv << "tau,g2\n";
    for (std::size_t i = 0; i < taus.size(); ++i)
        csv << format_value(taus[i]) << ',' << format_value(g2[i]) << '\n';
    emit(c, csv.str());
    json meta = model_metadata(c, m);
    meta["sensor_varpi"] = {c.sensor_varpi1, c.sensor_varpi2};
    meta["tau"] = {{"max", c.tau_max}, {"count", c.tau_count}};
    write_sidecar(c, meta);
    return kExitOk;
}

int run_gaussian_check(const RunConfig& c) {
    std::mt19937_64 rng(c.gaussian_seed);
    std::uniform_real_distribution<double> mag(0.5, 1.5);
    std::uniform_real_distribution<double> sq(0.2, 1.0);
    std::uniform_real_distribution<double> ph(-std::numbers::pi, std::numbers::pi);

    std::ostringstream csv;
    csv << "draw,eps,g2_12_exact,g2_12_leading,disc,disc_half,ratio\n";
    int within = 0;
    for (int d = 0; d < c.gaussian_draws; ++d) {
        gaussian::GaussianParams p;
        p.alpha1 = std::polar(mag(rng), ph(rng));
        p.alpha2 = std::polar(mag(rng), ph(rng));
        p.r1 = sq(rng);
        p.r2 = sq(rng);
        p.t12 = sq(rng);
        p.theta1 = ph(rng);
        p.theta2 = ph(rng);
        p.vartheta12 = ph(rng);

        auto disc_at = [&](double eps) {
            gaussian::GaussianParams q = p;
            q.epsilon = eps;
            auto exact = gaussian::moments_exact(gaussian::build_state(q, c.gaussian_nmax));
            auto lead = gaussian::moments_leading_order(q);
            return std::abs(exact.g2_12 - lead.g2_12);
        };
        const double full = disc_at(c.gaussian_epsilon);
        const double half = disc_at(c.gaussian_epsilon / 2.0);
        const double ratio = full / half;
        if (ratio >= 3.5 && ratio <= 4.5) ++within;

        gaussian::GaussianParams q = p;
        q.epsilon = c.gaussian_epsilon;
        auto exact = gaussian::moments_exact(gaussian::build_state(q, c.gaussian_nmax));
        auto lead = gaussian::moments_leading_order(q);
        csv << d << ',' << format_value(c.gaussian_epsilon) << ',' << format_value(exact.g2_12)
            << ',' << format_value(lead.g2_12) << ',' << format_value(full) << ','
            << format_value(half) << ',' << format_value(ratio) << '\n';
    }
    emit(c, csv.str());
    std::cerr << "gaussian-check: " << within << "/" << c.gaussian_draws
              << " draws with discrepancy ratio in [3.5, 4.5]\n";
    json meta;
    meta["command"] = "gaussian-check";
    meta["draws"] = c.gaussian_draws;
    meta["epsilon"] = c.gaussian_epsilon;
    meta["n_max"] = c.gaussian_nmax;
    meta["seed"] = c.gaussian_seed;
    meta["ratio_in_window"] = within;
    write_sidecar(c, meta);
    return kExitOk;
}

}  // namespace

int run(const RunConfig& config) {
    try {
        switch (config.command) {
            case Command::Spectrum: return run_spectrum(config);
            case Command::G2Map:
            case Command::Decompose:
            case Command::Quantifiers: return run_map(config);
            case Command::G2Tau: return run_g2tau(config);
            case Command::GaussianCheck: return run_gaussian_check(config);
        }
        return kExitConfig;
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const std::exception& e) {
        std::cerr << "numerical failure: " << e.what() << '\n';
        return kExitNumerical;
    }
}

}  // namespace fresco::cli
