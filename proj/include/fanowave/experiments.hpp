// Named reproduction experiments behind the CLI: resolved run configurations,
// figure presets, CSV emission and the JSON run manifest.
#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "fanowave/core.hpp"
#include "fanowave/pte.hpp"

namespace fano {

struct SystemConfig {
    std::string kind{"tle"};  // tle | cavity | jc
    double omega_e{0.0};
    double Gamma{1.0};
    double gamma{0.0};
    // jc only
    double omega_c{0.0};
    bool omega_c_auto{false};  // place the cavity at omega_e - Im{Gamma_eff}/2
    double g{0.0};
    double gamma_c{0.0};
    double gamma_e{0.0};
};

struct EnvelopeConfig {
    double k_c{0.0};
    double sigma{1.0};
    double t_i{0.0};
};

struct GridConfig {
    double span{20.0};    // grid is [-span, span] in units of Gamma around 0
    std::size_t n{2049};
};

struct DynamicsSettings {
    double t_end{18.0};
    double dt{1e-3};
    double sample_dt{0.05};
    double x_span{18.0};
    std::size_t x_points{241};
    double field_t_step{1.0};
};

struct SpectrumSettings {
    double k_span{10.0};
    std::size_t n{2001};
    std::vector<double> v_values;                      // empty -> use pte.V
    std::vector<std::vector<double>> dissipation_sets; // {gamma} or {gamma_c, gamma_e}
};

struct HomSettings {
    double sigma_min{0.05};
    double sigma_max{2.0};
    std::size_t sigma_count{40};
};

struct DensitySettings {
    double span{6.0};
    std::size_t n{257};
};

struct RunConfig {
    std::string experiment{"spectrum"};  // dynamics | spectrum | hom-sweep | two-photon-density
    SystemConfig system;
    PteParams pte;
    EnvelopeConfig envelope;
    GridConfig grid;
    std::string output_dir{"out"};
    DynamicsSettings dynamics;
    SpectrumSettings spectrum;
    HomSettings hom;
    DensitySettings density;
};

/// Registered preset names (fig2-row1 ... fig5-row3) plus the bare
/// experiment kinds with defaults.
std::vector<std::string> preset_names();
RunConfig preset_config(const std::string& name);
bool is_known_experiment(const std::string& name);

/// JSON round-trip mirrors the field names exactly.
std::string config_to_json(const RunConfig& cfg);
RunConfig config_from_json(const std::string& text);

/// Apply one dotted-path override, e.g. "pte.V=2" or "envelope.sigma=0.43".
std::string apply_override(const std::string& json_text, const std::string& key_value);

/// Execute the experiment, writing CSV files and manifest.json under
/// cfg.output_dir. Returns the written file names.
std::vector<std::string> run_experiment(const RunConfig& cfg);

}  // namespace fano
