// Reproduction CLI: fanowave <experiment|preset> [--config file.json]
// [--set key=value ...] [--out dir]. Exit codes: 0 ok, 2 configuration
// error, 3 numeric failure.
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "fanowave/experiments.hpp"

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw fano::ConfigurationError("cannot read config file '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Few-photon transport in a Fano-resonance waveguide"};
    app.footer("Presets: fig2-row{1,2,3}, fig3a-row{1,2,3}, fig3b, fig3c, "
               "fig4{a,b,c}, fig5-row{1,2,3}; bare experiments: dynamics, "
               "spectrum, hom-sweep, two-photon-density.");

    std::string experiment;
    std::string config_path;
    std::string out_dir;
    std::vector<std::string> overrides;
    bool list = false;
    app.add_option("experiment", experiment, "Experiment or preset name");
    app.add_option("--config", config_path, "JSON config mirroring the run configuration");
    app.add_option("--set", overrides, "Dotted-path override, e.g. pte.V=2")->take_all();
    app.add_option("--out", out_dir, "Output directory (overrides output_dir)");
    app.add_flag("--list", list, "List presets and exit");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (list) {
            for (const auto& name : fano::preset_names()) std::cout << name << "\n";
            return 0;
        }
        if (experiment.empty()) {
            std::cerr << "error: missing experiment name (see --help)\n";
            return 2;
        }
        nlohmann::json merged =
            nlohmann::json::parse(fano::config_to_json(fano::preset_config(experiment)));
        if (!config_path.empty()) {
            try {
                merged.merge_patch(nlohmann::json::parse(read_file(config_path)));
            } catch (const nlohmann::json::exception& e) {
                throw fano::ConfigurationError(std::string("config parse error: ") + e.what());
            }
        }
        std::string json_text = merged.dump();
        for (const auto& kv : overrides) json_text = fano::apply_override(json_text, kv);
        fano::RunConfig cfg = fano::config_from_json(json_text);
        if (!out_dir.empty()) cfg.output_dir = out_dir;

        const auto files = fano::run_experiment(cfg);
        for (const auto& f : files) std::cout << cfg.output_dir << "/" << f << "\n";
        return 0;
    } catch (const fano::InvalidParameterError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const fano::UnsupportedConfigurationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const fano::ConfigurationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const fano::NumericDomainError& e) {
        std::cerr << "numeric error: " << e.what() << "\n";
        return 3;
    } catch (const fano::AccuracyError& e) {
        std::cerr << "numeric error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
}
