#include "fanowave/experiments.hpp"

#include <chrono>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "fanowave/dynamics.hpp"
#include "fanowave/smatrix.hpp"
#include "fanowave/twophoton.hpp"

#ifndef FANOWAVE_VERSION
#define FANOWAVE_VERSION "0.0.0"
#endif

namespace fano {

using nlohmann::json;

namespace {

// 12 significant digits, scientific; stable across runs for golden tests
std::string fmt(double x) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.11e", x);
    return buf;
}

std::string fmt_short(double x) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%g", x);
    return buf;
}

class CsvWriter {
public:
    CsvWriter(const std::filesystem::path& dir, const std::string& name)
        : final_path_(dir / name), tmp_path_(dir / (name + ".tmp")) {
        out_.open(tmp_path_, std::ios::binary | std::ios::trunc);
        if (!out_) throw ConfigurationError("cannot open " + tmp_path_.string());
    }
    void header(const std::vector<std::string>& names) {
        for (std::size_t i = 0; i < names.size(); ++i)
            out_ << (i ? "," : "") << names[i];
        out_ << "\n";
    }
    void row(const std::vector<double>& values) {
        for (std::size_t i = 0; i < values.size(); ++i)
            out_ << (i ? "," : "") << fmt(values[i]);
        out_ << "\n";
    }
    void raw_row(const std::vector<std::string>& cells) {
        for (std::size_t i = 0; i < cells.size(); ++i)
            out_ << (i ? "," : "") << cells[i];
        out_ << "\n";
    }
    void finish() {
        out_.close();
        std::filesystem::rename(tmp_path_, final_path_);
    }

private:
    std::filesystem::path final_path_;
    std::filesystem::path tmp_path_;
    std::ofstream out_;
};

TleParams tle_params(const SystemConfig& s) { return {s.omega_e, s.Gamma, s.gamma}; }
JcParams jc_params(const SystemConfig& s) {
    return {s.omega_c, s.omega_e, s.g, s.Gamma, s.gamma_c, s.gamma_e};
}

void validate_config(const RunConfig& cfg) {
    if (!is_known_experiment(cfg.experiment))
        throw ConfigurationError("unknown experiment '" + cfg.experiment + "'");
    if (cfg.system.kind != "tle" && cfg.system.kind != "cavity" && cfg.system.kind != "jc")
        throw ConfigurationError("system.kind must be tle, cavity or jc");
    cfg.pte.validate();
    if (cfg.system.kind == "jc")
        jc_params(cfg.system).validate();
    else
        tle_params(cfg.system).validate();
}

json manifest_json(const RunConfig& cfg) {
    json m;
    m["config"] = json::parse(config_to_json(cfg));
    m["tool"] = "fanowave";
    m["version"] = FANOWAVE_VERSION;
    const auto now = std::chrono::system_clock::now();
    m["generated_unix_ms"] =
        std::chrono::duration_cast<std::chrono::milliseconds>(now.time_since_epoch()).count();
    return m;
}

void write_manifest(const std::filesystem::path& dir, const RunConfig& cfg) {
    const auto tmp = dir / "manifest.json.tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw ConfigurationError("cannot open " + tmp.string());
        out << manifest_json(cfg).dump(2) << "\n";
    }
    std::filesystem::rename(tmp, dir / "manifest.json");
}

std::vector<std::string> run_dynamics(const RunConfig& cfg,
                                      const std::filesystem::path& dir) {
    const TleParams params = tle_params(cfg.system);
    const GaussianEnvelope env{cfg.envelope.k_c, cfg.envelope.sigma, cfg.envelope.t_i};
    const KGrid grid(-cfg.grid.span, cfg.grid.span, cfg.grid.n);
    const auto& dyn = cfg.dynamics;

    SingleExcitationState init = gaussian_photon_state(grid, env);
    OdeEvolver evolver(init, params, cfg.pte, dyn.dt);

    std::vector<double> xs(dyn.x_points);
    for (std::size_t i = 0; i < dyn.x_points; ++i)
        xs[i] = -dyn.x_span +
                2.0 * dyn.x_span * static_cast<double>(i) / static_cast<double>(dyn.x_points - 1);
    std::vector<double> xs_neg(xs);
    for (auto& x : xs_neg) x = -x;

    CsvWriter trace(dir, "trace.csv");
    trace.header({"t[1/Gamma]", "p_emitter", "p_right", "p_left"});
    CsvWriter field(dir, "field_xt.csv");
    field.header({"x[v_g/Gamma]", "t[1/Gamma]", "abs_field"});

    const double dk = grid.spacing();
    double next_field = env.t_i;
    const auto n_samples =
        static_cast<std::size_t>(std::floor((dyn.t_end - env.t_i) / dyn.sample_dt + 1e-9)) + 1;
    for (std::size_t s = 0; s < n_samples; ++s) {
        const double t = env.t_i + dyn.sample_dt * static_cast<double>(s);
        evolver.advance_to(t);
        const auto& st = evolver.state();
        trace.row({t, std::norm(st.chi), quad_samples_abs2(st.xi_R, dk),
                   quad_samples_abs2(st.xi_L, dk)});
        if (t + 1e-9 >= next_field) {
            const auto psi_r = realspace_envelope(st.xi_R, grid, xs);
            const auto psi_l = realspace_envelope(st.xi_L, grid, xs_neg);
            for (std::size_t i = 0; i < xs.size(); ++i) {
                const double a = std::sqrt(std::norm(psi_r[i]) + std::norm(psi_l[i]));
                field.row({xs[i], t, a});
            }
            next_field += dyn.field_t_step;
        }
    }

    CsvWriter spectra(dir, "spectra.csv");
    spectra.header({"k[Gamma]", "abs_xi_R2", "abs_xi_L2", "abs_xi_in2"});
    const auto& fin = evolver.state();
    for (std::size_t i = 0; i < grid.n; ++i) {
        const double k = grid.node(i);
        spectra.row({k, std::norm(fin.xi_R[i]), std::norm(fin.xi_L[i]),
                     std::norm(envelope_eval(env, k))});
    }
    trace.finish();
    field.finish();
    spectra.finish();
    return {"trace.csv", "field_xt.csv", "spectra.csv"};
}

std::vector<std::string> run_spectrum(const RunConfig& cfg,
                                      const std::filesystem::path& dir) {
    const auto& sp = cfg.spectrum;
    const bool jc = cfg.system.kind == "jc";
    std::vector<double> v_values = sp.v_values.empty()
                                       ? std::vector<double>{cfg.pte.V}
                                       : sp.v_values;
    std::vector<std::vector<double>> sets = sp.dissipation_sets;
    if (sets.empty()) {
        if (jc)
            sets.push_back({cfg.system.gamma_c, cfg.system.gamma_e});
        else
            sets.push_back({cfg.system.gamma});
    }

    CsvWriter out(dir, "transmission.csv");
    std::vector<std::string> cols{"V", "k[Gamma]"};
    for (const auto& set : sets) {
        std::string tag = jc ? ("[gc=" + fmt_short(set.at(0)) + ",ge=" + fmt_short(set.at(1)) + "]")
                             : ("[gamma=" + fmt_short(set.at(0)) + "]");
        cols.push_back("abs_t2" + tag);
        cols.push_back("abs_r2" + tag);
        cols.push_back("loss" + tag);
    }
    out.header(cols);

    for (double v : v_values) {
        const PteParams pte{v};
        for (std::size_t i = 0; i < sp.n; ++i) {
            const double k = cfg.system.omega_e - sp.k_span +
                             2.0 * sp.k_span * static_cast<double>(i) /
                                 static_cast<double>(sp.n - 1);
            std::vector<double> row{v, k};
            for (const auto& set : sets) {
                std::pair<Complex, Complex> tr;
                if (jc) {
                    JcParams p = jc_params(cfg.system);
                    p.gamma_c = set.at(0);
                    p.gamma_e = set.at(1);
                    if (cfg.system.omega_c_auto)
                        p.omega_c = cfg.system.omega_e -
                                    0.5 * effective_rate(p.Gamma, pte).imag();
                    tr = s1_jc(k, p, pte);
                } else {
                    TleParams p = tle_params(cfg.system);
                    p.gamma = set.at(0);
                    tr = s1_tle(k, p, pte);
                }
                const double t2 = std::norm(tr.first);
                const double r2 = std::norm(tr.second);
                row.push_back(t2);
                row.push_back(r2);
                row.push_back(1.0 - t2 - r2);
            }
            out.row(row);
        }
    }
    out.finish();
    return {"transmission.csv"};
}

std::vector<std::string> run_hom(const RunConfig& cfg, const std::filesystem::path& dir) {
    const TleParams params = tle_params(cfg.system);
    const auto& hs = cfg.hom;
    if (hs.sigma_count < 2) throw ConfigurationError("hom: sigma_count must be >= 2");
    std::vector<double> sigmas(hs.sigma_count);
    for (std::size_t i = 0; i < hs.sigma_count; ++i)
        sigmas[i] = hs.sigma_min + (hs.sigma_max - hs.sigma_min) * static_cast<double>(i) /
                                       static_cast<double>(hs.sigma_count - 1);

    const double om_t = effective_resonance(params.omega_e, params.Gamma, cfg.pte);
    const double k_c = cfg.envelope.k_c;
    const auto full = hom_sweep(sigmas, TwoPhotonSystem::tle(params, cfg.pte), k_c,
                                params.Gamma, om_t);
    const auto linear = hom_sweep(sigmas, TwoPhotonSystem::cavity_surrogate(params, cfg.pte),
                                  k_c, params.Gamma, om_t);

    CsvWriter out(dir, "hom.csv");
    out.header({"sigma[Gamma]", "p_counter", "p_co", "p_counter_linear", "p_co_linear"});
    for (std::size_t i = 0; i < sigmas.size(); ++i)
        out.row({sigmas[i], full[i].p_counter, full[i].p_co, linear[i].p_counter,
                 linear[i].p_co});
    out.finish();
    return {"hom.csv"};
}

std::vector<std::string> run_density(const RunConfig& cfg, const std::filesystem::path& dir) {
    const TleParams params = tle_params(cfg.system);
    const GaussianEnvelope env{cfg.envelope.k_c, cfg.envelope.sigma, 0.0};
    const auto& ds = cfg.density;
    const KGrid grid(env.k_c - ds.span, env.k_c + ds.span, ds.n);
    const auto sys = cfg.system.kind == "cavity"
                         ? TwoPhotonSystem::cavity_surrogate(params, cfg.pte)
                         : TwoPhotonSystem::tle(params, cfg.pte);
    const auto out = scatter_two_photon({env}, sys, grid);

    std::vector<std::string> files;
    const std::vector<std::pair<Channel, std::string>> channels = {
        {Channel::LL, "density_LL.csv"},
        {Channel::RR, "density_RR.csv"},
        {Channel::LR, "density_LR.csv"}};
    for (const auto& [ch, name] : channels) {
        const auto density = two_photon_density(out, ch);
        CsvWriter w(dir, name);
        std::vector<std::string> head{"p1\\p2[Gamma]"};
        for (std::size_t j = 0; j < grid.n; ++j) head.push_back(fmt(grid.node(j)));
        w.raw_row(head);
        for (std::size_t i = 0; i < grid.n; ++i) {
            std::vector<std::string> row{fmt(grid.node(i))};
            for (std::size_t j = 0; j < grid.n; ++j) row.push_back(fmt(density[i * grid.n + j]));
            w.raw_row(row);
        }
        w.finish();
        files.push_back(name);
    }
    return files;
}

RunConfig base_config(const std::string& experiment) {
    RunConfig cfg;
    cfg.experiment = experiment;
    return cfg;
}

RunConfig fig2_row(double v) {
    RunConfig cfg = base_config("dynamics");
    cfg.pte.V = v;
    const Complex gt = effective_rate(1.0, cfg.pte);
    cfg.envelope.sigma = 0.73 * gt.real();
    cfg.envelope.k_c = 0.5 * gt.imag();
    cfg.envelope.t_i = -5.0 / cfg.envelope.sigma;
    cfg.dynamics.t_end = 18.0;
    return cfg;
}

RunConfig fig3a_row(double v) {
    RunConfig cfg = base_config("spectrum");
    cfg.pte.V = v;
    cfg.spectrum.dissipation_sets = {{0.0}, {0.1}};
    return cfg;
}

RunConfig fig3_jc(double g) {
    RunConfig cfg = base_config("spectrum");
    cfg.system.kind = "jc";
    cfg.system.g = g;
    cfg.spectrum.v_values = {0.0, balanced_pte_strength(), 2.0};
    cfg.spectrum.dissipation_sets = {{0.0, 0.0}, {0.1, 0.0}, {0.1, 0.1}};
    cfg.system.omega_c_auto = true;
    return cfg;
}

RunConfig fig4(double v) {
    RunConfig cfg = base_config("hom-sweep");
    cfg.pte.V = v;
    cfg.envelope.k_c = effective_resonance(0.0, 1.0, cfg.pte);
    return cfg;
}

RunConfig fig5_row(double v, double sigma) {
    RunConfig cfg = base_config("two-photon-density");
    cfg.pte.V = v;
    cfg.envelope.sigma = sigma;
    cfg.envelope.k_c = effective_resonance(0.0, 1.0, cfg.pte);
    return cfg;
}

}  // namespace

std::vector<std::string> preset_names() {
    return {"fig2-row1", "fig2-row2", "fig2-row3", "fig3a-row1", "fig3a-row2", "fig3a-row3",
            "fig3b",     "fig3c",     "fig4a",     "fig4b",      "fig4c",      "fig5-row1",
            "fig5-row2", "fig5-row3"};
}

bool is_known_experiment(const std::string& name) {
    return name == "dynamics" || name == "spectrum" || name == "hom-sweep" ||
           name == "two-photon-density";
}

RunConfig preset_config(const std::string& name) {
    const double vb = balanced_pte_strength();
    if (name == "fig2-row1") return fig2_row(0.0);
    if (name == "fig2-row2") return fig2_row(vb);
    if (name == "fig2-row3") return fig2_row(2.0);
    if (name == "fig3a-row1") return fig3a_row(0.0);
    if (name == "fig3a-row2") return fig3a_row(vb);
    if (name == "fig3a-row3") return fig3a_row(2.0);
    if (name == "fig3b") return fig3_jc(0.5);
    if (name == "fig3c") return fig3_jc(1.0);
    if (name == "fig4a") return fig4(0.0);
    if (name == "fig4b") return fig4(vb);
    if (name == "fig4c") return fig4(2.0);
    if (name == "fig5-row1") return fig5_row(0.0, 0.43);
    if (name == "fig5-row2") return fig5_row(vb, 0.36);
    if (name == "fig5-row3") return fig5_row(2.0, 0.21);
    if (is_known_experiment(name)) return base_config(name);
    throw ConfigurationError("unknown experiment or preset '" + name + "'");
}

std::string config_to_json(const RunConfig& cfg) {
    json j;
    j["experiment"] = cfg.experiment;
    j["system"] = {{"kind", cfg.system.kind},   {"omega_e", cfg.system.omega_e},
                   {"Gamma", cfg.system.Gamma}, {"gamma", cfg.system.gamma},
                   {"omega_c", cfg.system.omega_c}, {"omega_c_auto", cfg.system.omega_c_auto},
                   {"g", cfg.system.g},
                   {"gamma_c", cfg.system.gamma_c}, {"gamma_e", cfg.system.gamma_e}};
    j["pte"] = {{"V", cfg.pte.V}};
    j["envelope"] = {{"k_c", cfg.envelope.k_c}, {"sigma", cfg.envelope.sigma},
                     {"t_i", cfg.envelope.t_i}};
    j["grid"] = {{"span", cfg.grid.span}, {"n", cfg.grid.n}};
    j["output_dir"] = cfg.output_dir;
    j["dynamics"] = {{"t_end", cfg.dynamics.t_end},       {"dt", cfg.dynamics.dt},
                     {"sample_dt", cfg.dynamics.sample_dt}, {"x_span", cfg.dynamics.x_span},
                     {"x_points", cfg.dynamics.x_points},
                     {"field_t_step", cfg.dynamics.field_t_step}};
    j["spectrum"] = {{"k_span", cfg.spectrum.k_span},
                     {"n", cfg.spectrum.n},
                     {"v_values", cfg.spectrum.v_values},
                     {"dissipation_sets", cfg.spectrum.dissipation_sets}};
    j["hom"] = {{"sigma_min", cfg.hom.sigma_min},
                {"sigma_max", cfg.hom.sigma_max},
                {"sigma_count", cfg.hom.sigma_count}};
    j["density"] = {{"span", cfg.density.span}, {"n", cfg.density.n}};
    return j.dump(2);
}

RunConfig config_from_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw ConfigurationError(std::string("config parse error: ") + e.what());
    }
    RunConfig cfg;
    try {
        auto get = [](const json& obj, const char* key, auto& field) {
            if (obj.contains(key)) obj.at(key).get_to(field);
        };
        get(j, "experiment", cfg.experiment);
        if (j.contains("system")) {
            const auto& s = j["system"];
            get(s, "kind", cfg.system.kind);
            get(s, "omega_e", cfg.system.omega_e);
            get(s, "Gamma", cfg.system.Gamma);
            get(s, "gamma", cfg.system.gamma);
            get(s, "omega_c", cfg.system.omega_c);
            get(s, "omega_c_auto", cfg.system.omega_c_auto);
            get(s, "g", cfg.system.g);
            get(s, "gamma_c", cfg.system.gamma_c);
            get(s, "gamma_e", cfg.system.gamma_e);
        }
        if (j.contains("pte")) get(j["pte"], "V", cfg.pte.V);
        if (j.contains("envelope")) {
            const auto& e = j["envelope"];
            get(e, "k_c", cfg.envelope.k_c);
            get(e, "sigma", cfg.envelope.sigma);
            get(e, "t_i", cfg.envelope.t_i);
        }
        if (j.contains("grid")) {
            get(j["grid"], "span", cfg.grid.span);
            get(j["grid"], "n", cfg.grid.n);
        }
        get(j, "output_dir", cfg.output_dir);
        if (j.contains("dynamics")) {
            const auto& d = j["dynamics"];
            get(d, "t_end", cfg.dynamics.t_end);
            get(d, "dt", cfg.dynamics.dt);
            get(d, "sample_dt", cfg.dynamics.sample_dt);
            get(d, "x_span", cfg.dynamics.x_span);
            get(d, "x_points", cfg.dynamics.x_points);
            get(d, "field_t_step", cfg.dynamics.field_t_step);
        }
        if (j.contains("spectrum")) {
            const auto& s = j["spectrum"];
            get(s, "k_span", cfg.spectrum.k_span);
            get(s, "n", cfg.spectrum.n);
            get(s, "v_values", cfg.spectrum.v_values);
            get(s, "dissipation_sets", cfg.spectrum.dissipation_sets);
        }
        if (j.contains("hom")) {
            const auto& h = j["hom"];
            get(h, "sigma_min", cfg.hom.sigma_min);
            get(h, "sigma_max", cfg.hom.sigma_max);
            get(h, "sigma_count", cfg.hom.sigma_count);
        }
        if (j.contains("density")) {
            get(j["density"], "span", cfg.density.span);
            get(j["density"], "n", cfg.density.n);
        }
    } catch (const json::exception& e) {
        throw ConfigurationError(std::string("config field error: ") + e.what());
    }
    return cfg;
}

std::string apply_override(const std::string& json_text, const std::string& key_value) {
    const auto eq = key_value.find('=');
    if (eq == std::string::npos || eq == 0)
        throw ConfigurationError("--set expects key.path=value, got '" + key_value + "'");
    std::string path = key_value.substr(0, eq);
    const std::string value = key_value.substr(eq + 1);
    for (auto& c : path)
        if (c == '.') c = '/';
    json j = json::parse(json_text);
    json parsed;
    try {
        parsed = json::parse(value);
    } catch (const json::exception&) {
        parsed = value;  // bare strings allowed
    }
    try {
        j[json::json_pointer("/" + path)] = parsed;
    } catch (const json::exception& e) {
        throw ConfigurationError("cannot apply override '" + key_value + "': " + e.what());
    }
    return j.dump();
}

std::vector<std::string> run_experiment(const RunConfig& cfg) {
    validate_config(cfg);
    const std::filesystem::path dir(cfg.output_dir);
    std::filesystem::create_directories(dir);

    std::vector<std::string> files;
    if (cfg.experiment == "dynamics")
        files = run_dynamics(cfg, dir);
    else if (cfg.experiment == "spectrum")
        files = run_spectrum(cfg, dir);
    else if (cfg.experiment == "hom-sweep")
        files = run_hom(cfg, dir);
    else
        files = run_density(cfg, dir);
    write_manifest(dir, cfg);
    files.push_back("manifest.json");
    return files;
}

}  // namespace fano
