// Python bindings for the main library operations.
#include <pybind11/complex.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "fanowave/dynamics.hpp"
#include "fanowave/experiments.hpp"
#include "fanowave/smatrix.hpp"
#include "fanowave/twophoton.hpp"

namespace py = pybind11;
using namespace fano;

namespace {

py::array_t<Complex> to_array(const std::vector<Complex>& v) {
    py::array_t<Complex> out(static_cast<py::ssize_t>(v.size()));
    std::copy(v.begin(), v.end(), out.mutable_data());
    return out;
}

py::array_t<Complex> to_matrix(const std::vector<Complex>& v, std::size_t n) {
    py::array_t<Complex> out({static_cast<py::ssize_t>(n), static_cast<py::ssize_t>(n)});
    std::copy(v.begin(), v.end(), out.mutable_data());
    return out;
}

py::array_t<double> to_array_d(const std::vector<double>& v) {
    py::array_t<double> out(static_cast<py::ssize_t>(v.size()));
    std::copy(v.begin(), v.end(), out.mutable_data());
    return out;
}

}  // namespace

PYBIND11_MODULE(_fanowave, m) {
    m.doc() = "Few-photon transport in Fano-resonance waveguide geometries";

    py::register_exception<InvalidParameterError>(m, "InvalidParameterError",
                                                  PyExc_ValueError);
    py::register_exception<UnsupportedConfigurationError>(m, "UnsupportedConfigurationError",
                                                          PyExc_ValueError);
    py::register_exception<ConfigurationError>(m, "ConfigurationError", PyExc_RuntimeError);
    py::register_exception<NumericDomainError>(m, "NumericDomainError", PyExc_ArithmeticError);
    py::register_exception<AccuracyError>(m, "AccuracyError", PyExc_ArithmeticError);

    py::class_<KGrid>(m, "KGrid")
        .def(py::init<double, double, std::size_t>(), py::arg("k_min"), py::arg("k_max"),
             py::arg("n"))
        .def_readonly("k_min", &KGrid::k_min)
        .def_readonly("k_max", &KGrid::k_max)
        .def_readonly("n", &KGrid::n)
        .def("spacing", &KGrid::spacing)
        .def("nodes", [](const KGrid& g) { return to_array_d(g.nodes()); });

    py::class_<GaussianEnvelope>(m, "GaussianEnvelope")
        .def(py::init<double, double, double>(), py::arg("k_c"), py::arg("sigma"),
             py::arg("t_i") = 0.0)
        .def_readwrite("k_c", &GaussianEnvelope::k_c)
        .def_readwrite("sigma", &GaussianEnvelope::sigma)
        .def_readwrite("t_i", &GaussianEnvelope::t_i);

    py::class_<TleParams>(m, "TleParams")
        .def(py::init<double, double, double>(), py::arg("omega_e") = 0.0,
             py::arg("Gamma") = 1.0, py::arg("gamma") = 0.0)
        .def_readwrite("omega_e", &TleParams::omega_e)
        .def_readwrite("Gamma", &TleParams::Gamma)
        .def_readwrite("gamma", &TleParams::gamma);

    py::class_<JcParams>(m, "JcParams")
        .def(py::init<double, double, double, double, double, double>(),
             py::arg("omega_c") = 0.0, py::arg("omega_e") = 0.0, py::arg("g") = 0.0,
             py::arg("Gamma") = 1.0, py::arg("gamma_c") = 0.0, py::arg("gamma_e") = 0.0)
        .def_readwrite("omega_c", &JcParams::omega_c)
        .def_readwrite("omega_e", &JcParams::omega_e)
        .def_readwrite("g", &JcParams::g)
        .def_readwrite("Gamma", &JcParams::Gamma)
        .def_readwrite("gamma_c", &JcParams::gamma_c)
        .def_readwrite("gamma_e", &JcParams::gamma_e);

    py::class_<PteParams>(m, "PteParams")
        .def(py::init<double>(), py::arg("V"))
        .def_readwrite("V", &PteParams::V)
        .def("in_canonical_range", &PteParams::in_canonical_range);

    m.def("balanced_pte_strength", &balanced_pte_strength);
    m.def("envelope_eval", &envelope_eval, py::arg("env"), py::arg("k"));
    m.def(
        "pte_matrix",
        [](const PteParams& p) {
            const auto s = pte_matrix(p);
            return std::pair{s.t_B, s.r_B};
        },
        py::arg("pte"));
    m.def("effective_rate", &effective_rate, py::arg("Gamma"), py::arg("pte"));
    m.def("effective_resonance", &effective_resonance, py::arg("omega_e"), py::arg("Gamma"),
          py::arg("pte"));

    m.def("s1_tle", &s1_tle, py::arg("k"), py::arg("params"), py::arg("pte"));
    m.def("s1_jc", &s1_jc, py::arg("k"), py::arg("params"), py::arg("pte"));
    m.def("bound_state_tle", &bound_state_tle, py::arg("p1"), py::arg("p2"), py::arg("k1"),
          py::arg("k2"), py::arg("params"), py::arg("pte"));
    m.def("bound_state_jc", &bound_state_jc, py::arg("p1"), py::arg("p2"), py::arg("k1"),
          py::arg("k2"), py::arg("params"), py::arg("pte"));

    py::class_<SingleExcitationState>(m, "SingleExcitationState")
        .def_readonly("grid", &SingleExcitationState::grid)
        .def_readonly("chi", &SingleExcitationState::chi)
        .def_property_readonly(
            "xi_R", [](const SingleExcitationState& s) { return to_array(s.xi_R); })
        .def_property_readonly(
            "xi_L", [](const SingleExcitationState& s) { return to_array(s.xi_L); })
        .def_readonly("t", &SingleExcitationState::t);

    m.def("excited_emitter_state", &excited_emitter_state, py::arg("grid"),
          py::arg("t0") = 0.0);
    m.def("gaussian_photon_state", &gaussian_photon_state, py::arg("grid"), py::arg("env"));
    m.def("total_norm", &total_norm);
    m.def("chi_analytic", &chi_analytic, py::arg("init"), py::arg("params"), py::arg("pte"),
          py::arg("t"));
    m.def("ode_oracle", &ode_oracle, py::arg("init"), py::arg("params"), py::arg("pte"),
          py::arg("t_final"), py::arg("dt"));
    m.def(
        "envelope_analytic",
        [](const SingleExcitationState& init, const TleParams& params, const PteParams& pte,
           double t, double k) { return envelope_analytic(init, params, pte, t, k); },
        py::arg("init"), py::arg("params"), py::arg("pte"), py::arg("t"), py::arg("k"));
    m.def(
        "probability_trace",
        [](const SingleExcitationState& init, const TleParams& params, const PteParams& pte,
           const std::vector<double>& times, double dt) {
            const auto tr = probability_trace(init, params, pte, times, dt);
            py::dict out;
            out["times"] = to_array_d(tr.times);
            out["p_emitter"] = to_array_d(tr.p_emitter);
            out["p_right"] = to_array_d(tr.p_right);
            out["p_left"] = to_array_d(tr.p_left);
            return out;
        },
        py::arg("init"), py::arg("params"), py::arg("pte"), py::arg("times"),
        py::arg("dt") = 1e-3);
    m.def(
        "realspace_envelope",
        [](const std::vector<Complex>& xi, const KGrid& grid, const std::vector<double>& xs) {
            return to_array(realspace_envelope(xi, grid, xs));
        },
        py::arg("xi_k"), py::arg("grid"), py::arg("x_grid"));

    py::enum_<SwitchState>(m, "SwitchState")
        .value("ON", SwitchState::On)
        .value("OFF", SwitchState::Off)
        .value("NEITHER", SwitchState::Neither);

    py::class_<TwoPhotonSystem>(m, "TwoPhotonSystem")
        .def_static("tle", &TwoPhotonSystem::tle, py::arg("params"), py::arg("pte"))
        .def_static("jc", &TwoPhotonSystem::jc, py::arg("params"), py::arg("pte"))
        .def_static("cavity_surrogate", &TwoPhotonSystem::cavity_surrogate, py::arg("params"),
                    py::arg("pte"));

    m.def("two_photon_auto_grid", &two_photon_auto_grid, py::arg("env"), py::arg("omega_ref"),
          py::arg("Gamma"));
    m.def(
        "scatter_two_photon",
        [](const GaussianEnvelope& env, const TwoPhotonSystem& sys, const KGrid& grid,
           bool include_bound) {
            const auto out = scatter_two_photon({env}, sys, grid, {include_bound});
            py::dict d;
            d["p"] = to_array_d(out.grid.nodes());
            d["amp_LL"] = to_matrix(out.amp_LL, out.grid.n);
            d["amp_RR"] = to_matrix(out.amp_RR, out.grid.n);
            d["amp_LR"] = to_matrix(out.amp_LR, out.grid.n);
            d["p_LL"] = out.p_LL;
            d["p_RR"] = out.p_RR;
            d["p_LR"] = out.p_LR;
            return d;
        },
        py::arg("env"), py::arg("system"), py::arg("grid"), py::arg("include_bound") = true);
    m.def(
        "hom_sweep",
        [](const std::vector<double>& sigmas, const TwoPhotonSystem& sys, double k_c,
           double Gamma, double omega_ref) {
            const auto pts = hom_sweep(sigmas, sys, k_c, Gamma, omega_ref);
            std::vector<double> s, pc, pco;
            for (const auto& p : pts) {
                s.push_back(p.sigma);
                pc.push_back(p.p_counter);
                pco.push_back(p.p_co);
            }
            py::dict d;
            d["sigma"] = to_array_d(s);
            d["p_counter"] = to_array_d(pc);
            d["p_co"] = to_array_d(pco);
            return d;
        },
        py::arg("sigmas"), py::arg("system"), py::arg("k_c"), py::arg("Gamma"),
        py::arg("omega_ref"));
    m.def(
        "classify_quasi_mono",
        [](double k, const TleParams& params, const PteParams& pte, double tol) {
            return classify_quasi_mono(k, params, pte, tol);
        },
        py::arg("k"), py::arg("params"), py::arg("pte"), py::arg("tol"));
    m.def(
        "classify_quasi_mono_jc",
        [](double k, const JcParams& params, const PteParams& pte, double tol) {
            return classify_quasi_mono(k, params, pte, tol);
        },
        py::arg("k"), py::arg("params"), py::arg("pte"), py::arg("tol"));

    m.def("preset_names", &preset_names);
    m.def(
        "run_experiment",
        [](const std::string& name_or_json, const std::string& out_dir) {
            RunConfig cfg;
            if (!name_or_json.empty() && name_or_json.front() == '{')
                cfg = config_from_json(name_or_json);
            else
                cfg = preset_config(name_or_json);
            if (!out_dir.empty()) cfg.output_dir = out_dir;
            return run_experiment(cfg);
        },
        py::arg("preset_or_json"), py::arg("out_dir") = std::string{});

#ifdef FANOWAVE_VERSION
    m.attr("__version__") = FANOWAVE_VERSION;
#else
    m.attr("__version__") = "dev";
#endif
}
