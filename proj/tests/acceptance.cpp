// Acceptance suite: one pass/fail line per criterion, pinned tolerances.
// Returns the number of failed criteria.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include <Eigen/SVD>

#include "fanowave/dynamics.hpp"
#include "fanowave/experiments.hpp"
#include "fanowave/smatrix.hpp"
#include "fanowave/twophoton.hpp"

using namespace fano;
namespace fs = std::filesystem;

namespace {

int g_failures = 0;

void report(int idx, const std::string& name, bool pass, const std::string& detail) {
    std::printf("%s  criterion %2d  %-28s %s\n", pass ? "PASS" : "FAIL", idx, name.c_str(),
                detail.c_str());
    std::fflush(stdout);
    if (!pass) ++g_failures;
}

void run_criterion(int idx, const std::string& name,
                   const std::function<std::pair<bool, std::string>()>& body) {
    const auto start = std::chrono::steady_clock::now();
    bool pass = false;
    std::string detail;
    try {
        std::tie(pass, detail) = body();
    } catch (const std::exception& e) {
        pass = false;
        detail = std::string("exception: ") + e.what();
    }
    const double sec =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    char buf[64];
    std::snprintf(buf, sizeof(buf), "  [%.1f s]", sec);
    report(idx, name, pass, detail + buf);
}

const double kVb = balanced_pte_strength();
const TleParams kTle{0.0, 1.0, 0.0};

std::string fmt(const char* f, double a, double b = 0, double c = 0, double d = 0) {
    char buf[256];
    std::snprintf(buf, sizeof(buf), f, a, b, c, d);
    return buf;
}

double fit_rate(const std::vector<double>& t, const std::vector<double>& p) {
    double st = 0, sl = 0, stt = 0, stl = 0;
    const auto n = static_cast<double>(t.size());
    for (std::size_t i = 0; i < t.size(); ++i) {
        st += t[i];
        sl += std::log(p[i]);
        stt += t[i] * t[i];
        stl += t[i] * std::log(p[i]);
    }
    return -(n * stl - st * sl) / (n * stt - st * st);
}

// ---- criterion bodies -----------------------------------------------------

std::pair<bool, std::string> c1_pte_unitarity() {
    double worst = 0.0;
    for (int i = 0; i < 1000; ++i) {
        const double v = 2.0 * i / 999.0;
        const auto s = pte_matrix({v});
        worst = std::max(worst, std::abs(std::norm(s.t_B) + std::norm(s.r_B) - 1.0));
    }
    const double t2 = std::norm(pte_matrix({kVb}).t_B);
    const bool pass = worst < 1e-12 && std::abs(t2 - 0.5) < 1e-12;
    return {pass, fmt("max |t2+r2-1| = %.2e, balanced |t|^2-1/2 = %.2e", worst, t2 - 0.5)};
}

std::pair<bool, std::string> c2_purcell() {
    const KGrid grid(-128.0, 128.0, 4097);
    double worst_rate = 0.0, worst_peak = 0.0;
    for (double v : {0.0, 1.0, 2.0}) {
        const double expect = 1.0 / (1.0 + 0.25 * v * v);
        OdeEvolver evolver(excited_emitter_state(grid), kTle, {v}, 2e-3);
        std::vector<double> ts, ps;
        for (double u = 0.5; u <= 6.0; u += 0.25) {
            evolver.advance_to(u / expect);
            ts.push_back(u / expect);
            ps.push_back(std::norm(evolver.state().chi));
        }
        worst_rate = std::max(worst_rate, std::abs(fit_rate(ts, ps) / expect - 1.0));

        evolver.advance_to(16.0 / expect);
        const auto& xi = evolver.state().xi_R;
        std::size_t imax = 0;
        for (std::size_t i = 0; i < grid.n; ++i)
            if (std::norm(xi[i]) > std::norm(xi[imax])) imax = i;
        const double shift = effective_resonance(0.0, 1.0, {v});
        worst_peak = std::max(worst_peak, std::abs(grid.node(imax) - shift) / grid.spacing());
    }
    const bool pass = worst_rate < 0.01 && worst_peak <= 1.0;
    return {pass, fmt("max rate err = %.3f%%, peak offset = %.2f spacings", 100 * worst_rate,
                      worst_peak)};
}

std::pair<bool, std::string> c3_analytic_vs_oracle() {
    double worst = 0.0;
    for (double v : {0.0, kVb, 2.0}) {
        const Complex gt = effective_rate(1.0, PteParams{v});
        const double sigma = 0.73 * gt.real();
        const GaussianEnvelope env{0.5 * gt.imag(), sigma, -5.0 / sigma};
        const KGrid wide(-320.0, 320.0, 6401);
        OdeEvolver evolver(gaussian_photon_state(wide, env), kTle, {v}, 1e-3);
        const KGrid fine(env.k_c - 10.0 * sigma, env.k_c + 10.0 * sigma, 4097);
        const auto ref = gaussian_photon_state(fine, env);
        for (double t = 0.0; t <= 20.0; t += 0.5) {
            evolver.advance_to(t);
            worst = std::max(worst,
                             std::abs(evolver.state().chi - chi_analytic(ref, kTle, {v}, t)));
        }
    }
    return {worst < 1e-3, fmt("max |chi_an - chi_ode| = %.2e (3 configs, t in [0,20])", worst)};
}

std::pair<bool, std::string> c4_peak_excitation() {
    auto peak = [](double v, double sigma) {
        const Complex gt = effective_rate(1.0, PteParams{v});
        const GaussianEnvelope env{0.5 * gt.imag(), sigma, -5.0 / sigma};
        const KGrid fine(env.k_c - 10.0 * sigma, env.k_c + 10.0 * sigma, 4097);
        const auto init = gaussian_photon_state(fine, env);
        double best = 0.0, bt = 0.0;
        for (double t = -1.5; t <= 4.0; t += 0.05) {
            const double p = std::norm(chi_analytic(init, kTle, {v}, t));
            if (p > best) {
                best = p;
                bt = t;
            }
        }
        for (double t = bt - 0.05; t <= bt + 0.05; t += 0.005)
            best = std::max(best, std::norm(chi_analytic(init, kTle, {v}, t)));
        return best;
    };

    // golden-section max over sigma near the seed 0.73
    double a = 0.55, b = 0.95;
    const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
    double x1 = b - gr * (b - a), x2 = a + gr * (b - a);
    double f1 = peak(0.0, x1), f2 = peak(0.0, x2);
    while (b - a > 2e-3) {
        if (f1 < f2) {
            a = x1; x1 = x2; f1 = f2;
            x2 = a + gr * (b - a); f2 = peak(0.0, x2);
        } else {
            b = x2; x2 = x1; f2 = f1;
            x1 = b - gr * (b - a); f1 = peak(0.0, x1);
        }
    }
    const double sigma_star = 0.5 * (a + b);
    const double p0 = std::max(f1, f2);

    bool pass = std::abs(p0 - 0.40) < 0.005;
    std::string detail = fmt("V=0: max|chi|^2 = %.4f at sigma = %.3f", p0, sigma_star);
    for (double v : {kVb, 2.0}) {
        const double scaled = sigma_star * effective_rate(1.0, PteParams{v}).real();
        const double p = peak(v, scaled);
        pass = pass && std::abs(p - 0.40) < 0.01;
        detail += fmt("; V=%.3f: %.4f", v, p);
    }
    return {pass, detail};
}

std::pair<bool, std::string> c5_single_photon() {
    double worst_flux = 0.0, worst_match = 0.0, worst_g0 = 0.0;
    const JcParams jc{0.1, 0.0, 0.7, 1.0, 0.0, 0.0};
    for (double v : {0.0, 1.0, kVb, 2.0}) {
        const PteParams pte{v};
        const auto io_t = make_tle_io(kTle, pte);
        const auto io_j = make_jc_io(jc, pte);
        for (int i = 0; i <= 1000; ++i) {
            const double k = -10.0 + 0.02 * i;
            const auto [t1, r1] = s1_tle(k, kTle, pte);
            const auto [t2, r2] = s1_jc(k, jc, pte);
            worst_flux = std::max({worst_flux, std::abs(std::norm(t1) + std::norm(r1) - 1.0),
                                   std::abs(std::norm(t2) + std::norm(r2) - 1.0)});
            const auto st = s1_general(io_t, k);
            const auto sj = s1_general(io_j, k);
            worst_match = std::max({worst_match, std::abs(st(0, 0) - t1),
                                    std::abs(st(1, 0) - r1), std::abs(sj(0, 0) - t2),
                                    std::abs(sj(1, 0) - r2)});
        }
    }
    // JC zeros at omega_e +- g (V=0, lossless, omega_c=omega_e)
    const JcParams jz{0.0, 0.0, 1.0, 1.0, 0.0, 0.0};
    const double z1 = std::norm(s1_jc(1.0, jz, {0.0}).first);
    const double z2 = std::norm(s1_jc(-1.0, jz, {0.0}).first);
    // JC(g=0) == TLE under omega_c -> omega_e, gamma_c -> gamma
    const JcParams j0{0.25, 4.2, 0.0, 1.0, 0.13, 0.13};
    const TleParams t0{0.25, 1.0, 0.13};
    for (int i = 0; i <= 1000; ++i) {
        const double k = -10.0 + 0.02 * i;
        worst_g0 = std::max(worst_g0,
                            std::abs(s1_jc(k, j0, {kVb}).first - s1_tle(k, t0, {kVb}).first));
    }
    const bool pass = worst_flux < 1e-10 && worst_match < 1e-12 && z1 < 1e-12 &&
                      z2 < 1e-12 && worst_g0 < 1e-12;
    return {pass, fmt("flux %.1e, matrix-vs-closed %.1e, JC zeros %.1e, g=0 diff %.1e",
                      worst_flux, worst_match, std::max(z1, z2), worst_g0)};
}

std::pair<bool, std::string> c6_switch_points() {
    const double on1 = std::norm(s1_tle(0.5, kTle, {0.0}).first);
    const double on2 = std::norm(s1_tle(-0.5, kTle, {0.0}).first);
    const PteParams bal{kVb};
    const double shift = effective_resonance(0.0, 1.0, bal);
    const double off = (2.0 + std::sqrt(2.0)) / 8.0;
    const double z = std::norm(s1_tle(shift + off, kTle, bal).first);
    const double u = std::norm(s1_tle(shift - off, kTle, bal).first);
    const double worst = std::max({std::abs(on1 - 0.5), std::abs(on2 - 0.5), z,
                                   std::abs(u - 1.0)});
    return {worst < 1e-9, fmt("max deviation at the four switch points = %.1e", worst)};
}

TwoPhotonOutput scatter_cfg(double v, double sigma, bool bound, std::size_t n_override = 0) {
    const PteParams pte{v};
    const double om_t = effective_resonance(0.0, 1.0, pte);
    const GaussianEnvelope env{om_t, sigma, 0.0};
    KGrid grid = two_photon_auto_grid(env, om_t, 1.0);
    if (n_override) grid = KGrid(grid.k_min, grid.k_max, n_override);
    const auto sys = bound ? TwoPhotonSystem::tle(kTle, pte)
                           : TwoPhotonSystem::cavity_surrogate(kTle, pte);
    return scatter_two_photon({env}, sys, grid);
}

std::pair<bool, std::string> c7_conservation() {
    double worst = 0.0, worst_doubled = 0.0;
    for (double v : {0.0, kVb, 2.0}) {
        for (double sigma : {0.2, 0.43, 1.0}) {
            const auto base = scatter_cfg(v, sigma, true);
            worst = std::max(worst, std::abs(base.p_LL + base.p_RR + base.p_LR - 1.0));
            const auto fine = scatter_cfg(v, sigma, true, 2 * base.grid.n - 1);
            worst_doubled =
                std::max(worst_doubled, std::abs(fine.p_LL + fine.p_RR + fine.p_LR - 1.0));
        }
    }
    const bool pass = worst < 2e-3 && worst_doubled < 5e-4;
    return {pass, fmt("|sum-1| = %.1e base, %.1e after grid doubling", worst, worst_doubled)};
}

std::pair<bool, std::string> c8_hom_headlines() {
    auto golden_min = [](const std::function<double(double)>& f, double a, double b) {
        const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
        double x1 = b - gr * (b - a), x2 = a + gr * (b - a);
        double f1 = f(x1), f2 = f(x2);
        while (b - a > 2e-3) {
            if (f1 > f2) {
                a = x1; x1 = x2; f1 = f2;
                x2 = a + gr * (b - a); f2 = f(x2);
            } else {
                b = x2; x2 = x1; f2 = f1;
                x1 = b - gr * (b - a); f1 = f(x1);
            }
        }
        return std::pair{0.5 * (a + b), std::min(f1, f2)};
    };

    const auto [s0, p0] =
        golden_min([](double s) { return scatter_cfg(0.0, s, true).p_LR; }, 0.2, 0.9);
    const auto [sb, pb] = golden_min(
        [](double s) {
            const auto out = scatter_cfg(kVb, s, true);
            return out.p_LL + out.p_RR;
        },
        0.1, 0.8);
    const auto [sl, pl] =
        golden_min([](double s) { return scatter_cfg(0.0, s, false).p_LR; }, 0.3, 1.6);

    const bool pass = std::abs(p0 - 0.11) < 0.01 && std::abs(s0 - 0.43) < 0.03 &&
                      std::abs(pb - 0.11) < 0.01 && std::abs(sb - 0.36) < 0.03 &&
                      std::abs(pl - 0.5) < 0.02;
    return {pass, fmt("V=0: %.4f@%.3f; bal: %.4f@%.3f", p0, s0, pb, sb) +
                      fmt("; linear floor %.4f@%.3f", pl, sl)};
}

std::pair<bool, std::string> c9_bound_kernel() {
    // exchange symmetry, bitwise
    bool sym = true;
    const JcParams jc{0.1, -0.2, 0.9, 1.0, 0.0, 0.0};
    for (int i = 0; i < 40; ++i) {
        const double p1 = -3.0 + 0.17 * i, p2 = 2.5 - 0.13 * i;
        const double k1 = -1.0 + 0.11 * i, k2 = 1.7 - 0.09 * i;
        sym = sym &&
              bound_state_tle(p1, p2, k1, k2, kTle, {kVb}) ==
                  bound_state_tle(p2, p1, k1, k2, kTle, {kVb}) &&
              bound_state_tle(p1, p2, k1, k2, kTle, {kVb}) ==
                  bound_state_tle(p1, p2, k2, k1, kTle, {kVb}) &&
              bound_state_jc(p1, p2, k1, k2, jc, {kVb}) ==
                  bound_state_jc(p2, p1, k1, k2, jc, {kVb}) &&
              bound_state_jc(p1, p2, k1, k2, jc, {kVb}) ==
                  bound_state_jc(p1, p2, k2, k1, jc, {kVb});
    }

    // resonant value: G(omega_e) = -i sqrt(2/Gamma) gives M = 4i/pi
    const Complex m = bound_state_tle(0.0, 0.0, 0.0, 0.0, kTle, {0.0});
    const double res_dev = std::abs(m - Complex{0.0, 4.0 / std::numbers::pi});

    // rank-1 residual of the quasi-monochromatic linear amplitude
    const double sigma = 2.5e-4;
    const GaussianEnvelope env{0.0, sigma, 0.0};
    const KGrid grid(-10.0 * sigma, 10.0 * sigma, 129);
    const auto out =
        scatter_two_photon({env}, TwoPhotonSystem::cavity_surrogate(kTle, {0.0}), grid);
    Eigen::MatrixXcd a(grid.n, grid.n);
    for (std::size_t i = 0; i < grid.n; ++i)
        for (std::size_t j = 0; j < grid.n; ++j) a(i, j) = out.amp(Channel::LR, i, j);
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(a);
    const auto& sv = svd.singularValues();
    double tail = 0.0, total = 0.0;
    for (Eigen::Index i = 0; i < sv.size(); ++i) {
        total += sv(i) * sv(i);
        if (i > 0) tail += sv(i) * sv(i);
    }
    const double residual = std::sqrt(tail / total);

    const bool pass = sym && res_dev < 1e-12 && residual < 1e-6;
    return {pass, std::string(sym ? "symmetry exact" : "symmetry BROKEN") +
                      fmt(", |M - 4i/pi| = %.1e, rank-1 residual = %.1e", res_dev, residual)};
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::pair<bool, std::string> c10_determinism() {
    const fs::path root = fs::temp_directory_path() / "fanowave_acceptance";
    fs::remove_all(root);
    int compared = 0;
    bool all_equal = true;
    std::string first_mismatch;
    for (const auto& name : preset_names()) {
        RunConfig cfg = preset_config(name);
        for (int run = 0; run < 2; ++run) {
            cfg.output_dir = (root / (name + "_" + std::to_string(run))).string();
            run_experiment(cfg);
        }
        for (const auto& entry : fs::directory_iterator(root / (name + "_0"))) {
            if (entry.path().extension() != ".csv") continue;
            ++compared;
            const auto other = root / (name + "_1") / entry.path().filename();
            if (slurp(entry.path()) != slurp(other)) {
                all_equal = false;
                if (first_mismatch.empty())
                    first_mismatch = name + "/" + entry.path().filename().string();
            }
        }
    }
    fs::remove_all(root);
    std::string detail = fmt("%d CSV files byte-compared across reruns", compared);
    if (!all_equal) detail += ", mismatch at " + first_mismatch;
    return {all_equal && compared > 0, detail};
}

}  // namespace

int main() {
    std::printf("fanowave acceptance suite\n");
    run_criterion(1, "pte-unitarity", c1_pte_unitarity);
    run_criterion(2, "purcell-scaling", c2_purcell);
    run_criterion(3, "analytic-vs-oracle", c3_analytic_vs_oracle);
    run_criterion(4, "peak-excitation", c4_peak_excitation);
    run_criterion(5, "single-photon-smatrix", c5_single_photon);
    run_criterion(6, "switch-points", c6_switch_points);
    run_criterion(7, "two-photon-conservation", c7_conservation);
    run_criterion(8, "hom-headlines", c8_hom_headlines);
    run_criterion(9, "bound-kernel", c9_bound_kernel);
    run_criterion(10, "cli-determinism", c10_determinism);
    std::printf("%d of 10 criteria failed\n", g_failures);
    return g_failures;
}
