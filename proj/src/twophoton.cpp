#include "fanowave/twophoton.hpp"

#include <algorithm>
#include <cmath>

namespace fano {

namespace {

constexpr double kSqrt2 = 1.4142135623730951;

double abs_t2(const std::pair<Complex, Complex>& tr) { return std::norm(tr.first); }

SwitchState classify(double t2, double tol) {
    if (std::abs(t2) <= tol || std::abs(t2 - 1.0) <= tol) return SwitchState::Off;
    if (std::abs(t2 - 0.5) <= tol) return SwitchState::On;
    return SwitchState::Neither;
}

}  // namespace

Complex TwoPhotonOutput::amp(Channel c, std::size_t i, std::size_t j) const {
    const auto& v = (c == Channel::LL) ? amp_LL : (c == Channel::RR) ? amp_RR : amp_LR;
    return v[i * grid.n + j];
}

TwoPhotonSystem TwoPhotonSystem::tle(const TleParams& params, const PteParams& pte) {
    params.validate();
    pte.validate();
    if (params.gamma != 0.0)
        throw UnsupportedConfigurationError(
            "TwoPhotonSystem::tle: two-photon scattering is derived lossless");
    TwoPhotonSystem sys;
    sys.tr = [params, pte](double k) { return s1_tle(k, params, pte); };
    sys.kernel = tle_bound_kernel(params, pte);
    return sys;
}

TwoPhotonSystem TwoPhotonSystem::jc(const JcParams& params, const PteParams& pte) {
    params.validate();
    pte.validate();
    if (params.gamma_c != 0.0 || params.gamma_e != 0.0)
        throw UnsupportedConfigurationError(
            "TwoPhotonSystem::jc: two-photon scattering is derived lossless");
    TwoPhotonSystem sys;
    sys.tr = [params, pte](double k) { return s1_jc(k, params, pte); };
    sys.kernel = jc_bound_kernel(params, pte);
    return sys;
}

TwoPhotonSystem TwoPhotonSystem::cavity_surrogate(const TleParams& params,
                                                  const PteParams& pte) {
    TwoPhotonSystem sys = tle(params, pte);
    sys.kernel = zero_bound_kernel();
    return sys;
}

KGrid two_photon_auto_grid(const GaussianEnvelope& env, double omega_ref, double Gamma) {
    env.validate();
    const double lo = std::min(env.k_c - 8.0 * env.sigma, omega_ref - 10.0 * Gamma);
    const double hi = std::max(env.k_c + 8.0 * env.sigma, omega_ref + 10.0 * Gamma);
    const double dp = std::min(env.sigma / 3.0, Gamma / 24.0);
    auto n = static_cast<std::size_t>(std::ceil((hi - lo) / dp)) + 1;
    if (n % 2 == 0) ++n;
    return KGrid(lo, hi, n);
}

TwoPhotonOutput scatter_two_photon(const TwoPhotonInput& input, const TwoPhotonSystem& system,
                                   const KGrid& grid, const ScatterOptions& options) {
    grid.validate();
    input.env.validate();
    if (!system.tr) throw InvalidParameterError("scatter_two_photon: missing t/r coefficients");

    const std::size_t n = grid.n;
    const double dk = grid.spacing();
    std::vector<double> p(n), w(n);
    std::vector<Complex> xi(n), t(n), r(n);
    for (std::size_t i = 0; i < n; ++i) {
        p[i] = grid.node(i);
        w[i] = grid.weight(i);
        xi[i] = envelope_eval(input.env, p[i]);
        const auto tr = system.tr(p[i]);
        t[i] = tr.first;
        r[i] = tr.second;
    }

    const double input_norm = quad_samples_abs2(xi, dk);
    if (input_norm < options.min_input_norm)
        throw ConfigurationError("scatter_two_photon: input norm on grid is " +
                                 std::to_string(input_norm) +
                                 "; the grid does not cover the envelope");

    // bound part on the energy diagonals E = p_i + p_j
    const bool with_bound = options.include_bound &&
                            system.kernel.amplitude_factor != Complex{0.0, 0.0};
    std::vector<Complex> bound;  // same layout as the amplitude matrices
    if (with_bound) {
        bound.assign(n * n, Complex{0.0, 0.0});
        const BoundKernel& kern = system.kernel;
        if (kern.separable()) {
            const std::size_t ne = 2 * n - 1;
            const std::size_t nt = kern.terms.size();
            // H_m(E) = int dk x_m(k) xi(k) xi(E-k); bound = 2 sum_m w_m(E) H_m(E)
            std::vector<Complex> h(ne, Complex{0.0, 0.0});
            std::vector<Complex> xk(n);
            for (std::size_t m = 0; m < nt; ++m) {
                for (std::size_t i = 0; i < n; ++i) xk[i] = kern.terms[m].k_factor(p[i]) * xi[i];
                for (std::size_t e = 0; e < ne; ++e) {
                    const double energy = 2.0 * grid.k_min + dk * static_cast<double>(e);
                    Complex acc{0.0, 0.0};
                    for (std::size_t i = 0; i < n; ++i) {
                        acc += w[i] * xk[i] * envelope_eval(input.env, energy - p[i]);
                    }
                    h[e] += kern.terms[m].energy_weight(energy) * acc;
                }
            }
            std::vector<Complex> outer(n);
            for (std::size_t i = 0; i < n; ++i) outer[i] = kern.outer(p[i]);
            const Complex pre = 2.0 * kern.amplitude_factor;
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < n; ++j)
                    bound[i * n + j] = pre * outer[i] * outer[j] * h[i + j];
        } else {
            if (!kern.eval)
                throw InvalidParameterError("scatter_two_photon: kernel has no evaluator");
            for (std::size_t i = 0; i < n; ++i) {
                for (std::size_t j = i; j < n; ++j) {
                    const double energy = p[i] + p[j];
                    Complex acc{0.0, 0.0};
                    for (std::size_t q = 0; q < n; ++q) {
                        acc += w[q] * kern.eval(p[i], p[j], p[q], energy - p[q]) * xi[q] *
                               envelope_eval(input.env, energy - p[q]);
                    }
                    bound[i * n + j] = kern.amplitude_factor * acc;
                    bound[j * n + i] = bound[i * n + j];
                }
            }
        }
    }

    TwoPhotonOutput out;
    out.grid = grid;
    out.amp_LL.resize(n * n);
    out.amp_RR.resize(n * n);
    out.amp_LR.resize(n * n);
    double sum_ll = 0.0, sum_rr = 0.0, sum_lr = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            const Complex xx = xi[i] * xi[j];
            const Complex b = with_bound ? bound[i * n + j] : Complex{0.0, 0.0};
            const Complex a_lr = (t[i] * t[j] + r[i] * r[j]) * xx + b;
            const Complex a_same = (t[i] * r[j] + r[i] * t[j]) * xx + b;
            out.amp_LR[i * n + j] = a_lr;
            out.amp_LL[i * n + j] = a_same / kSqrt2;
            out.amp_RR[i * n + j] = a_same / kSqrt2;
            const double ww = w[i] * w[j];
            sum_lr += ww * std::norm(a_lr);
            sum_ll += ww * 0.5 * std::norm(a_same);
            sum_rr += ww * 0.5 * std::norm(a_same);
        }
    }
    out.p_LL = sum_ll;
    out.p_RR = sum_rr;
    out.p_LR = sum_lr;
    return out;
}

std::vector<HomPoint> hom_sweep(std::span<const double> sigmas, const TwoPhotonSystem& system,
                                double k_c, double Gamma, double omega_ref) {
    std::vector<HomPoint> out;
    out.reserve(sigmas.size());
    for (double sigma : sigmas) {
        if (!(sigma > 0.0)) throw InvalidParameterError("hom_sweep: sigma must be > 0");
        const GaussianEnvelope env{k_c, sigma, 0.0};  // probabilities are t_i independent
        const KGrid grid = two_photon_auto_grid(env, omega_ref, Gamma);
        const TwoPhotonOutput res = scatter_two_photon({env}, system, grid);
        out.push_back({sigma, res.p_LR, res.p_LL + res.p_RR});
    }
    return out;
}

SwitchState classify_quasi_mono(double k, const TleParams& params, const PteParams& pte,
                                double tol) {
    if (!(tol > 0.0)) throw InvalidParameterError("classify_quasi_mono: tol must be > 0");
    return classify(abs_t2(s1_tle(k, params, pte)), tol);
}

SwitchState classify_quasi_mono(double k, const JcParams& params, const PteParams& pte,
                                double tol) {
    if (!(tol > 0.0)) throw InvalidParameterError("classify_quasi_mono: tol must be > 0");
    return classify(abs_t2(s1_jc(k, params, pte)), tol);
}

std::vector<double> two_photon_density(const TwoPhotonOutput& output, Channel channel) {
    const auto& amp = (channel == Channel::LL)   ? output.amp_LL
                      : (channel == Channel::RR) ? output.amp_RR
                                                 : output.amp_LR;
    std::vector<double> density(amp.size());
    std::transform(amp.begin(), amp.end(), density.begin(),
                   [](Complex a) { return std::norm(a); });
    return density;
}

}  // namespace fano
