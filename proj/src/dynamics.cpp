#include "fanowave/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace fano {

namespace {

constexpr double kPi = std::numbers::pi;

// (1 - exp(-z tau)) / z, series-expanded near z = 0 to avoid cancellation.
Complex phi_decay(Complex z, double tau) {
    const Complex w = z * tau;
    if (std::abs(w) < 1e-4) {
        return tau * (1.0 - w / 2.0 + w * w / 6.0 - w * w * w / 24.0);
    }
    return (1.0 - std::exp(-w)) / z;
}

void check_state(const SingleExcitationState& s) {
    s.grid.validate();
    if (s.xi_R.size() != s.grid.n || s.xi_L.size() != s.grid.n)
        throw InvalidParameterError("state envelopes must match the grid size");
    if (!is_finite(s.chi) || !is_finite(s.t))
        throw InvalidParameterError("state fields must be finite");
}

void require_lossless(const TleParams& params, const char* what) {
    if (params.gamma != 0.0)
        throw UnsupportedConfigurationError(
            std::string(what) + ": analytic form is derived for gamma = 0; use ode_oracle");
}

std::vector<double> simpson_weights(std::size_t n, double h) {
    // n odd (even number of intervals)
    std::vector<double> w(n, h / 3.0);
    for (std::size_t i = 1; i + 1 < n; ++i) w[i] *= (i % 2 == 1) ? 4.0 : 2.0;
    return w;
}

}  // namespace

SingleExcitationState excited_emitter_state(const KGrid& grid, double t0) {
    grid.validate();
    SingleExcitationState s;
    s.grid = grid;
    s.chi = 1.0;
    s.xi_R.assign(grid.n, Complex{0.0, 0.0});
    s.xi_L.assign(grid.n, Complex{0.0, 0.0});
    s.t = t0;
    return s;
}

SingleExcitationState gaussian_photon_state(const KGrid& grid, const GaussianEnvelope& env) {
    grid.validate();
    env.validate();
    SingleExcitationState s;
    s.grid = grid;
    s.chi = 0.0;
    s.xi_R.resize(grid.n);
    s.xi_L.assign(grid.n, Complex{0.0, 0.0});
    for (std::size_t i = 0; i < grid.n; ++i) s.xi_R[i] = envelope_eval(env, grid.node(i));
    s.t = env.t_i;
    return s;
}

double total_norm(const SingleExcitationState& state) {
    check_state(state);
    const double dk = state.grid.spacing();
    return std::norm(state.chi) + quad_samples_abs2(state.xi_R, dk) +
           quad_samples_abs2(state.xi_L, dk);
}

Complex chi_analytic(const SingleExcitationState& init, const TleParams& params,
                     const PteParams& pte, double t) {
    check_state(init);
    params.validate();
    require_lossless(params, "chi_analytic");
    if (t < init.t) throw InvalidParameterError("chi_analytic: requires t >= init.t");

    const double tau = t - init.t;
    const Complex gt = effective_rate(params.Gamma, pte);
    const Complex decay = std::exp(-(0.5 * gt + I * params.omega_e) * tau);

    Complex integral{0.0, 0.0};
    for (std::size_t i = 0; i < init.grid.n; ++i) {
        const double k = init.grid.node(i);
        const Complex xi0 = init.xi_R[i] + init.xi_L[i];
        if (xi0 == Complex{0.0, 0.0}) continue;
        const Complex z = 0.5 * gt + I * (params.omega_e - k);
        integral += init.grid.weight(i) * xi0 * std::exp(Complex{0.0, -k * tau}) *
                    phi_decay(z, tau);
    }
    return init.chi * decay -
           I * (gt / (2.0 * std::sqrt(kPi * params.Gamma))) * integral;
}

OdeEvolver::OdeEvolver(SingleExcitationState init, TleParams params, PteParams pte, double dt)
    : state_(std::move(init)), params_(params), pte_(pte), dt_(dt) {
    check_state(state_);
    params_.validate();
    pte_.validate();
    if (!(dt > 0.0) || !is_finite(dt))
        throw InvalidParameterError("OdeEvolver: dt must be positive and finite");
    const double k_abs = std::max(std::abs(state_.grid.k_min), std::abs(state_.grid.k_max));
    if (dt > 0.5 / k_abs)
        throw ConfigurationError(
            "OdeEvolver: dt exceeds the bandwidth bound 0.5/max|k|; refine the time step");
    work_ = state_;
    for (auto& v : k_R_) v.resize(state_.grid.n);
    for (auto& v : k_L_) v.resize(state_.grid.n);
}

void OdeEvolver::rhs(const SingleExcitationState& s, Complex& dchi,
                     std::vector<Complex>& dxi_R, std::vector<Complex>& dxi_L) const {
    const std::size_t n = s.grid.n;
    const double dk = s.grid.spacing();
    Complex sum_r = 0.5 * (s.xi_R.front() + s.xi_R.back());
    Complex sum_l = 0.5 * (s.xi_L.front() + s.xi_L.back());
    for (std::size_t i = 1; i + 1 < n; ++i) {
        sum_r += s.xi_R[i];
        sum_l += s.xi_L[i];
    }
    sum_r *= dk;
    sum_l *= dk;

    const double g0 = std::sqrt(params_.Gamma / (4.0 * kPi));
    const double vf = pte_.V / (2.0 * kPi);
    dchi = -I * (params_.omega_e * s.chi + g0 * (sum_r + sum_l)) - 0.5 * params_.gamma * s.chi;
    const Complex src = g0 * s.chi;
    const Complex pte_r = vf * sum_l;
    const Complex pte_l = vf * sum_r;
    for (std::size_t i = 0; i < n; ++i) {
        const double k = s.grid.node(i);
        dxi_R[i] = -I * (k * s.xi_R[i] + src + pte_r);
        dxi_L[i] = -I * (k * s.xi_L[i] + src + pte_l);
    }
}

void OdeEvolver::step(double h) {
    const std::size_t n = state_.grid.n;
    rhs(state_, k_chi_[0], k_R_[0], k_L_[0]);

    auto stage = [&](double frac, int from, int to) {
        work_.chi = state_.chi + frac * h * k_chi_[from];
        for (std::size_t i = 0; i < n; ++i) {
            work_.xi_R[i] = state_.xi_R[i] + frac * h * k_R_[from][i];
            work_.xi_L[i] = state_.xi_L[i] + frac * h * k_L_[from][i];
        }
        rhs(work_, k_chi_[to], k_R_[to], k_L_[to]);
    };
    stage(0.5, 0, 1);
    stage(0.5, 1, 2);
    stage(1.0, 2, 3);

    const double w = h / 6.0;
    state_.chi += w * (k_chi_[0] + 2.0 * k_chi_[1] + 2.0 * k_chi_[2] + k_chi_[3]);
    for (std::size_t i = 0; i < n; ++i) {
        state_.xi_R[i] += w * (k_R_[0][i] + 2.0 * k_R_[1][i] + 2.0 * k_R_[2][i] + k_R_[3][i]);
        state_.xi_L[i] += w * (k_L_[0][i] + 2.0 * k_L_[1][i] + 2.0 * k_L_[2][i] + k_L_[3][i]);
    }
}

void OdeEvolver::advance_to(double t) {
    if (t < state_.t - 1e-12)
        throw InvalidParameterError("OdeEvolver: cannot advance backwards");
    const double span = t - state_.t;
    const auto whole = static_cast<long long>(std::floor(span / dt_ + 1e-9));
    for (long long i = 0; i < whole; ++i) step(dt_);
    state_.t += static_cast<double>(whole) * dt_;
    const double rest = t - state_.t;
    if (rest > 1e-12) {
        step(rest);
        state_.t = t;
    } else {
        state_.t = t;
    }
}

SingleExcitationState ode_oracle(const SingleExcitationState& init, const TleParams& params,
                                 const PteParams& pte, double t_final, double dt) {
    if (t_final < init.t) throw InvalidParameterError("ode_oracle: t_final before init.t");
    const double norm0 = total_norm(init);
    OdeEvolver evolver(init, params, pte, dt);
    evolver.advance_to(t_final);
    if (params.gamma == 0.0) {
        const double drift = std::abs(total_norm(evolver.state()) - norm0);
        if (drift > 1e-3)
            throw AccuracyError("ode_oracle: norm drift " + std::to_string(drift) +
                                " exceeds 1e-3; refine dt or the grid");
    }
    return evolver.state();
}

ProbabilityTrace probability_trace(const SingleExcitationState& init, const TleParams& params,
                                   const PteParams& pte, std::span<const double> times,
                                   double dt) {
    if (times.empty()) throw InvalidParameterError("probability_trace: empty time list");
    for (std::size_t i = 1; i < times.size(); ++i)
        if (!(times[i] > times[i - 1]))
            throw InvalidParameterError("probability_trace: times must be increasing");
    if (times.front() < init.t - 1e-12)
        throw InvalidParameterError("probability_trace: times must start at or after init.t");

    OdeEvolver evolver(init, params, pte, dt);
    ProbabilityTrace trace;
    trace.times.reserve(times.size());
    const double dk = init.grid.spacing();
    for (double t : times) {
        evolver.advance_to(t);
        const auto& s = evolver.state();
        trace.times.push_back(t);
        trace.p_emitter.push_back(std::norm(s.chi));
        trace.p_right.push_back(quad_samples_abs2(s.xi_R, dk));
        trace.p_left.push_back(quad_samples_abs2(s.xi_L, dk));
    }
    return trace;
}

ChiCache::ChiCache(const SingleExcitationState& init, const TleParams& params,
                   const PteParams& pte, double t_final, double spacing) {
    check_state(init);
    params.validate();
    require_lossless(params, "ChiCache");
    if (t_final <= init.t) throw InvalidParameterError("ChiCache: t_final must exceed init.t");
    const double target = spacing > 0.0 ? spacing : 0.01 / params.Gamma;
    if (target > 0.01 / params.Gamma + 1e-15)
        throw AccuracyError("ChiCache: spacing must not exceed 0.01/Gamma");

    const double tau = t_final - init.t;
    const auto half = static_cast<std::size_t>(std::ceil(tau / target / 2.0));
    const std::size_t n = 2 * std::max<std::size_t>(half, 1) + 1;
    t0_ = init.t;
    h_ = tau / static_cast<double>(n - 1);
    chi_.resize(n);
    chi_dot_.resize(n);
    J_.resize(n);
    J_L_.resize(n);
    I_.resize(n);
    simpson_ = simpson_weights(n, h_);

    const Complex gt = effective_rate(params.Gamma, pte);
    const std::size_t nk = init.grid.n;
    std::vector<Complex> xi0(nk), xil0(nk);
    for (std::size_t j = 0; j < nk; ++j) {
        xi0[j] = init.xi_R[j] + init.xi_L[j];
        xil0[j] = init.xi_L[j];
    }
    for (std::size_t m = 0; m < n; ++m) {
        const double tp = t0_ + h_ * static_cast<double>(m);
        const double dtp = tp - t0_;
        Complex j_acc{0.0, 0.0};
        Complex jl_acc{0.0, 0.0};
        for (std::size_t j = 0; j < nk; ++j) {
            const double k = init.grid.node(j);
            const Complex ph = std::exp(Complex{0.0, -k * dtp});
            const double w = init.grid.weight(j);
            j_acc += w * xi0[j] * ph;
            jl_acc += w * xil0[j] * ph;
        }
        J_[m] = j_acc;
        J_L_[m] = jl_acc;
        chi_[m] = chi_analytic(init, params, pte, tp);
        chi_dot_[m] = -(I * params.omega_e + 0.5 * gt) * chi_[m] -
                      I * (gt / (2.0 * std::sqrt(kPi * params.Gamma))) * J_[m];
        I_[m] = (J_[m] - I * std::sqrt(kPi * params.Gamma) * chi_[m]) /
                Complex{1.0, 0.5 * pte.V};
    }
}

std::pair<Complex, Complex> envelope_analytic(const ChiCache& cache,
                                              const SingleExcitationState& init,
                                              const TleParams& params, const PteParams& pte,
                                              double t, double k) {
    check_state(init);
    params.validate();
    require_lossless(params, "envelope_analytic");
    if (cache.spacing() > 0.01 / params.Gamma + 1e-15)
        throw AccuracyError("envelope_analytic: chi cache spacing exceeds 0.01/Gamma");
    if (std::abs(t - cache.t_final()) > 1e-9)
        throw InvalidParameterError("envelope_analytic: t must equal the cache end time");

    const double tau = t - init.t;
    const std::size_t n = cache.chi_.size();
    Complex t1{0.0, 0.0}, t2{0.0, 0.0}, t3{0.0, 0.0}, t4{0.0, 0.0};
    for (std::size_t m = 0; m < n; ++m) {
        const double tp = cache.t0_ + cache.h_ * static_cast<double>(m);
        const Complex ph = cache.simpson_[m] * std::exp(Complex{0.0, k * (tp - t)});
        t1 += ph * cache.chi_[m];
        t2 += ph * cache.chi_dot_[m];
        t3 += ph * cache.J_L_[m];
        t4 += ph * cache.I_[m];
    }

    const double G = params.Gamma;
    const double V = pte.V;
    const Complex one_m_ivh{1.0, -0.5 * V};
    // interpolate the initial envelopes at k (piecewise linear on the grid)
    auto sample = [&](const std::vector<Complex>& f) -> Complex {
        const double pos = (k - init.grid.k_min) / init.grid.spacing();
        if (pos <= 0.0) return f.front();
        if (pos >= static_cast<double>(init.grid.n - 1)) return f.back();
        const auto j = static_cast<std::size_t>(pos);
        const double frac = pos - static_cast<double>(j);
        return (1.0 - frac) * f[j] + frac * f[j + 1];
    };
    const Complex xi_r0 = sample(init.xi_R);
    const Complex xi0 = xi_r0 + sample(init.xi_L);
    const Complex free_phase = std::exp(Complex{0.0, -k * tau});

    const Complex xi = xi0 * free_phase -
                       I * (std::sqrt(G) / std::sqrt(kPi)) * (1.0 - V * params.omega_e / G) * t1 +
                       (V / std::sqrt(kPi * G)) * t2;
    const Complex xi_r = xi_r0 * free_phase -
                         I * std::sqrt(0.5 * G / (2.0 * kPi)) *
                             (Complex{1.0, -V} / one_m_ivh) * t1 -
                         (I / (2.0 * kPi)) * (V / one_m_ivh) * t3 -
                         (1.0 / kPi) * (0.25 * V * V / one_m_ivh) * t4;
    return {xi_r, xi - xi_r};
}

std::pair<Complex, Complex> envelope_analytic(const SingleExcitationState& init,
                                              const TleParams& params, const PteParams& pte,
                                              double t, double k) {
    ChiCache cache(init, params, pte, t);
    return envelope_analytic(cache, init, params, pte, t, k);
}

std::vector<Complex> realspace_envelope(std::span<const Complex> xi_k, const KGrid& grid,
                                        std::span<const double> x_grid) {
    grid.validate();
    if (xi_k.size() != grid.n)
        throw InvalidParameterError("realspace_envelope: samples must match the grid");
    const double nyquist = kPi / grid.spacing();
    for (double x : x_grid)
        if (std::abs(x) > nyquist)
            throw ConfigurationError(
                "realspace_envelope: |x| exceeds the Nyquist bound pi/spacing (aliasing)");

    std::vector<Complex> out(x_grid.size());
    const double norm = 1.0 / std::sqrt(2.0 * kPi);
    for (std::size_t m = 0; m < x_grid.size(); ++m) {
        Complex acc{0.0, 0.0};
        for (std::size_t j = 0; j < grid.n; ++j) {
            acc += grid.weight(j) * xi_k[j] *
                   std::exp(Complex{0.0, grid.node(j) * x_grid[m]});
        }
        out[m] = norm * acc;
    }
    return out;
}

}  // namespace fano
