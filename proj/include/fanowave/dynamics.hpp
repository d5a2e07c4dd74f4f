// Exact single-excitation dynamics of the TLE + PTE waveguide: closed-form
// emitter amplitude and envelope reconstruction, a discretized-ODE oracle
// (fixed-step RK4 on a k-grid), probability time series and the real-space
// rendering of spectral envelopes.
#pragma once

#include <span>
#include <utility>
#include <vector>

#include "fanowave/core.hpp"
#include "fanowave/pte.hpp"

namespace fano {

/// Emitter amplitude chi plus right/left spectral envelopes sampled on a
/// shared grid, at time t. Lossless norm: |chi|^2 + int(|xi_R|^2+|xi_L|^2) = 1.
struct SingleExcitationState {
    KGrid grid;
    Complex chi{0.0, 0.0};
    std::vector<Complex> xi_R;
    std::vector<Complex> xi_L;
    double t{0.0};
};

SingleExcitationState excited_emitter_state(const KGrid& grid, double t0 = 0.0);
/// Right-propagating photon with the given envelope; state time = env.t_i.
SingleExcitationState gaussian_photon_state(const KGrid& grid, const GaussianEnvelope& env);

double total_norm(const SingleExcitationState& state);

/// Closed-form chi(t): decaying initial term plus the driven integral over
/// the initial envelope, evaluated by trapezoid on the state grid. Lossless
/// only (gamma = 0); accuracy requires the grid to resolve the phase
/// exp(-ik(t-t_i)), i.e. spacing*(t-t_i) well below 1.
Complex chi_analytic(const SingleExcitationState& init, const TleParams& params,
                     const PteParams& pte, double t);

/// Fixed-step RK4 integrator for the coupled (chi, xi_R, xi_L) equations,
/// including the -gamma/2 damping of chi when params.gamma > 0.
class OdeEvolver {
public:
    OdeEvolver(SingleExcitationState init, TleParams params, PteParams pte, double dt);

    /// Advance with whole steps of dt plus one shorter landing step.
    void advance_to(double t);
    const SingleExcitationState& state() const { return state_; }
    double dt() const { return dt_; }

private:
    void rhs(const SingleExcitationState& s, Complex& dchi, std::vector<Complex>& dxi_R,
             std::vector<Complex>& dxi_L) const;
    void step(double h);

    SingleExcitationState state_;
    TleParams params_;
    PteParams pte_;
    double dt_;
    // stage buffers
    SingleExcitationState work_;
    Complex k_chi_[4];
    std::vector<Complex> k_R_[4];
    std::vector<Complex> k_L_[4];
};

/// Advance init to t_final; throws ConfigurationError if dt violates the
/// bandwidth bound dt <= 0.5/max|k| and AccuracyError if the lossless norm
/// drifts by more than 1e-3.
SingleExcitationState ode_oracle(const SingleExcitationState& init, const TleParams& params,
                                 const PteParams& pte, double t_final, double dt);

struct ProbabilityTrace {
    std::vector<double> times;
    std::vector<double> p_emitter;
    std::vector<double> p_right;
    std::vector<double> p_left;
};

/// |chi(t)|^2 and the channel quadratures along an ODE run.
ProbabilityTrace probability_trace(const SingleExcitationState& init, const TleParams& params,
                                   const PteParams& pte, std::span<const double> times,
                                   double dt = 1e-3);

/// Uniform-time cache of chi(t'), chi'(t') and the propagated initial-envelope
/// integrals J, J_L and I = int dk xi(t',k) needed by envelope_analytic.
/// Simpson quadrature in t' requires the cache to end exactly at the
/// evaluation time.
class ChiCache {
public:
    ChiCache(const SingleExcitationState& init, const TleParams& params, const PteParams& pte,
             double t_final, double spacing = -1.0);

    double t0() const { return t0_; }
    double t_final() const { return t0_ + h_ * static_cast<double>(chi_.size() - 1); }
    double spacing() const { return h_; }
    std::span<const Complex> chi() const { return chi_; }

private:
    friend std::pair<Complex, Complex> envelope_analytic(const ChiCache&,
                                                         const SingleExcitationState&,
                                                         const TleParams&, const PteParams&,
                                                         double, double);
    double t0_;
    double h_;
    std::vector<Complex> chi_;
    std::vector<Complex> chi_dot_;
    std::vector<Complex> J_;       // int dk xi(t_i,k) e^{-ik(t'-t_i)}
    std::vector<Complex> J_L_;     // same for xi_L(t_i,k)
    std::vector<Complex> I_;       // int dk xi(t',k)
    std::vector<double> simpson_;  // composite Simpson weights
};

/// (xi_R, xi_L)(t, k) from the closed-form time integrals over the cached
/// chi history; xi_L = xi - xi_R. Requires t == cache.t_final() and cache
/// spacing <= 0.01/Gamma (AccuracyError otherwise).
std::pair<Complex, Complex> envelope_analytic(const ChiCache& cache,
                                              const SingleExcitationState& init,
                                              const TleParams& params, const PteParams& pte,
                                              double t, double k);

/// Convenience single-call form; builds the cache internally.
std::pair<Complex, Complex> envelope_analytic(const SingleExcitationState& init,
                                              const TleParams& params, const PteParams& pte,
                                              double t, double k);

/// Position-space amplitude (1/sqrt(2pi)) int dk xi(k) e^{ikx} on the given
/// x nodes. Throws ConfigurationError when an |x| exceeds the Nyquist bound
/// pi/spacing (aliasing).
std::vector<Complex> realspace_envelope(std::span<const Complex> xi_k, const KGrid& grid,
                                        std::span<const double> x_grid);

}  // namespace fano
