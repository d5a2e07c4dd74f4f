// Two-photon scattering of counter-propagating Gaussian wavepackets: output
// channel amplitudes on a (p1,p2) grid, channel probabilities, HOM switch
// sweeps and the quasi-monochromatic ON/OFF classifier.
#pragma once

#include <functional>
#include <span>
#include <vector>

#include "fanowave/core.hpp"
#include "fanowave/pte.hpp"
#include "fanowave/smatrix.hpp"

namespace fano {

/// Counter-propagating |LR> product of two identical Gaussian envelopes.
struct TwoPhotonInput {
    GaussianEnvelope env;
};

enum class Channel { LL, RR, LR };

/// amp_LL / amp_RR carry the 1/sqrt(2) same-channel state normalization so
/// that every probability is the plain 2D quadrature of |amp|^2 on the grid.
struct TwoPhotonOutput {
    KGrid grid;
    std::vector<Complex> amp_LL;  // row-major n*n
    std::vector<Complex> amp_RR;
    std::vector<Complex> amp_LR;
    double p_LL{0.0};
    double p_RR{0.0};
    double p_LR{0.0};

    Complex amp(Channel c, std::size_t i, std::size_t j) const;
};

/// Single-photon coefficients paired with the bound-state kernel. The cavity
/// surrogate keeps the TLE t(k), r(k) but drops the bound term (a linear
/// scatterer has none).
struct TwoPhotonSystem {
    std::function<std::pair<Complex, Complex>(double)> tr;
    BoundKernel kernel;

    static TwoPhotonSystem tle(const TleParams& params, const PteParams& pte);
    static TwoPhotonSystem jc(const JcParams& params, const PteParams& pte);
    static TwoPhotonSystem cavity_surrogate(const TleParams& params, const PteParams& pte);
};

struct ScatterOptions {
    bool include_bound{true};
    double min_input_norm{0.999};
};

/// Linear part (both single-photon pairings) plus the bound part
/// amplitude_factor * int dk M(p1,p2,k,E-k) xi(k) xi(E-k) with E = p1+p2,
/// on the shared output/quadrature grid.
TwoPhotonOutput scatter_two_photon(const TwoPhotonInput& input, const TwoPhotonSystem& system,
                                   const KGrid& grid, const ScatterOptions& options = {});

/// Grid covering the envelope to +-8 sigma and the (effective) resonance to
/// +-10 Gamma, with spacing min(sigma/3, Gamma/24).
KGrid two_photon_auto_grid(const GaussianEnvelope& env, double omega_ref, double Gamma);

struct HomPoint {
    double sigma;
    double p_counter;  // both photons still counter-propagating
    double p_co;       // bunched into one channel
};

/// Scattering probabilities versus spectral width at fixed center frequency.
std::vector<HomPoint> hom_sweep(std::span<const double> sigmas, const TwoPhotonSystem& system,
                                double k_c, double Gamma, double omega_ref);

enum class SwitchState { On, Off, Neither };

/// |t(k)|^2 within tol of {0,1} -> Off, of 1/2 -> On, otherwise Neither.
SwitchState classify_quasi_mono(double k, const TleParams& params, const PteParams& pte,
                                double tol);
SwitchState classify_quasi_mono(double k, const JcParams& params, const PteParams& pte,
                                double tol);

/// |amp|^2 on the (p1,p2) grid; integrates to the channel probability.
std::vector<double> two_photon_density(const TwoPhotonOutput& output, Channel channel);

}  // namespace fano
