// Frequency-domain scattering: input-output matrices for an arbitrary channel
// layout, single-photon transmission/reflection for the TLE and JC systems
// (with dissipation), and the two-photon bound-state kernels.
#pragma once

#include <functional>
#include <utility>

#include <Eigen/Dense>

#include "fanowave/core.hpp"
#include "fanowave/pte.hpp"

namespace fano {

/// Linear-system representation of a waveguide-coupled system:
///   c'   = A c + B b_in,   b_out = C b_in + D c,   G = 1 + (i/2) V.
/// kappa is (channels x system operators); system_block the free evolution
/// block (-i omega terms and -i g couplings).
struct IoMatrices {
    Eigen::MatrixXcd A;  // system x system
    Eigen::MatrixXcd B;  // system x channels
    Eigen::MatrixXcd C;  // channels x channels
    Eigen::MatrixXcd D;  // channels x system
    Eigen::MatrixXcd G;  // channels x channels
};

IoMatrices io_matrices(const Eigen::MatrixXcd& kappa, const Eigen::MatrixXd& v_matrix,
                       const Eigen::MatrixXcd& system_block);

/// Delta-stripped single-photon S-matrix, S(p) = C + i D (p - iA)^{-1} B.
Eigen::MatrixXcd s1_general(const IoMatrices& io, double p);

/// Canonical channel layouts used throughout: TLE couples to (R, L, D) with
/// kappa = (sqrt(G/2), sqrt(G/2), sqrt(gamma)); JC cavity couples to
/// (R, L, Dc) and the emitter only to De.
IoMatrices make_tle_io(const TleParams& params, const PteParams& pte);
IoMatrices make_jc_io(const JcParams& params, const PteParams& pte);

/// Closed-form t(k), r(k):
///   t = t_B - i (Gt^2/2G) / ((k-omega_e) + i(Gt+gamma)/2), r likewise with r_B.
std::pair<Complex, Complex> s1_tle(double k, const TleParams& params, const PteParams& pte);

/// JC closed form; reduces to the TLE one at g = 0 under omega_c -> omega_e,
/// gamma_c -> gamma_e.
std::pair<Complex, Complex> s1_jc(double k, const JcParams& params, const PteParams& pte);

/// Delta-stripped two-photon bound-state kernel M(p1,p2,k1,k2). The S(2)
/// amplitude adds amplitude_factor * integral(M xi xi) on the energy shell;
/// unitarity fixes amplitude_factor = i for the TLE kernel and 1 for the JC
/// kernel (verified against two-excitation time-domain integration).
struct BoundKernel {
    Complex amplitude_factor{0.0, 1.0};
    std::function<Complex(double, double, double, double)> eval;

    // Separable structure M = outer(p1) outer(p2) sum_i w_i(E) [x_i(k1)+x_i(k2)],
    // E = p1+p2. Empty terms => only eval is available (per-cell quadrature).
    struct Term {
        std::function<Complex(double)> energy_weight;
        std::function<Complex(double)> k_factor;
    };
    std::function<Complex(double)> outer;
    std::vector<Term> terms;

    bool separable() const { return !terms.empty(); }
};

/// M = (1/pi)(Gt/sqrt(2G)) G(p1)G(p2)[G(k1)+G(k2)],
/// G(k) = (Gt/sqrt(2G)) / (k - omega_e + i Gt/2). Lossless only.
BoundKernel tle_bound_kernel(const TleParams& params, const PteParams& pte);

/// M = (-2ig/sqrt(2pi)) Ge(p1) Ge(p2) Gec(p1+p2, k1, k2); lossless,
/// waveguide coupled through the cavity only.
BoundKernel jc_bound_kernel(const JcParams& params, const PteParams& pte);

/// Linear system surrogate: no photon-photon interaction.
BoundKernel zero_bound_kernel();

Complex bound_state_tle(double p1, double p2, double k1, double k2, const TleParams& params,
                        const PteParams& pte);
Complex bound_state_jc(double p1, double p2, double k1, double k2, const JcParams& params,
                       const PteParams& pte);

}  // namespace fano
