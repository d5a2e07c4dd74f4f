// Partially transmitting element: flat-response 2x2 scattering coefficients,
// the effective complex coupling rate and the shifted emitter resonance.
#pragma once

#include "fanowave/core.hpp"

namespace fano {

/// Dimensionless PTE strength. V=0 leaves the waveguide open, V=2 blocks it;
/// V = 2/(1+sqrt(2)) is the balanced element with |t_B|^2 = |r_B|^2 = 1/2.
struct PteParams {
    double V{0.0};

    void validate() const {
        if (!is_finite(V)) throw InvalidParameterError("PteParams: V must be finite");
    }
    // formulas stay valid outside [0,2]; callers may warn
    bool in_canonical_range() const { return V >= 0.0 && V <= 2.0; }
};

inline double balanced_pte_strength() { return 2.0 / (1.0 + std::sqrt(2.0)); }

struct PteScatter {
    Complex t_B;
    Complex r_B;
};

/// t_B = (1-(V/2)^2)/(1+(V/2)^2), r_B = -iV/(1+(V/2)^2).
PteScatter pte_matrix(const PteParams& p);

/// Effective complex coupling rate Gamma/(1 + iV/2). Its real part sets the
/// modified decay rate, its imaginary part the redshift of emitted photons.
Complex effective_rate(double Gamma, const PteParams& p);

/// Shifted resonance omega_e + Im{effective_rate}/2 seen by scattered photons.
double effective_resonance(double omega_e, double Gamma, const PteParams& p);

}  // namespace fano
