#include "fanowave/pte.hpp"

namespace fano {

PteScatter pte_matrix(const PteParams& p) {
    p.validate();
    const double h = 0.5 * p.V;
    const double d = 1.0 + h * h;
    return {Complex{(1.0 - h * h) / d, 0.0}, Complex{0.0, -p.V / d}};
}

Complex effective_rate(double Gamma, const PteParams& p) {
    p.validate();
    if (!(Gamma > 0.0) || !is_finite(Gamma))
        throw InvalidParameterError("effective_rate: Gamma must be positive and finite");
    return Gamma / Complex{1.0, 0.5 * p.V};
}

double effective_resonance(double omega_e, double Gamma, const PteParams& p) {
    if (!is_finite(omega_e))
        throw InvalidParameterError("effective_resonance: omega_e must be finite");
    return omega_e + 0.5 * effective_rate(Gamma, p).imag();
}

}  // namespace fano
