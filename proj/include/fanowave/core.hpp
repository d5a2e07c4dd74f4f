// Shared numeric foundation: complex scalars, uniform frequency grids,
// Gaussian spectral envelopes, system parameter records and trapezoid
// quadrature. Units: hbar = v_g = 1; rates and frequencies share units.
#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace fano {

using Complex = std::complex<double>;

inline constexpr Complex I{0.0, 1.0};

// Error taxonomy. CLI maps the first three to exit code 2, the last two to 3.
class InvalidParameterError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class UnsupportedConfigurationError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class ConfigurationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class NumericDomainError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class AccuracyError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline bool is_finite(double x) { return std::isfinite(x); }
inline bool is_finite(Complex z) {
    return std::isfinite(z.real()) && std::isfinite(z.imag());
}

/// Uniform grid of n frequencies on [k_min, k_max].
struct KGrid {
    double k_min{-20.0};
    double k_max{20.0};
    std::size_t n{2049};

    KGrid() = default;
    KGrid(double k_min_, double k_max_, std::size_t n_)
        : k_min(k_min_), k_max(k_max_), n(n_) {
        validate();
    }

    void validate() const {
        if (!is_finite(k_min) || !is_finite(k_max))
            throw InvalidParameterError("KGrid: bounds must be finite");
        if (!(k_min < k_max))
            throw InvalidParameterError("KGrid: requires k_min < k_max");
        if (n < 2)
            throw InvalidParameterError("KGrid: requires n >= 2");
    }

    double spacing() const { return (k_max - k_min) / static_cast<double>(n - 1); }
    double node(std::size_t i) const { return k_min + spacing() * static_cast<double>(i); }
    // end nodes carry half weight
    double weight(std::size_t i) const {
        const double dk = spacing();
        return (i == 0 || i + 1 == n) ? 0.5 * dk : dk;
    }
    std::vector<double> nodes() const {
        std::vector<double> out(n);
        for (std::size_t i = 0; i < n; ++i) out[i] = node(i);
        return out;
    }
};

/// Gaussian spectral envelope xi(k) = (2 pi sigma^2)^{-1/4}
///   exp(-((k-k_c)/2 sigma)^2) exp(-i t_i (k-k_c)); unit L2 norm.
struct GaussianEnvelope {
    double k_c{0.0};
    double sigma{1.0};
    double t_i{0.0};

    void validate() const {
        if (!is_finite(k_c) || !is_finite(sigma) || !is_finite(t_i))
            throw InvalidParameterError("GaussianEnvelope: fields must be finite");
        if (!(sigma > 0.0))
            throw InvalidParameterError("GaussianEnvelope: sigma must be > 0");
    }
};

Complex envelope_eval(const GaussianEnvelope& env, double k);

/// Two-level emitter coupled to the waveguide with rate Gamma and to
/// non-guided modes with rate gamma.
struct TleParams {
    double omega_e{0.0};
    double Gamma{1.0};
    double gamma{0.0};

    void validate() const {
        if (!is_finite(omega_e) || !is_finite(Gamma) || !is_finite(gamma))
            throw InvalidParameterError("TleParams: fields must be finite");
        if (!(Gamma > 0.0))
            throw InvalidParameterError("TleParams: Gamma must be > 0");
        if (gamma < 0.0)
            throw InvalidParameterError("TleParams: gamma must be >= 0");
    }
};

/// Jaynes-Cummings system: cavity (waveguide-coupled) + emitter, coupling g.
struct JcParams {
    double omega_c{0.0};
    double omega_e{0.0};
    double g{0.0};
    double Gamma{1.0};
    double gamma_c{0.0};
    double gamma_e{0.0};

    void validate() const {
        if (!is_finite(omega_c) || !is_finite(omega_e) || !is_finite(g) ||
            !is_finite(Gamma) || !is_finite(gamma_c) || !is_finite(gamma_e))
            throw InvalidParameterError("JcParams: fields must be finite");
        if (!(Gamma > 0.0))
            throw InvalidParameterError("JcParams: Gamma must be > 0");
        if (g < 0.0 || gamma_c < 0.0 || gamma_e < 0.0)
            throw InvalidParameterError("JcParams: g, gamma_c, gamma_e must be >= 0");
    }
};

namespace detail {
[[noreturn]] void throw_nonfinite_sample(double k, std::size_t index);
}

/// Composite trapezoid of f over the grid. Every sample is checked finite.
template <typename F>
Complex quad_1d(F&& f, const KGrid& grid) {
    grid.validate();
    Complex acc{0.0, 0.0};
    for (std::size_t i = 0; i < grid.n; ++i) {
        const double k = grid.node(i);
        const Complex v = f(k);
        if (!is_finite(v)) detail::throw_nonfinite_sample(k, i);
        acc += grid.weight(i) * v;
    }
    return acc;
}

/// Trapezoid over tabulated samples with uniform spacing dk.
Complex quad_samples(std::span<const Complex> f, double dk);
double quad_samples_abs2(std::span<const Complex> f, double dk);

}  // namespace fano
