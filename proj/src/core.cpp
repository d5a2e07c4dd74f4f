#include "fanowave/core.hpp"

#include <numbers>

namespace fano {

Complex envelope_eval(const GaussianEnvelope& env, double k) {
    env.validate();
    if (!is_finite(k)) throw InvalidParameterError("envelope_eval: k must be finite");
    const double dk = k - env.k_c;
    const double amp = std::pow(2.0 * std::numbers::pi * env.sigma * env.sigma, -0.25) *
                       std::exp(-(dk / (2.0 * env.sigma)) * (dk / (2.0 * env.sigma)));
    return amp * std::exp(Complex{0.0, -env.t_i * dk});
}

namespace detail {
[[noreturn]] void throw_nonfinite_sample(double k, std::size_t index) {
    throw NumericDomainError("quad_1d: non-finite sample at node " + std::to_string(index) +
                             " (k = " + std::to_string(k) + ")");
}
}  // namespace detail

Complex quad_samples(std::span<const Complex> f, double dk) {
    if (f.size() < 2) throw InvalidParameterError("quad_samples: need at least two samples");
    if (!(dk > 0.0) || !is_finite(dk))
        throw InvalidParameterError("quad_samples: spacing must be positive and finite");
    Complex acc = 0.5 * (f.front() + f.back());
    for (std::size_t i = 1; i + 1 < f.size(); ++i) acc += f[i];
    return acc * dk;
}

double quad_samples_abs2(std::span<const Complex> f, double dk) {
    if (f.size() < 2) throw InvalidParameterError("quad_samples_abs2: need at least two samples");
    if (!(dk > 0.0) || !is_finite(dk))
        throw InvalidParameterError("quad_samples_abs2: spacing must be positive and finite");
    double acc = 0.5 * (std::norm(f.front()) + std::norm(f.back()));
    for (std::size_t i = 1; i + 1 < f.size(); ++i) acc += std::norm(f[i]);
    return acc * dk;
}

}  // namespace fano
