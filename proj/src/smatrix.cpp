#include "fanowave/smatrix.hpp"

#include <cmath>
#include <numbers>

namespace fano {

namespace {

Eigen::MatrixXcd inverse_checked(const Eigen::MatrixXcd& m, const char* what) {
    Eigen::FullPivLU<Eigen::MatrixXcd> lu(m);
    if (!lu.isInvertible()) throw ConfigurationError(std::string(what) + ": singular matrix");
    return lu.inverse();
}

}  // namespace

IoMatrices io_matrices(const Eigen::MatrixXcd& kappa, const Eigen::MatrixXd& v_matrix,
                       const Eigen::MatrixXcd& system_block) {
    const auto m = kappa.rows();   // channels
    const auto s = kappa.cols();   // system operators
    if (m < 1 || s < 1) throw InvalidParameterError("io_matrices: empty kappa");
    if (v_matrix.rows() != m || v_matrix.cols() != m)
        throw InvalidParameterError("io_matrices: V dimension must match channel count");
    if (system_block.rows() != s || system_block.cols() != s)
        throw InvalidParameterError("io_matrices: system block dimension mismatch");
    if (!v_matrix.isApprox(v_matrix.transpose(), 1e-12))
        throw InvalidParameterError("io_matrices: V must be symmetric");

    IoMatrices io;
    io.G = Eigen::MatrixXcd::Identity(m, m) + (0.5 * I) * v_matrix.cast<Complex>();
    const Eigen::MatrixXcd g_inv = inverse_checked(io.G, "io_matrices");
    io.A = system_block - 0.5 * kappa.adjoint() * g_inv * kappa;
    io.B = -I * kappa.adjoint() * g_inv;
    io.C = io.G.conjugate() * g_inv;
    io.D = -I * g_inv * kappa;
    return io;
}

Eigen::MatrixXcd s1_general(const IoMatrices& io, double p) {
    if (!is_finite(p)) throw InvalidParameterError("s1_general: p must be finite");
    const auto s = io.A.rows();
    const Eigen::MatrixXcd resolvent =
        Complex{p, 0.0} * Eigen::MatrixXcd::Identity(s, s) - I * io.A;
    Eigen::FullPivLU<Eigen::MatrixXcd> lu(resolvent);
    if (!lu.isInvertible())
        throw NumericDomainError("s1_general: resolvent (p - iA) is singular");
    return io.C + I * io.D * lu.solve(io.B);
}

IoMatrices make_tle_io(const TleParams& params, const PteParams& pte) {
    params.validate();
    pte.validate();
    Eigen::MatrixXcd kappa(3, 1);
    kappa << std::sqrt(params.Gamma / 2.0), std::sqrt(params.Gamma / 2.0),
        std::sqrt(params.gamma);
    Eigen::MatrixXd v = Eigen::MatrixXd::Zero(3, 3);
    v(0, 1) = v(1, 0) = pte.V;
    Eigen::MatrixXcd sys(1, 1);
    sys << -I * params.omega_e;
    return io_matrices(kappa, v, sys);
}

IoMatrices make_jc_io(const JcParams& params, const PteParams& pte) {
    params.validate();
    pte.validate();
    // columns: (a, sigma-); channels: (R, L, Dc, De)
    Eigen::MatrixXcd kappa = Eigen::MatrixXcd::Zero(4, 2);
    kappa(0, 0) = std::sqrt(params.Gamma / 2.0);
    kappa(1, 0) = std::sqrt(params.Gamma / 2.0);
    kappa(2, 0) = std::sqrt(params.gamma_c);
    kappa(3, 1) = std::sqrt(params.gamma_e);
    Eigen::MatrixXd v = Eigen::MatrixXd::Zero(4, 4);
    v(0, 1) = v(1, 0) = pte.V;
    Eigen::MatrixXcd sys(2, 2);
    sys << -I * params.omega_c, -I * params.g, -I * params.g, -I * params.omega_e;
    return io_matrices(kappa, v, sys);
}

std::pair<Complex, Complex> s1_tle(double k, const TleParams& params, const PteParams& pte) {
    params.validate();
    if (!is_finite(k)) throw InvalidParameterError("s1_tle: k must be finite");
    const auto [t_B, r_B] = pte_matrix(pte);
    const Complex gt = effective_rate(params.Gamma, pte);
    const Complex term =
        I * (gt * gt / (2.0 * params.Gamma)) /
        ((k - params.omega_e) + 0.5 * I * (gt + params.gamma));
    return {t_B - term, r_B - term};
}

std::pair<Complex, Complex> s1_jc(double k, const JcParams& params, const PteParams& pte) {
    params.validate();
    if (!is_finite(k)) throw InvalidParameterError("s1_jc: k must be finite");
    const auto [t_B, r_B] = pte_matrix(pte);
    const Complex gt = effective_rate(params.Gamma, pte);
    const Complex de = k - params.omega_e + 0.5 * I * params.gamma_e;
    const Complex dc = k - params.omega_c + 0.5 * I * (gt + params.gamma_c);
    const Complex term = I * de * (gt * gt / (2.0 * params.Gamma)) /
                         (dc * de - params.g * params.g);
    return {t_B - term, r_B - term};
}

BoundKernel tle_bound_kernel(const TleParams& params, const PteParams& pte) {
    params.validate();
    pte.validate();
    if (params.gamma != 0.0)
        throw UnsupportedConfigurationError(
            "tle_bound_kernel: derived for the lossless emitter (gamma = 0)");
    const Complex gt = effective_rate(params.Gamma, pte);
    const double omega_e = params.omega_e;
    const Complex num = gt / std::sqrt(2.0 * params.Gamma);
    const Complex c = num / std::numbers::pi;
    auto green = [num, gt, omega_e](double k) {
        return num / (k - omega_e + 0.5 * I * gt);
    };
    BoundKernel kern;
    kern.amplitude_factor = I;
    kern.outer = green;
    kern.terms.push_back({[c](double) { return c; }, green});
    kern.eval = [c, green](double p1, double p2, double k1, double k2) {
        return c * green(p1) * green(p2) * (green(k1) + green(k2));
    };
    return kern;
}

BoundKernel jc_bound_kernel(const JcParams& params, const PteParams& pte) {
    params.validate();
    pte.validate();
    if (params.gamma_c != 0.0 || params.gamma_e != 0.0)
        throw UnsupportedConfigurationError(
            "jc_bound_kernel: derived for the lossless JC system");
    const Complex gt = effective_rate(params.Gamma, pte);
    const double omega_c = params.omega_c;
    const double omega_e = params.omega_e;
    const double g = params.g;
    const Complex pref = 0.5 * gt / std::sqrt(0.5 * params.Gamma);
    const double inv_sqrt_2pi = 1.0 / std::sqrt(2.0 * std::numbers::pi);

    auto den1 = [omega_c, omega_e, gt, g](double k) {
        return (k - omega_c + 0.5 * I * gt) * (k - omega_e) - g * g;
    };
    auto green_e = [pref, g, den1](double k) { return pref * g / den1(k); };
    auto green_c = [pref, omega_e, den1](double k) {
        return pref * (k - omega_e) / den1(k);
    };
    auto den2 = [omega_c, omega_e, gt, g](double e) {
        return (e - (omega_c + omega_e) + 0.5 * I * gt) * (e - 2.0 * omega_c + I * gt) -
               2.0 * g * g;
    };
    const Complex front = -2.0 * I * g * inv_sqrt_2pi;        // -2ig/sqrt(2pi)
    const Complex gec_pref = -pref * inv_sqrt_2pi;
    auto w_e = [front, gec_pref, den2, omega_c, gt](double e) {
        return front * gec_pref * (e - 2.0 * omega_c + I * gt) / den2(e);
    };
    auto w_c = [front, gec_pref, den2, g](double e) {
        return front * gec_pref * (2.0 * g) / den2(e);
    };

    BoundKernel kern;
    kern.amplitude_factor = Complex{1.0, 0.0};
    kern.outer = green_e;
    kern.terms.push_back({w_e, green_e});
    kern.terms.push_back({w_c, green_c});
    kern.eval = [green_e, green_c, w_e, w_c](double p1, double p2, double k1, double k2) {
        const double e = p1 + p2;
        return green_e(p1) * green_e(p2) *
               (w_e(e) * (green_e(k1) + green_e(k2)) + w_c(e) * (green_c(k1) + green_c(k2)));
    };
    return kern;
}

BoundKernel zero_bound_kernel() {
    BoundKernel kern;
    kern.amplitude_factor = Complex{0.0, 0.0};
    kern.eval = [](double, double, double, double) { return Complex{0.0, 0.0}; };
    kern.outer = [](double) { return Complex{0.0, 0.0}; };
    kern.terms.push_back({[](double) { return Complex{0.0, 0.0}; },
                          [](double) { return Complex{0.0, 0.0}; }});
    return kern;
}

Complex bound_state_tle(double p1, double p2, double k1, double k2, const TleParams& params,
                        const PteParams& pte) {
    return tle_bound_kernel(params, pte).eval(p1, p2, k1, k2);
}

Complex bound_state_jc(double p1, double p2, double k1, double k2, const JcParams& params,
                       const PteParams& pte) {
    return jc_bound_kernel(params, pte).eval(p1, p2, k1, k2);
}

}  // namespace fano
