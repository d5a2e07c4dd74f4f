// PTE coefficients: limiting cases, the balanced point, unitarity and the
// effective rate/resonance shifts.
#include <doctest.h>

#include <cmath>

#include "fanowave/pte.hpp"

using namespace fano;

TEST_CASE("limiting strengths: open and blocked waveguide") {
    const auto open = pte_matrix({0.0});
    CHECK(open.t_B == Complex{1.0, 0.0});
    CHECK(open.r_B == Complex{0.0, 0.0});

    const auto blocked = pte_matrix({2.0});
    CHECK(std::abs(blocked.t_B) < 1e-15);
    CHECK(blocked.r_B.real() == 0.0);
    CHECK(blocked.r_B.imag() == doctest::Approx(-1.0).epsilon(1e-15));
}

TEST_CASE("balanced strength splits 50/50") {
    const auto s = pte_matrix({balanced_pte_strength()});
    CHECK(std::norm(s.t_B) == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(std::norm(s.r_B) == doctest::Approx(0.5).epsilon(1e-14));
}

TEST_CASE("flat-response unitarity over and beyond the canonical range") {
    for (double v = -1.0; v <= 3.0001; v += 0.003) {
        const auto s = pte_matrix({v});
        CHECK(std::norm(s.t_B) + std::norm(s.r_B) == doctest::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("|t_B|^2 strictly decreases on [0,2]") {
    double prev = 1.0 + 1e-9;
    for (int i = 0; i <= 200; ++i) {
        const double v = 2.0 * i / 200.0;
        const double t2 = std::norm(pte_matrix({v}).t_B);
        CHECK(t2 < prev);
        prev = t2;
    }
    CHECK(std::norm(pte_matrix({0.0}).t_B) == 1.0);
    CHECK(std::norm(pte_matrix({2.0}).t_B) == 0.0);
}

TEST_CASE("effective rate: no PTE, blocked, balanced") {
    CHECK(effective_rate(1.0, {0.0}) == Complex{1.0, 0.0});

    const Complex blocked = effective_rate(1.0, {2.0});
    CHECK(blocked.real() == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(blocked.imag() == doctest::Approx(-0.5).epsilon(1e-15));

    // Re = 1/(4 - 2 sqrt(2))
    const Complex bal = effective_rate(1.0, {balanced_pte_strength()});
    CHECK(bal.real() == doctest::Approx(1.0 / (4.0 - 2.0 * std::sqrt(2.0))).epsilon(1e-14));
}

TEST_CASE("redshift sign and lifetime factor") {
    for (double v = 0.0; v <= 2.0001; v += 0.01) {
        const Complex gt = effective_rate(1.0, {v});
        CHECK(gt.imag() <= 1e-15);
        CHECK(1.0 / gt.real() == doctest::Approx(1.0 + 0.25 * v * v).epsilon(1e-13));
    }
}

TEST_CASE("effective resonance shift") {
    CHECK(effective_resonance(0.7, 1.0, {0.0}) == doctest::Approx(0.7));
    CHECK(effective_resonance(0.0, 1.0, {2.0}) == doctest::Approx(-0.25).epsilon(1e-15));
    // -(sqrt(2)-1)/(2(4-2sqrt(2))) = -sqrt(2)/8
    CHECK(effective_resonance(0.0, 1.0, {balanced_pte_strength()}) ==
          doctest::Approx(-std::sqrt(2.0) / 8.0).epsilon(1e-14));
}

TEST_CASE("parameter guards") {
    CHECK_THROWS_AS(effective_rate(0.0, {0.0}), InvalidParameterError);
    CHECK_THROWS_AS(effective_rate(-1.0, {1.0}), InvalidParameterError);
    CHECK_FALSE(PteParams{2.5}.in_canonical_range());
    CHECK(PteParams{1.0}.in_canonical_range());
}
