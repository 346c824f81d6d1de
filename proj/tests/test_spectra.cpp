#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "hsx/disk_field.hpp"
#include "hsx/errors.hpp"
#include "hsx/spectra.hpp"

using namespace hsx;

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;
}

TEST_CASE("smoothed modulus") {
    CHECK(smoothed_modulus(0) == 1.0);
    CHECK(smoothed_modulus(1) == doctest::Approx(std::sqrt(2.0)));
    CHECK(smoothed_modulus(3, 4) == doctest::Approx(std::sqrt(26.0)));
    const int xi[] = {3, 4};
    CHECK(smoothed_modulus(std::span<const int>(xi)) == doctest::Approx(std::sqrt(26.0)));
}

TEST_CASE("weighted spectral norm") {
    SUBCASE("single mode") {
        CircleSpectrum h(5);
        h.at(3) = cplx(2.0, 0.0);
        const auto alpha = RoWeight::power(1.5);
        CHECK(hnorm(h, alpha) ==
              doctest::Approx(std::sqrt(kTwoPi) * std::pow(std::sqrt(10.0), 1.5) * 2.0)
                  .epsilon(1e-13));
    }
    SUBCASE("unit weight reproduces L2") {
        CircleSpectrum h(4);
        Rng rng(7);
        for (int k = -4; k <= 4; ++k) h.at(k) = rng.complex_gaussian();
        double sum = 0.0;
        for (const auto& c : h.coeff) sum += std::norm(c);
        CHECK(hnorm(h, RoWeight::power(0.0)) == doctest::Approx(std::sqrt(kTwoPi * sum)));
    }
    SUBCASE("decaying spectrum against a direct summation oracle") {
        CircleSpectrum h(64);
        for (int k = -64; k <= 64; ++k) h.at(k) = 1.0 / std::pow(smoothed_modulus(k), 2);
        double oracle = 0.0;
        for (int k = -64; k <= 64; ++k) oracle += std::pow(smoothed_modulus(k), -2.0);
        CHECK(hnorm(h, RoWeight::power(1.0)) ==
              doctest::Approx(std::sqrt(kTwoPi * oracle)).epsilon(1e-13));
    }
    SUBCASE("2-d lattice carries the (2pi)^{n/2} factor") {
        LatticeSpectrum w(2, 3);
        w.at(1, 2) = cplx(0.0, 1.0);
        CHECK(hnorm(w, RoWeight::power(2.0)) ==
              doctest::Approx(kTwoPi * 6.0).epsilon(1e-13));  // <(1,2)>^2 = 6
    }
    SUBCASE("homogeneity and parallelogram law") {
        Rng rng(19);
        const auto alpha = RoWeight::power_log(1.0, {1.0});
        CircleSpectrum x(8), y(8);
        for (int k = -8; k <= 8; ++k) {
            x.at(k) = rng.complex_gaussian();
            y.at(k) = rng.complex_gaussian();
        }
        CircleSpectrum sum(8), diff(8), scaled(8);
        for (int k = -8; k <= 8; ++k) {
            sum.at(k) = x.at(k) + y.at(k);
            diff.at(k) = x.at(k) - y.at(k);
            scaled.at(k) = cplx(-2.5, 1.0) * x.at(k);
        }
        CHECK(hnorm(scaled, alpha) ==
              doctest::Approx(std::abs(cplx(-2.5, 1.0)) * hnorm(x, alpha)).epsilon(1e-12));
        const double lhs = std::pow(hnorm(sum, alpha), 2) + std::pow(hnorm(diff, alpha), 2);
        const double rhs = 2.0 * std::pow(hnorm(x, alpha), 2) + 2.0 * std::pow(hnorm(y, alpha), 2);
        CHECK(lhs == doctest::Approx(rhs).epsilon(1e-12));
    }
    SUBCASE("monotone in the weight") {
        Rng rng(23);
        CircleSpectrum x(16);
        for (int k = -16; k <= 16; ++k) x.at(k) = rng.complex_gaussian();
        // power 1 <= power_log(1, r=1) <= power 2 pointwise on the lattice
        const double a = hnorm(x, RoWeight::power(1.0));
        const double b = hnorm(x, RoWeight::power_log(1.0, {1.0}));
        const double c = hnorm(x, RoWeight::power(2.0));
        CHECK(a <= b * (1.0 + 1e-14));
        CHECK(b <= c * (1.0 + 1e-14));
    }
    SUBCASE("sandwich between Sobolev norms with computable constants") {
        // s0 < sigma0 <= sigma1 < s1 for the oscillating weight
        const auto alpha = RoWeight::oscillating(1.0, 0.5, 1.0);
        const double s0 = 0.0, s1 = 2.0;
        const int K = 32;
        double c0 = 0.0, c1 = 0.0;  // sups of weight ratios over the truncation
        for (int k = -K; k <= K; ++k) {
            const double t = smoothed_modulus(k);
            c0 = std::max(c0, std::pow(t, s0) / alpha.eval(t));
            c1 = std::max(c1, alpha.eval(t) / std::pow(t, s1));
        }
        Rng rng(31);
        CircleSpectrum x(K);
        for (int k = -K; k <= K; ++k) x.at(k) = rng.complex_gaussian();
        CHECK(hnorm(x, RoWeight::power(s0)) <= c0 * hnorm(x, alpha) * (1.0 + 1e-13));
        CHECK(hnorm(x, alpha) <= c1 * hnorm(x, RoWeight::power(s1)) * (1.0 + 1e-13));
    }
}

TEST_CASE("circle analysis") {
    SUBCASE("pure modes come back exactly") {
        const int n = 17;
        std::vector<cplx> samples(n);
        for (int j = 0; j < n; ++j) samples[j] = std::polar(1.0, kTwoPi * j / n);
        const auto s = analyze_circle(samples);
        CHECK(s.K == 8);
        CHECK(std::abs(s.at(1) - 1.0) < 1e-12);
        for (int k = -8; k <= 8; ++k)
            if (k != 1) CHECK(std::abs(s.at(k)) < 1e-12);
    }
    SUBCASE("constant") {
        std::vector<cplx> samples(9, cplx(1.0, 0.0));
        const auto s = analyze_circle(samples);
        CHECK(std::abs(s.at(0) - 1.0) < 1e-13);
    }
    SUBCASE("cosine splits") {
        const int n = 33;
        std::vector<cplx> samples(n);
        for (int j = 0; j < n; ++j) samples[j] = std::cos(kTwoPi * j / n);
        const auto s = analyze_circle(samples);
        CHECK(std::abs(s.at(1) - 0.5) < 1e-13);
        CHECK(std::abs(s.at(-1) - 0.5) < 1e-13);
    }
    SUBCASE("round trip on band-limited data") {
        Rng rng(3);
        CircleSpectrum s(6);
        for (int k = -6; k <= 6; ++k) s.at(k) = rng.complex_gaussian();
        const auto samples = synthesize_circle(s, 31);
        const auto back = analyze_circle(samples, 6);
        for (int k = -6; k <= 6; ++k)
            CHECK(std::abs(back.at(k) - s.at(k)) < 1e-12 * (1.0 + std::abs(s.at(k))));
    }
    SUBCASE("real data gives conjugate-symmetric coefficients") {
        Rng rng(5);
        std::vector<cplx> samples(21);
        for (auto& v : samples) v = cplx(rng.gaussian(), 0.0);
        const auto s = analyze_circle(samples);
        for (int k = 0; k <= s.K; ++k)
            CHECK(std::abs(s.at(-k) - std::conj(s.at(k))) < 1e-12);
    }
    SUBCASE("too few samples alias") {
        std::vector<cplx> samples(8);
        CHECK_THROWS_AS(analyze_circle(samples, 4), precondition_error);
    }
}

TEST_CASE("embedding ratio") {
    SUBCASE("strictly stronger weight vanishes") {
        const auto rep = embedding_ratio(RoWeight::power(1.0), RoWeight::power(2.0), 10000);
        CHECK(rep.sup_ratio == doctest::Approx(1.0));  // attained at t = 1
        CHECK(rep.vanishing_trend);
    }
    SUBCASE("equal weights neither vanish nor grow") {
        const auto rep = embedding_ratio(RoWeight::power(1.0), RoWeight::power(1.0), 10000);
        CHECK(rep.sup_ratio == doctest::Approx(1.0));
        CHECK_FALSE(rep.vanishing_trend);
    }
    SUBCASE("log factor grows toward the truncation edge") {
        const auto rep =
            embedding_ratio(RoWeight::power_log(1.0, {1.0}), RoWeight::power(1.0), 10000);
        CHECK_FALSE(rep.vanishing_trend);
        CHECK(rep.sup_ratio == doctest::Approx(std::log(smoothed_modulus(10000))).epsilon(1e-6));
    }
}

TEST_CASE("tangential derivative multiplier bound") {
    const auto alpha = RoWeight::power(1.0);
    CHECK(derivative_multiplier_bound(0, alpha, 16) == 1.0);
    CHECK(derivative_multiplier_bound(1, alpha, 1) == doctest::Approx(1.0 / std::sqrt(2.0)));
    CHECK(derivative_multiplier_bound(3, alpha, 128) ==
          doctest::Approx(std::pow(128.0 / smoothed_modulus(128), 3)).epsilon(1e-13));
    CHECK(derivative_multiplier_bound(3, alpha, 128) == doctest::Approx(0.99991).epsilon(1e-4));
    for (int l : {0, 1, 2, 5})
        for (int K : {1, 8, 64})
            CHECK(derivative_multiplier_bound(l, RoWeight::oscillating(1.0, 0.5, 1.0), K) <= 1.0);
}
