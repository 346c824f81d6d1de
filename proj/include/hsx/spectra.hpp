#pragma once

#include <complex>
#include <span>
#include <vector>

#include "hsx/ro_weight.hpp"

namespace hsx {

using cplx = std::complex<double>;

/// Finite two-sided Fourier series on the unit circle.  Coefficients follow
/// the convention  c_k = (1/2pi) int_0^{2pi} h(phi) e^{-ik phi} dphi,
/// so ||h||^2_{L2} = 2pi * sum |c_k|^2.
struct CircleSpectrum {
    int K = 0;
    std::vector<cplx> coeff;  // index k + K, k in [-K, K]

    CircleSpectrum() = default;
    explicit CircleSpectrum(int truncation)
        : K(truncation), coeff(static_cast<std::size_t>(2 * truncation + 1)) {}

    cplx& at(int k) { return coeff[static_cast<std::size_t>(k + K)]; }
    const cplx& at(int k) const { return coeff[static_cast<std::size_t>(k + K)]; }
    int size() const { return 2 * K + 1; }
};

/// Finite spectrum on a 1- or 2-dimensional integer frequency lattice,
/// |xi_i| <= K, row-major over (xi_1 + K) and, in 2-D, (xi_2 + K).
struct LatticeSpectrum {
    int dim = 1;
    int K = 0;
    std::vector<cplx> coeff;

    LatticeSpectrum() = default;
    LatticeSpectrum(int dimension, int truncation);
    cplx& at(int k1, int k2 = 0);
    const cplx& at(int k1, int k2 = 0) const;
};

/// <xi> = (1 + |xi|^2)^{1/2}
double smoothed_modulus(std::span<const int> xi);
double smoothed_modulus(int k);
double smoothed_modulus(int k1, int k2);

/// Weighted spectral norm (2pi)^{n/2} (sum alpha^2(<xi>) |c_xi|^2)^{1/2};
/// alpha == 1 reproduces the L2 norm.
double hnorm(const CircleSpectrum& w, const RoWeight& alpha);
double hnorm(const LatticeSpectrum& w, const RoWeight& alpha);

/// DFT of uniform samples h(2pi j / N), j = 0..N-1, under the convention
/// above; exact for inputs band-limited to K when N >= 2K+1.
CircleSpectrum analyze_circle(std::span<const cplx> samples, int K);
CircleSpectrum analyze_circle(std::span<const cplx> samples);

/// Point values h(2pi j / N) of a spectrum.
std::vector<cplx> synthesize_circle(const CircleSpectrum& w, int n_samples);

struct EmbeddingRatioReport {
    double sup_ratio = 0.0;        // max of alpha/eta on [1, <(K,..)>]
    bool vanishing_trend = false;  // last decade below half of the previous one
};

EmbeddingRatioReport embedding_ratio(const RoWeight& alpha, const RoWeight& eta, int K);

/// Exact operator norm of the l-th tangential derivative between the weighted
/// spaces on the truncation: max over |k| <= K of |k|^l / <k>^l.  Always <= 1.
double derivative_multiplier_bound(int l, const RoWeight& alpha, int K);

}  // namespace hsx
