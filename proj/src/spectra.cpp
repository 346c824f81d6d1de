#include "hsx/spectra.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "hsx/errors.hpp"

namespace hsx {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;
}

LatticeSpectrum::LatticeSpectrum(int dimension, int truncation) : dim(dimension), K(truncation) {
    if (dim != 1 && dim != 2) throw precondition_error("LatticeSpectrum: dim must be 1 or 2");
    const std::size_t side = static_cast<std::size_t>(2 * K + 1);
    coeff.assign(dim == 1 ? side : side * side, cplx{});
}

cplx& LatticeSpectrum::at(int k1, int k2) {
    const std::size_t side = static_cast<std::size_t>(2 * K + 1);
    const std::size_t i1 = static_cast<std::size_t>(k1 + K);
    if (dim == 1) return coeff[i1];
    return coeff[i1 * side + static_cast<std::size_t>(k2 + K)];
}

const cplx& LatticeSpectrum::at(int k1, int k2) const {
    return const_cast<LatticeSpectrum*>(this)->at(k1, k2);
}

double smoothed_modulus(std::span<const int> xi) {
    double q = 1.0;
    for (int c : xi) q += static_cast<double>(c) * c;
    return std::sqrt(q);
}

double smoothed_modulus(int k) { return std::sqrt(1.0 + static_cast<double>(k) * k); }

double smoothed_modulus(int k1, int k2) {
    return std::sqrt(1.0 + static_cast<double>(k1) * k1 + static_cast<double>(k2) * k2);
}

double hnorm(const CircleSpectrum& w, const RoWeight& alpha) {
    double sum = 0.0;
    for (int k = -w.K; k <= w.K; ++k) {
        const double a = alpha.eval(smoothed_modulus(k));
        sum += a * a * std::norm(w.at(k));
    }
    return std::sqrt(kTwoPi * sum);
}

double hnorm(const LatticeSpectrum& w, const RoWeight& alpha) {
    double sum = 0.0;
    if (w.dim == 1) {
        for (int k = -w.K; k <= w.K; ++k) {
            const double a = alpha.eval(smoothed_modulus(k));
            sum += a * a * std::norm(w.at(k));
        }
        return std::sqrt(kTwoPi * sum);
    }
    for (int k1 = -w.K; k1 <= w.K; ++k1)
        for (int k2 = -w.K; k2 <= w.K; ++k2) {
            const double a = alpha.eval(smoothed_modulus(k1, k2));
            sum += a * a * std::norm(w.at(k1, k2));
        }
    return std::sqrt(kTwoPi * kTwoPi * sum);
}

CircleSpectrum analyze_circle(std::span<const cplx> samples, int K) {
    const int n = static_cast<int>(samples.size());
    if (n < 2 * K + 1)
        throw precondition_error("analyze_circle: need at least 2K+1 samples (aliasing)");
    CircleSpectrum out(K);
    for (int k = -K; k <= K; ++k) {
        cplx acc{};
        for (int j = 0; j < n; ++j) {
            const double phase = -kTwoPi * k * j / n;
            acc += samples[static_cast<std::size_t>(j)] * std::polar(1.0, phase);
        }
        out.at(k) = acc / static_cast<double>(n);
    }
    return out;
}

CircleSpectrum analyze_circle(std::span<const cplx> samples) {
    const int n = static_cast<int>(samples.size());
    if (n < 1) throw precondition_error("analyze_circle: empty sample list");
    return analyze_circle(samples, (n - 1) / 2);
}

std::vector<cplx> synthesize_circle(const CircleSpectrum& w, int n_samples) {
    std::vector<cplx> out(static_cast<std::size_t>(n_samples));
    for (int j = 0; j < n_samples; ++j) {
        cplx acc{};
        const double phi = kTwoPi * j / n_samples;
        for (int k = -w.K; k <= w.K; ++k) acc += w.at(k) * std::polar(1.0, k * phi);
        out[static_cast<std::size_t>(j)] = acc;
    }
    return out;
}

EmbeddingRatioReport embedding_ratio(const RoWeight& alpha, const RoWeight& eta, int K) {
    EmbeddingRatioReport rep;
    const double t_hi = smoothed_modulus(K);
    const int n = 4096;
    for (int i = 0; i <= n; ++i) {
        const double t = std::exp(std::log(t_hi) * i / n);
        rep.sup_ratio = std::max(rep.sup_ratio, alpha.eval(t) / eta.eval(t));
    }
    for (int k = 0; k <= K; ++k) {  // lattice points, in case the sup sits between grid nodes
        const double t = smoothed_modulus(k);
        rep.sup_ratio = std::max(rep.sup_ratio, alpha.eval(t) / eta.eval(t));
    }
    const double r_end = alpha.eval(t_hi) / eta.eval(t_hi);
    const double t_prev = std::max(1.0, t_hi / 10.0);
    const double r_prev = alpha.eval(t_prev) / eta.eval(t_prev);
    rep.vanishing_trend = t_prev > 1.0 && r_end < 0.5 * r_prev;
    return rep;
}

double derivative_multiplier_bound(int l, const RoWeight& alpha, int K) {
    if (l < 0) throw precondition_error("derivative_multiplier_bound: l must be >= 0");
    (void)alpha;  // the norm ratio alpha<k>^{-l}|k|^l / alpha is weight-independent
    if (l == 0) return 1.0;
    double best = 0.0;
    for (int k = -K; k <= K; ++k)
        best = std::max(best, std::pow(std::abs(k) / smoothed_modulus(k), l));
    return best;
}

}  // namespace hsx
