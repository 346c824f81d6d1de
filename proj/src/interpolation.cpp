#include "hsx/interpolation.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "hsx/errors.hpp"

namespace hsx {

double InterpolationSetup::psi(double t) const {
    if (!(t > 0.0)) throw precondition_error("psi: argument must be positive");
    if (t < 1.0) return alpha.eval(1.0);
    const double d = s1 - s0;
    return std::pow(t, -s0 / d) * alpha.eval(std::pow(t, 1.0 / d));
}

InterpolationSetup build_psi(const RoWeight& alpha, double s0, double s1) {
    if (!(s0 < s1)) throw precondition_error("build_psi: need s0 < s1");
    IndexPair idx;
    try {
        idx = analytic_indices(alpha);
    } catch (const unsupported_error&) {
        idx = estimate_indices(alpha, 1e6);
    }
    if (!(s0 < idx.sigma0)) {
        std::ostringstream msg;
        msg << "build_psi: s0 = " << s0 << " must lie below sigma0(alpha) = " << idx.sigma0;
        throw precondition_error(msg.str());
    }
    if (!(idx.sigma1 < s1)) {
        std::ostringstream msg;
        msg << "build_psi: s1 = " << s1 << " must lie above sigma1(alpha) = " << idx.sigma1;
        throw precondition_error(msg.str());
    }
    return InterpolationSetup{s0, s1, alpha};
}

namespace {

double composite_weight(const InterpolationSetup& setup, double xi_mod) {
    return std::pow(xi_mod, setup.s0) * setup.psi(std::pow(xi_mod, setup.s1 - setup.s0));
}

constexpr double kTwoPi = 2.0 * std::numbers::pi;

}  // namespace

double interp_norm(const CircleSpectrum& w, const InterpolationSetup& setup) {
    double sum = 0.0;
    for (int k = -w.K; k <= w.K; ++k) {
        const double g = composite_weight(setup, smoothed_modulus(k));
        sum += g * g * std::norm(w.at(k));
    }
    return std::sqrt(kTwoPi * sum);
}

double interp_norm(const LatticeSpectrum& w, const InterpolationSetup& setup) {
    double sum = 0.0;
    if (w.dim == 1) {
        for (int k = -w.K; k <= w.K; ++k) {
            const double g = composite_weight(setup, smoothed_modulus(k));
            sum += g * g * std::norm(w.at(k));
        }
        return std::sqrt(kTwoPi * sum);
    }
    for (int k1 = -w.K; k1 <= w.K; ++k1)
        for (int k2 = -w.K; k2 <= w.K; ++k2) {
            const double g = composite_weight(setup, smoothed_modulus(k1, k2));
            sum += g * g * std::norm(w.at(k1, k2));
        }
    return std::sqrt(kTwoPi * kTwoPi * sum);
}

double check_direct_sum(std::span<const InterpolationSetup> setups,
                        std::span<const CircleSpectrum> spectra) {
    if (setups.size() != spectra.size())
        throw precondition_error("check_direct_sum: size mismatch");
    if (setups.empty()) return 0.0;
    for (const auto& s : setups) {
        if (s.s0 != setups[0].s0 || s.s1 != setups[0].s1 || !(s.alpha == setups[0].alpha))
            throw precondition_error("check_direct_sum: setups must share the same psi");
    }
    double square_sum = 0.0;
    for (std::size_t j = 0; j < spectra.size(); ++j) {
        const double nj = interp_norm(spectra[j], setups[j]);
        square_sum += nj * nj;
    }
    // direct-sum norm over the concatenated spectrum, accumulated in one pass
    double concat = 0.0;
    for (std::size_t j = 0; j < spectra.size(); ++j) {
        const auto& w = spectra[j];
        for (int k = -w.K; k <= w.K; ++k) {
            const double g = composite_weight(setups[j], smoothed_modulus(k));
            concat += g * g * std::norm(w.at(k));
        }
    }
    return std::abs(std::sqrt(square_sum) - std::sqrt(kTwoPi * concat));
}

PseudoconcavityReport check_pseudoconcavity(const InterpolationSetup& setup, double t_max,
                                            int grid) {
    if (grid < 3) throw precondition_error("check_pseudoconcavity: grid too small");
    PseudoconcavityReport rep;
    const double u_hi = std::log(t_max);
    std::vector<double> g(static_cast<std::size_t>(grid) + 1);
    for (int i = 0; i <= grid; ++i)
        g[static_cast<std::size_t>(i)] = std::log(setup.psi(std::exp(u_hi * i / grid)));
    // midpoint concavity deficiency over all index pairs of equal parity
    for (int i = 0; i + 2 <= grid; ++i)
        for (int j = i + 2; j <= grid; j += 2) {
            const double mid = g[static_cast<std::size_t>((i + j) / 2)];
            const double chord = 0.5 * (g[static_cast<std::size_t>(i)] +
                                        g[static_cast<std::size_t>(j)]);
            rep.worst_violation = std::max(rep.worst_violation, chord - mid);
        }
    const double slack = 0.1;
    rep.ok_on_sample = rep.worst_violation <= slack;
    return rep;
}

}  // namespace hsx
