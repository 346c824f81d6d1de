#pragma once

#include <span>

#include "hsx/ro_weight.hpp"
#include "hsx/spectra.hpp"

namespace hsx {

/**
 * Sobolev endpoint pair (s0, s1) with the derived function parameter
 *
 *   psi(t) = t^{-s0/(s1-s0)} alpha(t^{1/(s1-s0)})   for t >= 1,
 *   psi(t) = alpha(1)                               for 0 < t < 1,
 *
 * admissible when s0 < sigma0(alpha) <= sigma1(alpha) < s1.
 */
struct InterpolationSetup {
    double s0 = 0.0;
    double s1 = 1.0;
    RoWeight alpha = RoWeight::power(0.0);

    double psi(double t) const;
};

InterpolationSetup build_psi(const RoWeight& alpha, double s0, double s1);

/// Interpolation norm through the spectral generating operator: the weight
/// applied to a frequency xi is <xi>^{s0} psi(<xi>^{s1-s0}), which reproduces
/// hnorm(w, alpha) identically.
double interp_norm(const CircleSpectrum& w, const InterpolationSetup& setup);
double interp_norm(const LatticeSpectrum& w, const InterpolationSetup& setup);

/// | (sum_j interp_norm(w_j)^2)^{1/2} - interp_norm(direct sum) |;
/// all setups must share the same (alpha, s0, s1).
double check_direct_sum(std::span<const InterpolationSetup> setups,
                        std::span<const CircleSpectrum> spectra);

struct PseudoconcavityReport {
    bool ok_on_sample = false;
    double worst_violation = 0.0;  // midpoint concavity deficiency of log psi(e^u)
};

/// Samples u -> log psi(e^u) on [0, log t_max]; heuristic evidence only.
PseudoconcavityReport check_pseudoconcavity(const InterpolationSetup& setup, double t_max,
                                            int grid);

}  // namespace hsx
