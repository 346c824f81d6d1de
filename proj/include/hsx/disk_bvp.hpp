#pragma once

#include <complex>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "hsx/disk_field.hpp"
#include "hsx/spectra.hpp"

namespace hsx {

/**
 * Model family on the unit disk:
 *
 *   Delta u = f   in the disk,
 *   (d/dnu)^m u = g   on the circle,   m >= 2,
 *
 * with the inner normal d/dnu = -d/drho.  Mode k reduces to a radial ODE
 * whose regular homogeneous solution rho^{|k|} meets the boundary condition
 * with the falling factorial d(k, m) = |k|(|k|-1)...(|k|-m+1); its zeros
 * |k| <= m-1 enumerate both the kernel and the cokernel.
 */
struct DiskBvpProblem {
    int m = 2;
    DiskField f;
    CircleSpectrum g;
};

/// Falling factorial d(k, m).
double falling_factorial(int k, int m);

struct ModeSolveResult {
    Eigen::VectorXcd u;             // radial profile on the grid
    bool solvable = true;
    cplx constraint_value{};        // g_k - attained boundary value (degenerate modes)
    bool degenerate = false;
};

/// Solves the mode ODE u'' + u'/rho - k^2 u/rho^2 = f_k with regularity at 0
/// and (-1)^m u^(m)(1) = g_k.  Degenerate modes return the representative
/// with no rho^{|k|} kernel component in L2(rho drho) for |k| >= 2, and the
/// zero-anchored particular solution for |k| <= 1.
ModeSolveResult solve_mode(int k, const Eigen::VectorXcd& f_k, cplx g_k, int m,
                           const RadialGrid& grid);

/// (Delta u, (-1)^m (d/drho)^m u|_1) mode-wise.
std::pair<DiskField, CircleSpectrum> apply_operator(const DiskField& u, int m);

/// The 2m-1 fields rho^{|k|} e^{ik phi}, |k| <= m-1.
std::vector<DiskField> kernel_basis(int m, int K, std::shared_ptr<const RadialGrid> grid);

/// Solution triple of the homogeneous adjoint system for m = 2.
struct AdjointTriple {
    DiskField v;
    CircleSpectrum w;
    CircleSpectrum h;
    int mode = 0;
};

/// The three triples (rho^{|k|} e^{ik phi}, -e^{ik phi}, e^{ik phi}), |k| <= 1.
std::vector<AdjointTriple> adjoint_kernel_basis(int K, std::shared_ptr<const RadialGrid> grid);

/// Values of the range functionals on (f, g): for m = 2 the three pairings
/// (f, v) + (f|_Gamma, w) + (g, h) over adjoint_kernel_basis, otherwise the
/// mode-wise constraint values over the degenerate modes.
std::vector<cplx> solvability_residuals(const DiskField& f, const CircleSpectrum& g, int m);

struct NormRequest {
    enum class Where { interior, boundary_trace } where = Where::interior;
    int interior_order = 0;                  // integer Sobolev order on the disk
    RoWeight weight = RoWeight::power(0.0);  // boundary weight on u|_Gamma
    std::string label;
};

struct SolveReport {
    DiskField solution;              // orthogonal to the kernel
    int kernel_dim = 0;
    int cokernel_dim = 0;
    int index = 0;
    std::vector<cplx> solvability;   // one value per cokernel functional
    double operator_residual = 0.0;  // ||(A,B)u - projected data||
    double data_scale = 0.0;
    CircleSpectrum g_projected;      // boundary data actually solved
    std::map<std::string, double> norms;
    std::vector<std::string> warnings;
};

/// Projects the data onto the range (adjusting the boundary modes that the
/// cokernel functionals obstruct), solves every mode, and returns the unique
/// solution orthogonal to the kernel.
SolveReport solve(const DiskBvpProblem& problem, std::span<const NormRequest> requested_norms = {},
                  int threads = 1);

struct FredholmReport {
    int kernel_dim = 0;
    int cokernel_dim = 0;
    int index = 0;
};

/// kernel_dim from the explicit basis, cokernel_dim by counting vanishing
/// falling factorials within the truncation.
FredholmReport fredholm_report(int m, int K);

struct AprioriReport {
    double max_ratio = 0.0;
    std::vector<double> per_trial;
};

/// Random-trial probe of the global bound
/// ||u||_{H^s} <= c (||Delta u||_{H^{s-2}} + ||(d/dnu)^m u||_{H^{s-m-1/2}(Gamma)}
///                   + ||u||_{H^{s-lambda}});
/// reports the largest sampled ratio.  Interior orders must be integers.
AprioriReport apriori_probe(int trials, double s, double lambda, std::uint64_t seed, int m, int K,
                            int R);

struct RegularityReport {
    struct Row {
        std::string weight;
        int nu_order = 0;  // normal-derivative order of the trace
        double value = 0.0;
    };
    std::vector<Row> rows;
    int K = 0;
};

/// Solves with f = 0 and g_k = <k>^{-decay} (ln<k>)^{log_exponent} for |k| >= 2
/// and tabulates boundary-trace norms over a ladder of weights.
RegularityReport regularity_probe(double decay_exponent, int m, int K,
                                  double log_exponent = 0.0);

}  // namespace hsx
