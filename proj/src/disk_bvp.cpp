#include "hsx/disk_bvp.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <thread>

#include "hsx/errors.hpp"

namespace hsx {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;
}

double falling_factorial(int k, int m) {
    double v = 1.0;
    const int a = std::abs(k);
    for (int i = 0; i < m; ++i) v *= static_cast<double>(a - i);
    return v;
}

ModeSolveResult solve_mode(int k, const Eigen::VectorXcd& f_k, cplx g_k, int m,
                           const RadialGrid& grid) {
    if (m < 2) throw precondition_error("solve_mode: m must be >= 2");
    if (f_k.size() != grid.size()) throw precondition_error("solve_mode: profile size mismatch");
    const int kappa = std::abs(k);
    const auto& P = grid.particular_matrix(kappa);
    ModeSolveResult res;
    Eigen::VectorXcd up(grid.size());
    up.real() = P * f_k.real();
    up.imag() = P * f_k.imag();
    if (!up.allFinite()) throw numeric_error("solve_mode: particular solution not finite");

    const auto& row = grid.derivative_row_at_one_ld(m);
    const double bc_sign = (m % 2 == 0) ? 1.0 : -1.0;  // (d/dnu)^m = (-1)^m (d/drho)^m
    const cplx b = bc_sign * boundary_row_dot(row, up);

    const double d = falling_factorial(k, m);
    const Eigen::ArrayXd rho_pow = grid.nodes().array().pow(kappa);
    if (d != 0.0) {
        const cplx c = (g_k - b) / (bc_sign * d);
        res.u = up + (c * rho_pow.cast<cplx>()).matrix();
        res.solvable = true;
        res.degenerate = false;
        return res;
    }
    res.degenerate = true;
    res.constraint_value = g_k - b;
    res.solvable = std::abs(res.constraint_value) <= 1e-10 * (1.0 + std::abs(g_k) + up.norm());
    if (kappa >= 2) {
        // remove the kernel component in L2(rho drho)
        const Eigen::ArrayXd wr = grid.gauss_weights().array() * grid.gauss_nodes().array();
        const Eigen::ArrayXd bg = (grid.to_gauss() * rho_pow.matrix()).array();
        Eigen::VectorXcd ug(grid.gauss_nodes().size());
        ug.real() = grid.to_gauss() * up.real();
        ug.imag() = grid.to_gauss() * up.imag();
        const cplx num = (ug.array() * bg.cast<cplx>() * wr.cast<cplx>()).sum();
        const double den = (bg * bg * wr).sum();
        up -= (num / den) * rho_pow.matrix().cast<cplx>();
    }
    res.u = up;
    return res;
}

std::pair<DiskField, CircleSpectrum> apply_operator(const DiskField& u, int m) {
    if (m < 2) throw precondition_error("apply_operator: m must be >= 2");
    return {laplacian(u), normal_derivative_trace(u, m)};
}

std::vector<DiskField> kernel_basis(int m, int K, std::shared_ptr<const RadialGrid> grid) {
    if (m < 2) throw precondition_error("kernel_basis: m must be >= 2");
    if (K < m - 1) throw precondition_error("kernel_basis: truncation too small (K >= m-1)");
    std::vector<DiskField> out;
    for (int k = -(m - 1); k <= m - 1; ++k) {
        DiskField e(K, grid);
        e.profile_ref(k) = grid->nodes().array().pow(std::abs(k)).matrix().cast<cplx>();
        out.push_back(std::move(e));
    }
    return out;
}

std::vector<AdjointTriple> adjoint_kernel_basis(int K, std::shared_ptr<const RadialGrid> grid) {
    if (K < 1) throw precondition_error("adjoint_kernel_basis: truncation too small");
    std::vector<AdjointTriple> out;
    for (int k = -1; k <= 1; ++k) {
        AdjointTriple t;
        t.mode = k;
        t.v = DiskField(K, grid);
        t.v.profile_ref(k) = grid->nodes().array().pow(std::abs(k)).matrix().cast<cplx>();
        t.w = CircleSpectrum(K);
        t.h = CircleSpectrum(K);
        t.w.at(k) = -1.0;
        t.h.at(k) = 1.0;
        out.push_back(std::move(t));
    }
    return out;
}

namespace {

/// (a, b)_Gamma = 2 pi sum a_k conj(b_k)
cplx circle_inner(const CircleSpectrum& a, const CircleSpectrum& b) {
    const int K = std::min(a.K, b.K);
    cplx acc{};
    for (int k = -K; k <= K; ++k) acc += a.at(k) * std::conj(b.at(k));
    return kTwoPi * acc;
}

double circle_l2(const CircleSpectrum& a) {
    double acc = 0.0;
    for (const auto& c : a.coeff) acc += std::norm(c);
    return std::sqrt(kTwoPi * acc);
}

}  // namespace

std::vector<cplx> solvability_residuals(const DiskField& f, const CircleSpectrum& g, int m) {
    if (m == 2) {
        const auto triples = adjoint_kernel_basis(std::max(1, f.truncation()), f.grid());
        const CircleSpectrum f_trace = boundary_trace(f);
        std::vector<cplx> out;
        for (const auto& t : triples)
            out.push_back(l2_inner(f, t.v) + circle_inner(f_trace, t.w) + circle_inner(g, t.h));
        return out;
    }
    std::vector<cplx> out;
    for (int k = -(m - 1); k <= m - 1; ++k) {
        if (std::abs(k) > f.truncation()) continue;
        const cplx gk = std::abs(k) <= g.K ? g.at(k) : cplx{};
        const auto res = solve_mode(k, f.profile(k), gk, m, *f.grid());
        out.push_back(res.constraint_value);
    }
    return out;
}

SolveReport solve(const DiskBvpProblem& problem, std::span<const NormRequest> requested_norms,
                  int threads) {
    const int m = problem.m;
    if (m < 2) throw precondition_error("solve: m must be >= 2");
    if (problem.f.truncation() != problem.g.K)
        throw precondition_error("solve: f and g truncations differ");
    const int K = problem.f.truncation();
    if (K < m - 1) throw precondition_error("solve: truncation below m-1");
    const auto& grid = *problem.f.grid();

    SolveReport rep;
    rep.kernel_dim = 2 * m - 1;
    rep.cokernel_dim = 2 * m - 1;
    rep.index = 0;
    rep.solvability = solvability_residuals(problem.f, problem.g, m);
    if (grid.size() < K + 4)
        rep.warnings.push_back("radial grid may under-resolve the angular truncation");

    // warm the per-mode caches before the parallel section
    for (int kappa = 0; kappa <= K; ++kappa) grid.particular_matrix(kappa);
    grid.derivative_row_at_one(m);

    rep.solution = DiskField(K, problem.f.grid());
    rep.g_projected = problem.g;
    std::vector<cplx> attained(static_cast<std::size_t>(2 * K + 1));

    const auto solve_range = [&](int lo, int hi) {
        for (int k = lo; k < hi; ++k) {
            const auto res = solve_mode(k, problem.f.profile(k), problem.g.at(k), m, grid);
            rep.solution.profile_ref(k) = res.u;
            if (res.degenerate)
                attained[static_cast<std::size_t>(k + K)] = problem.g.at(k) - res.constraint_value;
            else
                attained[static_cast<std::size_t>(k + K)] = problem.g.at(k);
        }
    };
    const int n_threads = std::max(1, threads);
    if (n_threads == 1) {
        solve_range(-K, K + 1);
    } else {
        std::vector<std::thread> pool;
        const int total = 2 * K + 1;
        const int chunk = (total + n_threads - 1) / n_threads;
        for (int t = 0; t < n_threads; ++t) {
            const int lo = -K + t * chunk;
            const int hi = std::min(K + 1, lo + chunk);
            if (lo >= hi) break;
            pool.emplace_back(solve_range, lo, hi);
        }
        for (auto& th : pool) th.join();
    }
    for (int k = -K; k <= K; ++k) rep.g_projected.at(k) = attained[static_cast<std::size_t>(k + K)];

    rep.solution = project_out_homogeneous_kernel(rep.solution, m);

    const auto [Au, Bu] = apply_operator(rep.solution, m);
    DiskField interior_residual = Au;
    interior_residual -= problem.f;
    CircleSpectrum boundary_residual = Bu;
    for (int k = -K; k <= K; ++k) boundary_residual.at(k) -= rep.g_projected.at(k);
    rep.operator_residual = std::sqrt(std::pow(l2_norm(interior_residual), 2) +
                                      std::pow(circle_l2(boundary_residual), 2));
    rep.data_scale = std::sqrt(std::pow(l2_norm(problem.f), 2) +
                               std::pow(circle_l2(problem.g), 2));

    for (const auto& req : requested_norms) {
        if (req.where == NormRequest::Where::interior) {
            std::ostringstream key;
            key << (req.label.empty() ? "interior_H" : req.label) << "(" << req.interior_order
                << ")";
            rep.norms[key.str()] = sobolev_norm(rep.solution, req.interior_order);
        } else {
            std::ostringstream key;
            key << (req.label.empty() ? "trace" : req.label) << "[" << req.weight.describe()
                << "]";
            rep.norms[key.str()] = hnorm(boundary_trace(rep.solution), req.weight);
        }
    }
    return rep;
}

FredholmReport fredholm_report(int m, int K) {
    if (m < 2) throw precondition_error("fredholm_report: m must be >= 2");
    if (K < m - 1) throw precondition_error("fredholm_report: truncation too small");
    FredholmReport rep;
    rep.kernel_dim = 2 * m - 1;
    int cokernel = 0;
    for (int k = -K; k <= K; ++k)
        if (falling_factorial(k, m) == 0.0) ++cokernel;
    rep.cokernel_dim = cokernel;
    rep.index = rep.kernel_dim - rep.cokernel_dim;
    return rep;
}

AprioriReport apriori_probe(int trials, double s, double lambda, std::uint64_t seed, int m, int K,
                            int R) {
    if (trials < 1) throw precondition_error("apriori_probe: trials must be positive");
    if (!(s > m + 0.5)) throw precondition_error("apriori_probe: need s > m + 1/2");
    if (!(lambda > 0.0)) throw precondition_error("apriori_probe: lambda must be positive");
    const double s_int = std::round(s), sl = std::round(s - lambda);
    if (std::abs(s - s_int) > 1e-12 || std::abs(s - lambda - sl) > 1e-12 || s_int < 2.0)
        throw unsupported_error("apriori_probe: interior orders must be nonnegative integers");

    auto grid = make_radial_grid(R);
    AprioriReport rep;
    const RoWeight boundary_weight = RoWeight::power(s - m - 0.5);
    // spectral decay fast enough that the draws lie in the H^s class probed
    const double decay = s + 1.0;
    for (int trial = 0; trial < trials; ++trial) {
        const DiskField u = random_band_limited(
            K, grid, seed + 977u * static_cast<std::uint64_t>(trial), decay);
        const auto [Au, Bu] = apply_operator(u, m);
        const double num = sobolev_norm(u, static_cast<int>(s_int));
        const double den = sobolev_norm(Au, static_cast<int>(s_int) - 2) +
                           hnorm(Bu, boundary_weight) +
                           sobolev_norm(u, static_cast<int>(sl));
        if (den == 0.0) throw numeric_error("apriori_probe: zero denominator");
        const double ratio = num / den;
        rep.per_trial.push_back(ratio);
        rep.max_ratio = std::max(rep.max_ratio, ratio);
    }
    return rep;
}

RegularityReport regularity_probe(double decay_exponent, int m, int K, double log_exponent) {
    if (m < 2) throw precondition_error("regularity_probe: m must be >= 2");
    if (K < m) throw precondition_error("regularity_probe: truncation too small");
    auto grid = make_radial_grid(std::max(24, 2 * m + 16));

    // boundary data g_k = <k>^{-decay} (ln<k>)^{log_exponent} on the
    // non-degenerate modes; the solution trace is g_k / d(k, m) mode-wise
    CircleSpectrum trace(K);
    for (int k = -K; k <= K; ++k) {
        const double d = falling_factorial(k, m);
        if (d == 0.0) continue;
        const double t = smoothed_modulus(k);
        trace.at(k) = std::pow(t, -decay_exponent) * std::pow(std::log(t), log_exponent) / d;
    }

    RegularityReport rep;
    rep.K = K;
    std::vector<std::pair<std::string, RoWeight>> ladder;
    for (double t : {5.5, 6.0, 6.5, 7.0, 7.5, 8.0, 8.5}) {
        std::ostringstream name;
        name << "power(" << t << ")";
        ladder.emplace_back(name.str(), RoWeight::power(t));
    }
    ladder.emplace_back("power_log(7.5, r=-1)", RoWeight::power_log(7.5, {-1.0}));
    ladder.emplace_back("power_log(7.5, r=1)", RoWeight::power_log(7.5, {1.0}));

    for (int nu = 0; nu <= 1; ++nu) {
        CircleSpectrum tr(K);
        for (int k = -K; k <= K; ++k)
            tr.at(k) = nu == 0 ? trace.at(k)
                               : trace.at(k) * static_cast<double>(-std::abs(k));  // d/dnu trace
        for (const auto& [name, w] : ladder)
            rep.rows.push_back({name, nu, hnorm(tr, w)});
    }
    return rep;
}

}  // namespace hsx
