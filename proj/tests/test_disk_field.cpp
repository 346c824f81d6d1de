#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <functional>
#include <numbers>

#include "hsx/disk_field.hpp"
#include "hsx/errors.hpp"
#include "hsx/radial_grid.hpp"

using namespace hsx;

namespace {

constexpr double kPi = std::numbers::pi;

// independent second-order finite-difference solve of
// u'' + u'/r - kappa^2 u / r^2 = f(r), u(1) = 0, regular at the origin
std::vector<double> fd_mode_solve(int kappa, const std::function<double(double)>& f, int N) {
    const double h = 1.0 / N;
    if (kappa == 0) {
        // integrated form: r u' = int_0^r s f(s) ds, u(1) = 0
        std::vector<double> flux(static_cast<std::size_t>(N) + 1, 0.0);
        for (int i = 1; i <= N; ++i) {
            const double a = (i - 1) * h, b = i * h;
            flux[static_cast<std::size_t>(i)] =
                flux[static_cast<std::size_t>(i) - 1] + 0.5 * h * (a * f(a) + b * f(b));
        }
        std::vector<double> u(static_cast<std::size_t>(N) + 1, 0.0);
        for (int i = N; i >= 1; --i) {
            const double ra = i * h, rb = (i - 1) * h;
            const double ga = flux[static_cast<std::size_t>(i)] / ra;
            const double gb = rb > 0 ? flux[static_cast<std::size_t>(i) - 1] / rb : 0.0;
            u[static_cast<std::size_t>(i) - 1] = u[static_cast<std::size_t>(i)] -
                                                 0.5 * h * (ga + gb);
        }
        return u;
    }
    // tridiagonal FD on r_i = i h with u(0) = 0, u(1) = 0
    const int n = N - 1;
    std::vector<double> a(n), b(n), c(n), d(n);
    for (int i = 1; i <= n; ++i) {
        const double r = i * h;
        a[i - 1] = 1.0 / (h * h) - 1.0 / (2.0 * h * r);
        b[i - 1] = -2.0 / (h * h) - static_cast<double>(kappa) * kappa / (r * r);
        c[i - 1] = 1.0 / (h * h) + 1.0 / (2.0 * h * r);
        d[i - 1] = f(r);
    }
    for (int i = 1; i < n; ++i) {
        const double w = a[i] / b[i - 1];
        b[i] -= w * c[i - 1];
        d[i] -= w * d[i - 1];
    }
    std::vector<double> u(static_cast<std::size_t>(N) + 1, 0.0);
    u[n] = d[n - 1] / b[n - 1];
    for (int i = n - 1; i >= 1; --i)
        u[static_cast<std::size_t>(i)] = (d[i - 1] - c[i - 1] * u[static_cast<std::size_t>(i) + 1]) / b[i - 1];
    return u;
}

double fd_value_at(const std::vector<double>& u, double r) {
    const int N = static_cast<int>(u.size()) - 1;
    const double x = r * N;
    const int i = std::min(N - 1, static_cast<int>(x));
    const double w = x - i;
    return (1.0 - w) * u[static_cast<std::size_t>(i)] + w * u[static_cast<std::size_t>(i) + 1];
}

}  // namespace

TEST_CASE("radial grid basics") {
    const RadialGrid g(24);
    SUBCASE("nodes live in (0, 1], descending, boundary first") {
        CHECK(g.nodes()[0] == 1.0);
        for (int j = 0; j < g.size(); ++j) {
            CHECK(g.nodes()[j] > 0.0);
            CHECK(g.nodes()[j] <= 1.0);
            if (j > 0) CHECK(g.nodes()[j] < g.nodes()[j - 1]);
        }
    }
    SUBCASE("differentiation is exact on polynomials") {
        Eigen::VectorXd p(g.size()), dp(g.size()), d2p(g.size());
        for (int j = 0; j < g.size(); ++j) {
            const double r = g.nodes()[j];
            p[j] = std::pow(r, 7) - 2.0 * std::pow(r, 3) + 0.5;
            dp[j] = 7.0 * std::pow(r, 6) - 6.0 * r * r;
            d2p[j] = 42.0 * std::pow(r, 5) - 12.0 * r;
        }
        CHECK((g.d1() * p - dp).cwiseAbs().maxCoeff() < 1e-9);
        CHECK((g.d2() * p - d2p).cwiseAbs().maxCoeff() < 1e-7);
    }
    SUBCASE("boundary derivative rows") {
        Eigen::VectorXd p(g.size());
        for (int j = 0; j < g.size(); ++j) p[j] = std::pow(g.nodes()[j], 5);
        CHECK(g.derivative_row_at_one(3).dot(p) == doctest::Approx(60.0).epsilon(1e-9));
        CHECK(g.derivative_row_at_one(1).dot(p) == doctest::Approx(5.0).epsilon(1e-10));
    }
    SUBCASE("quadrature rows are exact for interpolants") {
        Eigen::VectorXd p(g.size());
        for (int j = 0; j < g.size(); ++j) p[j] = std::pow(g.nodes()[j], 5);
        CHECK(g.quad_rho().dot(p) == doctest::Approx(1.0 / 7.0).epsilon(1e-13));
        CHECK(g.quad_plain().dot(p) == doctest::Approx(1.0 / 6.0).epsilon(1e-13));
    }
    SUBCASE("interpolation reproduces polynomials off the grid") {
        Eigen::VectorXd p(g.size());
        for (int j = 0; j < g.size(); ++j) p[j] = std::pow(g.nodes()[j], 9) - g.nodes()[j];
        Eigen::VectorXd pts(3);
        pts << 0.123, 0.5, 0.987;
        const Eigen::VectorXd vals = g.interpolation_matrix(pts) * p;
        for (int i = 0; i < 3; ++i)
            CHECK(vals[i] == doctest::Approx(std::pow(pts[i], 9) - pts[i]).epsilon(1e-12));
    }
}

TEST_CASE("mode particular solutions") {
    const auto grid = make_radial_grid(32);
    SUBCASE("kappa 0 with constant data gives rho^2") {
        Eigen::VectorXcd f = Eigen::VectorXcd::Constant(grid->size(), cplx(4.0, 0.0));
        Eigen::VectorXcd u(grid->size());
        u.real() = grid->particular_matrix(0) * f.real();
        u.imag() = grid->particular_matrix(0) * f.imag();
        for (int j = 0; j < grid->size(); ++j)
            CHECK(u(j).real() ==
                  doctest::Approx(std::pow(grid->nodes()[j], 2)).epsilon(1e-11));
    }
    SUBCASE("kappa 1 with constant data gives rho^2/3") {
        Eigen::VectorXd f = Eigen::VectorXd::Constant(grid->size(), 3.0);
        const Eigen::VectorXd u = grid->particular_matrix(1) * f;
        for (int j = 0; j < grid->size(); ++j)
            CHECK(u(j) == doctest::Approx(std::pow(grid->nodes()[j], 2)).epsilon(1e-11));
    }
    SUBCASE("kappa 2 with quadratic data matches the pinned closed form") {
        Eigen::VectorXd f(grid->size());
        for (int j = 0; j < grid->size(); ++j) f[j] = 12.0 * std::pow(grid->nodes()[j], 2);
        const Eigen::VectorXd u = grid->particular_matrix(2) * f;
        for (int j = 0; j < grid->size(); ++j) {
            const double r = grid->nodes()[j];
            CHECK(u(j) == doctest::Approx(std::pow(r, 4) - std::pow(r, 2)).epsilon(1e-10));
        }
    }
    SUBCASE("agreement with the finite-difference oracle") {
        for (int kappa : {0, 1, 2, 5}) {
            const auto f = [](double r) { return r * r + 3.0; };
            Eigen::VectorXd fv(grid->size());
            for (int j = 0; j < grid->size(); ++j) fv[j] = f(grid->nodes()[j]);
            Eigen::VectorXd u = grid->particular_matrix(kappa) * fv;
            // pin both representatives to u(1) = 0
            const double edge = u(0);
            for (int j = 0; j < grid->size(); ++j)
                u(j) -= edge * std::pow(grid->nodes()[j], kappa);
            const auto oracle = fd_mode_solve(kappa, f, 4000);
            for (double r : {0.3, 0.55, 0.8, 0.95}) {
                Eigen::VectorXd pt(1);
                pt << r;
                const double lib_val = (grid->interpolation_matrix(pt) * u)(0);
                CHECK(std::abs(lib_val - fd_value_at(oracle, r)) < 2e-5);
            }
        }
    }
}

TEST_CASE("disk field calculus") {
    const auto grid = make_radial_grid(24);
    const int K = 8;

    DiskField z2(K, grid);  // rho^2 e^{2 i phi} = (x + i y)^2
    z2.profile_ref(2) = grid->nodes().array().pow(2).matrix().cast<cplx>();

    SUBCASE("harmonic field has zero laplacian") {
        CHECK(l2_norm(laplacian(z2)) < 1e-11);
    }
    SUBCASE("laplacian of rho^2 is 4") {
        DiskField r2(K, grid);
        r2.profile_ref(0) = grid->nodes().array().pow(2).matrix().cast<cplx>();
        const DiskField lap = laplacian(r2);
        for (int j = 0; j < grid->size(); ++j)
            CHECK(lap.profile(0)(j).real() == doctest::Approx(4.0).epsilon(1e-10));
        CHECK(l2_norm(lap) == doctest::Approx(4.0 * std::sqrt(kPi)).epsilon(1e-10));
    }
    SUBCASE("traces") {
        const CircleSpectrum tr = boundary_trace(z2);
        CHECK(std::abs(tr.at(2) - 1.0) < 1e-13);
        // inner normal: d/dnu rho^2 = -2 rho at rho = 1
        const CircleSpectrum d1 = normal_derivative_trace(z2, 1);
        CHECK(std::abs(d1.at(2) + 2.0) < 1e-11);
        const CircleSpectrum d2 = normal_derivative_trace(z2, 2);
        CHECK(std::abs(d2.at(2) - 2.0) < 1e-10);
    }
    SUBCASE("L2 inner product of z^2") {
        CHECK(l2_inner(z2, z2).real() == doctest::Approx(kPi / 3.0).epsilon(1e-12));
        CHECK(l2_norm(z2) == doctest::Approx(std::sqrt(kPi / 3.0)).epsilon(1e-12));
    }
    SUBCASE("Cartesian derivatives via the chain rule") {
        // d/dx (x+iy)^2 = 2(x+iy): a single mode-1 field with profile 2 rho
        const DiskField dx = d_x(z2);
        CHECK(l2_norm(dx) == doctest::Approx(std::sqrt(2.0 * kPi)).epsilon(1e-10));
        for (int j = 0; j < grid->size(); ++j)
            CHECK(std::abs(dx.profile(1)(j) - 2.0 * grid->nodes()[j]) < 1e-10);
        const DiskField dy = d_y(z2);
        for (int j = 0; j < grid->size(); ++j)
            CHECK(std::abs(dy.profile(1)(j) - cplx(0.0, 2.0) * grid->nodes()[j]) < 1e-10);
    }
    SUBCASE("integer Sobolev norms of z^2 in closed form") {
        CHECK(std::pow(sobolev_norm(z2, 0), 2) == doctest::Approx(kPi / 3.0).epsilon(1e-11));
        CHECK(std::pow(sobolev_norm(z2, 1), 2) ==
              doctest::Approx(kPi / 3.0 + 4.0 * kPi).epsilon(1e-11));
        CHECK(std::pow(sobolev_norm(z2, 3), 2) ==
              doctest::Approx(49.0 * kPi / 3.0).epsilon(1e-10));
    }
    SUBCASE("point values") {
        CHECK(std::abs(z2.value_at(0.5, 0.3) -
                       std::pow(0.5 * std::polar(1.0, 0.3), 2)) < 1e-12);
    }
    SUBCASE("kernel projection removes harmonic low modes and is idempotent") {
        Rng rng(41);
        DiskField u = random_band_limited(K, grid, 57, 1.5);
        const DiskField p1 = project_out_homogeneous_kernel(u, 2);
        const DiskField p2 = project_out_homogeneous_kernel(p1, 2);
        DiskField diff = p2;
        diff -= p1;
        CHECK(l2_norm(diff) < 1e-12 * (1.0 + l2_norm(p1)));
        // orthogonal to each kernel element afterwards
        for (int k = -1; k <= 1; ++k) {
            DiskField e(K, grid);
            e.profile_ref(k) = grid->nodes().array().pow(std::abs(k)).matrix().cast<cplx>();
            CHECK(std::abs(l2_inner(p1, e)) < 1e-12 * (1.0 + l2_norm(u)));
        }
    }
    SUBCASE("random fields are deterministic per seed") {
        const DiskField a = random_band_limited(K, grid, 99, 2.0);
        const DiskField b = random_band_limited(K, grid, 99, 2.0);
        DiskField diff = a;
        diff -= b;
        CHECK(l2_norm(diff) == 0.0);
    }
}
