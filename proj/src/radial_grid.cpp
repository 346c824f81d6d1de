#include "hsx/radial_grid.hpp"

#include <cmath>
#include <numbers>

#include "hsx/errors.hpp"

namespace hsx {

void gauss_legendre(int n, double a, double b, Eigen::VectorXd& nodes, Eigen::VectorXd& weights) {
    nodes.resize(n);
    weights.resize(n);
    const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    for (int i = 0; i < (n + 1) / 2; ++i) {
        double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0, p1 = x;
            for (int j = 2; j <= n; ++j) {
                const double p2 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p0) / j;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[i] = mid - half * x;
        nodes[n - 1 - i] = mid + half * x;
        weights[i] = half * w;
        weights[n - 1 - i] = half * w;
    }
}

namespace {

// Fornberg's recurrence for derivative weights 0..m at z; row-major n x (m+1)
template <typename Scalar>
std::vector<Scalar> fd_weights_impl(Scalar z, const Scalar* x, int n, int m) {
    std::vector<Scalar> c(static_cast<std::size_t>(n) * (m + 1), Scalar(0));
    const auto at = [&](int i, int k) -> Scalar& {
        return c[static_cast<std::size_t>(i) * (m + 1) + k];
    };
    Scalar c1 = 1.0;
    Scalar c4 = x[0] - z;
    at(0, 0) = 1.0;
    for (int i = 1; i < n; ++i) {
        const int mn = std::min(i, m);
        Scalar c2 = 1.0;
        const Scalar c5 = c4;
        c4 = x[i] - z;
        for (int j = 0; j < i; ++j) {
            const Scalar c3 = x[i] - x[j];
            c2 *= c3;
            if (j == i - 1) {
                for (int k = mn; k >= 1; --k)
                    at(i, k) = c1 * (Scalar(k) * at(i - 1, k - 1) - c5 * at(i - 1, k)) / c2;
                at(i, 0) = -c1 * c5 * at(i - 1, 0) / c2;
            }
            for (int k = mn; k >= 1; --k) at(j, k) = (c4 * at(j, k) - Scalar(k) * at(j, k - 1)) / c3;
            at(j, 0) = c4 * at(j, 0) / c3;
        }
        c1 = c2;
    }
    return c;
}

}  // namespace

Eigen::MatrixXd fd_weights(double z, const Eigen::VectorXd& x, int m) {
    const int n = static_cast<int>(x.size());
    const auto table = fd_weights_impl<double>(z, x.data(), n, m);
    Eigen::MatrixXd c(n, m + 1);
    for (int i = 0; i < n; ++i)
        for (int k = 0; k <= m; ++k) c(i, k) = table[static_cast<std::size_t>(i) * (m + 1) + k];
    return c;
}

RadialGrid::RadialGrid(int R) : R_(R) {
    if (R < 8) throw precondition_error("RadialGrid: need at least 8 nodes");
    nodes_.resize(R);
    for (int j = 0; j < R; ++j)
        nodes_[j] = 0.5 * (1.0 + std::cos(2.0 * std::numbers::pi * j / (2.0 * R - 1.0)));

    // barycentric weights via log-magnitude accumulation
    Eigen::VectorXd logw(R), sign(R);
    for (int j = 0; j < R; ++j) {
        double lw = 0.0, sg = 1.0;
        for (int i = 0; i < R; ++i) {
            if (i == j) continue;
            const double d = nodes_[j] - nodes_[i];
            lw -= std::log(std::abs(d));
            if (d < 0) sg = -sg;
        }
        logw[j] = lw;
        sign[j] = sg;
    }
    const double shift = logw.maxCoeff();
    bary_.resize(R);
    for (int j = 0; j < R; ++j) bary_[j] = sign[j] * std::exp(logw[j] - shift);

    d1_.resize(R, R);
    d2_.resize(R, R);
    for (int j = 0; j < R; ++j) {
        const Eigen::MatrixXd w = fd_weights(nodes_[j], nodes_, 2);
        d1_.row(j) = w.col(1).transpose();
        d2_.row(j) = w.col(2).transpose();
        // negative-sum trick: rows annihilate constants exactly
        d1_(j, j) -= d1_.row(j).sum();
        d2_(j, j) -= d2_.row(j).sum();
    }

    // quadrature rows, exact for products of two nodal interpolants
    gauss_legendre(R + 4, 0.0, 1.0, gauss_x_, gauss_w_);
    to_gauss_ = interpolation_matrix(gauss_x_);
    quad_rho_ = (gauss_w_.array() * gauss_x_.array()).matrix().transpose() * to_gauss_;
    quad_plain_ = gauss_w_.transpose() * to_gauss_;
}

const Eigen::RowVectorXd& RadialGrid::derivative_row_at_one(int order) const {
    std::lock_guard<std::mutex> lock(cache_mutex_);
    auto it = boundary_rows_.find(order);
    if (it != boundary_rows_.end()) return it->second;
    const Eigen::MatrixXd w = fd_weights(1.0, nodes_, order);
    Eigen::RowVectorXd row = w.col(order).transpose();
    if (order >= 1) row(0) -= row.sum();  // node 0 is rho = 1
    auto [pos, _] = boundary_rows_.emplace(order, std::move(row));
    return pos->second;
}

const std::vector<long double>& RadialGrid::derivative_row_at_one_ld(int order) const {
    std::lock_guard<std::mutex> lock(cache_mutex_);
    auto it = boundary_rows_ld_.find(order);
    if (it != boundary_rows_ld_.end()) return it->second;
    std::vector<long double> x(static_cast<std::size_t>(R_));
    for (int j = 0; j < R_; ++j) x[static_cast<std::size_t>(j)] = nodes_[j];
    const auto table = fd_weights_impl<long double>(1.0L, x.data(), R_, order);
    std::vector<long double> row(static_cast<std::size_t>(R_));
    for (int j = 0; j < R_; ++j)
        row[static_cast<std::size_t>(j)] = table[static_cast<std::size_t>(j) * (order + 1) + order];
    if (order >= 1) {
        long double sum = 0.0L;
        for (long double v : row) sum += v;
        row[0] -= sum;
    }
    auto [pos, _] = boundary_rows_ld_.emplace(order, std::move(row));
    return pos->second;
}

Eigen::MatrixXd RadialGrid::interpolation_matrix(const Eigen::VectorXd& pts) const {
    const int np = static_cast<int>(pts.size());
    Eigen::MatrixXd out = Eigen::MatrixXd::Zero(np, R_);
    for (int p = 0; p < np; ++p) {
        int hit = -1;
        for (int j = 0; j < R_; ++j)
            if (pts[p] == nodes_[j]) {
                hit = j;
                break;
            }
        if (hit >= 0) {
            out(p, hit) = 1.0;
            continue;
        }
        double denom = 0.0;
        for (int j = 0; j < R_; ++j) {
            const double term = bary_[j] / (pts[p] - nodes_[j]);
            out(p, j) = term;
            denom += term;
        }
        out.row(p) /= denom;
    }
    return out;
}

namespace {

// int_a^b s^pow * interpolant(s) ds accumulated into a row vector of nodal
// weights, by Gauss panels exact for the polynomial integrand
void accumulate_power_integral(const RadialGrid& grid, double a, double b, double pow_exp,
                               int gauss_n, Eigen::RowVectorXd& row) {
    if (b <= a) return;
    Eigen::VectorXd gx, gw;
    gauss_legendre(gauss_n, a, b, gx, gw);
    const Eigen::MatrixXd interp = grid.interpolation_matrix(gx);
    for (int g = 0; g < gx.size(); ++g)
        row += gw[g] * std::pow(gx[g], pow_exp) * interp.row(g);
}

// same but with geometric panels toward the left endpoint, for negative
// powers whose scale changes across the interval
void accumulate_power_integral_panelled(const RadialGrid& grid, double a, double b,
                                        double pow_exp, int gauss_n, Eigen::RowVectorXd& row) {
    if (b <= a) return;
    double lo = a;
    while (lo < b) {
        const double hi = std::min(b, 2.0 * lo);
        accumulate_power_integral(grid, lo, hi, pow_exp, gauss_n, row);
        lo = hi;
    }
}

}  // namespace

Eigen::MatrixXd RadialGrid::build_particular(int kappa) const {
    const int R = R_;
    const int gn = std::min(96, R + kappa / 2 + 8);
    Eigen::MatrixXd P = Eigen::MatrixXd::Zero(R, R);
    if (kappa == 0) {
        // u_p(rho) = int_0^rho (1/tau) int_0^tau s f(s) ds dtau; the inner
        // integral vanishes to second order at 0, so the outer integrand is
        // again the interpolant of a polynomial
        for (int j = 0; j < R; ++j) {
            const double rho = nodes_[j];
            Eigen::VectorXd gx, gw;
            gauss_legendre(gn, 0.0, rho, gx, gw);
            Eigen::RowVectorXd acc = Eigen::RowVectorXd::Zero(R);
            for (int g = 0; g < gx.size(); ++g) {
                Eigen::RowVectorXd inner = Eigen::RowVectorXd::Zero(R);
                accumulate_power_integral(*this, 0.0, gx[g], 1.0, gn, inner);
                acc += gw[g] / gx[g] * inner;
            }
            P.row(j) = acc;
        }
        return P;
    }
    const double k = kappa;
    if (kappa == 1) {
        // natural anchored form: (rho/2) int_0^rho f - (1/(2 rho)) int_0^rho s^2 f
        for (int j = 0; j < R; ++j) {
            const double rho = nodes_[j];
            Eigen::RowVectorXd A = Eigen::RowVectorXd::Zero(R);
            Eigen::RowVectorXd B = Eigen::RowVectorXd::Zero(R);
            accumulate_power_integral(*this, 0.0, rho, 1.0 - k, gn, A);
            accumulate_power_integral(*this, 0.0, rho, 1.0 + k, gn, B);
            P.row(j) = (std::pow(rho, k) / (2.0 * k)) * A - (std::pow(rho, -k) / (2.0 * k)) * B;
        }
        return P;
    }
    // kappa >= 2: representative pinned to zero at rho = 1, from the kernel
    // -(1/2k)[(r</r>)^k - (r< r>)^k]
    for (int j = 0; j < R; ++j) {
        const double rho = nodes_[j];
        Eigen::RowVectorXd C = Eigen::RowVectorXd::Zero(R);  // int_0^rho s^{1+k} f
        Eigen::RowVectorXd D = Eigen::RowVectorXd::Zero(R);  // int_rho^1 s^{1-k} f
        Eigen::RowVectorXd E = Eigen::RowVectorXd::Zero(R);  // int_rho^1 s^{1+k} f
        accumulate_power_integral(*this, 0.0, rho, 1.0 + k, gn, C);
        accumulate_power_integral_panelled(*this, rho, 1.0, 1.0 - k, gn, D);
        accumulate_power_integral(*this, rho, 1.0, 1.0 + k, gn, E);
        P.row(j) = -(1.0 / (2.0 * k)) * (std::pow(rho, -k) * C - std::pow(rho, k) * C +
                                         std::pow(rho, k) * D - std::pow(rho, k) * E);
    }
    return P;
}

const Eigen::MatrixXd& RadialGrid::particular_matrix(int kappa) const {
    {
        std::lock_guard<std::mutex> lock(cache_mutex_);
        auto it = particular_.find(kappa);
        if (it != particular_.end()) return it->second;
    }
    Eigen::MatrixXd P = build_particular(kappa);
    std::lock_guard<std::mutex> lock(cache_mutex_);
    auto [pos, _] = particular_.emplace(kappa, std::move(P));
    return pos->second;
}

std::shared_ptr<const RadialGrid> make_radial_grid(int R) {
    static std::mutex m;
    static std::map<int, std::shared_ptr<const RadialGrid>> cache;
    std::lock_guard<std::mutex> lock(m);
    auto it = cache.find(R);
    if (it != cache.end()) return it->second;
    auto grid = std::make_shared<const RadialGrid>(R);
    cache.emplace(R, grid);
    return grid;
}

}  // namespace hsx
