#pragma once

#include <Eigen/Dense>
#include <map>
#include <memory>
#include <mutex>
#include <vector>

namespace hsx {

/// Gauss-Legendre rule with n points on [a, b].
void gauss_legendre(int n, double a, double b, Eigen::VectorXd& nodes, Eigen::VectorXd& weights);

/// Finite-difference weights of derivatives 0..m at point z from arbitrary
/// nodes x (Fornberg); returns an x.size() by (m+1) matrix.
Eigen::MatrixXd fd_weights(double z, const Eigen::VectorXd& x, int m);

/**
 * Radial collocation grid on (0, 1] for per-mode disk profiles:
 * Chebyshev-Radau points rho_j = (1 + cos(2 pi j / (2R-1)))/2, j = 0..R-1,
 * descending from rho_0 = 1, clustered at the boundary and excluding 0.
 * Nodal vectors are identified with their degree R-1 interpolants.
 */
class RadialGrid {
  public:
    explicit RadialGrid(int R);

    int size() const { return R_; }
    const Eigen::VectorXd& nodes() const { return nodes_; }
    const Eigen::MatrixXd& d1() const { return d1_; }
    const Eigen::MatrixXd& d2() const { return d2_; }

    /// Row of m-th derivative weights at rho = 1.
    const Eigen::RowVectorXd& derivative_row_at_one(int order) const;

    /// The same row in extended precision; high-order weights carry heavy
    /// cancellation, so both the weights and their application need the
    /// extra bits.
    const std::vector<long double>& derivative_row_at_one_ld(int order) const;

    /// Barycentric evaluation matrix from the grid to arbitrary points.
    Eigen::MatrixXd interpolation_matrix(const Eigen::VectorXd& pts) const;

    /// int_0^1 f(rho) rho drho and int_0^1 f(rho) drho for nodal f
    /// (exact for the interpolant).
    const Eigen::RowVectorXd& quad_rho() const { return quad_rho_; }
    const Eigen::RowVectorXd& quad_plain() const { return quad_plain_; }

    /// Gauss rule dense enough for products of two interpolants, plus the
    /// evaluation matrix from the grid to its nodes.
    const Eigen::VectorXd& gauss_nodes() const { return gauss_x_; }
    const Eigen::VectorXd& gauss_weights() const { return gauss_w_; }
    const Eigen::MatrixXd& to_gauss() const { return to_gauss_; }

    /// Nodal map f -> particular solution of u'' + u'/rho - k^2 u/rho^2 = f,
    /// regular at the origin, by variation of parameters with the homogeneous
    /// pairs {rho^k, rho^-k} (and {1, ln rho} for k = 0).
    const Eigen::MatrixXd& particular_matrix(int kappa) const;

  private:
    Eigen::MatrixXd build_particular(int kappa) const;

    int R_;
    Eigen::VectorXd nodes_;
    Eigen::VectorXd bary_;  // barycentric weights, normalized
    Eigen::MatrixXd d1_, d2_;
    Eigen::RowVectorXd quad_rho_, quad_plain_;
    Eigen::VectorXd gauss_x_, gauss_w_;
    Eigen::MatrixXd to_gauss_;
    mutable std::map<int, Eigen::RowVectorXd> boundary_rows_;
    mutable std::map<int, std::vector<long double>> boundary_rows_ld_;
    mutable std::map<int, Eigen::MatrixXd> particular_;
    mutable std::mutex cache_mutex_;
};

/// Shared grid instances keyed by size.
std::shared_ptr<const RadialGrid> make_radial_grid(int R);

}  // namespace hsx
