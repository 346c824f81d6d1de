#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <memory>

#include "hsx/radial_grid.hpp"
#include "hsx/spectra.hpp"

namespace hsx {

/**
 * Function on the closed unit disk stored as per-angular-mode radial
 * profiles:  f(rho, phi) = sum_{|k| <= K} f_k(rho) e^{i k phi},
 * with each profile a nodal vector on a shared RadialGrid.
 */
class DiskField {
  public:
    DiskField() = default;
    DiskField(int K, std::shared_ptr<const RadialGrid> grid);

    int truncation() const { return K_; }
    const std::shared_ptr<const RadialGrid>& grid() const { return grid_; }

    Eigen::VectorXcd profile(int k) const { return modes_.col(k + K_); }
    auto profile_ref(int k) { return modes_.col(k + K_); }
    auto profile_ref(int k) const { return modes_.col(k + K_); }
    const Eigen::MatrixXcd& modes() const { return modes_; }
    Eigen::MatrixXcd& modes() { return modes_; }

    /// Complex point value at (rho, phi) of the interpolant.
    cplx value_at(double rho, double phi) const;

    DiskField& operator+=(const DiskField& other);
    DiskField& operator-=(const DiskField& other);
    DiskField& operator*=(cplx scale);
    DiskField padded_to(int K_new) const;  // embed into a larger truncation

    bool is_real_symmetric(double tol = 1e-12) const;

  private:
    int K_ = 0;
    std::shared_ptr<const RadialGrid> grid_;
    Eigen::MatrixXcd modes_;  // R x (2K+1), column k + K
};

/// Profiles of all modes evaluated through an interpolation matrix
/// (rows: evaluation points, cols: modes).
Eigen::MatrixXcd evaluate_profiles(const DiskField& u, const Eigen::MatrixXd& interp);

/// Mode-wise Laplacian u'' + u'/rho - k^2 u / rho^2.
DiskField laplacian(const DiskField& u);

DiskField d_rho(const DiskField& u);
DiskField d_phi(const DiskField& u);
DiskField divide_rho(const DiskField& u);
DiskField multiply_exp_iphi(const DiskField& u, int sign);  // mode shift, K grows by 1

/// Cartesian first derivatives via the polar chain rule (K grows by 1).
DiskField d_x(const DiskField& u);
DiskField d_y(const DiskField& u);

/// Trace u(1, .) as a circle spectrum.
CircleSpectrum boundary_trace(const DiskField& u);

/// Trace of (d/dnu)^order u with the inner normal d/dnu = -d/drho.
CircleSpectrum normal_derivative_trace(const DiskField& u, int order);

/// Extended-precision dot of a boundary derivative row with a profile.
cplx boundary_row_dot(const std::vector<long double>& row, const Eigen::VectorXcd& p);

/// L2(disk) inner product  int int a conj(b) rho drho dphi.
cplx l2_inner(const DiskField& a, const DiskField& b);
double l2_norm(const DiskField& a);

/// Integer-order Sobolev norm (sum over all |mu| <= s of ||D^mu u||_{L2}^2)^{1/2}
/// with Cartesian derivatives assembled from the polar representation.
double sobolev_norm(const DiskField& u, int s);

/// Deterministic cross-platform generator: uniform, gaussian, and band-limited
/// disk fields with coefficients c_{k,j} ~ N_c(0,1) <k>^{-decay} zeta^j on the
/// radial ladder rho^{|k|+2j}.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}
    std::uint64_t next_u64();
    double uniform();          // [0, 1)
    double gaussian();
    cplx complex_gaussian();

  private:
    std::uint64_t state_;
    bool has_spare_ = false;
    double spare_ = 0.0;
};

DiskField random_band_limited(int K, std::shared_ptr<const RadialGrid> grid, std::uint64_t seed,
                              double decay, double zeta = 0.5, int j_max = 6);

CircleSpectrum random_spectrum(int K, std::uint64_t seed, double decay);

/// Removes the components along {rho^{|k|} e^{ik phi} : |k| <= m-1}
/// in the L2(disk) inner product.
DiskField project_out_homogeneous_kernel(const DiskField& u, int m);

}  // namespace hsx
