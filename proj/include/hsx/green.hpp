#pragma once

#include <string>
#include <vector>

#include "hsx/disk_bvp.hpp"
#include "hsx/disk_field.hpp"

namespace hsx {

/// Tensor quadrature for disk inner products: composite Gauss panels of a
/// fixed small order radially (so the error has a definite convergence order
/// under refinement) and the uniform trapezoid rule in the angle (exact for
/// band-limited integrands).
struct QuadratureSpec {
    int radial_points = 128;
    int angular_points = 128;
    int panel_order = 4;
};

struct GreenCheckInput {
    DiskField u;
    DiskField v;
    CircleSpectrum w;
    CircleSpectrum h;
    QuadratureSpec quadrature;
};

struct GreenResidual {
    double value = 0.0;
    std::vector<std::string> warnings;
};

/// |LHS - RHS| / (1 + |LHS|) of the boundary-coupled integration-by-parts
/// identity for (Delta, d^2/dnu^2) on the disk:
///   (Delta u, v) + (Delta u, w)_G + (dnu^2 u, h)_G
///     = (u, Delta v) + (u, dnu v + dphi^2 w)_G + (Dnu u, -iv - iw)_G
///       + (Dnu^2 u, -w - h)_G,     Dnu = i d/dnu.
GreenResidual green_residual(const GreenCheckInput& input);

struct AdjointResidualReport {
    double interior = 0.0;              // ||Delta v||
    std::array<double, 3> boundary{};   // the three boundary equations
};

AdjointResidualReport adjoint_system_residual(const AdjointTriple& triple);

/// |(Delta u, v) + (Delta u|_G, w)_G + (dnu^2 u, h)_G|; vanishes exactly when
/// the triple solves the homogeneous adjoint system.
double green_pairing_check(const DiskField& u, const AdjointTriple& triple);

/// Disk inner product by the composite tensor rule (exposed for tests).
cplx tensor_disk_inner(const DiskField& a, const DiskField& b, const QuadratureSpec& q);

}  // namespace hsx
