#include "hsx/green.hpp"

#include <cmath>
#include <numbers>

#include "hsx/errors.hpp"

namespace hsx {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

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

CircleSpectrum scaled(const CircleSpectrum& a, cplx s) {
    CircleSpectrum out = a;
    for (auto& c : out.coeff) c *= s;
    return out;
}

CircleSpectrum add(const CircleSpectrum& a, const CircleSpectrum& b) {
    CircleSpectrum out(std::max(a.K, b.K));
    for (int k = -a.K; k <= a.K; ++k) out.at(k) += a.at(k);
    for (int k = -b.K; k <= b.K; ++k) out.at(k) += b.at(k);
    return out;
}

CircleSpectrum second_angular_derivative(const CircleSpectrum& a) {
    CircleSpectrum out = a;
    for (int k = -a.K; k <= a.K; ++k) out.at(k) *= -static_cast<double>(k) * k;
    return out;
}

// trace of the Laplacian, mode-wise [u'' + u' - k^2 u](1) by one-sided
// high-order differentiation at the boundary node
CircleSpectrum laplacian_boundary_trace(const DiskField& u) {
    const auto& row1 = u.grid()->derivative_row_at_one_ld(1);
    const auto& row2 = u.grid()->derivative_row_at_one_ld(2);
    CircleSpectrum out(u.truncation());
    for (int k = -u.truncation(); k <= u.truncation(); ++k) {
        const Eigen::VectorXcd p = u.profile(k);
        out.at(k) = boundary_row_dot(row2, p) + boundary_row_dot(row1, p) -
                    (static_cast<double>(k) * k) * p(0);
    }
    return out;
}

}  // namespace

cplx tensor_disk_inner(const DiskField& a, const DiskField& b, const QuadratureSpec& q) {
    if (q.panel_order < 2 || q.radial_points < q.panel_order)
        throw precondition_error("tensor_disk_inner: bad quadrature spec");
    const int panels = q.radial_points / q.panel_order;
    Eigen::VectorXd px, pw;
    Eigen::VectorXd nodes(panels * q.panel_order), weights(panels * q.panel_order);
    for (int p = 0; p < panels; ++p) {
        const double lo = static_cast<double>(p) / panels;
        const double hi = static_cast<double>(p + 1) / panels;
        gauss_legendre(q.panel_order, lo, hi, px, pw);
        nodes.segment(p * q.panel_order, q.panel_order) = px;
        weights.segment(p * q.panel_order, q.panel_order) = pw;
    }
    const Eigen::MatrixXcd va = evaluate_profiles(a, a.grid()->interpolation_matrix(nodes));
    const Eigen::MatrixXcd vb = evaluate_profiles(b, b.grid()->interpolation_matrix(nodes));

    const int nphi = q.angular_points;
    const auto phase_table = [&](int K) {
        Eigen::MatrixXcd E(2 * K + 1, nphi);
        for (int k = -K; k <= K; ++k)
            for (int j = 0; j < nphi; ++j) E(k + K, j) = std::polar(1.0, k * kTwoPi * j / nphi);
        return E;
    };
    // physical values on the tensor grid, radial index by row
    const Eigen::MatrixXcd pa = va * phase_table(a.truncation());
    const Eigen::MatrixXcd pb = vb * phase_table(b.truncation());
    const Eigen::ArrayXd wr = weights.array() * nodes.array();
    cplx acc{};
    for (int j = 0; j < nphi; ++j)
        acc += (pa.col(j).array() * pb.col(j).array().conjugate() * wr.cast<cplx>()).sum();
    return acc * (kTwoPi / nphi);
}

GreenResidual green_residual(const GreenCheckInput& input) {
    GreenResidual out;
    const int K = std::max(input.u.truncation(), input.v.truncation());
    if (input.quadrature.angular_points < 4 * K + 1)
        out.warnings.push_back("angular quadrature under-resolves mode products");
    if (input.quadrature.radial_points < 2 * input.u.grid()->size())
        out.warnings.push_back("radial quadrature under-resolves the profiles");

    const DiskField lap_u = laplacian(input.u);
    const DiskField lap_v = laplacian(input.v);
    const CircleSpectrum lap_u_trace = laplacian_boundary_trace(input.u);
    const CircleSpectrum u_trace = boundary_trace(input.u);
    const CircleSpectrum v_trace = boundary_trace(input.v);
    const CircleSpectrum dnu_v = normal_derivative_trace(input.v, 1);
    const CircleSpectrum dnu2_u = normal_derivative_trace(input.u, 2);
    const CircleSpectrum dru = normal_derivative_trace(input.u, 1);  // dnu u

    const cplx lhs = tensor_disk_inner(lap_u, input.v, input.quadrature) +
                     circle_inner(lap_u_trace, input.w) + circle_inner(dnu2_u, input.h);

    // D_nu = i d/dnu, so D_nu u = i dnu_u and D_nu^2 u = -dnu2_u
    const CircleSpectrum Dnu_u = scaled(dru, cplx(0.0, 1.0));
    const CircleSpectrum Dnu2_u = scaled(dnu2_u, -1.0);
    const CircleSpectrum theta1 = add(dnu_v, second_angular_derivative(input.w));
    const CircleSpectrum theta2 = add(scaled(v_trace, cplx(0.0, -1.0)),
                                      scaled(input.w, cplx(0.0, -1.0)));
    const CircleSpectrum theta3 = add(scaled(input.w, -1.0), scaled(input.h, -1.0));

    const cplx rhs = tensor_disk_inner(input.u, lap_v, input.quadrature) +
                     circle_inner(u_trace, theta1) + circle_inner(Dnu_u, theta2) +
                     circle_inner(Dnu2_u, theta3);

    out.value = std::abs(lhs - rhs) / (1.0 + std::abs(lhs));
    return out;
}

AdjointResidualReport adjoint_system_residual(const AdjointTriple& triple) {
    AdjointResidualReport rep;
    rep.interior = l2_norm(laplacian(triple.v));
    const CircleSpectrum theta1 =
        add(normal_derivative_trace(triple.v, 1), second_angular_derivative(triple.w));
    const CircleSpectrum theta2 = add(scaled(boundary_trace(triple.v), cplx(0.0, -1.0)),
                                      scaled(triple.w, cplx(0.0, -1.0)));
    const CircleSpectrum theta3 = add(scaled(triple.w, -1.0), scaled(triple.h, -1.0));
    rep.boundary = {circle_l2(theta1), circle_l2(theta2), circle_l2(theta3)};
    return rep;
}

double green_pairing_check(const DiskField& u, const AdjointTriple& triple) {
    const DiskField lap_u = laplacian(u);
    const cplx value = l2_inner(lap_u, triple.v) +
                       circle_inner(laplacian_boundary_trace(u), triple.w) +
                       circle_inner(normal_derivative_trace(u, 2), triple.h);
    return std::abs(value);
}

}  // namespace hsx
