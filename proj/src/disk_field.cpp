#include "hsx/disk_field.hpp"

#include <cmath>
#include <numbers>

#include "hsx/errors.hpp"

namespace hsx {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

Eigen::VectorXcd apply_real(const Eigen::MatrixXd& M, const Eigen::VectorXcd& v) {
    Eigen::VectorXcd out(M.rows());
    out.real() = M * v.real();
    out.imag() = M * v.imag();
    return out;
}

}  // namespace

DiskField::DiskField(int K, std::shared_ptr<const RadialGrid> grid)
    : K_(K), grid_(std::move(grid)) {
    if (K < 0) throw precondition_error("DiskField: negative truncation");
    if (!grid_) throw precondition_error("DiskField: null grid");
    modes_ = Eigen::MatrixXcd::Zero(grid_->size(), 2 * K + 1);
}

cplx DiskField::value_at(double rho, double phi) const {
    Eigen::VectorXd pt(1);
    pt[0] = rho;
    const Eigen::MatrixXd interp = grid_->interpolation_matrix(pt);
    cplx acc{};
    for (int k = -K_; k <= K_; ++k) {
        cplx v{};
        for (int j = 0; j < grid_->size(); ++j) v += interp(0, j) * modes_(j, k + K_);
        acc += v * std::polar(1.0, k * phi);
    }
    return acc;
}

Eigen::MatrixXcd evaluate_profiles(const DiskField& u, const Eigen::MatrixXd& interp) {
    Eigen::MatrixXcd out(interp.rows(), u.modes().cols());
    out.real() = interp * u.modes().real();
    out.imag() = interp * u.modes().imag();
    return out;
}

DiskField& DiskField::operator+=(const DiskField& other) {
    if (other.K_ != K_ || other.grid_->size() != grid_->size())
        throw precondition_error("DiskField: incompatible truncations");
    modes_ += other.modes_;
    return *this;
}

DiskField& DiskField::operator-=(const DiskField& other) {
    if (other.K_ != K_ || other.grid_->size() != grid_->size())
        throw precondition_error("DiskField: incompatible truncations");
    modes_ -= other.modes_;
    return *this;
}

DiskField& DiskField::operator*=(cplx scale) {
    modes_ *= scale;
    return *this;
}

DiskField DiskField::padded_to(int K_new) const {
    if (K_new < K_) throw precondition_error("DiskField: cannot shrink via padding");
    DiskField out(K_new, grid_);
    out.modes_.middleCols(K_new - K_, 2 * K_ + 1) = modes_;
    return out;
}

bool DiskField::is_real_symmetric(double tol) const {
    for (int k = 0; k <= K_; ++k) {
        const auto a = profile_ref(k);
        const auto b = profile_ref(-k);
        if ((a - b.conjugate()).norm() > tol * (1.0 + a.norm())) return false;
    }
    return true;
}

DiskField laplacian(const DiskField& u) {
    // factored form (1/rho)(rho u')' - k^2 u / rho^2; one differentiation
    // order less per application keeps the boundary-row roundoff low
    const auto& g = *u.grid();
    DiskField out(u.truncation(), u.grid());
    const Eigen::ArrayXd rho = g.nodes().array();
    for (int k = -u.truncation(); k <= u.truncation(); ++k) {
        const Eigen::VectorXcd p = u.profile(k);
        const Eigen::VectorXcd flux =
            (apply_real(g.d1(), p).array() * rho.cast<cplx>()).matrix();
        Eigen::ArrayXcd v = apply_real(g.d1(), flux).array() / rho.cast<cplx>();
        v -= (static_cast<double>(k) * k) * p.array() / (rho * rho).cast<cplx>();
        out.profile_ref(k) = v.matrix();
    }
    return out;
}

DiskField d_rho(const DiskField& u) {
    const auto& g = *u.grid();
    DiskField out(u.truncation(), u.grid());
    for (int k = -u.truncation(); k <= u.truncation(); ++k)
        out.profile_ref(k) = apply_real(g.d1(), u.profile(k));
    return out;
}

DiskField d_phi(const DiskField& u) {
    DiskField out(u.truncation(), u.grid());
    for (int k = -u.truncation(); k <= u.truncation(); ++k)
        out.profile_ref(k) = cplx(0.0, k) * u.profile_ref(k);
    return out;
}

DiskField divide_rho(const DiskField& u) {
    DiskField out(u.truncation(), u.grid());
    const Eigen::ArrayXd rho = u.grid()->nodes().array();
    for (int k = -u.truncation(); k <= u.truncation(); ++k)
        out.profile_ref(k) = (u.profile_ref(k).array() / rho).matrix();
    return out;
}

DiskField multiply_exp_iphi(const DiskField& u, int sign) {
    if (sign != 1 && sign != -1) throw precondition_error("multiply_exp_iphi: sign must be +-1");
    const int K = u.truncation();
    DiskField out(K + 1, u.grid());
    for (int k = -K; k <= K; ++k) out.profile_ref(k + sign) = u.profile_ref(k);
    return out;
}

DiskField d_x(const DiskField& u) {
    // cos(phi) d_rho - sin(phi) (1/rho) d_phi
    const DiskField ur = d_rho(u);
    const DiskField ut = divide_rho(d_phi(u));
    DiskField up = multiply_exp_iphi(ur, +1);
    const DiskField um = multiply_exp_iphi(ur, -1);
    DiskField tp = multiply_exp_iphi(ut, +1);
    const DiskField tm = multiply_exp_iphi(ut, -1);
    up += um;
    up *= 0.5;
    tp -= tm;
    tp *= cplx(0.0, -0.5);  // sin = (e^{i} - e^{-i}) / 2i
    up -= tp;
    return up;
}

DiskField d_y(const DiskField& u) {
    // sin(phi) d_rho + cos(phi) (1/rho) d_phi
    const DiskField ur = d_rho(u);
    const DiskField ut = divide_rho(d_phi(u));
    DiskField sp = multiply_exp_iphi(ur, +1);
    const DiskField sm = multiply_exp_iphi(ur, -1);
    DiskField cp = multiply_exp_iphi(ut, +1);
    const DiskField cm = multiply_exp_iphi(ut, -1);
    sp -= sm;
    sp *= cplx(0.0, -0.5);
    cp += cm;
    cp *= 0.5;
    sp += cp;
    return sp;
}

CircleSpectrum boundary_trace(const DiskField& u) {
    CircleSpectrum out(u.truncation());
    for (int k = -u.truncation(); k <= u.truncation(); ++k)
        out.at(k) = u.profile_ref(k)(0);  // node 0 is rho = 1
    return out;
}

cplx boundary_row_dot(const std::vector<long double>& row, const Eigen::VectorXcd& p) {
    // extended-precision weights and accumulation; the weights are large and
    // the result comes from heavy cancellation
    long double re = 0.0L, im = 0.0L;
    for (std::size_t j = 0; j < row.size(); ++j) {
        re += row[j] * p(static_cast<Eigen::Index>(j)).real();
        im += row[j] * p(static_cast<Eigen::Index>(j)).imag();
    }
    return {static_cast<double>(re), static_cast<double>(im)};
}

CircleSpectrum normal_derivative_trace(const DiskField& u, int order) {
    if (order < 0) throw precondition_error("normal_derivative_trace: negative order");
    if (order == 0) return boundary_trace(u);
    const auto& row = u.grid()->derivative_row_at_one_ld(order);
    const double sgn = (order % 2 == 0) ? 1.0 : -1.0;  // d/dnu = -d/drho
    CircleSpectrum out(u.truncation());
    for (int k = -u.truncation(); k <= u.truncation(); ++k)
        out.at(k) = sgn * boundary_row_dot(row, u.profile(k));
    return out;
}

cplx l2_inner(const DiskField& a, const DiskField& b) {
    if (a.grid()->size() != b.grid()->size())
        throw precondition_error("l2_inner: incompatible grids");
    const auto& g = *a.grid();
    const int K = std::min(a.truncation(), b.truncation());
    const Eigen::ArrayXd wr = (g.gauss_weights().array() * g.gauss_nodes().array());
    cplx acc{};
    for (int k = -K; k <= K; ++k) {
        const Eigen::ArrayXcd av = apply_real(g.to_gauss(), a.profile(k)).array();
        const Eigen::ArrayXcd bv = apply_real(g.to_gauss(), b.profile(k)).array();
        acc += (av * bv.conjugate() * wr.cast<cplx>()).sum();
    }
    return kTwoPi * acc;
}

double l2_norm(const DiskField& a) { return std::sqrt(std::abs(l2_inner(a, a))); }

double sobolev_norm(const DiskField& u, int s) {
    if (s < 0) throw precondition_error("sobolev_norm: negative order");
    double total = 0.0;
    // derivatives D^{(a,b)} built along b first, then a
    std::vector<DiskField> row;  // D^{(0, b)}
    row.push_back(u);
    for (int b = 1; b <= s; ++b) row.push_back(d_y(row.back()));
    for (int a = 0; a + 0 <= s; ++a) {
        if (a > 0) {
            const int keep = s - a + 1;
            row.resize(static_cast<std::size_t>(keep));
            for (auto& f : row) f = d_x(f);
        }
        for (int b = 0; a + b <= s; ++b) {
            const double n = l2_norm(row[static_cast<std::size_t>(b)]);
            total += n * n;
        }
    }
    return std::sqrt(total);
}

std::uint64_t Rng::next_u64() {
    // splitmix64
    state_ += 0x9e3779b97f4a7c15ull;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

double Rng::uniform() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double Rng::gaussian() {
    if (has_spare_) {
        has_spare_ = false;
        return spare_;
    }
    double u1 = uniform(), u2 = uniform();
    while (u1 <= 1e-300) u1 = uniform();
    const double mag = std::sqrt(-2.0 * std::log(u1));
    has_spare_ = true;
    spare_ = mag * std::sin(kTwoPi * u2);
    return mag * std::cos(kTwoPi * u2);
}

cplx Rng::complex_gaussian() {
    const double re = gaussian();
    const double im = gaussian();
    return {re, im};
}

DiskField random_band_limited(int K, std::shared_ptr<const RadialGrid> grid, std::uint64_t seed,
                              double decay, double zeta, int j_max) {
    DiskField out(K, grid);
    Rng rng(seed);
    const Eigen::ArrayXd rho = grid->nodes().array();
    for (int k = -K; k <= K; ++k) {
        const double scale_k = std::pow(smoothed_modulus(k), -decay);
        Eigen::ArrayXcd acc = Eigen::ArrayXcd::Zero(grid->size());
        double zj = 1.0;
        for (int j = 0; j <= j_max; ++j) {
            const cplx c = rng.complex_gaussian() * scale_k * zj;
            acc += c * rho.pow(std::abs(k) + 2 * j).cast<cplx>();
            zj *= zeta;
        }
        out.profile_ref(k) = acc.matrix();
    }
    return out;
}

CircleSpectrum random_spectrum(int K, std::uint64_t seed, double decay) {
    CircleSpectrum out(K);
    Rng rng(seed);
    for (int k = -K; k <= K; ++k)
        out.at(k) = rng.complex_gaussian() * std::pow(smoothed_modulus(k), -decay);
    return out;
}

DiskField project_out_homogeneous_kernel(const DiskField& u, int m) {
    DiskField out = u;
    const auto& g = *u.grid();
    const Eigen::ArrayXd rho = g.nodes().array();
    const Eigen::ArrayXd wr = (g.gauss_weights().array() * g.gauss_nodes().array());
    for (int k = -std::min(m - 1, u.truncation()); k <= std::min(m - 1, u.truncation()); ++k) {
        const Eigen::VectorXd basis = rho.pow(std::abs(k)).matrix();
        const Eigen::ArrayXd bg = (g.to_gauss() * basis).array();
        const Eigen::ArrayXcd ug = apply_real(g.to_gauss(), out.profile(k)).array();
        const cplx num = (ug * bg.cast<cplx>() * wr.cast<cplx>()).sum();
        const double den = (bg * bg * wr).sum();
        out.profile_ref(k) -= (num / den) * basis.cast<cplx>();
    }
    return out;
}

}  // namespace hsx
