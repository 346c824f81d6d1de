#include "hsx/ro_weight.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <sstream>

#include "hsx/errors.hpp"

namespace hsx {

namespace {

constexpr double kE = 2.718281828459045235360287;

double e_tower(std::size_t height) {
    double v = 1.0;
    for (std::size_t i = 0; i < height; ++i) v = std::exp(v);
    return v;
}

std::vector<double> geometric_grid(double lo, double hi, int n) {
    std::vector<double> g(static_cast<std::size_t>(n));
    if (n == 1) {
        g[0] = lo;
        return g;
    }
    const double step = std::log(hi / lo) / (n - 1);
    for (int i = 0; i < n; ++i) g[static_cast<std::size_t>(i)] = lo * std::exp(step * i);
    g.back() = hi;
    return g;
}

}  // namespace

RoWeight RoWeight::power(double s) { return RoWeight(Power{s}); }

RoWeight RoWeight::power_log(double s, std::vector<double> r, std::optional<double> t_switch) {
    PowerLog node;
    node.s = s;
    node.r = std::move(r);
    node.t_switch = t_switch.value_or(e_tower(node.r.size()));
    if (node.t_switch < kE * (1.0 - 1e-12))
        throw precondition_error("power_log: t_switch must be >= e");
    // every iterated log must stay positive on the main branch
    double level = node.t_switch;
    for (std::size_t i = 0; i < node.r.size(); ++i) {
        level = std::log(level);
        if (!(level > 0.0))
            throw precondition_error("power_log: iterated log nonpositive at t_switch");
    }
    return RoWeight(std::move(node));
}

RoWeight RoWeight::oscillating(double theta, double delta, double r) {
    if (!(delta > 0.0)) throw precondition_error("oscillating: delta must be positive");
    if (!(r > 0.0 && r <= 1.0)) throw precondition_error("oscillating: r must be in (0, 1]");
    return RoWeight(Oscillating{theta, delta, r});
}

RoWeight RoWeight::piecewise_table(std::vector<std::pair<double, double>> samples,
                                   std::optional<std::pair<double, double>> tail_exponents) {
    Table node;
    node.tail = tail_exponents;
    if (samples.empty()) throw precondition_error("piecewise_table: no samples");
    std::sort(samples.begin(), samples.end());
    for (const auto& [t, a] : samples) {
        if (!(t >= 1.0)) throw precondition_error("piecewise_table: abscissae must be >= 1");
        if (!(a > 0.0)) throw precondition_error("piecewise_table: values must be positive");
        node.t.push_back(t);
        node.a.push_back(a);
    }
    if (node.tail && node.tail->first > node.tail->second)
        throw precondition_error("piecewise_table: tail exponents out of order");
    return RoWeight(std::move(node));
}

RoWeight RoWeight::product(RoWeight lhs, RoWeight rhs) {
    Product node;
    node.lhs = std::make_shared<const RoWeight>(std::move(lhs));
    node.rhs = std::make_shared<const RoWeight>(std::move(rhs));
    return RoWeight(std::move(node));
}

RoWeight::Kind RoWeight::kind() const {
    switch (node_.index()) {
        case 0: return Kind::power;
        case 1: return Kind::power_log;
        case 2: return Kind::oscillating;
        case 3: return Kind::piecewise_table;
        default: return Kind::product;
    }
}

namespace {

double eval_power_log_main(const RoWeight::PowerLog& w, double t) {
    double v = std::pow(t, w.s);
    double level = t;
    for (double ri : w.r) {
        level = std::log(level);
        v *= std::pow(level, ri);
    }
    return v;
}

double eval_table(const RoWeight::Table& w, double t) {
    const auto& ts = w.t;
    const auto& as = w.a;
    if (ts.size() == 1 || t <= ts.front()) return as.front();
    auto it = std::upper_bound(ts.begin(), ts.end(), t);
    std::size_t hi = (it == ts.end()) ? ts.size() - 1 : static_cast<std::size_t>(it - ts.begin());
    std::size_t lo = hi - 1;
    // log-log line through the bracketing nodes; the last segment also
    // continues the function beyond the table
    const double lt0 = std::log(ts[lo]), lt1 = std::log(ts[hi]);
    const double la0 = std::log(as[lo]), la1 = std::log(as[hi]);
    const double slope = (la1 - la0) / (lt1 - lt0);
    return std::exp(la0 + slope * (std::log(t) - lt0));
}

}  // namespace

double RoWeight::eval(double t) const {
    if (!(t >= 1.0)) throw precondition_error("RoWeight::eval: t must be >= 1");
    switch (kind()) {
        case Kind::power:
            return std::pow(t, as_power().s);
        case Kind::power_log: {
            const auto& w = as_power_log();
            return eval_power_log_main(w, std::max(t, w.t_switch));
        }
        case Kind::oscillating: {
            const auto& w = as_oscillating();
            if (t <= kE) return std::pow(t, w.theta);
            return std::pow(t, w.theta + w.delta * std::sin(std::pow(std::log(std::log(t)), w.r)));
        }
        case Kind::piecewise_table:
            return eval_table(as_table(), t);
        case Kind::product:
            return as_product().lhs->eval(t) * as_product().rhs->eval(t);
    }
    return 0.0;  // unreachable
}

double eval_weight(const RoWeight& alpha, double t) { return alpha.eval(t); }

bool RoWeight::operator==(const RoWeight& other) const {
    if (node_.index() != other.node_.index()) return false;
    if (kind() == Kind::product) {
        const auto& a = as_product();
        const auto& b = other.as_product();
        return *a.lhs == *b.lhs && *a.rhs == *b.rhs;
    }
    return std::visit(
        [&other](const auto& lhs) {
            using T = std::decay_t<decltype(lhs)>;
            if constexpr (std::is_same_v<T, Product>) {
                return false;
            } else {
                return lhs == std::get<T>(other.node_);
            }
        },
        node_);
}

std::string RoWeight::describe() const {
    std::ostringstream out;
    switch (kind()) {
        case Kind::power:
            out << "power(s=" << as_power().s << ")";
            break;
        case Kind::power_log: {
            const auto& w = as_power_log();
            out << "power_log(s=" << w.s << ", r=[";
            for (std::size_t i = 0; i < w.r.size(); ++i) out << (i ? "," : "") << w.r[i];
            out << "])";
            break;
        }
        case Kind::oscillating: {
            const auto& w = as_oscillating();
            out << "oscillating(theta=" << w.theta << ", delta=" << w.delta << ", r=" << w.r << ")";
            break;
        }
        case Kind::piecewise_table:
            out << "piecewise_table(" << as_table().t.size() << " nodes)";
            break;
        case Kind::product:
            out << as_product().lhs->describe() << " * " << as_product().rhs->describe();
            break;
    }
    return out.str();
}

IndexPair analytic_indices(const RoWeight& alpha) {
    switch (alpha.kind()) {
        case RoWeight::Kind::power: {
            const double s = alpha.as_power().s;
            return {s, s, true, 0.0};
        }
        case RoWeight::Kind::power_log: {
            const double s = alpha.as_power_log().s;
            return {s, s, true, 0.0};
        }
        case RoWeight::Kind::oscillating: {
            const auto& w = alpha.as_oscillating();
            return {w.theta - w.delta, w.theta + w.delta, true, 0.0};
        }
        case RoWeight::Kind::piecewise_table: {
            const auto& w = alpha.as_table();
            if (!w.tail)
                throw unsupported_error(
                    "analytic_indices: piecewise table lacks declared tail exponents");
            return {w.tail->first, w.tail->second, true, 0.0};
        }
        case RoWeight::Kind::product: {
            const auto& w = alpha.as_product();
            const IndexPair a = analytic_indices(*w.lhs);
            const IndexPair b = analytic_indices(*w.rhs);
            // indices are not additive in general; this is a bound interval
            return {a.sigma0 + b.sigma0, a.sigma1 + b.sigma1, false,
                    a.uncertainty + b.uncertainty};
        }
    }
    throw unsupported_error("analytic_indices: unknown kind");
}

namespace {

struct LambdaCurve {
    double lambda = 0.0;
    double raw_sup = -std::numeric_limits<double>::infinity();
    double raw_inf = std::numeric_limits<double>::infinity();
    bool fit_ok = false;
    double intercept = 0.0;
    double fit_rms = 0.0;
};

// Least-squares line through (x, y); returns {intercept, slope, rms residual}.
std::array<double, 3> fit_line(const std::vector<double>& x, const std::vector<double>& y) {
    const double n = static_cast<double>(x.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sx += x[i];
        sy += y[i];
        sxx += x[i] * x[i];
        sxy += x[i] * y[i];
    }
    const double det = n * sxx - sx * sx;
    if (det == 0.0) return {y.empty() ? 0.0 : y[0], 0.0, 0.0};
    const double slope = (n * sxy - sx * sy) / det;
    const double intercept = (sy - slope * sx) / n;
    double ss = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double r = y[i] - intercept - slope * x[i];
        ss += r * r;
    }
    return {intercept, slope, std::sqrt(ss / n)};
}

}  // namespace

IndexPair estimate_indices(const RoWeight& alpha, double t_max,
                           const std::vector<double>& lambda_grid, int t_grid_size) {
    if (!(t_max >= 1e3)) throw precondition_error("estimate_indices: t_max must be >= 1e3");
    if (lambda_grid.empty()) throw precondition_error("estimate_indices: empty lambda grid");
    if (t_grid_size < 8) throw precondition_error("estimate_indices: t grid too small");

    const double t_lo = 10.0;  // skip the switch-region transient near t = 1
    std::vector<LambdaCurve> curves;
    for (double lambda : lambda_grid) {
        if (!(lambda > 1.0)) throw precondition_error("estimate_indices: lambda must be > 1");
        const double t_hi = t_max / lambda;
        if (t_hi <= t_lo * 1.5) continue;
        LambdaCurve cur;
        cur.lambda = lambda;
        const auto grid = geometric_grid(t_lo, t_hi, t_grid_size);
        const double llam = std::log(lambda);
        std::vector<double> exps(grid.size());
        for (std::size_t i = 0; i < grid.size(); ++i) {
            const double ratio = alpha.eval(lambda * grid[i]) / alpha.eval(grid[i]);
            if (!(ratio > 0.0) || !std::isfinite(ratio))
                throw numeric_error("estimate_indices: nonpositive or non-finite ratio");
            exps[i] = std::log(ratio) / llam;
            cur.raw_sup = std::max(cur.raw_sup, exps[i]);
            cur.raw_inf = std::min(cur.raw_inf, exps[i]);
        }
        // tail intercepts in 1/ln t from two nested windows; the fit counts as
        // converged only when both windows agree on the extrapolated limit
        std::vector<double> xh, yh, xq, yq;
        for (std::size_t i = grid.size() / 2; i < grid.size(); ++i) {
            xh.push_back(1.0 / std::log(grid[i]));
            yh.push_back(exps[i]);
        }
        for (std::size_t i = 3 * grid.size() / 4; i < grid.size(); ++i) {
            xq.push_back(1.0 / std::log(grid[i]));
            yq.push_back(exps[i]);
        }
        const auto [half_b, half_s, half_rms] = fit_line(xh, yh);
        const auto [quarter_b, quarter_s, quarter_rms] = fit_line(xq, yq);
        (void)half_s;
        (void)quarter_s;
        const double window_gap = std::abs(half_b - quarter_b);
        cur.fit_rms = std::max({half_rms, quarter_rms, window_gap});
        cur.fit_ok = window_gap <= std::max(1e-9, 0.02 * (1.0 + std::abs(half_b))) &&
                     half_rms <= std::max(1e-9, 0.1 * (1.0 + std::abs(half_b)));
        cur.intercept = quarter_b;
        curves.push_back(cur);
    }
    if (curves.empty())
        throw precondition_error("estimate_indices: no usable lambda (t_max too small)");

    double sup = -std::numeric_limits<double>::infinity();
    double inf = std::numeric_limits<double>::infinity();
    double hi_min = std::numeric_limits<double>::infinity();
    double lo_max = -std::numeric_limits<double>::infinity();
    double extra = 0.0;
    for (const auto& cur : curves) {
        const double hi = cur.fit_ok ? cur.intercept : cur.raw_sup;
        const double lo = cur.fit_ok ? cur.intercept : cur.raw_inf;
        sup = std::max(sup, hi);
        inf = std::min(inf, lo);
        hi_min = std::min(hi_min, hi);
        lo_max = std::max(lo_max, lo);
        if (cur.fit_ok)
            extra = std::max(extra, cur.fit_rms);
        else
            extra = std::max(extra, 0.5 * (cur.raw_sup - cur.raw_inf));
    }
    IndexPair out;
    out.sigma0 = inf;
    out.sigma1 = sup;
    out.certified = false;
    const double half_spread = 0.5 * std::max(sup - hi_min, lo_max - inf);
    out.uncertainty = half_spread + extra;
    return out;
}

RoMembershipReport check_ro_membership(const RoWeight& alpha, double b, double t_max, int grid) {
    if (!(b > 1.0)) throw precondition_error("check_ro_membership: b must be > 1");
    if (grid < 4) throw precondition_error("check_ro_membership: grid too small");
    RoMembershipReport rep;
    rep.ok = true;
    const auto ts = geometric_grid(1.0, t_max, grid);
    const int nl = std::min(grid, 64);
    for (double t : ts) {
        const double at = alpha.eval(t);
        for (int j = 0; j < nl; ++j) {
            const double lambda = 1.0 + (b - 1.0) * (j + 1) / nl;
            const double ratio = alpha.eval(lambda * t) / at;
            if (!(ratio > 0.0) || !std::isfinite(ratio))
                throw numeric_error("check_ro_membership: bad ratio");
            const double c = std::max(ratio, 1.0 / ratio);
            if (c > rep.c_witness) {
                rep.c_witness = c;
                rep.worst_t = t;
                rep.worst_lambda = lambda;
            }
        }
    }
    return rep;
}

namespace {

double embed_integrand(const RoWeight& phi, int p, int n, double t) {
    const double a = phi.eval(t);
    return std::pow(t, 2.0 * p + n - 1.0) / (a * a);
}

double adaptive_simpson(const RoWeight& phi, int p, int n, double a, double b, double fa,
                        double fm, double fb, double whole, double tol, int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    const double flm = embed_integrand(phi, p, n, lm);
    const double frm = embed_integrand(phi, p, n, rm);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    const double delta = left + right - whole;
    if (depth <= 0 || std::abs(delta) <= 15.0 * tol) return left + right + delta / 15.0;
    return adaptive_simpson(phi, p, n, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
           adaptive_simpson(phi, p, n, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

double truncated_integral(const RoWeight& phi, int p, int n, double t_cut, int panels) {
    // geometric panels capture the power-law decay scales
    const auto edges = geometric_grid(1.0, t_cut, panels + 1);
    double total = 0.0;
    for (int i = 0; i < panels; ++i) {
        const double a = edges[static_cast<std::size_t>(i)];
        const double b = edges[static_cast<std::size_t>(i) + 1];
        const double m = 0.5 * (a + b);
        const double fa = embed_integrand(phi, p, n, a);
        const double fm = embed_integrand(phi, p, n, m);
        const double fb = embed_integrand(phi, p, n, b);
        const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
        total += adaptive_simpson(phi, p, n, a, b, fa, fm, fb, whole, 1e-12 * (1.0 + whole), 24);
    }
    return total;
}

// Convergence of the log-scale boundary case: integrand 1/(t (ln t)^{e1}
// (ln ln t)^{e2} ...) converges iff the first exponent differing from 1
// exceeds 1 (and diverges when all equal 1 or the first differing is < 1).
Convergence bertrand_rule(const std::vector<double>& exponents) {
    for (double e : exponents) {
        if (e > 1.0) return Convergence::converges;
        if (e < 1.0) return Convergence::diverges;
    }
    return Convergence::diverges;
}

}  // namespace

ConvergenceVerdict embed_criterion(const RoWeight& phi, int p, int n, double t_cut,
                                   int quadrature_points) {
    if (p < 0) throw precondition_error("embed_criterion: p must be >= 0");
    if (n < 1) throw precondition_error("embed_criterion: n must be >= 1");
    if (!(t_cut >= 10.0)) throw precondition_error("embed_criterion: t_cut must be >= 10");

    ConvergenceVerdict v;
    v.partial_integral = truncated_integral(phi, p, n, t_cut, std::max(8, quadrature_points / 16));

    const double power = 2.0 * p + n;  // integrand is t^{power-1} phi^{-2}
    std::optional<IndexPair> idx;
    try {
        idx = analytic_indices(phi);
    } catch (const unsupported_error&) {
        idx.reset();
    }
    if (idx) {
        if (2.0 * idx->sigma0 - power > 0.0) {
            v.status = Convergence::converges;
            v.tail_bound_used = "index bound: 2*sigma0 > 2p+n";
            return v;
        }
        if (2.0 * idx->sigma1 - power < 0.0) {
            v.status = Convergence::diverges;
            v.tail_bound_used = "index bound: 2*sigma1 < 2p+n";
            return v;
        }
    }
    // boundary cases in closed form for pure power / power-log weights
    if (phi.kind() == RoWeight::Kind::power || phi.kind() == RoWeight::Kind::power_log) {
        const double s = phi.kind() == RoWeight::Kind::power ? phi.as_power().s
                                                             : phi.as_power_log().s;
        const double lead = power - 1.0 - 2.0 * s;  // t^lead times log factors
        if (lead < -1.0) {
            v.status = Convergence::converges;
            v.tail_bound_used = "closed form: leading power below -1";
        } else if (lead > -1.0) {
            v.status = Convergence::diverges;
            v.tail_bound_used = "closed form: leading power above -1";
        } else {
            std::vector<double> exps;
            if (phi.kind() == RoWeight::Kind::power_log)
                for (double ri : phi.as_power_log().r) exps.push_back(2.0 * ri);
            v.status = bertrand_rule(exps);
            v.tail_bound_used = "closed form: log-scale boundary rule";
        }
        return v;
    }
    v.status = Convergence::inconclusive;
    v.tail_bound_used = "none: indices straddle the boundary and no closed form applies";
    return v;
}

ClassicalityReport classical_solution_criterion(const RoWeight& phi1, const RoWeight& phi2,
                                                int n, int q, int m) {
    if (q < 1) throw precondition_error("classical_solution_criterion: q must be >= 1");
    if (m < 2 * q) throw precondition_error("classical_solution_criterion: m must be >= 2q");
    ClassicalityReport rep;
    // integrand powers 2q+n-1 and 2m+n-1
    rep.interior_ok = embed_criterion(phi1, q, n);
    rep.boundary_ok = embed_criterion(phi2, m, n);
    const auto order_of = [&](const RoWeight& w) {
        try {
            return analytic_indices(w).sigma0;
        } catch (const unsupported_error&) {
            return estimate_indices(w, 1e6).sigma0;
        }
    };
    rep.phi1_order_ok = order_of(phi1) > m + 0.5;
    rep.phi2_order_ok = order_of(phi2) > m + 0.5;
    return rep;
}

}  // namespace hsx
