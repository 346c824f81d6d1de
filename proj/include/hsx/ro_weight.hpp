#pragma once

#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace hsx {

/**
 * Positive weight function on [1, inf) from the RO class (bounded ratio
 * alpha(lambda*t)/alpha(t) on compact lambda ranges).  Supported shapes:
 *
 *   Power        t^s
 *   PowerLog     t^s (ln t)^{r1} (ln ln t)^{r2} ...  continued by a constant
 *                below t_switch so every iterated log stays positive
 *   Oscillating  t^{theta + delta*sin((ln ln t)^r)} for t > e, t^theta on [1, e]
 *   Table        log-log linear interpolation of sorted positive samples
 *   Product      pointwise product of two weights
 */
class RoWeight {
  public:
    enum class Kind { power, power_log, oscillating, piecewise_table, product };

    struct Power {
        double s = 0.0;
        bool operator==(const Power&) const = default;
    };
    struct PowerLog {
        double s = 0.0;
        std::vector<double> r;
        double t_switch = 0.0;  // e-tower of height r.size() by default
        bool operator==(const PowerLog&) const = default;
    };
    struct Oscillating {
        double theta = 0.0;
        double delta = 1.0;
        double r = 1.0;  // in (0, 1]
        bool operator==(const Oscillating&) const = default;
    };
    struct Table {
        std::vector<double> t;  // ascending, >= 1
        std::vector<double> a;  // positive
        std::optional<std::pair<double, double>> tail;  // declared (sigma0, sigma1)
        bool operator==(const Table&) const = default;
    };
    struct Product {
        std::shared_ptr<const RoWeight> lhs, rhs;
    };

    static RoWeight power(double s);
    static RoWeight power_log(double s, std::vector<double> r,
                              std::optional<double> t_switch = std::nullopt);
    static RoWeight oscillating(double theta, double delta, double r);
    static RoWeight piecewise_table(std::vector<std::pair<double, double>> samples,
                                    std::optional<std::pair<double, double>> tail_exponents =
                                        std::nullopt);
    static RoWeight product(RoWeight lhs, RoWeight rhs);

    Kind kind() const;

    /// alpha(t).  Requires t >= 1.
    double eval(double t) const;

    const Power& as_power() const { return std::get<Power>(node_); }
    const PowerLog& as_power_log() const { return std::get<PowerLog>(node_); }
    const Oscillating& as_oscillating() const { return std::get<Oscillating>(node_); }
    const Table& as_table() const { return std::get<Table>(node_); }
    const Product& as_product() const { return std::get<Product>(node_); }

    bool operator==(const RoWeight& other) const;

    /// Short human-readable form, e.g. "power(s=2)".
    std::string describe() const;

  private:
    template <typename T>
    explicit RoWeight(T node) : node_(std::move(node)) {}
    std::variant<Power, PowerLog, Oscillating, Table, Product> node_;
};

double eval_weight(const RoWeight& alpha, double t);

/// Matuszewska-type index pair sigma0 <= sigma1.
struct IndexPair {
    double sigma0 = 0.0;
    double sigma1 = 0.0;
    bool certified = false;  // closed form vs sampled estimate
    double uncertainty = 0.0;
};

/// Closed-form indices.  Product weights get the additive bound interval,
/// reported uncertified.  Tables need declared tail exponents.
IndexPair analytic_indices(const RoWeight& alpha);

/// Sampled two-sided ratio estimate of the index pair on [1, t_max].
/// Per lambda the ratio exponent log_lambda(alpha(lambda t)/alpha(t)) is
/// sampled on a geometric t grid; curves that settle in t are extrapolated to
/// their tail intercept, oscillating curves fall back to the raw envelope with
/// a correspondingly large uncertainty.
IndexPair estimate_indices(const RoWeight& alpha, double t_max,
                           const std::vector<double>& lambda_grid = {2.0, 4.0, 8.0, 16.0},
                           int t_grid_size = 512);

struct RoMembershipReport {
    bool ok = false;
    double c_witness = 1.0;         // smallest sampled two-sided constant
    double worst_t = 1.0;           // where the ratio is most extreme
    double worst_lambda = 1.0;
};

/// Samples alpha(lambda t)/alpha(t) over t in [1, t_max], lambda in [1, b];
/// evidence only, never a proof.
RoMembershipReport check_ro_membership(const RoWeight& alpha, double b, double t_max,
                                       int grid = 512);

enum class Convergence { converges, diverges, inconclusive };

struct ConvergenceVerdict {
    Convergence status = Convergence::inconclusive;
    double partial_integral = 0.0;   // integral over [1, t_cut]
    std::string tail_bound_used;     // which rule settled the tail
};

/// Decides convergence of the embedding integral of t^{2p+n-1} phi^{-2}(t):
/// strict index bounds first, the closed-form log-scale boundary rule for
/// power-log weights second, inconclusive otherwise.  Never decides from the
/// truncated numeric integral alone.
ConvergenceVerdict embed_criterion(const RoWeight& phi, int p, int n, double t_cut = 1e6,
                                   int quadrature_points = 512);

struct ClassicalityReport {
    ConvergenceVerdict interior_ok;   // integrand power 2q+n-1 against phi1
    ConvergenceVerdict boundary_ok;   // integrand power 2m+n-1 against phi2
    bool phi1_order_ok = false;       // sigma0(phi1) > m + 1/2
    bool phi2_order_ok = false;
};

ClassicalityReport classical_solution_criterion(const RoWeight& phi1, const RoWeight& phi2,
                                                int n, int q, int m);

}  // namespace hsx
