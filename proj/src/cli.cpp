#include "hsx/cli.hpp"

#include <CLI11.hpp>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "hsx/errors.hpp"
#include "hsx/green.hpp"
#include "hsx/interpolation.hpp"
#include "hsx/serialization.hpp"

namespace hsx {

namespace {

constexpr const char* kVersion = "0.1.0";

struct OutputOptions {
    std::string path;
    std::string format = "json";
};

void emit(const json& report, const OutputOptions& opt, std::ostream& out) {
    std::string payload;
    if (opt.format == "csv")
        payload = json_to_kv_csv(report);
    else
        payload = report.dump(2) + "\n";
    if (opt.path.empty()) {
        out << payload;
    } else {
        std::ofstream f(opt.path);
        if (!f) throw precondition_error("cannot open output path: " + opt.path);
        f << payload;
    }
}

json load_json_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw precondition_error("cannot open input path: " + path);
    json j;
    f >> j;
    return j;
}

/// Inline JSON string, or @path to read a file.
json parse_json_arg(const std::string& text) {
    if (!text.empty() && text[0] == '@') return load_json_file(text.substr(1));
    return json::parse(text);
}

struct WeightFlags {
    std::string kind;
    std::string weight_json;
    double s = 0.0;
    double theta = 0.0;
    double delta = 1.0;
    double t_switch = -1.0;
    std::vector<double> r;
    std::string points;  // "t:a,t:a,..."
    std::string tail;    // "sigma0,sigma1"

    RoWeight build() const {
        if (!weight_json.empty()) return weight_from_json(parse_json_arg(weight_json));
        if (kind == "power") return RoWeight::power(s);
        if (kind == "power-log" || kind == "power_log") {
            std::optional<double> ts;
            if (t_switch > 0) ts = t_switch;
            return RoWeight::power_log(s, r, ts);
        }
        if (kind == "oscillating")
            return RoWeight::oscillating(theta, delta, r.empty() ? 1.0 : r[0]);
        if (kind == "piecewise") {
            std::vector<std::pair<double, double>> pts;
            std::istringstream in(points);
            std::string cell;
            while (std::getline(in, cell, ',')) {
                const auto sep = cell.find(':');
                if (sep == std::string::npos)
                    throw precondition_error("piecewise points must look like t:a,t:a");
                pts.emplace_back(std::stod(cell.substr(0, sep)), std::stod(cell.substr(sep + 1)));
            }
            std::optional<std::pair<double, double>> tl;
            if (!tail.empty()) {
                const auto sep = tail.find(',');
                if (sep == std::string::npos)
                    throw precondition_error("tail must look like sigma0,sigma1");
                tl = std::make_pair(std::stod(tail.substr(0, sep)),
                                    std::stod(tail.substr(sep + 1)));
            }
            return RoWeight::piecewise_table(std::move(pts), tl);
        }
        throw precondition_error("unknown or missing --kind (power, power-log, oscillating, "
                                 "piecewise) and no --weight-json");
    }
};

void add_weight_flags(CLI::App* cmd, WeightFlags& wf) {
    cmd->add_option("--kind", wf.kind, "weight kind: power, power-log, oscillating, piecewise");
    cmd->add_option("--s", wf.s, "power exponent");
    cmd->add_option("--r", wf.r, "log exponents (power-log) or oscillation rate (oscillating)");
    cmd->add_option("--theta", wf.theta, "oscillating center exponent");
    cmd->add_option("--delta", wf.delta, "oscillating amplitude");
    cmd->add_option("--t-switch", wf.t_switch, "power-log constant-continuation point");
    cmd->add_option("--points", wf.points, "piecewise samples t:a,t:a,...");
    cmd->add_option("--tail", wf.tail, "piecewise declared tail exponents sigma0,sigma1");
    cmd->add_option("--weight-json", wf.weight_json, "weight as JSON (or @file)");
}

struct EnvDefaults {
    int K = 16;
    int R = 32;
    std::uint64_t seed = 1;
    int threads = 1;
};

EnvDefaults load_env_defaults() {
    EnvDefaults d;
    const char* path = std::getenv("HSX_CONFIG");
    if (!path || !*path) return d;
    const json j = load_json_file(path);
    if (j.contains("K")) d.K = j["K"].get<int>();
    if (j.contains("R")) d.R = j["R"].get<int>();
    if (j.contains("seed")) d.seed = j["seed"].get<std::uint64_t>();
    if (j.contains("threads")) d.threads = j["threads"].get<int>();
    return d;
}

NormRequest parse_norm_request(const std::string& text) {
    NormRequest req;
    if (text.rfind("interior:", 0) == 0) {
        req.where = NormRequest::Where::interior;
        req.interior_order = std::stoi(text.substr(9));
        return req;
    }
    if (text.rfind("trace:power:", 0) == 0) {
        req.where = NormRequest::Where::boundary_trace;
        req.weight = RoWeight::power(std::stod(text.substr(12)));
        return req;
    }
    if (text.rfind("trace:json:", 0) == 0) {
        req.where = NormRequest::Where::boundary_trace;
        req.weight = weight_from_json(parse_json_arg(text.substr(11)));
        return req;
    }
    throw precondition_error("norm request must be interior:<s>, trace:power:<t>, or "
                             "trace:json:<weight>");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"extended Sobolev scale toolkit: RO weight calculus, weighted spectral norms, "
                 "interpolation identities, and the high-order disk boundary problem"};
    app.require_subcommand(1);
    const EnvDefaults env = load_env_defaults();

    OutputOptions output;
    app.add_option("--output", output.path, "write the report to a file instead of stdout")
        ->capture_default_str();
    app.add_option("--format", output.format, "json or csv")
        ->check(CLI::IsMember({"json", "csv"}))
        ->capture_default_str();

    json report;

    // ---- ro ----------------------------------------------------------
    auto* ro = app.add_subcommand("ro", "RO-varying weight calculus");
    ro->require_subcommand(1);

    {
        auto* cmd = ro->add_subcommand("index", "closed-form and sampled Matuszewska indices");
        auto wf = std::make_shared<WeightFlags>();
        auto tmax = std::make_shared<double>(1e8);
        auto tgrid = std::make_shared<int>(512);
        auto lambdas = std::make_shared<std::vector<double>>();
        add_weight_flags(cmd, *wf);
        cmd->add_option("--tmax", *tmax, "largest sampled argument");
        cmd->add_option("--t-grid", *tgrid, "samples per lambda");
        cmd->add_option("--lambda-grid", *lambdas, "dilation factors (default 2 4 8 16)");
        cmd->callback([&report, wf, tmax, tgrid, lambdas]() {
            const RoWeight w = wf->build();
            report = {{"version", kVersion}, {"weight", to_json(w)}, {"t_max", *tmax}};
            try {
                report["analytic"] = to_json(analytic_indices(w));
            } catch (const unsupported_error&) {
                report["analytic"] = nullptr;
            }
            const auto grid = lambdas->empty() ? std::vector<double>{2, 4, 8, 16} : *lambdas;
            report["estimated"] = to_json(estimate_indices(w, *tmax, grid, *tgrid));
            report["lambda_grid"] = grid;
            report["t_grid_size"] = *tgrid;
        });
    }
    {
        auto* cmd = ro->add_subcommand("check", "sampled RO membership evidence");
        auto wf = std::make_shared<WeightFlags>();
        auto b = std::make_shared<double>(2.0);
        auto tmax = std::make_shared<double>(1e6);
        auto grid = std::make_shared<int>(512);
        add_weight_flags(cmd, *wf);
        cmd->add_option("--b", *b, "dilation interval upper end (lambda in [1, b])");
        cmd->add_option("--tmax", *tmax, "largest sampled base point");
        cmd->add_option("--grid", *grid, "samples per axis");
        cmd->callback([&report, wf, b, tmax, grid]() {
            const RoWeight w = wf->build();
            const auto rep = check_ro_membership(w, *b, *tmax, *grid);
            json samples = json::array();
            for (double t : {1.0, 10.0, 100.0, 1000.0})
                samples.push_back({t, eval_weight(w, t)});
            report = {{"version", kVersion},
                      {"weight", to_json(w)},
                      {"ok", rep.ok},
                      {"c_witness", rep.c_witness},
                      {"worst_point", {{"t", rep.worst_t}, {"lambda", rep.worst_lambda}}},
                      {"b", *b},
                      {"t_max", *tmax},
                      {"grid", *grid},
                      {"eval_samples", samples}};
        });
    }
    {
        auto* cmd = ro->add_subcommand("embed", "continuous-embedding integral criterion");
        auto wf = std::make_shared<WeightFlags>();
        auto p = std::make_shared<int>(0);
        auto n = std::make_shared<int>(2);
        auto tcut = std::make_shared<double>(1e6);
        auto qp = std::make_shared<int>(512);
        add_weight_flags(cmd, *wf);
        cmd->add_option("--p", *p, "continuity order");
        cmd->add_option("--n", *n, "space dimension");
        cmd->add_option("--t-cut", *tcut, "truncation of the reported partial integral");
        cmd->add_option("--quad-points", *qp, "quadrature panels");
        cmd->callback([&report, wf, p, n, tcut, qp]() {
            const RoWeight w = wf->build();
            report = to_json(embed_criterion(w, *p, *n, *tcut, *qp));
            report["version"] = kVersion;
            report["weight"] = to_json(w);
            report["p"] = *p;
            report["n"] = *n;
            report["t_cut"] = *tcut;
            report["quadrature_points"] = *qp;
        });
    }
    {
        auto* cmd = ro->add_subcommand("classical", "classical-solution sufficient conditions");
        auto phi1 = std::make_shared<std::string>();
        auto phi2 = std::make_shared<std::string>();
        auto n = std::make_shared<int>(2);
        auto q = std::make_shared<int>(1);
        auto m = std::make_shared<int>(2);
        cmd->add_option("--phi1", *phi1, "interior weight as JSON (or @file)")->required();
        cmd->add_option("--phi2", *phi2, "boundary weight as JSON (or @file)")->required();
        cmd->add_option("--n", *n, "space dimension");
        cmd->add_option("--q", *q, "half the interior operator order");
        cmd->add_option("--m", *m, "boundary condition order");
        cmd->callback([&report, phi1, phi2, n, q, m]() {
            const RoWeight w1 = weight_from_json(parse_json_arg(*phi1));
            const RoWeight w2 = weight_from_json(parse_json_arg(*phi2));
            const auto rep = classical_solution_criterion(w1, w2, *n, *q, *m);
            report = {{"version", kVersion},
                      {"interior_ok", to_json(rep.interior_ok)},
                      {"boundary_ok", to_json(rep.boundary_ok)},
                      {"phi1_order_ok", rep.phi1_order_ok},
                      {"phi2_order_ok", rep.phi2_order_ok},
                      {"n", *n},
                      {"q", *q},
                      {"m", *m}};
        });
    }

    // ---- norm --------------------------------------------------------
    {
        auto* cmd = app.add_subcommand("norm", "weighted spectral norms on circle and lattice");
        auto wf = std::make_shared<WeightFlags>();
        auto input = std::make_shared<std::string>();
        auto csv_in = std::make_shared<std::string>();
        auto spec_json = std::make_shared<std::string>();
        auto samples_json = std::make_shared<std::string>();
        auto eta_json = std::make_shared<std::string>();
        auto mult_l = std::make_shared<int>(-1);
        add_weight_flags(cmd, *wf);
        cmd->add_option("--input", *input, "spectrum JSON file");
        cmd->add_option("--csv", *csv_in, "circle spectrum CSV file (k,re,im)");
        cmd->add_option("--spectrum-json", *spec_json, "spectrum as inline JSON");
        cmd->add_option("--samples-json", *samples_json,
                        "uniform circle samples [[re,im],...] to transform first");
        cmd->add_option("--embedding-eta", *eta_json,
                        "second weight: also report sup alpha/eta and its trend");
        cmd->add_option("--multiplier-l", *mult_l,
                        "also report the tangential derivative multiplier bound");
        cmd->callback([&report, wf, input, csv_in, spec_json, samples_json, eta_json, mult_l]() {
            const RoWeight w = wf->build();
            report = {{"version", kVersion}, {"weight", to_json(w)}};
            int K = 0;
            if (!samples_json->empty()) {
                std::vector<cplx> samples;
                for (const auto& cell : parse_json_arg(*samples_json))
                    samples.emplace_back(cell.at(0).get<double>(), cell.at(1).get<double>());
                const CircleSpectrum s = analyze_circle(samples);
                K = s.K;
                report["spectrum"] = to_json(s);
                report["hnorm"] = hnorm(s, w);
                report["l2_norm"] = hnorm(s, RoWeight::power(0.0));
            } else if (!csv_in->empty()) {
                std::ifstream f(*csv_in);
                if (!f) throw precondition_error("cannot open csv: " + *csv_in);
                std::stringstream buf;
                buf << f.rdbuf();
                const CircleSpectrum s = circle_spectrum_from_csv(buf.str());
                K = s.K;
                report["hnorm"] = hnorm(s, w);
                report["l2_norm"] = hnorm(s, RoWeight::power(0.0));
            } else if (!input->empty() || !spec_json->empty()) {
                const json j = input->empty() ? parse_json_arg(*spec_json)
                                              : load_json_file(*input);
                if (j.contains("dim")) {
                    const LatticeSpectrum s = lattice_spectrum_from_json(j);
                    K = s.K;
                    report["hnorm"] = hnorm(s, w);
                    report["l2_norm"] = hnorm(s, RoWeight::power(0.0));
                } else {
                    const CircleSpectrum s = circle_spectrum_from_json(j);
                    K = s.K;
                    report["hnorm"] = hnorm(s, w);
                    report["l2_norm"] = hnorm(s, RoWeight::power(0.0));
                }
            } else {
                throw precondition_error("norm: provide --input, --csv, --spectrum-json, or "
                                         "--samples-json");
            }
            report["K"] = K;
            report["smoothed_modulus_max"] = smoothed_modulus(K);
            if (!eta_json->empty()) {
                const RoWeight eta = weight_from_json(parse_json_arg(*eta_json));
                const auto er = embedding_ratio(w, eta, K);
                report["embedding"] = {{"sup_ratio", er.sup_ratio},
                                       {"vanishing_trend", er.vanishing_trend},
                                       {"eta", to_json(eta)}};
            }
            if (*mult_l >= 0)
                report["derivative_multiplier_bound"] =
                    derivative_multiplier_bound(*mult_l, w, K);
        });
    }

    // ---- interp ------------------------------------------------------
    auto* interp = app.add_subcommand("interp", "interpolation with a function parameter");
    interp->require_subcommand(1);
    {
        auto* cmd = interp->add_subcommand("psi", "derived interpolation parameter");
        auto wf = std::make_shared<WeightFlags>();
        auto s0 = std::make_shared<double>(0.0);
        auto s1 = std::make_shared<double>(2.0);
        auto ts = std::make_shared<std::vector<double>>();
        add_weight_flags(cmd, *wf);
        cmd->add_option("--s0", *s0, "lower Sobolev endpoint");
        cmd->add_option("--s1", *s1, "upper Sobolev endpoint");
        cmd->add_option("--t", *ts, "evaluation points");
        cmd->callback([&report, wf, s0, s1, ts]() {
            const auto setup = build_psi(wf->build(), *s0, *s1);
            json values = json::array();
            const auto pts = ts->empty() ? std::vector<double>{1.0, 10.0, 100.0, 1e4} : *ts;
            for (double t : pts) values.push_back({t, setup.psi(t)});
            report = {{"version", kVersion},
                      {"alpha", to_json(setup.alpha)},
                      {"s0", setup.s0},
                      {"s1", setup.s1},
                      {"psi", values}};
        });
    }
    {
        auto* cmd = interp->add_subcommand(
            "verify", "norm identity, direct sums, pseudoconcavity on random spectra");
        auto seed = std::make_shared<std::uint64_t>(env.seed);
        auto count = std::make_shared<int>(100);
        auto K = std::make_shared<int>(env.K);
        cmd->add_option("--seed", *seed, "random seed");
        cmd->add_option("--count", *count, "random spectra per setup");
        cmd->add_option("--K", *K, "spectrum truncation");
        cmd->callback([&report, seed, count, K]() {
            const std::vector<InterpolationSetup> setups = {
                build_psi(RoWeight::power(1.0), 0.0, 2.0),
                build_psi(RoWeight::power(2.5), 2.0, 3.0),
                build_psi(RoWeight::power_log(1.0, {1.0}), 0.0, 2.0),
                build_psi(RoWeight::oscillating(3.0, 0.1, 1.0), 2.5, 3.5),
                build_psi(RoWeight::oscillating(1.0, 0.5, 1.0), -0.5, 2.5),
            };
            double max_rel = 0.0;
            std::uint64_t s = *seed;
            for (const auto& setup : setups) {
                for (int i = 0; i < *count; ++i) {
                    const CircleSpectrum w = random_spectrum(*K, s++, 1.0);
                    const double a = hnorm(w, setup.alpha);
                    const double b = interp_norm(w, setup);
                    if (a > 0) max_rel = std::max(max_rel, std::abs(a - b) / a);
                }
            }
            double max_ds = 0.0;
            for (int i = 0; i < std::max(1, *count / 5); ++i) {
                const std::vector<InterpolationSetup> trio(3, setups[i % setups.size()]);
                std::vector<CircleSpectrum> spectra;
                double scale = 0.0;
                for (int j = 0; j < 3; ++j) {
                    spectra.push_back(random_spectrum(*K, s++, 1.0));
                    scale += std::pow(interp_norm(spectra.back(), trio[0]), 2);
                }
                const double resid = check_direct_sum(trio, spectra);
                max_ds = std::max(max_ds, resid / std::sqrt(scale));
            }
            json pc = json::array();
            for (const auto& setup : setups) {
                const auto r = check_pseudoconcavity(setup, 1e8, 512);
                pc.push_back({{"alpha", to_json(setup.alpha)},
                              {"ok_on_sample", r.ok_on_sample},
                              {"worst_violation", r.worst_violation}});
            }
            report = {{"version", kVersion},
                      {"K", *K},
                      {"seed", *seed},
                      {"count", *count},
                      {"max_identity_rel_error", max_rel},
                      {"max_direct_sum_residual_rel", max_ds},
                      {"pseudoconcavity", pc}};
        });
    }

    // ---- bvp ---------------------------------------------------------
    auto* bvp = app.add_subcommand("bvp", "high-order boundary problem on the unit disk");
    bvp->require_subcommand(1);
    {
        auto* cmd = bvp->add_subcommand("solve", "solve a problem file and report diagnostics");
        auto input = std::make_shared<std::string>();
        auto norms = std::make_shared<std::vector<std::string>>();
        auto threads = std::make_shared<int>(env.threads);
        cmd->add_option("--input", *input, "problem JSON file")->required();
        cmd->add_option("--norm", *norms,
                        "requested norms: interior:<s> or trace:power:<t> or trace:json:<w>");
        cmd->add_option("--threads", *threads, "mode-parallel solve threads");
        cmd->callback([&report, input, norms, threads]() {
            const DiskBvpProblem problem = problem_from_json(load_json_file(*input));
            std::vector<NormRequest> reqs;
            for (const auto& text : *norms) reqs.push_back(parse_norm_request(text));
            const SolveReport rep = solve(problem, reqs, *threads);
            report = to_json(rep);
            report["version"] = kVersion;
            report["m"] = problem.m;
            report["K"] = problem.f.truncation();
            report["R"] = problem.f.grid()->size();
        });
    }
    {
        auto* cmd = bvp->add_subcommand("fredholm", "kernel, cokernel, and index");
        auto m = std::make_shared<int>(2);
        auto K = std::make_shared<int>(64);
        cmd->add_option("--m", *m, "boundary condition order");
        cmd->add_option("--K", *K, "angular truncation");
        cmd->callback([&report, m, K]() {
            const auto rep = fredholm_report(*m, *K);
            report = {{"version", kVersion},
                      {"kernel_dim", rep.kernel_dim},
                      {"cokernel_dim", rep.cokernel_dim},
                      {"index", rep.index},
                      {"m", *m},
                      {"K", *K}};
        });
    }
    {
        auto* cmd = bvp->add_subcommand("apriori", "global a priori estimate probe");
        auto trials = std::make_shared<int>(100);
        auto s = std::make_shared<double>(3.0);
        auto lambda = std::make_shared<double>(1.0);
        auto seed = std::make_shared<std::uint64_t>(env.seed);
        auto m = std::make_shared<int>(2);
        auto K = std::make_shared<int>(env.K);
        auto R = std::make_shared<int>(env.R);
        cmd->add_option("--trials", *trials, "random trials");
        cmd->add_option("--s", *s, "solution norm order (integer)");
        cmd->add_option("--lambda", *lambda, "order drop of the weaker norm");
        cmd->add_option("--seed", *seed, "random seed");
        cmd->add_option("--m", *m, "boundary condition order");
        cmd->add_option("--K", *K, "angular truncation");
        cmd->add_option("--R", *R, "radial grid size");
        cmd->callback([&report, trials, s, lambda, seed, m, K, R]() {
            const auto rep = apriori_probe(*trials, *s, *lambda, *seed, *m, *K, *R);
            report = {{"version", kVersion}, {"max_ratio", rep.max_ratio},
                      {"per_trial", rep.per_trial}, {"trials", *trials},
                      {"s", *s},                    {"lambda", *lambda},
                      {"seed", *seed},              {"m", *m},
                      {"K", *K},                    {"R", *R}};
        });
    }
    {
        auto* cmd = bvp->add_subcommand("regularity", "boundary-trace regularity threshold probe");
        auto decay = std::make_shared<double>(6.0);
        auto m = std::make_shared<int>(2);
        auto K = std::make_shared<int>(64);
        auto log_exp = std::make_shared<double>(0.0);
        cmd->add_option("--decay", *decay, "boundary data decay exponent");
        cmd->add_option("--m", *m, "boundary condition order");
        cmd->add_option("--K", *K, "angular truncation");
        cmd->add_option("--log-exponent", *log_exp, "extra log factor on the data");
        cmd->callback([&report, decay, m, K, log_exp]() {
            const auto rep = regularity_probe(*decay, *m, *K, *log_exp);
            json rows = json::array();
            for (const auto& row : rep.rows)
                rows.push_back({{"weight", row.weight},
                                {"nu_order", row.nu_order},
                                {"value", row.value}});
            report = {{"version", kVersion}, {"K", rep.K},         {"m", *m},
                      {"decay", *decay},     {"log_exponent", *log_exp}, {"rows", rows}};
        });
    }

    // ---- green -------------------------------------------------------
    {
        auto* green = app.add_subcommand("green", "boundary-coupled integration-by-parts checks");
        green->require_subcommand(1);
        auto* cmd = green->add_subcommand(
            "verify", "identity residuals, adjoint system residuals, range pairings");
        auto seed = std::make_shared<std::uint64_t>(env.seed);
        auto count = std::make_shared<int>(10);
        auto K = std::make_shared<int>(env.K);
        auto R = std::make_shared<int>(env.R);
        auto nr = std::make_shared<int>(128);
        auto nphi = std::make_shared<int>(128);
        cmd->add_option("--seed", *seed, "random seed");
        cmd->add_option("--count", *count, "random quadruples");
        cmd->add_option("--K", *K, "angular truncation");
        cmd->add_option("--R", *R, "radial grid size");
        cmd->add_option("--nr", *nr, "radial quadrature points");
        cmd->add_option("--nphi", *nphi, "angular quadrature points");
        cmd->callback([&report, seed, count, K, R, nr, nphi]() {
            auto grid = make_radial_grid(*R);
            double max_res = 0.0;
            std::vector<std::string> warnings;
            std::uint64_t s = *seed;
            for (int i = 0; i < *count; ++i) {
                GreenCheckInput in{random_band_limited(*K, grid, s++, 1.5, 0.85, 12),
                                   random_band_limited(*K, grid, s++, 1.5, 0.85, 12),
                                   random_spectrum(*K, s++, 1.5), random_spectrum(*K, s++, 1.5),
                                   QuadratureSpec{*nr, *nphi, 4}};
                const auto res = green_residual(in);
                max_res = std::max(max_res, res.value);
                if (warnings.empty()) warnings = res.warnings;
            }
            double adj_interior = 0.0, adj_boundary = 0.0, max_pair = 0.0;
            const auto triples = adjoint_kernel_basis(*K, grid);
            for (const auto& t : triples) {
                const auto r = adjoint_system_residual(t);
                adj_interior = std::max(adj_interior, r.interior);
                for (double b : r.boundary) adj_boundary = std::max(adj_boundary, b);
                const DiskField u = random_band_limited(*K, grid, s++, 2.0);
                max_pair = std::max(max_pair, green_pairing_check(u, t));
            }
            report = {{"version", kVersion},
                      {"max_green_residual", max_res},
                      {"adjoint_interior_max", adj_interior},
                      {"adjoint_boundary_max", adj_boundary},
                      {"max_pairing", max_pair},
                      {"count", *count},
                      {"seed", *seed},
                      {"K", *K},
                      {"R", *R},
                      {"quadrature", {{"nr", *nr}, {"nphi", *nphi}, {"panel_order", 4}}},
                      {"warnings", warnings}};
        });
    }

    std::vector<const char*> argv;
    argv.reserve(args.size());
    for (const auto& a : args) argv.push_back(a.c_str());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return 0;
    } catch (const CLI::ParseError& e) {
        err << e.what() << "\n";
        err << "run with --help for usage\n";
        return 64;
    } catch (const precondition_error& e) {
        err << "precondition error: " << e.what() << "\n";
        return 2;
    } catch (const numeric_error& e) {
        err << "numeric error: " << e.what() << "\n";
        return 3;
    } catch (const json::exception& e) {
        err << "input error: " << e.what() << "\n";
        return 2;
    }

    emit(report, output, out);
    return 0;
}

int run(int argc, const char* const* argv) {
    std::vector<std::string> args(argv, argv + argc);
    return run(args, std::cout, std::cerr);
}

const std::vector<OpMapping>& operation_registry() {
    static const std::vector<OpMapping> table = {
        {"analytic_indices", "ro index"},
        {"estimate_indices", "ro index"},
        {"check_ro_membership", "ro check"},
        {"eval_weight", "ro check"},
        {"embed_criterion", "ro embed"},
        {"classical_solution_criterion", "ro classical"},
        {"smoothed_modulus", "norm"},
        {"hnorm", "norm"},
        {"analyze_circle", "norm"},
        {"embedding_ratio", "norm"},
        {"derivative_multiplier_bound", "norm"},
        {"build_psi", "interp psi"},
        {"interp_norm", "interp verify"},
        {"check_direct_sum", "interp verify"},
        {"check_pseudoconcavity", "interp verify"},
        {"solve", "bvp solve"},
        {"solve_mode", "bvp solve"},
        {"apply_operator", "bvp solve"},
        {"solvability_residuals", "bvp solve"},
        {"fredholm_report", "bvp fredholm"},
        {"kernel_basis", "bvp fredholm"},
        {"adjoint_kernel_basis", "bvp fredholm"},
        {"apriori_probe", "bvp apriori"},
        {"regularity_probe", "bvp regularity"},
        {"green_residual", "green verify"},
        {"adjoint_system_residual", "green verify"},
        {"green_pairing_check", "green verify"},
    };
    return table;
}

}  // namespace hsx
