#include "hsx/serialization.hpp"

#include <sstream>

#include "hsx/errors.hpp"

namespace hsx {

json to_json(const RoWeight& w) {
    json j;
    switch (w.kind()) {
        case RoWeight::Kind::power:
            j = {{"kind", "power"}, {"s", w.as_power().s}};
            break;
        case RoWeight::Kind::power_log: {
            const auto& p = w.as_power_log();
            j = {{"kind", "power_log"}, {"s", p.s}, {"r", p.r}, {"t_switch", p.t_switch}};
            break;
        }
        case RoWeight::Kind::oscillating: {
            const auto& p = w.as_oscillating();
            j = {{"kind", "oscillating"}, {"theta", p.theta}, {"delta", p.delta}, {"r", p.r}};
            break;
        }
        case RoWeight::Kind::piecewise_table: {
            const auto& p = w.as_table();
            json pts = json::array();
            for (std::size_t i = 0; i < p.t.size(); ++i) pts.push_back({p.t[i], p.a[i]});
            j = {{"kind", "piecewise_table"}, {"points", pts}};
            if (p.tail) j["tail"] = {p.tail->first, p.tail->second};
            break;
        }
        case RoWeight::Kind::product: {
            const auto& p = w.as_product();
            j = {{"kind", "product"}, {"lhs", to_json(*p.lhs)}, {"rhs", to_json(*p.rhs)}};
            break;
        }
    }
    return j;
}

RoWeight weight_from_json(const json& j) {
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "power") return RoWeight::power(j.at("s").get<double>());
    if (kind == "power_log") {
        std::optional<double> ts;
        if (j.contains("t_switch")) ts = j.at("t_switch").get<double>();
        return RoWeight::power_log(j.at("s").get<double>(), j.at("r").get<std::vector<double>>(),
                                   ts);
    }
    if (kind == "oscillating")
        return RoWeight::oscillating(j.at("theta").get<double>(), j.at("delta").get<double>(),
                                     j.at("r").get<double>());
    if (kind == "piecewise_table") {
        std::vector<std::pair<double, double>> pts;
        for (const auto& p : j.at("points")) pts.emplace_back(p.at(0), p.at(1));
        std::optional<std::pair<double, double>> tail;
        if (j.contains("tail")) tail = std::make_pair(j["tail"].at(0), j["tail"].at(1));
        return RoWeight::piecewise_table(std::move(pts), tail);
    }
    if (kind == "product")
        return RoWeight::product(weight_from_json(j.at("lhs")), weight_from_json(j.at("rhs")));
    throw precondition_error("weight_from_json: unknown kind '" + kind + "'");
}

json to_json(const CircleSpectrum& s) {
    json coeffs = json::array();
    for (int k = -s.K; k <= s.K; ++k)
        coeffs.push_back({k, s.at(k).real(), s.at(k).imag()});
    return {{"K", s.K}, {"coeffs", coeffs}};
}

CircleSpectrum circle_spectrum_from_json(const json& j) {
    CircleSpectrum s(j.at("K").get<int>());
    for (const auto& row : j.at("coeffs")) {
        const int k = row.at(0).get<int>();
        if (std::abs(k) > s.K) throw precondition_error("spectrum: mode outside truncation");
        s.at(k) = cplx(row.at(1).get<double>(), row.at(2).get<double>());
    }
    return s;
}

json to_json(const LatticeSpectrum& s) {
    json coeffs = json::array();
    if (s.dim == 1) {
        for (int k = -s.K; k <= s.K; ++k) coeffs.push_back({k, s.at(k).real(), s.at(k).imag()});
    } else {
        for (int k1 = -s.K; k1 <= s.K; ++k1)
            for (int k2 = -s.K; k2 <= s.K; ++k2)
                coeffs.push_back({k1, k2, s.at(k1, k2).real(), s.at(k1, k2).imag()});
    }
    return {{"dim", s.dim}, {"K", s.K}, {"coeffs", coeffs}};
}

LatticeSpectrum lattice_spectrum_from_json(const json& j) {
    LatticeSpectrum s(j.at("dim").get<int>(), j.at("K").get<int>());
    for (const auto& row : j.at("coeffs")) {
        if (s.dim == 1)
            s.at(row.at(0).get<int>()) = cplx(row.at(1).get<double>(), row.at(2).get<double>());
        else
            s.at(row.at(0).get<int>(), row.at(1).get<int>()) =
                cplx(row.at(2).get<double>(), row.at(3).get<double>());
    }
    return s;
}

json to_json(const IndexPair& p) {
    return {{"sigma0", p.sigma0},
            {"sigma1", p.sigma1},
            {"certified", p.certified},
            {"uncertainty", p.uncertainty}};
}

json to_json(const ConvergenceVerdict& v) {
    const char* status = v.status == Convergence::converges
                             ? "converges"
                             : (v.status == Convergence::diverges ? "diverges" : "inconclusive");
    return {{"status", status},
            {"partial_integral", v.partial_integral},
            {"tail_bound_used", v.tail_bound_used}};
}

json to_json(const DiskField& f) {
    json modes = json::array();
    for (int k = -f.truncation(); k <= f.truncation(); ++k) {
        json radial = json::array();
        const auto p = f.profile(k);
        for (int j = 0; j < p.size(); ++j) radial.push_back({p(j).real(), p(j).imag()});
        modes.push_back({{"k", k}, {"radial", radial}});
    }
    return {{"K", f.truncation()}, {"R", f.grid()->size()}, {"modes", modes}};
}

namespace {

Eigen::VectorXcd radial_from_json(const json& radial, int R) {
    if (static_cast<int>(radial.size()) != R)
        throw precondition_error("disk field: radial profile length must equal R");
    Eigen::VectorXcd p(R);
    for (int j = 0; j < R; ++j) {
        const auto& cell = radial.at(static_cast<std::size_t>(j));
        if (cell.is_number())
            p(j) = cplx(cell.get<double>(), 0.0);
        else
            p(j) = cplx(cell.at(0).get<double>(), cell.at(1).get<double>());
    }
    return p;
}

}  // namespace

DiskField disk_field_from_json(const json& j, std::shared_ptr<const RadialGrid> grid, int K) {
    DiskField f(K, std::move(grid));
    for (const auto& mode : j.at("modes")) {
        const int k = mode.at("k").get<int>();
        if (std::abs(k) > K) throw precondition_error("disk field: mode outside truncation");
        f.profile_ref(k) = radial_from_json(mode.at("radial"), f.grid()->size());
    }
    return f;
}

DiskBvpProblem problem_from_json(const json& j) {
    DiskBvpProblem p;
    p.m = j.at("m").get<int>();
    const int K = j.at("K").get<int>();
    const int R = j.at("R").get<int>();
    auto grid = make_radial_grid(R);
    p.f = j.contains("f") ? disk_field_from_json(j.at("f"), grid, K) : DiskField(K, grid);
    p.g = j.contains("g") ? circle_spectrum_from_json(
                                {{"K", K}, {"coeffs", j.at("g").at("coeffs")}})
                          : CircleSpectrum(K);
    return p;
}

json to_json(const DiskBvpProblem& p) {
    json jf = to_json(p.f);
    return {{"m", p.m},
            {"K", p.f.truncation()},
            {"R", p.f.grid()->size()},
            {"f", {{"modes", jf["modes"]}}},
            {"g", {{"coeffs", to_json(p.g)["coeffs"]}}}};
}

json to_json(const SolveReport& r) {
    json solv = json::array();
    for (const auto& c : r.solvability) solv.push_back({c.real(), c.imag()});
    return {{"kernel_dim", r.kernel_dim},
            {"cokernel_dim", r.cokernel_dim},
            {"index", r.index},
            {"solvability_residuals", solv},
            {"operator_residual", r.operator_residual},
            {"data_scale", r.data_scale},
            {"solution", to_json(r.solution)},
            {"g_projected", to_json(r.g_projected)},
            {"norms", r.norms},
            {"warnings", r.warnings}};
}

namespace {

void flatten(const json& j, const std::string& prefix, std::ostringstream& out) {
    if (j.is_object()) {
        for (const auto& [key, value] : j.items())
            flatten(value, prefix.empty() ? key : prefix + "." + key, out);
    } else if (j.is_array()) {
        std::size_t i = 0;
        for (const auto& value : j) {
            flatten(value, prefix + "[" + std::to_string(i) + "]", out);
            ++i;
        }
    } else {
        out << prefix << "," << j.dump() << "\n";
    }
}

}  // namespace

std::string json_to_kv_csv(const json& j) {
    std::ostringstream out;
    out << "key,value\n";
    flatten(j, "", out);
    return out.str();
}

std::string circle_spectrum_to_csv(const CircleSpectrum& s) {
    std::ostringstream out;
    out << "k,re,im\n";
    for (int k = -s.K; k <= s.K; ++k)
        out << k << "," << s.at(k).real() << "," << s.at(k).imag() << "\n";
    return out.str();
}

CircleSpectrum circle_spectrum_from_csv(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    std::vector<std::tuple<int, double, double>> rows;
    int maxk = 0;
    bool first = true;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        if (first) {
            first = false;
            if (line.find("k,") == 0 || line.find("k ,") == 0) continue;  // header
        }
        std::istringstream ls(line);
        std::string cell;
        std::vector<std::string> cells;
        while (std::getline(ls, cell, ',')) cells.push_back(cell);
        if (cells.size() != 3) throw precondition_error("spectrum csv: expected k,re,im rows");
        rows.emplace_back(std::stoi(cells[0]), std::stod(cells[1]), std::stod(cells[2]));
        maxk = std::max(maxk, std::abs(std::get<0>(rows.back())));
    }
    CircleSpectrum s(maxk);
    for (const auto& [k, re, im] : rows) s.at(k) = cplx(re, im);
    return s;
}

}  // namespace hsx
