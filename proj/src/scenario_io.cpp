#include "rwtail/scenario_io.hpp"

#include "rwtail/error.hpp"

#include <nlohmann/json.hpp>

#include <fstream>
#include <initializer_list>
#include <sstream>

namespace rwtail {

namespace {

using nlohmann::json;

void only_keys(const json& obj, const std::string& where, std::initializer_list<const char*> allowed) {
    if (!obj.is_object()) {
        throw ValidationError(where + ": expected an object");
    }
    for (const auto& [key, _] : obj.items()) {
        bool ok = false;
        for (const char* a : allowed) {
            ok = ok || key == a;
        }
        if (!ok) {
            throw ValidationError(where + ": unknown key '" + key + "'");
        }
    }
}

double number(const json& obj, const char* key, const std::string& where) {
    if (!obj.contains(key)) {
        throw ValidationError(where + ": missing '" + key + "'");
    }
    const json& v = obj.at(key);
    if (!v.is_number()) {
        throw ValidationError(where + ": '" + key + "' must be a number");
    }
    return v.get<double>();
}

double number_or(const json& obj, const char* key, double fallback, const std::string& where) {
    return obj.contains(key) ? number(obj, key, where) : fallback;
}

std::size_t count(const json& obj, const char* key, const std::string& where) {
    if (!obj.contains(key) || !obj.at(key).is_number_integer() || obj.at(key).get<long long>() < 0) {
        throw ValidationError(where + ": '" + key + "' must be a nonnegative integer");
    }
    return obj.at(key).get<std::size_t>();
}

const json& field(const json& obj, const char* key, const std::string& where) {
    if (!obj.contains(key)) {
        throw ValidationError(where + ": missing '" + key + "'");
    }
    return obj.at(key);
}

std::string text(const json& obj, const char* key, const std::string& where) {
    const json& v = field(obj, key, where);
    if (!v.is_string()) {
        throw ValidationError(where + ": '" + key + "' must be a string");
    }
    return v.get<std::string>();
}

MarginalModel parse_marginal(const json& m, const std::string& where) {
    only_keys(m, where, {"family", "params"});
    const std::string family = text(m, "family", where);
    const json& p = field(m, "params", where);
    const std::string pw = where + ".params";
    try {
        if (family == "pareto") {
            only_keys(p, pw, {"alpha", "scale"});
            return MarginalModel::pareto(number(p, "alpha", pw), number(p, "scale", pw));
        }
        if (family == "lognormal") {
            only_keys(p, pw, {"mu", "sigma"});
            return MarginalModel::lognormal(number(p, "mu", pw), number(p, "sigma", pw));
        }
        if (family == "weibullian") {
            only_keys(p, pw, {"rate", "shape"});
            return MarginalModel::weibullian(number(p, "rate", pw), number(p, "shape", pw));
        }
        if (family == "exponential") {
            only_keys(p, pw, {"rate"});
            return MarginalModel::exponential(number(p, "rate", pw));
        }
    } catch (const ValidationError&) {
        throw;
    } catch (const Error& e) {
        throw ValidationError(where + ": " + e.what());
    }
    throw ValidationError(where + ": unknown family '" + family + "'");
}

WeightModel parse_weight(const json& w, const std::string& where) {
    only_keys(w, where, {"kind", "params"});
    const std::string kind = text(w, "kind", where);
    const json& p = field(w, "params", where);
    const std::string pw = where + ".params";
    try {
        if (kind == "degenerate") {
            only_keys(p, pw, {"c"});
            return WeightModel::degenerate(number(p, "c", pw));
        }
        if (kind == "uniform") {
            only_keys(p, pw, {"omega"});
            return WeightModel::uniform(number_or(p, "omega", 1.0, pw));
        }
        if (kind == "beta") {
            only_keys(p, pw, {"a", "b", "omega"});
            return WeightModel::beta(number(p, "a", pw), number(p, "b", pw), number_or(p, "omega", 1.0, pw));
        }
        if (kind == "model_a") {
            only_keys(p, pw, {"omega", "p", "eta"});
            return WeightModel::atom_mixture(number_or(p, "omega", 1.0, pw), number(p, "p", pw),
                                             number(p, "eta", pw));
        }
    } catch (const ValidationError&) {
        throw;
    } catch (const Error& e) {
        throw ValidationError(where + ": " + e.what());
    }
    throw ValidationError(where + ": unknown weight kind '" + kind + "'");
}

std::optional<CorrelationMatrix> parse_correlation(const json& c, std::size_t n) {
    if (c.is_string()) {
        if (c.get<std::string>() != "independent") {
            throw ValidationError("correlation: expected \"independent\" or a matrix");
        }
        return std::nullopt;
    }
    if (!c.is_array()) {
        throw ValidationError("correlation: expected \"independent\" or a matrix");
    }
    std::vector<std::vector<double>> rows;
    for (const auto& row : c) {
        if (!row.is_array()) {
            throw ValidationError("correlation: rows must be arrays");
        }
        std::vector<double> r;
        for (const auto& v : row) {
            if (!v.is_number()) {
                throw ValidationError("correlation: entries must be numbers");
            }
            r.push_back(v.get<double>());
        }
        rows.push_back(std::move(r));
    }
    if (rows.size() != n) {
        throw ValidationError("correlation: matrix size does not match n");
    }
    return CorrelationMatrix(std::move(rows));
}

DiagnosticsConfig parse_diagnostics(const json& d, std::size_t n) {
    only_keys(d, "diagnostics", {"t_grid", "L", "x_values"});
    DiagnosticsConfig cfg;
    if (d.contains("t_grid")) {
        const json& g = d.at("t_grid");
        only_keys(g, "diagnostics.t_grid", {"from", "to", "points"});
        const std::size_t points = count(g, "points", "diagnostics.t_grid");
        try {
            cfg.t_grid = geometric_grid(number(g, "from", "diagnostics.t_grid"), number(g, "to", "diagnostics.t_grid"),
                                        points);
        } catch (const DomainError& e) {
            throw ValidationError(std::string("diagnostics.t_grid: ") + e.what());
        }
    }
    if (d.contains("L")) {
        const json& l = d.at("L");
        only_keys(l, "diagnostics.L", {"default", "pairs"});
        cfg.L_default = number_or(l, "default", 1.0, "diagnostics.L");
        if (l.contains("pairs")) {
            if (!l.at("pairs").is_array()) {
                throw ValidationError("diagnostics.L.pairs: expected an array");
            }
            for (const auto& pr : l.at("pairs")) {
                only_keys(pr, "diagnostics.L.pairs[]", {"i", "j", "L"});
                const std::size_t i = count(pr, "i", "diagnostics.L.pairs[]");
                const std::size_t j = count(pr, "j", "diagnostics.L.pairs[]");
                if (i >= n || j >= n || i == j) {
                    throw ValidationError("diagnostics.L.pairs[]: indices must be distinct and below n");
                }
                cfg.L_pairs[{std::min(i, j), std::max(i, j)}] = number(pr, "L", "diagnostics.L.pairs[]");
            }
        }
    }
    if (d.contains("x_values")) {
        const json& xs = d.at("x_values");
        if (!xs.is_array()) {
            throw ValidationError("diagnostics.x_values: expected an array");
        }
        cfg.x_values.clear();
        for (const auto& x : xs) {
            if (!x.is_number()) {
                throw ValidationError("diagnostics.x_values: entries must be numbers");
            }
            cfg.x_values.push_back(x.get<double>());
        }
    }
    return cfg;
}

} // namespace

ScenarioFile parse_scenario(const std::string& input) {
    json doc;
    try {
        doc = json::parse(input);
    } catch (const json::parse_error& e) {
        throw ValidationError(std::string("scenario is not valid JSON: ") + e.what());
    }
    only_keys(doc, "scenario", {"n", "k", "marginals", "correlation", "weights", "diagnostics"});
    const std::size_t n = count(doc, "n", "scenario");
    const std::size_t k = count(doc, "k", "scenario");
    const json& ms = field(doc, "marginals", "scenario");
    const json& ws = field(doc, "weights", "scenario");
    if (!ms.is_array() || !ws.is_array()) {
        throw ValidationError("scenario: 'marginals' and 'weights' must be arrays");
    }
    if (ms.size() != n) {
        throw ValidationError("scenario: n does not match the number of marginals");
    }
    std::vector<MarginalModel> marginals;
    for (std::size_t i = 0; i < ms.size(); ++i) {
        marginals.push_back(parse_marginal(ms[i], "marginals[" + std::to_string(i) + "]"));
    }
    std::vector<WeightModel> weights;
    for (std::size_t i = 0; i < ws.size(); ++i) {
        weights.push_back(parse_weight(ws[i], "weights[" + std::to_string(i) + "]"));
    }
    const auto corr = parse_correlation(doc.contains("correlation") ? doc.at("correlation") : json("independent"), n);
    std::optional<DiagnosticsConfig> diag;
    if (doc.contains("diagnostics")) {
        diag = parse_diagnostics(doc.at("diagnostics"), n);
    }
    try {
        Scenario sc(k, std::move(marginals), corr, WeightVectorSpec(std::move(weights)));
        if (diag) {
            if (diag->t_grid.empty()) {
                diag->t_grid = default_t_grid(sc);
            }
            diag->validate();
        }
        return ScenarioFile{std::move(sc), std::move(diag)};
    } catch (const ValidationError&) {
        throw;
    } catch (const Error& e) {
        throw ValidationError(std::string("scenario: ") + e.what());
    }
}

ScenarioFile load_scenario(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw ValidationError("cannot read scenario file " + path.string());
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_scenario(buf.str());
}

} // namespace rwtail
