#include "rwtail/cli.hpp"

#include "rwtail/aggregation.hpp"
#include "rwtail/asymptotics.hpp"
#include "rwtail/error.hpp"
#include "rwtail/montecarlo.hpp"
#include "rwtail/riskmeasures.hpp"
#include "rwtail/scenario_io.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <memory>
#include <optional>
#include <sstream>

namespace rwtail::cli {

namespace {

std::string num(double v) {
    if (std::isnan(v)) {
        return "nan";
    }
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.9e", v);
    return buf;
}

std::string log_num(double v) { return num(v > 0.0 ? std::log(v) : -INFINITY); }

std::string join_caveats(const std::vector<std::string>& caveats) {
    std::string s;
    for (const auto& c : caveats) {
        if (!s.empty()) {
            s += ';';
        }
        for (char ch : c) {
            s += (ch == ',' || ch == '\n') ? ' ' : ch;
        }
    }
    return s;
}

std::vector<double> parse_grid(const std::string& spec) {
    std::vector<std::string> parts;
    std::stringstream ss(spec);
    for (std::string p; std::getline(ss, p, ':');) {
        parts.push_back(p);
    }
    if (parts.size() != 3) {
        throw ValidationError("--t-grid expects from:to:points");
    }
    try {
        std::size_t used = 0;
        const double from = std::stod(parts[0], &used);
        const double to = std::stod(parts[1]);
        const long points = std::stol(parts[2]);
        if (points < 1) {
            throw ValidationError("--t-grid needs at least one point");
        }
        return geometric_grid(from, to, static_cast<std::size_t>(points));
    } catch (const std::invalid_argument&) {
        throw ValidationError("--t-grid expects numbers in from:to:points");
    } catch (const std::out_of_range&) {
        throw ValidationError("--t-grid value out of range");
    } catch (const DomainError& e) {
        throw ValidationError(std::string("--t-grid: ") + e.what());
    }
}

Method parse_method(const std::string& m) {
    if (m == "crude") {
        return Method::Crude;
    }
    if (m == "conditional") {
        return Method::ConditionalC1;
    }
    if (m == "is") {
        return Method::ImportancePareto;
    }
    throw ValidationError("unknown method '" + m + "'");
}

struct Options {
    std::string scenario;
    std::optional<double> t;
    std::string t_grid;
    std::string method = "conditional";
    std::optional<std::uint64_t> samples;
    std::uint64_t seed = 0;
    unsigned workers = 0;
    std::string out;
    bool quiet = false;
    bool log_space = false;
    std::vector<double> p;
    double rho = 0.0;
};

std::vector<double> t_values(const Options& o, const ScenarioFile* sf) {
    if (o.t) {
        if (!o.t_grid.empty()) {
            throw ValidationError("give either --t or --t-grid");
        }
        return {*o.t};
    }
    if (!o.t_grid.empty()) {
        return parse_grid(o.t_grid);
    }
    if (sf != nullptr && sf->diagnostics && !sf->diagnostics->t_grid.empty()) {
        return sf->diagnostics->t_grid;
    }
    throw ValidationError("need --t or --t-grid");
}

McConfig mc_config(const Options& o, Method m) {
    McConfig cfg;
    cfg.samples = o.samples.value_or(m == Method::Crude ? 1'000'000 : 100'000);
    cfg.seed = o.seed;
    cfg.workers = o.workers > 0 ? o.workers : default_workers();
    return cfg;
}

void approx_cmd(const Options& o, std::ostream& out) {
    const ScenarioFile sf = load_scenario(o.scenario);
    out << "t,approx,formula,lambda_tilde,moment,auxiliary,omega,caveats\n";
    for (double t : t_values(o, &sf)) {
        const ApproxReport r = approx(sf.scenario, t);
        out << num(t) << ',' << (o.log_space ? num(r.log_value) : num(r.value)) << ',' << to_string(r.formula) << ','
            << num(r.lambda_tilde) << ',' << (r.moment ? num(*r.moment) : "") << ','
            << (r.auxiliary ? num(*r.auxiliary) : "") << ',' << num(r.omega) << ',' << join_caveats(r.caveats)
            << '\n';
    }
}

void simulate_cmd(const Options& o, std::ostream& out) {
    const ScenarioFile sf = load_scenario(o.scenario);
    const Method m = parse_method(o.method);
    const McConfig cfg = mc_config(o, m);
    out << "t,estimate,stderr,ci_lo,ci_hi,n_samples,nonzero,method,seed,workers,ess\n";
    for (double t : t_values(o, &sf)) {
        const TailEstimate e = estimate(m, sf.scenario, t, cfg);
        out << num(t) << ',' << (o.log_space ? log_num(e.point) : num(e.point)) << ',' << num(e.std_error) << ','
            << num(e.ci95.lo) << ',' << num(e.ci95.hi) << ',' << e.n_samples << ',' << e.nonzero << ','
            << to_string(e.method) << ',' << e.seed << ',' << e.workers << ',' << (e.ess ? num(*e.ess) : "")
            << '\n';
    }
}

void compare_cmd(const Options& o, std::ostream& out) {
    const ScenarioFile sf = load_scenario(o.scenario);
    const Method m = parse_method(o.method);
    DiagnosticsConfig diag = sf.diagnostics.value_or(DiagnosticsConfig{});
    diag.t_grid = t_values(o, &sf);
    const auto rows = tail_curve(sf.scenario, diag, m, mc_config(o, m));
    out << "t,estimate,stderr,ci_lo,ci_hi,approx,ratio,ratio_ci_lo,ratio_ci_hi,caveats\n";
    for (const auto& r : rows) {
        out << num(r.t) << ',' << (o.log_space ? log_num(r.estimate.point) : num(r.estimate.point)) << ','
            << num(r.estimate.std_error) << ',' << num(r.estimate.ci95.lo) << ',' << num(r.estimate.ci95.hi) << ','
            << (o.log_space ? log_num(r.approx) : num(r.approx)) << ',' << num(r.ratio) << ','
            << num(r.ratio_ci.lo) << ',' << num(r.ratio_ci.hi) << ',' << join_caveats(r.caveats) << '\n';
    }
}

void conditions_cmd(const Options& o, std::ostream& out, std::ostream& err) {
    const ScenarioFile sf = load_scenario(o.scenario);
    DiagnosticsConfig diag = sf.diagnostics.value_or(DiagnosticsConfig{});
    if (o.t || !o.t_grid.empty()) {
        diag.t_grid = t_values(o, nullptr);
    } else if (diag.t_grid.empty()) {
        diag.t_grid = default_t_grid(sf.scenario);
    }
    const ConditionReport r = check_conditions(sf.scenario, diag);
    out << "condition,i,j,x,t,ratio,verdict\n";
    for (const auto& s : r.series) {
        for (std::size_t m = 0; m < s.t.size(); ++m) {
            out << s.condition << ',' << s.i + 1 << ',' << s.j + 1 << ',' << (s.x ? num(*s.x) : "") << ','
                << num(s.t[m]) << ',' << num(s.ratio[m]) << ',' << to_string(s.verdict) << '\n';
        }
    }
    if (!o.quiet) {
        if (r.vacuous) {
            err << "verdict: vacuous (single risk)\n";
        } else {
            err << "verdict: "
                << (r.all_consistent() ? to_string(Verdict::ConsistentWithZero) : to_string(Verdict::NonVanishing))
                << '\n';
        }
    }
}

void risk_cmd(const Options& o, std::ostream& out, std::ostream& err) {
    const ScenarioFile sf = load_scenario(o.scenario);
    if (o.p.empty()) {
        throw ValidationError("risk needs --p");
    }
    std::vector<double> lc_samples;
    const std::uint64_t n = o.samples.value_or(0);
    if (n > 0) {
        const unsigned workers = o.workers > 0 ? o.workers : default_workers();
        lc_samples = sample_lc(sf.scenario, n, o.seed, workers);
    }
    out << "p,var_asymptotic,var_c1x1,es_asymptotic,es_tag,below_guard,var_empirical,es_empirical\n";
    for (double p : o.p) {
        const VarReport v = var_asymptotic(sf.scenario, p);
        std::string es;
        std::string tag;
        if (sf.scenario.mda_class() == MdaClass::Gumbel) {
            const EsReport e = es_asymptotic(sf.scenario, p);
            es = num(e.value);
            tag = e.tag;
        }
        std::string ve;
        std::string ee;
        if (!lc_samples.empty()) {
            ve = num(var_empirical(lc_samples, p));
            ee = num(es_empirical(lc_samples, p));
        }
        if (v.below_guard && !o.quiet) {
            err << "warning: p=" << p << " is below the asymptotic regime guard\n";
        }
        out << num(p) << ',' << num(v.value) << ',' << (v.var_c1x1 ? num(*v.var_c1x1) : "") << ',' << es << ','
            << tag << ',' << (v.below_guard ? "true" : "false") << ',' << ve << ',' << ee << '\n';
    }
}

void validate_cmd(const Options& o, std::ostream& out) {
    const ScenarioFile sf = load_scenario(o.scenario);
    const Scenario& s = sf.scenario;
    out << "ok: n=" << s.n() << " k=" << s.k() << " mda=" << to_string(s.mda_class())
        << " lambda_tilde=" << num(s.lambda().lambda_tilde)
        << " risks=" << (s.independent_risks() ? "independent" : "gaussian-copula") << '\n';
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Tail approximations and simulation for randomly weighted sums of order statistics", "rwtail"};
    app.require_subcommand(1);
    Options o;

    auto scenario_opt = [&](CLI::App* sub) {
        sub->add_option("--scenario", o.scenario, "Scenario JSON file")->required();
    };
    auto t_opts = [&](CLI::App* sub) {
        sub->add_option("--t", o.t, "Single threshold");
        sub->add_option("--t-grid", o.t_grid, "Geometric grid from:to:points");
    };
    auto mc_opts = [&](CLI::App* sub) {
        sub->add_option("--method", o.method, "crude|conditional|is")
            ->check(CLI::IsMember({"crude", "conditional", "is"}));
        sub->add_option("--samples", o.samples, "Monte Carlo sample size");
        sub->add_option("--seed", o.seed, "64-bit seed");
        sub->add_option("--workers", o.workers, "Worker count (default: machine parallelism)");
    };
    auto common = [&](CLI::App* sub) {
        sub->add_option("--out", o.out, "Output file (default standard output)");
        sub->add_flag("--quiet", o.quiet, "Suppress diagnostics on standard error");
    };

    CLI::App* approx_sub = app.add_subcommand("approx", "First-order approximation of P(L(C) > t)");
    scenario_opt(approx_sub);
    t_opts(approx_sub);
    common(approx_sub);
    approx_sub->add_flag("--log-space", o.log_space, "Report natural logs");

    CLI::App* sim = app.add_subcommand("simulate", "Monte Carlo estimate of P(L(C) > t)");
    scenario_opt(sim);
    t_opts(sim);
    mc_opts(sim);
    common(sim);
    sim->add_flag("--log-space", o.log_space, "Report natural logs");

    CLI::App* cmp = app.add_subcommand("compare", "Monte Carlo against the approximation on a t-grid");
    scenario_opt(cmp);
    t_opts(cmp);
    mc_opts(cmp);
    common(cmp);
    cmp->add_flag("--log-space", o.log_space, "Report natural logs for estimate and approx");

    CLI::App* cond = app.add_subcommand("check-conditions", "Asymptotic-independence condition ratios");
    scenario_opt(cond);
    t_opts(cond);
    common(cond);

    CLI::App* risk = app.add_subcommand("risk", "Asymptotic and empirical VaR / ES");
    scenario_opt(risk);
    risk->add_option("--p", o.p, "Levels")->required()->delimiter(',');
    risk->add_option("--samples", o.samples, "Crude samples of L(C) for empirical values (0: skip)");
    risk->add_option("--seed", o.seed, "64-bit seed");
    risk->add_option("--workers", o.workers, "Worker count");
    common(risk);

    CLI::App* eta_sub = app.add_subcommand("eta", "Bivariate lognormal joint-tail constant");
    eta_sub->add_option("--rho", o.rho, "Correlation in (-1, 1)")->required();
    common(eta_sub);

    CLI::App* val = app.add_subcommand("validate-scenario", "Parse and validate a scenario file");
    scenario_opt(val);
    common(val);

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        const auto subs = app.get_subcommands();
        err << (subs.empty() ? app.help() : subs.front()->help());
        return kExitUsage;
    }

    std::ofstream file;
    std::ostream* sink = &out;
    if (!o.out.empty()) {
        file.open(o.out);
        if (!file) {
            err << "error: cannot open " << o.out << "\n";
            return kExitValidation;
        }
        sink = &file;
    }

    try {
        if (approx_sub->parsed()) {
            approx_cmd(o, *sink);
        } else if (sim->parsed()) {
            simulate_cmd(o, *sink);
        } else if (cmp->parsed()) {
            compare_cmd(o, *sink);
        } else if (cond->parsed()) {
            conditions_cmd(o, *sink, err);
        } else if (risk->parsed()) {
            risk_cmd(o, *sink, err);
        } else if (eta_sub->parsed()) {
            char buf[64];
            std::snprintf(buf, sizeof buf, "%.10g", eta(o.rho));
            *sink << buf << '\n';
        } else if (val->parsed()) {
            validate_cmd(o, *sink);
        }
    } catch (const NumericError& e) {
        err << "numeric error: " << e.what() << " (achieved tolerance " << e.achieved_tolerance() << ")\n";
        return kExitNumeric;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return kExitValidation;
    }
    return kExitOk;
}

} // namespace rwtail::cli
