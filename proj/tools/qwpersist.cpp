// qwpersist: command-line front end. Subcommands: simulate, persist, theory,
// fit, compare. CSV for series, JSON for reports; every output starts with a
// comment line recording the tool version and the invocation for
// reproducibility. Exit codes: 0 success, 2 usage/domain error, 3 numeric or
// fit failure.

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "qwp/fit.hpp"
#include "qwp/initspec.hpp"
#include "qwp/persistence.hpp"
#include "qwp/quadrature.hpp"
#include "qwp/report.hpp"
#include "qwp/theory.hpp"
#include "qwp/walk.hpp"

using namespace qwp;

namespace {

constexpr const char* kVersion = "1.0.0";

std::string g_invocation;  // argv joined, echoed into output headers
std::string g_out;         // --out path ("" = stdout)

std::string fmt17(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

std::string header() {
    return "# qwpersist " + std::string(kVersion) + " | " + g_invocation + "\n";
}

void emit(const std::string& text) {
    if (g_out.empty()) {
        std::fwrite(text.data(), 1, text.size(), stdout);
        return;
    }
    std::string path = g_out;
    const char* dir = std::getenv("QWPERSIST_OUT");
    if (dir && *dir && path.front() != '/') path = std::string(dir) + "/" + path;
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::invalid_argument("cannot open output file: " + path);
    f << text;
}

Family parse_family(const std::string& walk) {
    if (walk == "two") return Family::TwoState;
    if (walk == "three") return Family::ThreeState;
    throw std::domain_error("--walk must be 'two' or 'three'");
}

struct CommonArgs {
    std::string walk;  // empty = infer from the init spec
    std::string rho_text;
    std::string init_text;
};

// Family from --walk, or guessed from the init spec when --walk is absent.
Family family_of(const CommonArgs& a) {
    if (!a.walk.empty()) return parse_family(a.walk);
    const std::string& s = a.init_text;
    if (s.find("sigma") != std::string::npos ||
        s.find("asym") != std::string::npos || s == "S")
        return Family::ThreeState;
    if (std::count(s.begin(), s.end(), ';') == 2) return Family::ThreeState;
    return Family::TwoState;
}

void add_out(CLI::App* cmd) {
    cmd->add_option("--out", g_out,
                    "output file (default stdout); relative paths resolve "
                    "under $QWPERSIST_OUT when set");
}

void add_common(CLI::App* cmd, CommonArgs& a, bool need_init) {
    cmd->add_option("--walk", a.walk, "coin family: two | three (default: inferred from --init)");
    cmd->add_option("--rho", a.rho_text, "coin parameter in (0,1); also 1/sqrt2, 1/sqrt3")
        ->required();
    auto* init = cmd->add_option("--init", a.init_text, "initial coin state spec");
    if (need_init) init->required();
    add_out(cmd);
}

// ---------------------------------------------------------------- simulate

void run_simulate(const CommonArgs& a, int steps) {
    const Family fam = family_of(a);
    auto coin = make_coin(fam, parse_rho(a.rho_text));
    auto ic = parse_init(a.init_text, coin);
    auto params = TheoryParams::from_init(ic, coin);
    auto comps = evolve(ic, coin, steps);
    auto dist = distribution(comps, ic);

    std::ostringstream out;
    out << header();
    out << "m,p_exact,w_scaled";
    if (fam == Family::ThreeState) out << ",p_trap";
    out << "\n";
    const int span = steps;
    for (int m = -span; m <= span; ++m) {
        double w = 0.0;
        if (steps > 0) {
            w = limit_density(params, static_cast<double>(m) / steps) / steps;
            if (fam == Family::TwoState)
                w = ((m + steps) % 2 == 0) ? 2.0 * w : 0.0;
        }
        out << m << ',' << fmt17(dist.at(m)) << ',' << fmt17(w);
        if (fam == Family::ThreeState)
            out << ',' << fmt17(trapping_probability(params, m));
        out << "\n";
    }
    emit(out.str());
}

// ----------------------------------------------------------------- persist

void run_persist(const CommonArgs& a, const std::vector<int>& sites, int steps,
                 const std::vector<std::string>& methods,
                 const std::string& mixture_mode) {
    const Family fam = family_of(a);
    auto coin = make_coin(fam, parse_rho(a.rho_text));
    auto ic = parse_init(a.init_text, coin);
    auto params = TheoryParams::from_init(ic, coin);
    for (int m : sites)
        if (m == 0) throw std::domain_error("site 0 not allowed: the walk starts at the origin");
    if (mixture_mode != "per-run" && mixture_mode != "ensemble")
        throw std::domain_error("--mixture-mode must be 'per-run' or 'ensemble'");

    // measured series are needed unless only closed forms were requested
    bool need_sim = false;
    for (const auto& method : methods)
        if (method == "exact" || method == "log_approx") need_sim = true;

    std::vector<std::vector<PersistenceSeries>> columns;  // [site][method]
    std::vector<ProbabilitySeries> measured;
    std::vector<std::vector<ProbabilitySeries>> per_component;
    if (need_sim) {
        if (mixture_mode == "ensemble" && ic.components.size() > 1) {
            for (const auto& comp : ic.components)
                per_component.push_back(probability_series(
                    InitialCondition::pure(comp.second), coin, sites, steps));
        } else {
            measured = probability_series(ic, coin, sites, steps);
        }
    }
    for (std::size_t si = 0; si < sites.size(); ++si) {
        columns.emplace_back();
        for (const auto& method : methods) {
            if (method == "exact" || method == "log_approx") {
                auto apply = method == "exact" ? persistence_exact
                                               : persistence_log_approx;
                if (!per_component.empty()) {
                    std::vector<PersistenceSeries> parts;
                    std::vector<double> weights;
                    for (std::size_t k = 0; k < per_component.size(); ++k) {
                        parts.push_back(apply(per_component[k][si]));
                        weights.push_back(ic.components[k].first);
                    }
                    columns.back().push_back(persistence_ensemble(parts, weights));
                } else {
                    columns.back().push_back(apply(measured[si]));
                }
            } else if (method == "density_approx") {
                columns.back().push_back(
                    persistence_density_approx(params, sites[si], steps));
            } else if (method == "theory_asymptote") {
                PersistenceSeries s{sites[si], PersistenceMethod::DensityApprox, {}, {}};
                for (int T = 1; T <= steps; ++T) {
                    const double v = asymptotic_persistence(params, sites[si], T);
                    s.values.push_back(v);
                    s.log_values.push_back(std::log(v));
                }
                columns.back().push_back(std::move(s));
            } else {
                throw std::domain_error("unknown method: " + method);
            }
        }
    }

    std::ostringstream out;
    out << header() << "T";
    for (std::size_t si = 0; si < sites.size(); ++si)
        for (const auto& method : methods)
            out << ",m" << sites[si] << "_" << method;
    out << "\n";
    for (int T = 1; T <= steps; ++T) {
        out << T;
        for (const auto& site_cols : columns)
            for (const auto& s : site_cols) out << ',' << fmt17(s.values[T - 1]);
        out << "\n";
    }
    emit(out.str());
}

// ------------------------------------------------------------------ theory

TheoryParams theory_params(const CommonArgs& a, const CoinMatrix& coin) {
    std::string init = a.init_text;
    if (init.empty())
        init = coin.dim == 2 ? "sym2" : "sigma+";
    return TheoryParams::from_init(parse_init(init, coin), coin);
}

void run_theory_density(const CommonArgs& a, int points) {
    auto coin = make_coin(family_of(a), parse_rho(a.rho_text));
    auto params = theory_params(a, coin);
    if (points < 2) throw std::domain_error("--points must be at least 2");
    std::ostringstream out;
    out << header() << "v,w\n";
    for (int k = 0; k < points; ++k) {
        const double v = -0.999 * coin.rho +
                         1.998 * coin.rho * k / (points - 1);
        out << fmt17(v) << ',' << fmt17(limit_density(params, v)) << "\n";
    }
    emit(out.str());
}

void run_theory_scalar(const CommonArgs& a, double value) {
    std::ostringstream out;
    out << header() << fmt17(value) << "\n";
    emit(out.str());
}

void run_theory_integral(const CommonArgs& a, int m, double T) {
    auto coin = make_coin(family_of(a), parse_rho(a.rho_text));
    auto params = theory_params(a, coin);
    std::ostringstream out;
    out << header() << "closed,asymptotic,numeric\n";
    out << fmt17(integral_closed(params, m, T)) << ','
        << fmt17(integral_asymptotic(params, m, T)) << ','
        << fmt17(integral_numeric(params, m, T)) << "\n";
    emit(out.str());
}

// --------------------------------------------------------------------- fit

struct CsvSeries {
    std::vector<std::string> names;
    std::vector<std::vector<double>> cols;  // cols[i] parallel to names
};

CsvSeries read_persist_csv(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw std::invalid_argument("cannot open input file: " + path);
    CsvSeries csv;
    std::string line;
    bool have_header = false;
    int lineno = 0;
    while (std::getline(f, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        std::stringstream ss(line);
        std::string cell;
        if (!have_header) {
            while (std::getline(ss, cell, ',')) csv.names.push_back(cell);
            if (csv.names.size() < 2)
                throw std::invalid_argument("malformed CSV: need at least two columns");
            csv.cols.resize(csv.names.size());
            have_header = true;
            continue;
        }
        std::size_t i = 0;
        while (std::getline(ss, cell, ',')) {
            if (i >= csv.cols.size())
                throw std::invalid_argument("malformed CSV: extra cell on line " +
                                            std::to_string(lineno));
            std::size_t pos = 0;
            double v;
            try {
                v = std::stod(cell, &pos);
            } catch (const std::exception&) {
                throw std::invalid_argument("malformed CSV: bad number on line " +
                                            std::to_string(lineno));
            }
            if (pos != cell.size())
                throw std::invalid_argument("malformed CSV: bad number on line " +
                                            std::to_string(lineno));
            csv.cols[i++].push_back(v);
        }
        if (i != csv.cols.size())
            throw std::invalid_argument("malformed CSV: missing cell on line " +
                                        std::to_string(lineno));
    }
    if (!have_header || csv.cols[0].empty())
        throw std::invalid_argument("malformed CSV: no data rows");
    return csv;
}

void run_fit(const std::string& input, const std::string& column,
             const std::string& model, const std::vector<int>& window_arg) {
    auto csv = read_persist_csv(input);
    std::size_t ci = 1;
    if (!column.empty()) {
        ci = csv.names.size();
        for (std::size_t i = 0; i < csv.names.size(); ++i)
            if (csv.names[i] == column) ci = i;
        if (ci == csv.names.size())
            throw std::invalid_argument("no column named '" + column + "'");
    } else if (csv.names.size() != 2) {
        throw std::invalid_argument("multiple data columns; pick one with --column");
    }

    // site index encoded in the column name, e.g. m-2_exact
    int m = 1;
    const std::string& name = csv.names[ci];
    if (name.size() > 1 && name[0] == 'm') {
        try {
            m = std::stoi(name.substr(1));
        } catch (const std::exception&) {
        }
    }

    PersistenceSeries series{m, PersistenceMethod::Exact, {}, {}};
    const int T_max = static_cast<int>(csv.cols[0].size());
    for (int T = 1; T <= T_max; ++T) {
        if (csv.cols[0][T - 1] != T)
            throw std::invalid_argument("first column must be T = 1,2,...");
        const double v = csv.cols[ci][T - 1];
        series.values.push_back(v);
        series.log_values.push_back(std::log(v));
    }

    FitModel fm;
    if (model == "power") fm = FitModel::Power;
    else if (model == "exp") fm = FitModel::Exponential;
    else if (model == "combined") fm = FitModel::Combined;
    else throw std::domain_error("--model must be power, exp or combined");

    FitWindow window = default_window(fm, m, T_max);
    if (!window_arg.empty()) window = {window_arg[0], window_arg[1]};

    FitResult r;
    switch (fm) {
        case FitModel::Power: r = fit_power(series, window); break;
        case FitModel::Exponential: r = fit_exponential(series, window); break;
        case FitModel::Combined: r = fit_combined(series, window); break;
    }

    nlohmann::ordered_json j;
    j["model"] = model;
    j["m"] = m;
    j["lambda_hat"] = r.lambda_hat;
    j["gamma_hat"] = r.gamma_hat;
    j["intercept"] = r.intercept;
    j["residual_rms"] = r.residual_rms;
    j["lambda_se"] = r.lambda_se;
    j["gamma_se"] = r.gamma_se;
    j["window"] = {{"t_lo", r.window.t_lo}, {"t_hi", r.window.t_hi}};
    j["points"] = r.points;
    emit(j.dump(2) + "\n");
}

// ----------------------------------------------------------------- compare

void run_compare(const CommonArgs& a, const std::vector<int>& sites, int steps,
                 const std::vector<int>& window_arg) {
    const Family fam = family_of(a);
    auto coin = make_coin(fam, parse_rho(a.rho_text));
    auto ic = parse_init(a.init_text, coin);
    auto params = TheoryParams::from_init(ic, coin);
    for (int m : sites)
        if (m == 0) throw std::domain_error("site 0 not allowed: the walk starts at the origin");
    auto ps = probability_series(ic, coin, sites, steps);
    std::vector<PersistenceSeries> series;
    std::vector<FitWindow> windows;
    for (std::size_t i = 0; i < sites.size(); ++i) {
        series.push_back(persistence_exact(ps[i]));
        windows.push_back(window_arg.empty()
                              ? default_window(FitModel::Power, sites[i], steps)
                              : FitWindow{window_arg[0], window_arg[1]});
    }
    auto report = compare_report(params, a.init_text, series, windows);
    report.T_max = steps;
    emit(report_to_json(report));
}

}  // namespace

int main(int argc, char** argv) {
    for (int i = 1; i < argc; ++i) {
        if (i > 1) g_invocation += ' ';
        g_invocation += argv[i];
    }

    CLI::App app{"coined quantum walks on the line: persistence of unvisited sites"};
    app.set_version_flag("--version", std::string("qwpersist ") + kVersion);
    app.require_subcommand(1);

    CommonArgs sim_args;
    int sim_steps = 100;
    auto* sim = app.add_subcommand("simulate", "position distribution after a fixed number of steps");
    add_common(sim, sim_args, true);
    sim->add_option("--steps", sim_steps, "number of steps")->check(CLI::NonNegativeNumber);

    CommonArgs per_args;
    std::vector<int> per_sites;
    int per_steps = 1000;
    std::vector<std::string> per_methods{"exact"};
    std::string per_mix = "per-run";
    auto* per = app.add_subcommand("persist", "persistence series for a list of sites");
    add_common(per, per_args, true);
    per->add_option("--sites", per_sites, "comma-separated site list (no 0)")
        ->required()->delimiter(',');
    per->add_option("--steps", per_steps, "horizon T_max")->check(CLI::PositiveNumber);
    per->add_option("--methods", per_methods,
                    "exact | log_approx | density_approx | theory_asymptote")
        ->delimiter(',');
    per->add_option("--mixture-mode", per_mix, "per-run | ensemble");

    auto* theory = app.add_subcommand("theory", "closed-form quantities");
    theory->require_subcommand(1);
    CommonArgs th_args;
    int th_m = 2, th_points = 201;
    double th_T = 100.0;
    auto* density = theory->add_subcommand("density", "limit density w(v) on a grid");
    add_common(density, th_args, false);
    density->add_option("--points", th_points, "grid size");
    auto* trap = theory->add_subcommand("trap", "trapping probability p_inf(m)");
    add_common(trap, th_args, false);
    trap->add_option("--m", th_m, "site");
    auto* lambda = theory->add_subcommand("lambda", "power-law exponent");
    add_common(lambda, th_args, false);
    auto* gamma = theory->add_subcommand("gamma", "exponential decay rate at a site");
    add_common(gamma, th_args, false);
    gamma->add_option("--m", th_m, "site");
    auto* integral = theory->add_subcommand("integral",
                                            "density integral: closed, asymptotic, numeric");
    add_common(integral, th_args, false);
    integral->add_option("--m", th_m, "site");
    integral->add_option("--T", th_T, "horizon");

    std::string fit_input, fit_column, fit_model = "power";
    std::vector<int> fit_window;
    auto* fit = app.add_subcommand("fit", "fit a persistence CSV column");
    add_out(fit);
    fit->add_option("--input", fit_input, "CSV produced by 'persist'")->required();
    fit->add_option("--column", fit_column, "column name, e.g. m2_exact");
    fit->add_option("--model", fit_model, "power | exp | combined");
    fit->add_option("--window", fit_window, "fit window t_lo,t_hi")
        ->delimiter(',')->expected(2);

    CommonArgs cmp_args;
    std::vector<int> cmp_sites;
    int cmp_steps = 1000;
    std::vector<int> cmp_window;
    auto* cmp = app.add_subcommand("compare", "simulate, fit and compare against theory");
    add_common(cmp, cmp_args, true);
    cmp->add_option("--sites", cmp_sites, "comma-separated site list (no 0)")
        ->required()->delimiter(',');
    cmp->add_option("--steps", cmp_steps, "horizon T_max")->check(CLI::PositiveNumber);
    cmp->add_option("--window", cmp_window, "fit window t_lo,t_hi")
        ->delimiter(',')->expected(2);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (sim->parsed()) {
            run_simulate(sim_args, sim_steps);
        } else if (per->parsed()) {
            run_persist(per_args, per_sites, per_steps, per_methods, per_mix);
        } else if (theory->parsed()) {
            if (density->parsed()) {
                run_theory_density(th_args, th_points);
            } else {
                auto coin = make_coin(family_of(th_args),
                                      parse_rho(th_args.rho_text));
                auto params = theory_params(th_args, coin);
                if (trap->parsed())
                    run_theory_scalar(th_args, trapping_probability(params, th_m));
                else if (lambda->parsed())
                    run_theory_scalar(th_args, power_exponent(params));
                else if (gamma->parsed())
                    run_theory_scalar(th_args, decay_rate(params, th_m));
                else
                    run_theory_integral(th_args, th_m, th_T);
            }
        } else if (fit->parsed()) {
            run_fit(fit_input, fit_column, fit_model, fit_window);
        } else if (cmp->parsed()) {
            run_compare(cmp_args, cmp_sites, cmp_steps, cmp_window);
        }
    } catch (const FitError& e) {
        std::cerr << "fit error: " << e.what() << "\n";
        return 3;
    } catch (const QuadratureError& e) {
        std::cerr << "numeric error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
