#include "qwp/report.hpp"

#include <cmath>
#include <json.hpp>

namespace qwp {

namespace {

const char* model_name(FitModel m) {
    switch (m) {
        case FitModel::Power: return "power";
        case FitModel::Exponential: return "exponential";
        default: return "combined";
    }
}

}  // namespace

ComparisonReport compare_report(const TheoryParams& params,
                                const std::string& init_label,
                                const std::vector<PersistenceSeries>& series,
                                const std::vector<FitWindow>& windows) {
    if (series.size() != windows.size())
        throw std::invalid_argument("one window per series required");
    ComparisonReport report;
    report.family = params.family == Family::TwoState ? "two" : "three";
    report.rho = params.rho;
    report.init = init_label;
    for (std::size_t i = 0; i < series.size(); ++i) {
        const PersistenceSeries& s = series[i];
        report.T_max = std::max<int>(report.T_max, static_cast<int>(s.values.size()));
        SiteReport site;
        site.m = s.m;
        site.lambda_theory = power_exponent(params);
        site.gamma_theory = decay_rate(params, s.m);
        FitResult fit;
        try {
            fit = fit_combined(s, windows[i]);
        } catch (const FitError&) {
            fit = fit_power(s, windows[i]);
        }
        site.lambda_hat = fit.lambda_hat;
        site.gamma_hat = fit.gamma_hat;
        site.lambda_se = fit.lambda_se;
        site.gamma_se = fit.gamma_se;
        site.residual_rms = fit.residual_rms;
        site.fit_model = model_name(fit.model);
        site.window = fit.window;
        site.lambda_err = site.lambda_theory != 0.0
                              ? std::abs(site.lambda_hat - site.lambda_theory) /
                                    site.lambda_theory
                              : std::abs(site.lambda_hat);
        site.gamma_err = site.gamma_theory != 0.0
                             ? std::abs(site.gamma_hat - site.gamma_theory) /
                                   site.gamma_theory
                             : std::abs(site.gamma_hat);
        double max_dev = 0;
        const int t_hi =
            std::min<int>(windows[i].t_hi, static_cast<int>(s.values.size()));
        for (int t = windows[i].t_lo; t <= t_hi; ++t) {
            const double th = asymptotic_persistence(params, s.m, t);
            if (th <= 0) continue;
            max_dev = std::max(max_dev, std::abs(s.values[t - 1] - th) / th);
        }
        site.max_rel_dev_asymptote = max_dev;
        report.sites.push_back(site);
    }
    return report;
}

std::string report_to_json(const ComparisonReport& report) {
    nlohmann::ordered_json j;
    j["family"] = report.family;
    j["rho"] = report.rho;
    j["init"] = report.init;
    j["T_max"] = report.T_max;
    j["sites"] = nlohmann::ordered_json::array();
    for (const SiteReport& s : report.sites) {
        nlohmann::ordered_json js;
        js["m"] = s.m;
        js["lambda_theory"] = s.lambda_theory;
        js["gamma_theory"] = s.gamma_theory;
        js["lambda_hat"] = s.lambda_hat;
        js["gamma_hat"] = s.gamma_hat;
        js["lambda_se"] = s.lambda_se;
        js["gamma_se"] = s.gamma_se;
        js["lambda_err"] = s.lambda_err;
        js["gamma_err"] = s.gamma_err;
        js["residual_rms"] = s.residual_rms;
        js["max_rel_dev_asymptote"] = s.max_rel_dev_asymptote;
        js["fit_model"] = s.fit_model;
        js["window"] = {s.window.t_lo, s.window.t_hi};
        j["sites"].push_back(js);
    }
    return j.dump(2) + "\n";
}

ComparisonReport report_from_json(const std::string& text) {
    const auto j = nlohmann::json::parse(text);
    ComparisonReport report;
    report.family = j.at("family").get<std::string>();
    report.rho = j.at("rho").get<double>();
    report.init = j.at("init").get<std::string>();
    report.T_max = j.at("T_max").get<int>();
    for (const auto& js : j.at("sites")) {
        SiteReport s;
        s.m = js.at("m").get<int>();
        s.lambda_theory = js.at("lambda_theory").get<double>();
        s.gamma_theory = js.at("gamma_theory").get<double>();
        s.lambda_hat = js.at("lambda_hat").get<double>();
        s.gamma_hat = js.at("gamma_hat").get<double>();
        s.lambda_se = js.at("lambda_se").get<double>();
        s.gamma_se = js.at("gamma_se").get<double>();
        s.lambda_err = js.at("lambda_err").get<double>();
        s.gamma_err = js.at("gamma_err").get<double>();
        s.residual_rms = js.at("residual_rms").get<double>();
        s.max_rel_dev_asymptote = js.at("max_rel_dev_asymptote").get<double>();
        s.fit_model = js.at("fit_model").get<std::string>();
        s.window = {js.at("window")[0].get<int>(), js.at("window")[1].get<int>()};
        report.sites.push_back(s);
    }
    return report;
}

}  // namespace qwp
