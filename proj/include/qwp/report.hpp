#pragma once

#include <string>
#include <vector>

#include "qwp/fit.hpp"
#include "qwp/theory.hpp"

namespace qwp {

struct SiteReport {
    int m = 0;
    double lambda_theory = 0;
    double gamma_theory = 0;
    double lambda_hat = 0;
    double gamma_hat = 0;
    double lambda_se = 0;
    double gamma_se = 0;
    // Relative when the theory value is non-zero, absolute otherwise.
    double lambda_err = 0;
    double gamma_err = 0;
    double residual_rms = 0;
    double max_rel_dev_asymptote = 0;
    std::string fit_model;
    FitWindow window{};
};

struct ComparisonReport {
    std::string family;
    double rho = 0;
    std::string init;
    int T_max = 0;
    std::vector<SiteReport> sites;
};

/// Fits each exact persistence series (combined model, power fallback) and
/// compares the estimates against the closed-form law.
ComparisonReport compare_report(const TheoryParams& params,
                                const std::string& init_label,
                                const std::vector<PersistenceSeries>& series,
                                const std::vector<FitWindow>& windows);

std::string report_to_json(const ComparisonReport& report);
ComparisonReport report_from_json(const std::string& text);

}  // namespace qwp
