#pragma once

#include <stdexcept>
#include <string>

#include "qwp/persistence.hpp"

namespace qwp {

struct FitError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct FitWindow {
    int t_lo;
    int t_hi;
};

enum class FitModel { Power, Exponential, Combined };

struct FitResult {
    FitModel model;
    double lambda_hat = 0;  // power-law exponent estimate
    double gamma_hat = 0;   // exponential rate estimate
    double intercept = 0;
    double residual_rms = 0;
    double lambda_se = 0;
    double gamma_se = 0;
    FitWindow window{};
    int points = 0;
};

/// OLS of ln P on ln T; lambda_hat = -slope.
FitResult fit_power(const PersistenceSeries& series, const FitWindow& window);

/// OLS of ln P on T; gamma_hat = -slope.
FitResult fit_exponential(const PersistenceSeries& series, const FitWindow& window);

/// Two-regressor OLS: ln P = c - lambda ln T - gamma T. Throws FitError when
/// the window is too narrow to separate ln T from T.
FitResult fit_combined(const PersistenceSeries& series, const FitWindow& window);

/// Default windows: [T_max/100, T_max] for power/combined fits,
/// [T_max/2, T_max] for exponential fits.
FitWindow default_window(FitModel model, int m, int T_max);

}  // namespace qwp
