#include "qwp/fit.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace qwp {

namespace {

struct Samples {
    std::vector<double> t;     // step counts
    std::vector<double> logp;  // ln P
};

// P below 1e-300 is excluded so ln P stays representable even when values
// came through the double-precision path.
constexpr double kLogFloor = -690.77552789821368;  // ln(1e-300)

Samples gather(const PersistenceSeries& series, const FitWindow& window) {
    if (window.t_lo >= window.t_hi)
        throw FitError("degenerate fit window");
    if (window.t_lo <= std::abs(series.m))
        throw FitError("fit window must start beyond |m|");
    Samples s;
    const int t_hi = std::min<int>(window.t_hi, static_cast<int>(series.values.size()));
    for (int t = window.t_lo; t <= t_hi; ++t) {
        const double lp = series.log_values[t - 1];
        if (!std::isfinite(lp) || lp < kLogFloor) continue;
        s.t.push_back(static_cast<double>(t));
        s.logp.push_back(lp);
    }
    if (s.t.size() < 20)
        throw FitError("fit window contains fewer than 20 usable points");
    return s;
}

FitResult simple_ols(const Samples& s, bool log_abscissa, FitModel model,
                     const FitWindow& window) {
    const std::size_t n = s.t.size();
    double mx = 0, my = 0;
    std::vector<double> x(n);
    for (std::size_t i = 0; i < n; ++i) {
        x[i] = log_abscissa ? std::log(s.t[i]) : s.t[i];
        mx += x[i];
        my += s.logp[i];
    }
    mx /= n;
    my /= n;
    double sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < n; ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (s.logp[i] - my);
    }
    if (sxx <= 0) throw FitError("degenerate abscissa in fit window");
    const double slope = sxy / sxx;
    const double icept = my - slope * mx;
    double ssr = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const double r = s.logp[i] - (icept + slope * x[i]);
        ssr += r * r;
    }
    const double sigma2 = n > 2 ? ssr / (n - 2) : 0.0;
    FitResult out;
    out.model = model;
    out.intercept = icept;
    out.residual_rms = std::sqrt(ssr / n);
    out.window = window;
    out.points = static_cast<int>(n);
    const double se = std::sqrt(sigma2 / sxx);
    if (model == FitModel::Power) {
        out.lambda_hat = -slope;
        out.lambda_se = se;
    } else {
        out.gamma_hat = -slope;
        out.gamma_se = se;
    }
    return out;
}

}  // namespace

FitResult fit_power(const PersistenceSeries& series, const FitWindow& window) {
    return simple_ols(gather(series, window), true, FitModel::Power, window);
}

FitResult fit_exponential(const PersistenceSeries& series, const FitWindow& window) {
    return simple_ols(gather(series, window), false, FitModel::Exponential, window);
}

FitResult fit_combined(const PersistenceSeries& series, const FitWindow& window) {
    const Samples s = gather(series, window);
    const std::size_t n = s.t.size();
    double m1 = 0, m2 = 0, my = 0;
    for (std::size_t i = 0; i < n; ++i) {
        m1 += std::log(s.t[i]);
        m2 += s.t[i];
        my += s.logp[i];
    }
    m1 /= n;
    m2 /= n;
    my /= n;
    double s11 = 0, s12 = 0, s22 = 0, s1y = 0, s2y = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const double d1 = std::log(s.t[i]) - m1;
        const double d2 = s.t[i] - m2;
        const double dy = s.logp[i] - my;
        s11 += d1 * d1;
        s12 += d1 * d2;
        s22 += d2 * d2;
        s1y += d1 * dy;
        s2y += d2 * dy;
    }
    const double det = s11 * s22 - s12 * s12;
    const double corr2 = s12 * s12 / (s11 * s22);
    if (!(det > 0) || 1.0 - corr2 < 1e-4)
        throw FitError(
            "ln T and T are collinear in this window; widen the fit window");
    const double b1 = (s22 * s1y - s12 * s2y) / det;  // coefficient of ln T
    const double b2 = (s11 * s2y - s12 * s1y) / det;  // coefficient of T
    const double icept = my - b1 * m1 - b2 * m2;
    double ssr = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const double r = s.logp[i] - (icept + b1 * std::log(s.t[i]) + b2 * s.t[i]);
        ssr += r * r;
    }
    const double sigma2 = n > 3 ? ssr / (n - 3) : 0.0;
    FitResult out;
    out.model = FitModel::Combined;
    out.lambda_hat = -b1;
    out.gamma_hat = -b2;
    out.intercept = icept;
    out.residual_rms = std::sqrt(ssr / n);
    out.lambda_se = std::sqrt(sigma2 * s22 / det);
    out.gamma_se = std::sqrt(sigma2 * s11 / det);
    out.window = window;
    out.points = static_cast<int>(n);
    return out;
}

FitWindow default_window(FitModel model, int m, int T_max) {
    int lo = model == FitModel::Exponential ? T_max / 2 : T_max / 100;
    lo = std::max(lo, std::abs(m) + 1);
    return {lo, T_max};
}

}  // namespace qwp
