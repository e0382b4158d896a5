#include "qwp/persistence.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace qwp {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

void check_series(const ProbabilitySeries& series) {
    if (series.m == 0) throw std::domain_error("site 0 not allowed");
    for (double p : series.values)
        if (!(p >= 0.0) || p > 1.0 + 1e-12)
            throw std::domain_error("probability outside [0,1]");
}

}  // namespace

PersistenceSeries persistence_exact(const ProbabilitySeries& series) {
    check_series(series);
    PersistenceSeries out{series.m, PersistenceMethod::Exact, {}, {}};
    out.values.reserve(series.values.size());
    out.log_values.reserve(series.values.size());
    double log_acc = 0.0;
    for (double p : series.values) {
        if (p >= 1.0)
            log_acc = kNegInf;  // a certain hit zeroes every later value
        else if (log_acc != kNegInf)
            log_acc += std::log1p(-p);
        out.log_values.push_back(log_acc);
        out.values.push_back(std::exp(log_acc));
    }
    return out;
}

PersistenceSeries persistence_log_approx(const ProbabilitySeries& series) {
    check_series(series);
    PersistenceSeries out{series.m, PersistenceMethod::LogApprox, {}, {}};
    out.values.reserve(series.values.size());
    out.log_values.reserve(series.values.size());
    double sum = 0.0;
    for (double p : series.values) {
        sum += p;
        out.log_values.push_back(-sum);
        out.values.push_back(std::exp(-sum));
    }
    return out;
}

PersistenceSeries persistence_density_approx(const TheoryParams& params, int m,
                                             int T_max) {
    if (m == 0) throw std::domain_error("site 0 not allowed");
    if (T_max < 1) throw std::domain_error("T_max must be >= 1");
    PersistenceSeries out{m, PersistenceMethod::DensityApprox, {}, {}};
    out.values.reserve(T_max);
    out.log_values.reserve(T_max);
    const double entry = std::ceil(std::abs(m) / params.rho);
    const double p_inf = trapping_probability(params, m);
    for (int T = 1; T <= T_max; ++T) {
        double expo = integral_closed(params, m, static_cast<double>(T));
        if (params.family == Family::ThreeState && T > entry)
            expo += (T - entry) * p_inf;
        out.log_values.push_back(-expo);
        out.values.push_back(std::exp(-expo));
    }
    return out;
}

PersistenceSeries persistence_ensemble(
    const std::vector<PersistenceSeries>& components,
    const std::vector<double>& weights) {
    if (components.empty() || components.size() != weights.size())
        throw std::invalid_argument("component/weight count mismatch");
    PersistenceSeries out{components[0].m, components[0].method, {}, {}};
    const std::size_t n = components[0].values.size();
    out.values.assign(n, 0.0);
    for (std::size_t k = 0; k < components.size(); ++k) {
        if (components[k].values.size() != n || components[k].m != out.m)
            throw std::invalid_argument("inconsistent component series");
        for (std::size_t i = 0; i < n; ++i)
            out.values[i] += weights[k] * components[k].values[i];
    }
    out.log_values.reserve(n);
    for (double v : out.values) out.log_values.push_back(std::log(v));
    return out;
}

}  // namespace qwp
