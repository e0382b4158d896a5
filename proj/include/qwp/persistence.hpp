#pragma once

#include <vector>

#include "qwp/theory.hpp"
#include "qwp/walk.hpp"

namespace qwp {

enum class PersistenceMethod { Exact, LogApprox, DensityApprox };

/// P_m(T) for T = 1..T_max (values[T-1]). log_values carries the exact
/// accumulated logarithm so large-T tails survive double underflow.
struct PersistenceSeries {
    int m;
    PersistenceMethod method;
    std::vector<double> values;
    std::vector<double> log_values;
};

/// Running product of (1 - p(m,t)), accumulated in log space.
PersistenceSeries persistence_exact(const ProbabilitySeries& series);

/// First-order approximation exp(-sum of p(m,t)).
PersistenceSeries persistence_log_approx(const ProbabilitySeries& series);

/// Density-integral approximation: exp(-I_m(T)) for the two-state family,
/// with the trapping term (T - ceil(|m|/rho)) p_inf(m) added for three-state.
PersistenceSeries persistence_density_approx(const TheoryParams& params, int m,
                                             int T_max);

/// Ensemble reading of a mixture: weighted average of the component
/// persistences (the per-run reading multiplies averaged probabilities and
/// is what persistence_exact on a mixture ProbabilitySeries computes).
PersistenceSeries persistence_ensemble(
    const std::vector<PersistenceSeries>& components,
    const std::vector<double>& weights);

}  // namespace qwp
