#pragma once

#include <vector>

#include "qwp/coin.hpp"

namespace qwp {

/// Parameters of every closed-form quantity: the walk family, the coin
/// parameter and the eigenbasis coefficients of the initial coin state
/// (a weighted list for incoherent mixtures).
struct TheoryParams {
    Family family;
    double rho;
    std::vector<std::pair<double, EigenCoeffs>> components;

    static TheoryParams pure(Family family, double rho, const EigenCoeffs& c) {
        return {family, rho, {{1.0, c}}};
    }
    static TheoryParams from_init(const InitialCondition& init, const CoinMatrix& coin);
};

struct AsymptoticLaw {
    int m;
    double lambda;  // power-law exponent
    double gamma;   // per-step decay rate, equal to p_inf(m)
};

/// Weak-limit density w(v) of the rescaled position v = m/t. Returns 0
/// outside the support |v| < rho.
double limit_density(const TheoryParams& params, double v);

/// Geometric ratio Q(rho) governing the spatial decay of the trapping
/// probability.
double trapping_Q(double rho);

/// Trapping probability p_inf(m). Identically 0 for the two-state family.
double trapping_probability(const TheoryParams& params, int m);

/// Sum of p_inf(m) over all integer m, evaluated in closed form via the
/// geometric series in Q^2.
double trapping_total(const TheoryParams& params);

/// Power-law exponent lambda of the persistence decay.
double power_exponent(const TheoryParams& params);

/// Exponential decay constant gamma(m) = p_inf(m), m != 0.
double decay_rate(const TheoryParams& params, int m);

/// Closed-form I_m(T): the integral of (1/t) w(m/t) over [|m|/rho, T].
/// Returns 0 for T <= |m|/rho.
double integral_closed(const TheoryParams& params, int m, double T);

/// Large-T form of I_m(T): lambda*ln(2 rho T/|m|) plus constant terms.
double integral_asymptotic(const TheoryParams& params, int m, double T);

/// Numeric quadrature of I_m(T) to 1e-10 absolute tolerance; independent
/// oracle for integral_closed.
double integral_numeric(const TheoryParams& params, int m, double T);

AsymptoticLaw asymptotic_law(const TheoryParams& params, int m);

/// (T/|m|)^{-lambda} * exp(-gamma(m) T).
double asymptotic_persistence(const TheoryParams& params, int m, double T);

}  // namespace qwp
