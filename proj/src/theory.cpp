#include "qwp/theory.hpp"

#include <cmath>

#include "qwp/quadrature.hpp"

namespace qwp {

namespace {

constexpr double kPi = 3.14159265358979323846;

// Coefficients of the even/odd/quadratic structure shared by both limit
// densities: w(v) = s * (a0 + a1*v/rho + a2*(v/rho)^2) / (pi (1-v^2) sqrt(rho^2-v^2)).
struct DensityPoly {
    double a0, a1, a2;
};

DensityPoly density_poly(Family family, const EigenCoeffs& c) {
    if (family == Family::TwoState) {
        const auto& d = std::get<EigenDecomp2>(c);
        return {1.0, -(2.0 * std::norm(d.h_plus) - 1.0), 0.0};
    }
    const auto& d = std::get<EigenDecomp3>(c);
    const double cross = 2.0 * std::real(std::conj(d.g_1) * d.g_2);
    return {1.0 - std::norm(d.g_2), -cross, std::norm(d.g_2) - std::norm(d.g_plus)};
}

double clamped_root(double radicand) {
    if (radicand < 0) {
        if (radicand < -1e-12) throw std::domain_error("negative radicand");
        return 0.0;
    }
    return std::sqrt(radicand);
}

double sgn(int m) { return m > 0 ? 1.0 : (m < 0 ? -1.0 : 0.0); }

double component_integral_closed(Family family, double rho, const EigenCoeffs& c,
                                 int m, double T) {
    const double u0 = std::abs(m) / (rho * T);
    if (u0 >= 1.0) return 0.0;
    const double s = std::sqrt(1.0 - rho * rho);
    const double S = clamped_root(1.0 - u0 * u0);
    const double A = s / (rho * kPi);
    const DensityPoly p = density_poly(family, c);
    if (family == Family::TwoState) {
        const double lam = -p.a1;  // 2|h+|^2 - 1
        return A * std::log((1.0 + S) / u0) + std::atan2(rho * S, s) / kPi +
               sgn(m) * lam / rho * (std::atan2(u0 * s, S) / kPi - 0.5);
    }
    const double a2 = p.a0;      // 1 - |g2|^2
    const double b = -p.a1;      // g1 conj(g2) + conj(g1) g2
    const double cc = p.a2;      // |g2|^2 - |g+|^2
    const double x = u0 * u0;
    const double num = 2.0 * rho * s * S;
    const double den = (2.0 - x) * rho * rho - 1.0;
    // atan2 branch chosen so the arctan term is continuous in T and vanishes
    // at T = |m|/rho; the den factor crosses zero for rho > 1/sqrt(2).
    double val = A * a2 * (-std::log(u0) + std::log1p(S));
    val -= a2 / (2.0 * kPi) * (std::atan2(num, den) - kPi);
    val += cc / (kPi * rho * rho) * std::atan(rho * S / s);
    val -= sgn(m) * b / (2.0 * kPi * rho) * (kPi - 2.0 * std::atan2(u0 * s, S));
    return val;
}

double component_integral_asymptotic(Family family, double rho, const EigenCoeffs& c,
                                     int m, double T) {
    const double u0 = std::abs(m) / (rho * T);
    const double s = std::sqrt(1.0 - rho * rho);
    const double A = s / (rho * kPi);
    const DensityPoly p = density_poly(family, c);
    if (family == Family::TwoState) {
        const double lam = -p.a1;
        return A * std::log(2.0 / u0) + std::asin(rho) / kPi -
               sgn(m) * lam / (2.0 * rho);
    }
    const double a2 = p.a0;
    const double b = -p.a1;
    const double cc = p.a2;
    double val = A * a2 * std::log(2.0 / u0);
    val += a2 / (2.0 * kPi) *
           (kPi - std::atan2(2.0 * rho * s, 2.0 * rho * rho - 1.0));
    val += cc / (kPi * rho * rho) * std::atan(rho / s);
    val -= sgn(m) * b / (2.0 * rho);
    return val;
}

double component_trapping(Family family, double rho, const EigenCoeffs& c, int m) {
    if (family == Family::TwoState) return 0.0;
    const auto& d = std::get<EigenDecomp3>(c);
    const double Q = trapping_Q(rho);
    const double r2 = rho * rho;
    if (m == 0)
        return Q / r2 * (std::norm(d.g_plus) + (1.0 - r2) * std::norm(d.g_2));
    const double pref = (2.0 - 2.0 * r2) / (r2 * r2) * std::pow(Q, 2.0 * std::abs(m));
    if (m > 0) return pref * std::norm(d.g_plus + d.g_2);
    return pref * std::norm(d.g_plus - d.g_2);
}

template <typename F>
double weighted(const TheoryParams& params, F&& f) {
    double acc = 0;
    for (const auto& [w, c] : params.components) acc += w * f(c);
    return acc;
}

}  // namespace

TheoryParams TheoryParams::from_init(const InitialCondition& init,
                                     const CoinMatrix& coin) {
    validate_initial_condition(init, coin.dim);
    TheoryParams p{coin.family, coin.rho, {}};
    for (const auto& [w, v] : init.components)
        p.components.push_back({w, decompose(v, coin)});
    return p;
}

double limit_density(const TheoryParams& params, double v) {
    const double rho = params.rho;
    if (std::abs(v) >= rho) return 0.0;
    const double s = std::sqrt(1.0 - rho * rho);
    const double u = v / rho;
    return weighted(params, [&](const EigenCoeffs& c) {
        const DensityPoly p = density_poly(params.family, c);
        const double poly = p.a0 + p.a1 * u + p.a2 * u * u;
        return s * poly / (kPi * (1.0 - v * v) * std::sqrt(rho * rho - v * v));
    });
}

double trapping_Q(double rho) {
    if (!(rho > 0.0 && rho < 1.0))
        throw std::domain_error("rho must lie in (0,1)");
    const double r2 = rho * rho;
    return (2.0 - r2 - 2.0 * std::sqrt(1.0 - r2)) / r2;
}

double trapping_probability(const TheoryParams& params, int m) {
    return weighted(params, [&](const EigenCoeffs& c) {
        return component_trapping(params.family, params.rho, c, m);
    });
}

double trapping_total(const TheoryParams& params) {
    if (params.family == Family::TwoState) return 0.0;
    const double rho = params.rho;
    const double r2 = rho * rho;
    const double Q = trapping_Q(rho);
    const double geom = Q * Q / (1.0 - Q * Q);
    return weighted(params, [&](const EigenCoeffs& c) {
        const auto& d = std::get<EigenDecomp3>(c);
        const double sides = std::norm(d.g_plus + d.g_2) + std::norm(d.g_plus - d.g_2);
        return (2.0 - 2.0 * r2) / (r2 * r2) * geom * sides +
               Q / r2 * (std::norm(d.g_plus) + (1.0 - r2) * std::norm(d.g_2));
    });
}

double power_exponent(const TheoryParams& params) {
    const double rho = params.rho;
    const double pref = std::sqrt(1.0 - rho * rho) / (rho * kPi);
    if (params.family == Family::TwoState) return pref;
    return pref * weighted(params, [](const EigenCoeffs& c) {
               return 1.0 - std::norm(std::get<EigenDecomp3>(c).g_2);
           });
}

double decay_rate(const TheoryParams& params, int m) {
    if (m == 0) throw std::domain_error("decay rate undefined at the origin");
    return trapping_probability(params, m);
}

double integral_closed(const TheoryParams& params, int m, double T) {
    if (m == 0) throw std::domain_error("site 0 not allowed");
    return weighted(params, [&](const EigenCoeffs& c) {
        return component_integral_closed(params.family, params.rho, c, m, T);
    });
}

double integral_asymptotic(const TheoryParams& params, int m, double T) {
    if (m == 0) throw std::domain_error("site 0 not allowed");
    return weighted(params, [&](const EigenCoeffs& c) {
        return component_integral_asymptotic(params.family, params.rho, c, m, T);
    });
}

double integral_numeric(const TheoryParams& params, int m, double T) {
    if (m == 0) throw std::domain_error("site 0 not allowed");
    const double rho = params.rho;
    const double u0 = std::abs(m) / (rho * T);
    if (u0 >= 1.0) return 0.0;
    const double s = std::sqrt(1.0 - rho * rho);
    const double side = sgn(m);
    // Substitutions u = |m|/(rho t), u = sin(theta) give a smooth integrand:
    // the sqrt(rho^2 - v^2) endpoint singularity cancels against cos(theta).
    auto integrand = [&](double theta) {
        const double u = std::sin(theta);
        const double v = side * rho * u;
        double poly = 0;
        for (const auto& [w, c] : params.components) {
            const DensityPoly p = density_poly(params.family, c);
            const double uu = v / rho;
            poly += w * (p.a0 + p.a1 * uu + p.a2 * uu * uu);
        }
        return s * poly / (kPi * (1.0 - v * v)) / (rho * u);
    };
    return integrate(integrand, std::asin(u0), kPi / 2.0, 1e-10);
}

AsymptoticLaw asymptotic_law(const TheoryParams& params, int m) {
    return {m, power_exponent(params), m == 0 ? 0.0 : decay_rate(params, m)};
}

double asymptotic_persistence(const TheoryParams& params, int m, double T) {
    if (m == 0) throw std::domain_error("site 0 not allowed");
    const AsymptoticLaw law = asymptotic_law(params, m);
    return std::pow(T / std::abs(m), -law.lambda) * std::exp(-law.gamma * T);
}

}  // namespace qwp
