#include "qwp/coin.hpp"

#include <cmath>

namespace qwp {

CoinMatrix make_coin(Family family, double rho) {
    if (!(rho > 0.0 && rho < 1.0))
        throw std::domain_error("coin parameter rho must lie in (0,1)");
    CoinMatrix c{};
    c.family = family;
    c.rho = rho;
    c.entries.fill(0.0);
    const double s = std::sqrt(1.0 - rho * rho);
    if (family == Family::TwoState) {
        c.dim = 2;
        c.entries = {rho, s, s, -rho, 0, 0, 0, 0, 0};
    } else {
        c.dim = 3;
        const double q = rho * std::sqrt(2.0 - 2.0 * rho * rho);
        c.entries = {-rho * rho, q,          1 - rho * rho,
                     q,          2 * rho * rho - 1, q,
                     1 - rho * rho, q,       -rho * rho};
    }
    return c;
}

std::vector<CoinVector> eigenbasis(const CoinMatrix& coin) {
    const double rho = coin.rho;
    if (coin.family == Family::TwoState) {
        const double cp = std::sqrt((1.0 + rho) / 2.0);
        const double cm = std::sqrt((1.0 - rho) / 2.0);
        CoinVector chi_plus{2, {cx(cp), cx(cm), cx(0)}, BasisTag::Standard};
        CoinVector chi_minus{2, {cx(-cm), cx(cp), cx(0)}, BasisTag::Standard};
        return {chi_plus, chi_minus};
    }
    const double s = std::sqrt(1.0 - rho * rho);
    const double r2 = std::sqrt(0.5);
    CoinVector sig_plus{3, {cx(s * r2), cx(rho), cx(s * r2)}, BasisTag::Standard};
    CoinVector sig1{3, {cx(rho * r2), cx(-s), cx(rho * r2)}, BasisTag::Standard};
    CoinVector sig2{3, {cx(r2), cx(0), cx(-r2)}, BasisTag::Standard};
    return {sig_plus, sig1, sig2};
}

EigenCoeffs decompose(const CoinVector& state, const CoinMatrix& coin) {
    if (state.dim != coin.dim)
        throw std::invalid_argument("state dimension does not match coin dimension");
    auto basis = eigenbasis(coin);
    std::array<cx, 3> c{};
    for (std::size_t k = 0; k < basis.size(); ++k) {
        cx acc = 0;
        for (int i = 0; i < coin.dim; ++i)
            acc += std::conj(basis[k].comp[i]) * state.comp[i];
        c[k] = acc;
    }
    if (coin.dim == 2) return EigenDecomp2{c[0], c[1]};
    return EigenDecomp3{c[0], c[1], c[2]};
}

namespace {

double coeff_norm_sq(const EigenCoeffs& coeffs) {
    if (auto* d2 = std::get_if<EigenDecomp2>(&coeffs))
        return std::norm(d2->h_plus) + std::norm(d2->h_minus);
    const auto& d3 = std::get<EigenDecomp3>(coeffs);
    return std::norm(d3.g_plus) + std::norm(d3.g_1) + std::norm(d3.g_2);
}

}  // namespace

CoinVector compose(const EigenCoeffs& coeffs, const CoinMatrix& coin) {
    if (std::abs(coeff_norm_sq(coeffs) - 1.0) > 1e-9)
        throw std::domain_error("eigenbasis coefficients are not normalized");
    const bool two = std::holds_alternative<EigenDecomp2>(coeffs);
    if (two != (coin.dim == 2))
        throw std::invalid_argument("coefficient dimension does not match coin dimension");
    auto basis = eigenbasis(coin);
    std::array<cx, 3> c{};
    if (two) {
        const auto& d = std::get<EigenDecomp2>(coeffs);
        c = {d.h_plus, d.h_minus, 0};
    } else {
        const auto& d = std::get<EigenDecomp3>(coeffs);
        c = {d.g_plus, d.g_1, d.g_2};
    }
    CoinVector out{coin.dim, {cx(0), cx(0), cx(0)}, BasisTag::Standard};
    for (std::size_t k = 0; k < basis.size(); ++k)
        for (int i = 0; i < coin.dim; ++i) out.comp[i] += c[k] * basis[k].comp[i];
    return out;
}

double lambda_factor(const EigenDecomp2& d, double rho) {
    return (2.0 * std::norm(d.h_plus) - 1.0) / rho;
}

double lambda_factor_standard(const CoinVector& state, double rho) {
    if (state.dim != 2)
        throw std::invalid_argument("lambda_factor_standard expects a two-state vector");
    const cx a = state.comp[0], b = state.comp[1];
    const double s = std::sqrt(1.0 - rho * rho);
    return std::norm(a) - std::norm(b) +
           s / rho * 2.0 * std::real(a * std::conj(b));
}

void validate_initial_condition(const InitialCondition& ic, int dim) {
    if (ic.components.empty())
        throw std::domain_error("initial condition has no components");
    double wsum = 0;
    for (const auto& [w, v] : ic.components) {
        if (w < 0) throw std::domain_error("mixture weight is negative");
        if (v.dim != dim)
            throw std::invalid_argument("component dimension mismatch");
        if (std::abs(v.norm_sq() - 1.0) > 1e-9)
            throw std::domain_error("component state is not normalized");
        wsum += w;
    }
    if (std::abs(wsum - 1.0) > 1e-9)
        throw std::domain_error("mixture weights do not sum to 1");
}

}  // namespace qwp
