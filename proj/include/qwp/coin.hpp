#pragma once

#include <array>
#include <complex>
#include <stdexcept>
#include <variant>
#include <vector>

namespace qwp {

using cx = std::complex<double>;

enum class Family { TwoState, ThreeState };

inline int coin_dim(Family f) { return f == Family::TwoState ? 2 : 3; }

/// Coin operator of one of the two walk families. Both families are real
/// symmetric, so the eigenvalues are +1 and -1.
struct CoinMatrix {
    Family family;
    double rho;
    int dim;
    std::array<double, 9> entries;  // row-major, dim*dim used

    double at(int r, int c) const { return entries[r * dim + c]; }
};

enum class BasisTag { Standard, Eigen };

/// Normalized coin-space vector, d = 2 or 3.
struct CoinVector {
    int dim;
    std::array<cx, 3> comp;
    BasisTag basis = BasisTag::Standard;

    double norm_sq() const {
        double s = 0;
        for (int i = 0; i < dim; ++i) s += std::norm(comp[i]);
        return s;
    }
};

/// Coefficients of a two-state coin vector in the {chi+, chi-} eigenbasis.
struct EigenDecomp2 {
    cx h_plus;
    cx h_minus;
};

/// Coefficients of a three-state coin vector in {sigma+, sigma1-, sigma2-}.
struct EigenDecomp3 {
    cx g_plus;
    cx g_1;
    cx g_2;
};

using EigenCoeffs = std::variant<EigenDecomp2, EigenDecomp3>;

/// Pure state or incoherent mixture of pure states (weights sum to 1).
struct InitialCondition {
    std::vector<std::pair<double, CoinVector>> components;

    static InitialCondition pure(const CoinVector& v) { return {{{1.0, v}}}; }
    bool is_pure() const { return components.size() == 1; }
};

CoinMatrix make_coin(Family family, double rho);

/// Coin eigenvectors with fixed sign conventions:
/// two-state {chi+, chi-}; three-state {sigma+, sigma1-, sigma2-}.
/// Eigenvalue +1 for the first vector, -1 for the rest.
std::vector<CoinVector> eigenbasis(const CoinMatrix& coin);

EigenCoeffs decompose(const CoinVector& state, const CoinMatrix& coin);
CoinVector compose(const EigenCoeffs& coeffs, const CoinMatrix& coin);

/// Bias factor of the two-state limit density, (2|h+|^2 - 1)/rho.
double lambda_factor(const EigenDecomp2& d, double rho);

/// Same factor evaluated from the standard-basis components a, b.
double lambda_factor_standard(const CoinVector& state, double rho);

void validate_initial_condition(const InitialCondition& ic, int dim);

}  // namespace qwp
