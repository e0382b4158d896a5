#pragma once

#include <string>

#include "qwp/coin.hpp"

namespace qwp {

struct InitSpecError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Parses an initial-state spec:
///   named shortcuts   chi+ chi- sym2 L R (two-state)
///                     sigma+ sigma1- sigma2- asym S L R (three-state)
///   eig:re,im;re,im[;re,im]   eigenbasis coefficients
///   std:re,im;...             standard-basis components
///   mix:w*SPEC|w*SPEC[|...]   incoherent mixture (no nested mix)
/// The parsed state must be normalized within 1e-9.
InitialCondition parse_init(const std::string& text, const CoinMatrix& coin);

/// Canonical std:/mix: form with full precision; re-parsing yields the same
/// state within 1e-12.
std::string format_init(const InitialCondition& init);

/// Decimal value, or the literals "1/sqrt2" and "1/sqrt3".
double parse_rho(const std::string& text);

}  // namespace qwp
