#include "qwp/initspec.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

namespace qwp {

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> parts;
    std::string cur;
    std::istringstream is(s);
    while (std::getline(is, cur, sep)) parts.push_back(cur);
    if (!s.empty() && s.back() == sep) parts.push_back("");
    return parts;
}

double parse_real(const std::string& s) {
    std::size_t pos = 0;
    double v;
    try {
        v = std::stod(s, &pos);
    } catch (const std::exception&) {
        throw InitSpecError("malformed number '" + s + "'");
    }
    if (pos != s.size()) throw InitSpecError("malformed number '" + s + "'");
    return v;
}

CoinVector parse_components(const std::string& body, int dim, const char* what) {
    auto parts = split(body, ';');
    if (static_cast<int>(parts.size()) != dim)
        throw InitSpecError(std::string(what) + " spec needs " + std::to_string(dim) +
                            " components");
    CoinVector v{dim, {cx(0), cx(0), cx(0)}, BasisTag::Standard};
    for (int i = 0; i < dim; ++i) {
        auto reim = split(parts[i], ',');
        if (reim.size() != 2)
            throw InitSpecError("component '" + parts[i] + "' is not 're,im'");
        v.comp[i] = cx(parse_real(reim[0]), parse_real(reim[1]));
    }
    return v;
}

CoinVector named_state(const std::string& name, const CoinMatrix& coin) {
    const double r2 = std::sqrt(0.5);
    auto basis = eigenbasis(coin);
    if (coin.dim == 2) {
        if (name == "chi+") return basis[0];
        if (name == "chi-") return basis[1];
        if (name == "sym2") {
            CoinVector v{2, {}, BasisTag::Standard};
            for (int i = 0; i < 2; ++i)
                v.comp[i] = r2 * (basis[0].comp[i] + basis[1].comp[i]);
            return v;
        }
        if (name == "L") return {2, {cx(1), cx(0), cx(0)}, BasisTag::Standard};
        if (name == "R") return {2, {cx(0), cx(1), cx(0)}, BasisTag::Standard};
    } else {
        if (name == "sigma+") return basis[0];
        if (name == "sigma1-") return basis[1];
        if (name == "sigma2-") return basis[2];
        if (name == "asym") {
            CoinVector v{3, {}, BasisTag::Standard};
            for (int i = 0; i < 3; ++i)
                v.comp[i] = r2 * (basis[0].comp[i] + basis[2].comp[i]);
            return v;
        }
        if (name == "L") return {3, {cx(1), cx(0), cx(0)}, BasisTag::Standard};
        if (name == "S") return {3, {cx(0), cx(1), cx(0)}, BasisTag::Standard};
        if (name == "R") return {3, {cx(0), cx(0), cx(1)}, BasisTag::Standard};
    }
    throw InitSpecError("unknown initial state '" + name + "' for this walk family");
}

CoinVector parse_pure(const std::string& text, const CoinMatrix& coin) {
    CoinVector v{};
    if (text.rfind("std:", 0) == 0) {
        v = parse_components(text.substr(4), coin.dim, "std");
    } else if (text.rfind("eig:", 0) == 0) {
        CoinVector coeffs = parse_components(text.substr(4), coin.dim, "eig");
        EigenCoeffs ec;
        if (coin.dim == 2)
            ec = EigenDecomp2{coeffs.comp[0], coeffs.comp[1]};
        else
            ec = EigenDecomp3{coeffs.comp[0], coeffs.comp[1], coeffs.comp[2]};
        double n2 = 0;
        for (int i = 0; i < coin.dim; ++i) n2 += std::norm(coeffs.comp[i]);
        if (std::abs(n2 - 1.0) > 1e-9)
            throw InitSpecError("eigenbasis coefficients are not normalized");
        v = compose(ec, coin);
    } else {
        v = named_state(text, coin);
    }
    if (std::abs(v.norm_sq() - 1.0) > 1e-9)
        throw InitSpecError("state '" + text + "' is not normalized");
    return v;
}

}  // namespace

InitialCondition parse_init(const std::string& text, const CoinMatrix& coin) {
    InitialCondition ic;
    if (text.rfind("mix:", 0) == 0) {
        for (const std::string& part : split(text.substr(4), '|')) {
            const auto star = part.find('*');
            if (star == std::string::npos)
                throw InitSpecError("mixture component '" + part + "' is not 'w*SPEC'");
            const double w = parse_real(part.substr(0, star));
            const std::string spec = part.substr(star + 1);
            if (spec.rfind("mix:", 0) == 0)
                throw InitSpecError("nested mixtures are not supported");
            ic.components.push_back({w, parse_pure(spec, coin)});
        }
        double wsum = 0;
        for (const auto& [w, v] : ic.components) wsum += w;
        if (std::abs(wsum - 1.0) > 1e-9)
            throw InitSpecError("mixture weights do not sum to 1");
    } else {
        ic = InitialCondition::pure(parse_pure(text, coin));
    }
    validate_initial_condition(ic, coin.dim);
    return ic;
}

std::string format_init(const InitialCondition& init) {
    auto fmt = [](double x) {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.17g", x);
        return std::string(buf);
    };
    auto fmt_pure = [&](const CoinVector& v) {
        std::string out = "std:";
        for (int i = 0; i < v.dim; ++i) {
            if (i) out += ';';
            out += fmt(v.comp[i].real()) + "," + fmt(v.comp[i].imag());
        }
        return out;
    };
    if (init.components.size() == 1) return fmt_pure(init.components[0].second);
    std::string out = "mix:";
    for (std::size_t k = 0; k < init.components.size(); ++k) {
        if (k) out += '|';
        out += fmt(init.components[k].first) + "*" + fmt_pure(init.components[k].second);
    }
    return out;
}

double parse_rho(const std::string& text) {
    if (text == "1/sqrt2") return std::sqrt(0.5);
    if (text == "1/sqrt3") return 1.0 / std::sqrt(3.0);
    std::size_t pos = 0;
    double v;
    try {
        v = std::stod(text, &pos);
    } catch (const std::exception&) {
        throw std::domain_error("malformed rho '" + text + "'");
    }
    if (pos != text.size()) throw std::domain_error("malformed rho '" + text + "'");
    if (!(v > 0.0 && v < 1.0)) throw std::domain_error("rho must lie in (0,1)");
    return v;
}

}  // namespace qwp
