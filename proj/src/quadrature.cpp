#include "qwp/quadrature.hpp"

#include <cmath>
#include <string>

namespace qwp {

namespace {

// G7/K15 nodes and weights on [-1, 1].
constexpr double kron_nodes[15] = {
    -0.991455371120812639206854697526329,
    -0.949107912342758524526189684047851,
    -0.864864423359769072789712788640926,
    -0.741531185599394439863864773280788,
    -0.586087235467691130294144838258730,
    -0.405845151377397166906606412076961,
    -0.207784955007898467600689403773245,
    0.0,
    0.207784955007898467600689403773245,
    0.405845151377397166906606412076961,
    0.586087235467691130294144838258730,
    0.741531185599394439863864773280788,
    0.864864423359769072789712788640926,
    0.949107912342758524526189684047851,
    0.991455371120812639206854697526329};

constexpr double kron_weights[15] = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
    0.204432940075298892414161999234649,
    0.190350578064785409913256402421014,
    0.169004726639267902826583426598550,
    0.140653259715525918745189590510238,
    0.104790010322250183839876322541518,
    0.063092092629978553290700663189204,
    0.022935322010529224963732008058970};

// Gauss weights for the embedded 7-point rule (odd Kronrod nodes).
constexpr double gauss_weights[7] = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
    0.381830050505118944950369775488975,
    0.279705391489276667901467771423780,
    0.129484966168869693270611432679082};

struct Panel {
    double integral;
    double error;
};

Panel gk15(const std::function<double(double)>& f, double a, double b) {
    const double h = 0.5 * (b - a);
    const double mid = 0.5 * (a + b);
    double kron = 0, gauss = 0;
    for (int i = 0; i < 15; ++i) {
        const double y = f(mid + h * kron_nodes[i]);
        kron += kron_weights[i] * y;
        if (i % 2 == 1) gauss += gauss_weights[i / 2] * y;
    }
    kron *= h;
    gauss *= h;
    const double diff = std::abs(kron - gauss);
    return {kron, std::pow(200.0 * diff, 1.5)};
}

double adapt(const std::function<double(double)>& f, double a, double b,
             double tol, int depth, int max_depth) {
    Panel p = gk15(f, a, b);
    if (p.error <= tol || p.error <= 1e-16 * std::abs(p.integral)) return p.integral;
    if (depth >= max_depth)
        throw QuadratureError("quadrature failed to converge on [" +
                              std::to_string(a) + ", " + std::to_string(b) +
                              "], error estimate " + std::to_string(p.error));
    const double mid = 0.5 * (a + b);
    return adapt(f, a, mid, 0.5 * tol, depth + 1, max_depth) +
           adapt(f, mid, b, 0.5 * tol, depth + 1, max_depth);
}

}  // namespace

double integrate(const std::function<double(double)>& f, double a, double b,
                 double abs_tol, int max_depth) {
    if (a == b) return 0.0;
    return adapt(f, a, b, abs_tol, 0, max_depth);
}

}  // namespace qwp
