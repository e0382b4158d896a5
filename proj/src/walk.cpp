#include "qwp/walk.hpp"

#include <cmath>
#include <cstring>
#include <stdexcept>

namespace qwp {

double WalkState::norm_sq() const {
    double s = 0;
    for (const cx& a : amp) s += std::norm(a);
    return s;
}

double WalkState::site_probability(int m) const {
    if (m < -capacity || m > capacity) return 0.0;
    double s = 0;
    for (int c = 0; c < dim; ++c) s += std::norm(at(m, c));
    return s;
}

WalkState make_initial(const CoinVector& coin_state, int capacity) {
    WalkState st;
    st.family = coin_state.dim == 2 ? Family::TwoState : Family::ThreeState;
    st.dim = coin_state.dim;
    st.t = 0;
    st.capacity = capacity;
    st.amp.assign(static_cast<std::size_t>(st.dim) * (2 * capacity + 1), cx(0));
    for (int c = 0; c < st.dim; ++c) st.at(0, c) = coin_state.comp[c];
    return st;
}

namespace {

// Coin-then-shift stencil for one output site. After the coin the |L>
// component moves left, |R> moves right and (d=3) |S> stays, so the output
// at m reads the coin-rotated neighbours at m+1, m and m-1.
template <int Dim>
inline void stencil_site(const WalkState& in, WalkState& out, const CoinMatrix& C,
                         int m) {
    const int cap = in.capacity;
    auto row_dot = [&](int row, int src) -> cx {
        if (src < -cap || src > cap) return cx(0);
        const cx* a = &in.amp[(src + cap) * Dim];
        cx acc = C.entries[row * Dim] * a[0];
        for (int c = 1; c < Dim; ++c) acc += C.entries[row * Dim + c] * a[c];
        return acc;
    };
    cx* o = &out.amp[(m + cap) * Dim];
    if constexpr (Dim == 2) {
        o[0] = row_dot(0, m + 1);
        o[1] = row_dot(1, m - 1);
    } else {
        o[0] = row_dot(0, m + 1);
        o[1] = row_dot(1, m);
        o[2] = row_dot(2, m - 1);
    }
}

template <int Dim, bool Parallel>
void step_impl(const WalkState& in, WalkState& out, const CoinMatrix& coin) {
    const int lo = -(in.t + 1), hi = in.t + 1;
#pragma omp parallel for if (Parallel && hi - lo > 4096) schedule(static)
    for (int m = lo; m <= hi; ++m) stencil_site<Dim>(in, out, coin, m);
    out.t = in.t + 1;
}

void step_checked(const WalkState& in, WalkState& out, const CoinMatrix& coin,
                  bool parallel) {
    if (in.dim != coin.dim)
        throw std::invalid_argument("state dimension does not match coin dimension");
    if (in.t + 1 > in.capacity)
        throw std::invalid_argument("walk state capacity exhausted");
    if (&in != &out) {
        out.family = in.family;
        out.dim = in.dim;
        out.capacity = in.capacity;
        out.amp.assign(in.amp.size(), cx(0));
    }
    if (in.dim == 2) {
        parallel ? step_impl<2, true>(in, out, coin) : step_impl<2, false>(in, out, coin);
    } else {
        parallel ? step_impl<3, true>(in, out, coin) : step_impl<3, false>(in, out, coin);
    }
}

}  // namespace

void step_serial(const WalkState& in, WalkState& out, const CoinMatrix& coin) {
    step_checked(in, out, coin, false);
}

void step_parallel(const WalkState& in, WalkState& out, const CoinMatrix& coin) {
    step_checked(in, out, coin, true);
}

WalkState evolve_pure(const CoinVector& init, const CoinMatrix& coin, int steps,
                      bool parallel) {
    if (steps < 0) throw std::domain_error("step count must be non-negative");
    WalkState cur = make_initial(init, steps);
    WalkState next = cur;
    for (int t = 0; t < steps; ++t) {
        step_checked(cur, next, coin, parallel);
        std::swap(cur, next);
    }
    return cur;
}

std::vector<WalkState> evolve(const InitialCondition& init, const CoinMatrix& coin,
                              int steps, bool parallel) {
    validate_initial_condition(init, coin.dim);
    std::vector<WalkState> out;
    out.reserve(init.components.size());
    for (const auto& [w, v] : init.components)
        out.push_back(evolve_pure(v, coin, steps, parallel));
    return out;
}

Distribution distribution(const WalkState& state) {
    Distribution d{state.t, state.capacity,
                   std::vector<double>(2 * state.capacity + 1, 0.0)};
    for (int m = -state.capacity; m <= state.capacity; ++m)
        d.probs[m + state.capacity] = state.site_probability(m);
    return d;
}

Distribution distribution(const std::vector<WalkState>& components,
                          const InitialCondition& init) {
    if (components.size() != init.components.size())
        throw std::invalid_argument("component count mismatch");
    Distribution d = distribution(components[0]);
    for (double& p : d.probs) p *= init.components[0].first;
    for (std::size_t k = 1; k < components.size(); ++k) {
        const double w = init.components[k].first;
        Distribution dk = distribution(components[k]);
        for (std::size_t i = 0; i < d.probs.size(); ++i) d.probs[i] += w * dk.probs[i];
    }
    return d;
}

std::vector<ProbabilitySeries> probability_series(const InitialCondition& init,
                                                  const CoinMatrix& coin,
                                                  const std::vector<int>& sites,
                                                  int steps, bool parallel) {
    validate_initial_condition(init, coin.dim);
    if (steps < 1) throw std::domain_error("step count must be >= 1");
    for (int m : sites)
        if (m == 0)
            throw std::domain_error(
                "site 0 not allowed: the walk starts at the origin");

    std::vector<ProbabilitySeries> out;
    out.reserve(sites.size());
    for (int m : sites)
        out.push_back({m, std::vector<double>(static_cast<std::size_t>(steps), 0.0)});

    for (const auto& [w, v] : init.components) {
        WalkState cur = make_initial(v, steps);
        WalkState next = cur;
        for (int t = 1; t <= steps; ++t) {
            step_checked(cur, next, coin, parallel);
            std::swap(cur, next);
            for (std::size_t i = 0; i < sites.size(); ++i)
                out[i].values[t - 1] += w * cur.site_probability(sites[i]);
        }
    }
    return out;
}

}  // namespace qwp
