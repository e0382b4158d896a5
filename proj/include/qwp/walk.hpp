#pragma once

#include <vector>

#include "qwp/coin.hpp"

namespace qwp {

/// Full wavefunction of a pure walk after t steps. Amplitudes are stored
/// densely over [-capacity, capacity]; they vanish identically for |m| > t.
struct WalkState {
    Family family;
    int dim;
    int t = 0;
    int capacity = 0;
    std::vector<cx> amp;  // size dim*(2*capacity+1), index (m+capacity)*dim + c

    cx at(int m, int c) const { return amp[(m + capacity) * dim + c]; }
    cx& at(int m, int c) { return amp[(m + capacity) * dim + c]; }

    double norm_sq() const;
    double site_probability(int m) const;
};

struct Distribution {
    int t;
    int offset;                 // probs[m + offset] = p(m, t)
    std::vector<double> probs;  // over [-offset, offset]

    double at(int m) const {
        return (m < -offset || m > offset) ? 0.0 : probs[m + offset];
    }
};

/// p(m, t) for one site m, t = 1..T (values[t-1]).
struct ProbabilitySeries {
    int m;
    std::vector<double> values;
};

WalkState make_initial(const CoinVector& coin_state, int capacity);

/// One coin-then-shift update: serial reference implementation.
void step_serial(const WalkState& in, WalkState& out, const CoinMatrix& coin);

/// Same update with the position loop parallelized (OpenMP when available).
void step_parallel(const WalkState& in, WalkState& out, const CoinMatrix& coin);

WalkState evolve_pure(const CoinVector& init, const CoinMatrix& coin, int steps,
                      bool parallel = true);

std::vector<WalkState> evolve(const InitialCondition& init, const CoinMatrix& coin,
                              int steps, bool parallel = true);

Distribution distribution(const WalkState& state);

/// Weight-averaged distribution of a (possibly mixed) initial condition.
Distribution distribution(const std::vector<WalkState>& components,
                          const InitialCondition& init);

/// Records p(m, t) at each requested site for every t <= steps in a single
/// evolution pass. Mixtures are averaged per time step.
std::vector<ProbabilitySeries> probability_series(const InitialCondition& init,
                                                  const CoinMatrix& coin,
                                                  const std::vector<int>& sites,
                                                  int steps, bool parallel = true);

}  // namespace qwp
