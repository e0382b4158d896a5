// Benchmark: serial vs parallel step kernel on a three-state walk, plus an
// exact agreement check between the two code paths.

#include <chrono>
#include <cmath>
#include <cstdio>

#include "qwp/walk.hpp"

using namespace qwp;

namespace {

double run(bool parallel, int steps, const CoinMatrix& coin, const CoinVector& init,
           WalkState& out) {
    const auto t0 = std::chrono::steady_clock::now();
    out = evolve_pure(init, coin, steps, parallel);
    const auto t1 = std::chrono::steady_clock::now();
    return std::chrono::duration<double>(t1 - t0).count();
}

}  // namespace

int main(int argc, char** argv) {
    const int steps = argc > 1 ? std::atoi(argv[1]) : 4000;
    auto coin = make_coin(Family::ThreeState, 0.8);
    auto b = eigenbasis(coin);

    WalkState serial, parallel;
    const double ts = run(false, steps, coin, b[0], serial);
    const double tp = run(true, steps, coin, b[0], parallel);

    double worst = 0;
    for (std::size_t i = 0; i < serial.amp.size(); ++i)
        worst = std::max(worst, std::abs(serial.amp[i] - parallel.amp[i]));

    std::printf("three-state walk, rho=0.8, %d steps\n", steps);
    std::printf("  serial:   %8.3f s\n", ts);
    std::printf("  parallel: %8.3f s  (speedup %.2fx)\n", tp, ts / tp);
    std::printf("  max amplitude deviation: %.3g\n", worst);
    return worst == 0.0 ? 0 : 1;
}
