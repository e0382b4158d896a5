#include <doctest.h>

#include <cmath>

#include "qwp/theory.hpp"
#include "qwp/walk.hpp"

using namespace qwp;

namespace {

const double kSqrtHalf = std::sqrt(0.5);

CoinVector eigen_combo(const CoinMatrix& coin, int i, int j) {
    auto b = eigenbasis(coin);
    CoinVector v{coin.dim, {}, BasisTag::Standard};
    for (int k = 0; k < coin.dim; ++k)
        v.comp[k] = kSqrtHalf * (b[i].comp[k] + b[j].comp[k]);
    return v;
}

}  // namespace

TEST_CASE("single Hadamard step from the origin in |L>") {
    auto coin = make_coin(Family::TwoState, kSqrtHalf);
    CoinVector L{2, {cx(1), cx(0), cx(0)}, BasisTag::Standard};
    WalkState s0 = make_initial(L, 1), s1 = s0;
    step_serial(s0, s1, coin);
    CHECK(std::abs(s1.at(-1, 0) - cx(kSqrtHalf)) < 1e-15);
    CHECK(std::abs(s1.at(1, 1) - cx(kSqrtHalf)) < 1e-15);
    CHECK(std::abs(s1.at(-1, 1)) < 1e-15);
    CHECK(std::abs(s1.at(1, 0)) < 1e-15);
    CHECK(s1.norm_sq() == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("one step from chi+ splits as (1+rho)/2 left, (1-rho)/2 right") {
    for (double rho : {0.3, 0.5, 0.8}) {
        auto coin = make_coin(Family::TwoState, rho);
        auto b = eigenbasis(coin);
        WalkState s0 = make_initial(b[0], 1), s1 = s0;
        step_serial(s0, s1, coin);
        CHECK(s1.site_probability(-1) == doctest::Approx((1 + rho) / 2).epsilon(1e-14));
        CHECK(s1.site_probability(1) == doctest::Approx((1 - rho) / 2).epsilon(1e-14));
    }
}

TEST_CASE("serial and parallel steps agree exactly") {
    auto coin = make_coin(Family::ThreeState, 0.8);
    auto b = eigenbasis(coin);
    auto serial = evolve_pure(b[0], coin, 300, false);
    auto parallel = evolve_pure(b[0], coin, 300, true);
    double worst = 0;
    for (std::size_t i = 0; i < serial.amp.size(); ++i)
        worst = std::max(worst, std::abs(serial.amp[i] - parallel.amp[i]));
    CHECK(worst == 0.0);
}

TEST_CASE("evolve with T=0 returns the initial state at the origin") {
    auto coin = make_coin(Family::ThreeState, 0.5);
    auto b = eigenbasis(coin);
    auto st = evolve_pure(b[1], coin, 0);
    CHECK(st.t == 0);
    CHECK(st.site_probability(0) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK_THROWS_AS(evolve_pure(b[1], coin, -1), std::domain_error);
}

TEST_CASE("norm is conserved at every step") {
    for (Family fam : {Family::TwoState, Family::ThreeState}) {
        auto coin = make_coin(fam, 0.6);
        auto b = eigenbasis(coin);
        WalkState cur = make_initial(b[0], 400), next = cur;
        for (int t = 1; t <= 400; ++t) {
            step_parallel(cur, next, coin);
            std::swap(cur, next);
            CHECK(std::abs(cur.norm_sq() - 1.0) < 1e-12);
        }
    }
}

TEST_CASE("light cone and two-state parity hold exactly") {
    auto coin = make_coin(Family::TwoState, kSqrtHalf);
    CoinVector L{2, {cx(1), cx(0), cx(0)}, BasisTag::Standard};
    WalkState cur = make_initial(L, 50), next = cur;
    for (int t = 1; t <= 50; ++t) {
        step_serial(cur, next, coin);
        std::swap(cur, next);
        for (int m = -50; m <= 50; ++m) {
            if (std::abs(m) > t) CHECK(cur.site_probability(m) == 0.0);
            if ((m + t) % 2 != 0) CHECK(cur.site_probability(m) == 0.0);
        }
    }
}

TEST_CASE("probability_series light cone and site-0 rejection") {
    auto coin = make_coin(Family::TwoState, 0.5);
    CoinVector L{2, {cx(1), cx(0), cx(0)}, BasisTag::Standard};
    auto ic = InitialCondition::pure(L);
    auto ps = probability_series(ic, coin, {3}, 10);
    CHECK(ps[0].values[0] == 0.0);  // p(3,1)
    CHECK(ps[0].values[1] == 0.0);  // p(3,2)
    CHECK(ps[0].values[2] > 0.0);   // p(3,3)
    CHECK_THROWS_AS(probability_series(ic, coin, {0}, 10), std::domain_error);
}

TEST_CASE("symmetric initial state gives a reflection-symmetric walk") {
    // (|L> + i|R>)/sqrt2 is the state whose distribution is exactly even in m
    // at every step; real equal-weight combinations are only symmetric in the
    // large-t limit.
    for (double rho : {kSqrtHalf, 0.6}) {
        auto coin = make_coin(Family::TwoState, rho);
        CoinVector v{2, {cx(kSqrtHalf, 0), cx(0, kSqrtHalf)}, BasisTag::Standard};
        auto st = evolve_pure(v, coin, 100);
        for (int m = 1; m <= 100; ++m)
            CHECK(std::abs(st.site_probability(m) - st.site_probability(-m)) < 1e-14);
    }
}

TEST_CASE("no trapping for the sigma1- initial state") {
    auto coin = make_coin(Family::ThreeState, 1.0 / std::sqrt(3.0));
    auto b = eigenbasis(coin);
    auto st = evolve_pure(b[1], coin, 200);
    CHECK(st.site_probability(0) < 5e-3);
}

TEST_CASE("sigma+ walk converges to the predicted trapping probability") {
    auto coin = make_coin(Family::ThreeState, 0.8);
    auto b = eigenbasis(coin);
    auto ic = InitialCondition::pure(b[0]);
    auto params = TheoryParams::from_init(ic, coin);
    auto ps = probability_series(ic, coin, {2}, 2000);
    const double tail = 0.5 * (ps[0].values[1999 - 1] + ps[0].values[2000 - 1]);
    CHECK(tail == doctest::Approx(0.0068664).epsilon(0.10));
    CHECK(trapping_probability(params, 2) == doctest::Approx(0.0068664).epsilon(1e-4));
}

TEST_CASE("mixture distribution is the weighted sum of component distributions") {
    auto coin = make_coin(Family::ThreeState, 0.5);
    auto b = eigenbasis(coin);
    InitialCondition mix{{{0.5, b[0]}, {0.5, b[2]}}};
    auto comps = evolve(mix, coin, 60);
    auto d = distribution(comps, mix);
    auto d0 = distribution(comps[0]);
    auto d1 = distribution(comps[1]);
    for (int m = -60; m <= 60; ++m)
        CHECK(d.at(m) == 0.5 * d0.at(m) + 0.5 * d1.at(m));
}

TEST_CASE("weak-limit consistency of the rescaled distribution") {
    // Oscillations cancel in the window average; compare mean rescaled
    // probability against the mean limit density over |m/t| < 0.9 rho.
    SUBCASE("two-state") {
        auto coin = make_coin(Family::TwoState, kSqrtHalf);
        auto sym = eigen_combo(coin, 0, 1);
        const int t = 5000;
        auto st = evolve_pure(sym, coin, t);
        auto params = TheoryParams::from_init(InitialCondition::pure(sym), coin);
        double sim = 0, th = 0;
        const int mmax = static_cast<int>(0.9 * coin.rho * t);
        for (int m = -mmax; m <= mmax; ++m) {
            if ((m + t) % 2 != 0) continue;
            sim += t * st.site_probability(m) / 2;
            th += limit_density(params, static_cast<double>(m) / t);
        }
        CHECK(std::abs(sim - th) / th < 0.05);
    }
    SUBCASE("three-state") {
        auto coin = make_coin(Family::ThreeState, 0.8);
        auto b = eigenbasis(coin);
        const int t = 5000;
        auto st = evolve_pure(b[0], coin, t);
        auto params = TheoryParams::from_init(InitialCondition::pure(b[0]), coin);
        double sim = 0, th = 0;
        const int mmax = static_cast<int>(0.9 * coin.rho * t);
        for (int m = -mmax; m <= mmax; ++m) {
            sim += t * (st.site_probability(m) - trapping_probability(params, m));
            th += limit_density(params, static_cast<double>(m) / t);
        }
        CHECK(std::abs(sim - th) / th < 0.05);
    }
}
