#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "eikonal/hydra.hpp"
#include "eikonal/partition.hpp"
#include "eikonal/wave.hpp"
#include "support/oracles.hpp"

using namespace eik;

namespace {

// (t - a)^3 for t >= a, scaled by c, on [a, hi]
PiecewisePolynomial cubic_ramp(const Rational& a, const Rational& c, const Rational& hi) {
    return PiecewisePolynomial({{a, hi, c * Polynomial::shifted({0, 0, 0, 1}, a)}});
}

double cubic_ramp_d(double t, double a, double c) { return t > a ? c * (t - a) * (t - a) * (t - a) : 0.0; }

}  // namespace

TEST_CASE("single edge: the wave is the delayed control before the first reflection") {
    MetricGraph g = oracle::single_edge(1);
    Rational T(3, 4);
    Hydra h = propagate(g, 0, T);
    auto phi = cubic_ramp(0, 1, T);
    auto src = wave_sources(g, {&h}, {phi});
    for (Rational x : {Rational(1, 10), Rational(1, 3), Rational(5, 8), Rational(9, 10)}) {
        Rational expect = x < T ? phi(T - x) : Rational(0);
        CHECK(wave_snapshot(g, src, {0, x}) == expect);
    }
}

TEST_CASE("single edge: reflection from the far end flips the sign") {
    MetricGraph g = oracle::single_edge(1);
    Rational T(3, 2);
    Hydra h = propagate(g, 0, T);
    auto phi = cubic_ramp(0, 1, T);
    auto src = wave_sources(g, {&h}, {phi});
    for (Rational x : {Rational(1, 10), Rational(2, 5), Rational(7, 10), Rational(9, 10)}) {
        Rational expect = phi(T - x);
        if (T - (2 - x) >= 0) expect -= phi(T - (2 - x));
        CHECK(wave_snapshot(g, src, {0, x}) == expect);
    }
}

TEST_CASE("the snapshot is linear in the controls") {
    MetricGraph g = oracle::star();
    Rational T(9, 4);
    Hydra h1 = propagate(g, 0, T), h2 = propagate(g, 1, T);
    auto a = cubic_ramp(Rational(1, 4), 1, T), b = cubic_ramp(Rational(1, 2), -2, T);
    auto sa = wave_sources(g, {&h1, &h2}, {a, PiecewisePolynomial{}});
    auto sb = wave_sources(g, {&h1, &h2}, {PiecewisePolynomial{}, b});
    auto sab = wave_sources(g, {&h1, &h2}, {a, b});
    auto s3 = wave_sources(g, {&h1, &h2}, {Rational(3) * a, b});
    for (GraphPoint x : {GraphPoint{0, Rational(1, 3)}, GraphPoint{1, Rational(5, 7)}, GraphPoint{2, Rational(19, 2)}}) {
        CHECK(wave_snapshot(g, sab, x) == wave_snapshot(g, sa, x) + wave_snapshot(g, sb, x));
        CHECK(wave_snapshot(g, s3, x) == 3 * wave_snapshot(g, sa, x) + wave_snapshot(g, sb, x));
    }
}

TEST_CASE("critical points are refused") {
    MetricGraph g = oracle::star();
    Rational T(9, 4);
    Hydra h1 = propagate(g, 0, T);
    auto src = wave_sources(g, {&h1}, {cubic_ramp(0, 1, T)});
    REQUIRE_FALSE(src[0].critical.empty());
    for (const auto& x : src[0].critical) CHECK_THROWS_AS(wave_snapshot(g, src, x), CriticalPointError);
    CHECK_THROWS_AS(wave_sources(g, {&h1}, {}), InputError);
}

TEST_CASE("agreement with a leapfrog finite-difference solution on the star") {
    MetricGraph g = oracle::star();
    Rational T(9, 4);
    Hydra h1 = propagate(g, 0, T), h2 = propagate(g, 1, T);
    auto src = wave_sources(g, {&h1, &h2}, {cubic_ramp(Rational(1, 4), 1, T), cubic_ramp(Rational(1, 2), -2, T)});
    const double h = 1.0 / 128;
    oracle::LeapfrogSolver fd(g, {{0, [](double t) { return cubic_ramp_d(t, 0.25, 1); }},
                                  {1, [](double t) { return cubic_ramp_d(t, 0.5, -2); }}}, h);
    fd.run_to(T.to_double());
    double worst = 0;
    size_t n = 0;
    for (size_t e = 0; e < 3; ++e)
        for (int k = 1; k < 12; ++k) {
            Rational off = g.edge(e).length * Rational(k, 12);
            off = Rational(static_cast<long>(std::lround(off.to_double() * 128)), 128);
            GraphPoint x{e, off};
            if (std::binary_search(src[0].critical.begin(), src[0].critical.end(), x) ||
                std::binary_search(src[1].critical.begin(), src[1].critical.end(), x))
                continue;
            double exact = wave_snapshot(g, src, x).to_double();
            worst = std::max(worst, std::abs(exact - fd.value(e, off)));
            ++n;
        }
    CHECK(n > 25);
    MESSAGE("max |exact - fd| = " << worst);
    CHECK(worst < 1e-3);
}
