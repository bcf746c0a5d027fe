#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "eikonal/graph.hpp"
#include "eikonal/matrix.hpp"
#include "eikonal/polynomial.hpp"
#include "eikonal/rational.hpp"
#include "support/oracles.hpp"

using namespace eik;

TEST_CASE("rational parsing and canonical form") {
    CHECK(Rational::parse("6/8") == Rational(3, 4));
    CHECK(Rational::parse("-3") == Rational(-3));
    CHECK(Rational::parse("+5/10").str() == "1/2");
    CHECK(Rational(4, 2).str() == "2");
    CHECK_THROWS_AS(Rational::parse("1.5"), std::invalid_argument);
    CHECK_THROWS_AS(Rational::parse("1/0"), std::exception);
    CHECK_THROWS_AS(Rational::parse(""), std::invalid_argument);
    CHECK_THROWS_AS(Rational::parse("a/3"), std::invalid_argument);
    CHECK_THROWS_AS(Rational(1) / Rational(0), std::domain_error);
}

TEST_CASE("rational arithmetic agrees with integer cross-multiplication") {
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<long> d(-50, 50), dp(1, 50);
    for (int i = 0; i < 500; ++i) {
        long a = d(rng), b = dp(rng), c = d(rng), e = dp(rng);
        Rational x(a, b), y(c, e);
        CHECK(x + y == Rational(a * e + c * b, b * e));
        CHECK(x * y == Rational(a * c, b * e));
        CHECK((x < y) == (a * e < c * b));
    }
}

TEST_CASE("rank and nullspace") {
    RMatrix a = RMatrix::from_rows({{1, 2, 3}, {2, 4, 6}, {1, 0, 1}});
    CHECK(rank(a) == 2);
    auto ns = nullspace(a);
    REQUIRE(ns.size() == 1);
    CHECK(is_zero(a.apply(ns[0])));
    CHECK(primitive_integer(RVector{Rational(1, 2), Rational(-1, 3)}) == RVector{3, -2});
    CHECK(primitive_integer(RVector{Rational(-2), Rational(4)}) == RVector{1, -2});
}

TEST_CASE("random matrices: rank plus nullity equals width") {
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<int> d(-2, 2), dim(1, 5);
    for (int it = 0; it < 200; ++it) {
        size_t r = static_cast<size_t>(dim(rng)), c = static_cast<size_t>(dim(rng));
        RMatrix a(r, c);
        for (size_t i = 0; i < r; ++i)
            for (size_t j = 0; j < c; ++j) a(i, j) = d(rng);
        auto ns = nullspace(a);
        CHECK(rank(a) + ns.size() == c);
        for (const auto& v : ns) CHECK(is_zero(a.apply(v)));
        CHECK(rank(a) == rank(a.transpose()));
    }
}

TEST_CASE("matrix products and direct sums") {
    RMatrix p = RMatrix::from_rows({{Rational(1, 2), Rational(1, 2)}, {Rational(1, 2), Rational(1, 2)}});
    CHECK(p * p == p);
    CHECK(p.is_symmetric());
    RMatrix ds = direct_sum({p, RMatrix::identity(1)});
    CHECK(ds.rows() == 3);
    CHECK(ds(2, 2) == Rational(1));
    CHECK(ds(0, 2) == Rational(0));
    CHECK(commutator(p, RMatrix::identity(2)).is_zero());
}

TEST_CASE("polynomials and piecewise polynomials") {
    Polynomial p = Polynomial::shifted({0, 0, 0, 1}, Rational(1, 4));  // (x-1/4)^3
    CHECK(p(Rational(5, 4)) == Rational(1));
    CHECK(p.compose_affine(Rational(1), Rational(-1))(Rational(0)) == p(Rational(1)));
    PiecewisePolynomial f({{Rational(1, 4), Rational(10), p}});
    CHECK(f(Rational(0)) == Rational(0));
    CHECK(f(Rational(3, 4)) == Rational(1, 8));
    auto pb = f.pull_back(Rational(1), -1, Rational(1));  // x = 1 - r
    CHECK(pb(Rational(1, 2)) == f(Rational(1, 2)));
    CHECK(pb(Rational(1)) == Rational(0));
    CHECK(f.equals(f + PiecewisePolynomial()));
    CHECK_FALSE(f.equals(Rational(2) * f));
}

TEST_CASE("graph validation") {
    auto bad = [](GraphSpec s) { CHECK_THROWS_AS(build_graph(s), InputError); };
    GraphSpec ok;
    ok.vertices = {{"a", true}, {"b", true}};
    ok.edges = {{"e", "a", "b", 1}};
    CHECK_NOTHROW(build_graph(ok));
    GraphSpec s = ok;
    s.edges[0].length = 0;
    bad(s);
    s = ok;
    s.edges[0].to = "zz";
    bad(s);
    s = ok;
    s.edges[0].to = "a";
    bad(s);
    s = ok;
    s.vertices.push_back({"a", false});
    bad(s);
    s = ok;
    s.vertices.push_back({"c", true});
    bad(s);  // isolated
    s.vertices = {{"a", true}, {"m", false}, {"b", true}};
    s.edges = {{"e1", "a", "m", 1}, {"e2", "m", "b", 1}};
    bad(s);  // valency 2
    s = ok;
    s.vertices[1].boundary = false;
    bad(s);  // valency-1 vertex not marked
    auto g = oracle::star();
    CHECK(g.boundary_vertices().size() == 3);
    CHECK(g.inner_vertices().size() == 1);
    CHECK(g.describe(g.point(0, Rational(3, 4))) == "e1@3/4");
    CHECK(g.describe(g.point(0, Rational(2))) == "v");
    CHECK(g.point(1, Rational(3)) == g.point(0, Rational(2)));
}

TEST_CASE("property: distance equals Dijkstra on a graph with a cycle") {
    std::mt19937_64 rng(3);
    std::uniform_int_distribution<int> len(1, 6), pick(0, 5), frac(0, 8);
    for (int it = 0; it < 40; ++it) {
        GraphSpec s;
        s.vertices = {{"a", false}, {"b", false}, {"c", false}, {"ga", true}, {"gb", true}, {"gc", true}};
        s.edges = {{"ab", "a", "b", len(rng)},   {"bc", "b", "c", len(rng)},   {"ca", "c", "a", len(rng)},
                   {"pa", "ga", "a", len(rng)},  {"pb", "gb", "b", len(rng)},  {"pc", "gc", "c", len(rng)}};
        auto g = build_graph(s);
        for (int k = 0; k < 20; ++k) {
            size_t e1 = static_cast<size_t>(pick(rng)), e2 = static_cast<size_t>(pick(rng));
            GraphPoint x = g.point(e1, g.edge(e1).length * Rational(frac(rng), 8));
            GraphPoint y = g.point(e2, g.edge(e2).length * Rational(frac(rng), 8));
            CHECK(distance(g, x, y) == oracle::dijkstra(g, x, y));
            CHECK(distance(g, x, y) == distance(g, y, x));
        }
    }
}

TEST_CASE("neighborhood of a point on the star") {
    auto g = oracle::star();
    Region r = neighborhood(g, {g.vertex_point(0)}, Rational(5, 2));
    CHECK(r.contains_offset(0, Rational(2)));
    CHECK(r.contains_offset(1, Rational(11, 4)));
    CHECK_FALSE(r.contains_offset(1, Rational(5, 2)));
    CHECK(r.measure() == Rational(2) + Rational(1, 2) + Rational(1, 2));
    CHECK_THROWS_AS(neighborhood(g, {g.vertex_point(0)}, Rational(0)), InputError);
}

TEST_CASE("region union normalizes") {
    Region a(1), b(1);
    a.add(0, {Rational(0), Rational(1)});
    b.add(0, {Rational(1), Rational(2)});
    a.unite(b);
    CHECK(a.on(0).size() == 1);
    CHECK(a.measure() == Rational(2));
    CHECK(b.subset_of(a));
    CHECK_FALSE(a.subset_of(b));
}
