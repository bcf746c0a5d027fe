#ifndef EIKONAL_POLYNOMIAL_HPP
#define EIKONAL_POLYNOMIAL_HPP

#include <vector>

#include "eikonal/rational.hpp"

namespace eik {

/** Polynomial with rational coefficients, c[0] + c[1] x + ... */
class Polynomial {
public:
    Polynomial() = default;
    explicit Polynomial(std::vector<Rational> coeffs);
    static Polynomial constant(const Rational& c) { return Polynomial({c}); }
    /** Builds sum c_j (x - shift)^j. */
    static Polynomial shifted(const std::vector<Rational>& local, const Rational& shift);

    const std::vector<Rational>& coeffs() const { return c_; }
    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    Rational operator()(const Rational& x) const;
    /** p(a + s x) */
    Polynomial compose_affine(const Rational& a, const Rational& s) const;

    Polynomial& operator+=(const Polynomial& o);
    Polynomial& operator*=(const Rational& s);
    friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
    friend Polynomial operator*(const Rational& s, Polynomial a) { return a *= s; }
    friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
    friend bool operator==(const Polynomial& a, const Polynomial& b) { return a.c_ == b.c_; }

private:
    void trim();
    std::vector<Rational> c_;
};

/**
 * Piecewise polynomial on closed intervals [lo, hi]; zero outside all pieces.
 * Pieces are sorted and non-overlapping except at shared endpoints, where the
 * left piece wins.
 */
class PiecewisePolynomial {
public:
    struct Piece {
        Rational lo, hi;
        Polynomial p;
        friend bool operator==(const Piece&, const Piece&) = default;
    };

    PiecewisePolynomial() = default;
    explicit PiecewisePolynomial(std::vector<Piece> pieces);

    const std::vector<Piece>& pieces() const { return pieces_; }
    Rational operator()(const Rational& x) const;
    /** Sorted breakpoints of all pieces. */
    std::vector<Rational> breakpoints() const;

    /** Restrict to [lo,hi] and re-express in r with x = a + s r, r in [0, len]. */
    PiecewisePolynomial pull_back(const Rational& a, int s, const Rational& len) const;

    /** Exact equality as functions on the union of both supports (checks each refined piece). */
    bool equals(const PiecewisePolynomial& o) const;

    friend PiecewisePolynomial operator+(const PiecewisePolynomial& a, const PiecewisePolynomial& b);
    friend PiecewisePolynomial operator*(const Rational& s, const PiecewisePolynomial& a);

private:
    std::vector<Piece> pieces_;
};

}  // namespace eik

#endif
