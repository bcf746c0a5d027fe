#ifndef EIKONAL_MATRIX_HPP
#define EIKONAL_MATRIX_HPP

#include <cstddef>
#include <string>
#include <vector>

#include "eikonal/rational.hpp"

namespace eik {

using RVector = std::vector<Rational>;

Rational dot(const RVector& a, const RVector& b);
bool is_zero(const RVector& v);

/** Dense row-major rational matrix. */
class RMatrix {
public:
    RMatrix() = default;
    RMatrix(size_t rows, size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
    static RMatrix identity(size_t n);
    static RMatrix outer(const RVector& a, const RVector& b);
    static RMatrix from_rows(const std::vector<RVector>& rows);

    size_t rows() const { return rows_; }
    size_t cols() const { return cols_; }
    Rational& operator()(size_t i, size_t j) { return data_[i * cols_ + j]; }
    const Rational& operator()(size_t i, size_t j) const { return data_[i * cols_ + j]; }
    const std::vector<Rational>& data() const { return data_; }

    RVector row(size_t i) const;
    RMatrix transpose() const;
    bool is_zero() const;
    bool is_symmetric() const;
    Rational frobenius_sq() const;
    RVector apply(const RVector& v) const;

    RMatrix& operator+=(const RMatrix& o);
    RMatrix& operator-=(const RMatrix& o);
    RMatrix& operator*=(const Rational& s);
    friend RMatrix operator+(RMatrix a, const RMatrix& b) { return a += b; }
    friend RMatrix operator-(RMatrix a, const RMatrix& b) { return a -= b; }
    friend RMatrix operator*(RMatrix a, const Rational& s) { return a *= s; }
    friend RMatrix operator*(const Rational& s, RMatrix a) { return a *= s; }
    friend RMatrix operator*(const RMatrix& a, const RMatrix& b);
    friend bool operator==(const RMatrix& a, const RMatrix& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
    }

    std::string str() const;

private:
    size_t rows_ = 0, cols_ = 0;
    std::vector<Rational> data_;
};

RMatrix commutator(const RMatrix& a, const RMatrix& b);
/** Block-diagonal direct sum. */
RMatrix direct_sum(const std::vector<RMatrix>& blocks);

/**
 * Incrementally maintained reduced row echelon basis of a subspace of Q^n.
 * Every stored row has a pivot 1 that is zero in all other rows.
 */
class EchelonBasis {
public:
    explicit EchelonBasis(size_t n = 0) : n_(n) {}
    size_t ambient() const { return n_; }
    size_t size() const { return rows_.size(); }
    /** Reduces v against the basis; returns the residual. */
    RVector reduce(RVector v) const;
    bool contains(const RVector& v) const;
    /** Adds v if independent; returns whether the basis grew. */
    bool add(const RVector& v);
    const std::vector<RVector>& rows() const { return rows_; }

private:
    size_t n_;
    std::vector<RVector> rows_;
    std::vector<size_t> pivots_;
};

size_t rank(const RMatrix& a);
size_t rank(const std::vector<RVector>& rows);
/** Basis of {x : A x = 0}. */
std::vector<RVector> nullspace(const RMatrix& a);
/** Basis of the vectors orthogonal (in the equation sense) to all rows of the echelon basis. */
std::vector<RVector> nullspace(const EchelonBasis& rows);
/** Scales a nonzero vector to a primitive integer vector whose first nonzero entry is positive. */
RVector primitive_integer(const RVector& v);

}  // namespace eik

#endif
