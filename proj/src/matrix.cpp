#include "eikonal/matrix.hpp"

#include <sstream>
#include <stdexcept>

namespace eik {

Rational dot(const RVector& a, const RVector& b) {
    if (a.size() != b.size()) throw std::invalid_argument("dot: size mismatch");
    Rational s;
    for (size_t i = 0; i < a.size(); ++i)
        if (!a[i].is_zero() && !b[i].is_zero()) s += a[i] * b[i];
    return s;
}

bool is_zero(const RVector& v) {
    for (const auto& x : v)
        if (!x.is_zero()) return false;
    return true;
}

RMatrix RMatrix::identity(size_t n) {
    RMatrix m(n, n);
    for (size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
}

RMatrix RMatrix::outer(const RVector& a, const RVector& b) {
    RMatrix m(a.size(), b.size());
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j) m(i, j) = a[i] * b[j];
    return m;
}

RMatrix RMatrix::from_rows(const std::vector<RVector>& rows) {
    if (rows.empty()) return {};
    RMatrix m(rows.size(), rows[0].size());
    for (size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != m.cols()) throw std::invalid_argument("ragged matrix rows");
        for (size_t j = 0; j < m.cols(); ++j) m(i, j) = rows[i][j];
    }
    return m;
}

RVector RMatrix::row(size_t i) const {
    return RVector(data_.begin() + static_cast<long>(i * cols_),
                   data_.begin() + static_cast<long>((i + 1) * cols_));
}

RMatrix RMatrix::transpose() const {
    RMatrix t(cols_, rows_);
    for (size_t i = 0; i < rows_; ++i)
        for (size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
}

bool RMatrix::is_zero() const { return eik::is_zero(data_); }

bool RMatrix::is_symmetric() const {
    if (rows_ != cols_) return false;
    for (size_t i = 0; i < rows_; ++i)
        for (size_t j = i + 1; j < cols_; ++j)
            if ((*this)(i, j) != (*this)(j, i)) return false;
    return true;
}

Rational RMatrix::frobenius_sq() const {
    Rational s;
    for (const auto& x : data_) s += x * x;
    return s;
}

RVector RMatrix::apply(const RVector& v) const {
    if (v.size() != cols_) throw std::invalid_argument("apply: size mismatch");
    RVector out(rows_);
    for (size_t i = 0; i < rows_; ++i)
        for (size_t j = 0; j < cols_; ++j)
            if (!(*this)(i, j).is_zero() && !v[j].is_zero()) out[i] += (*this)(i, j) * v[j];
    return out;
}

RMatrix& RMatrix::operator+=(const RMatrix& o) {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("matrix add: shape mismatch");
    for (size_t k = 0; k < data_.size(); ++k) data_[k] += o.data_[k];
    return *this;
}

RMatrix& RMatrix::operator-=(const RMatrix& o) {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("matrix sub: shape mismatch");
    for (size_t k = 0; k < data_.size(); ++k) data_[k] -= o.data_[k];
    return *this;
}

RMatrix& RMatrix::operator*=(const Rational& s) {
    for (auto& x : data_) x *= s;
    return *this;
}

RMatrix operator*(const RMatrix& a, const RMatrix& b) {
    if (a.cols_ != b.rows_) throw std::invalid_argument("matrix product: shape mismatch");
    RMatrix c(a.rows_, b.cols_);
    for (size_t i = 0; i < a.rows_; ++i)
        for (size_t k = 0; k < a.cols_; ++k) {
            const Rational& aik = a(i, k);
            if (aik.is_zero()) continue;
            for (size_t j = 0; j < b.cols_; ++j)
                if (!b(k, j).is_zero()) c(i, j) += aik * b(k, j);
        }
    return c;
}

std::string RMatrix::str() const {
    std::ostringstream os;
    os << '[';
    for (size_t i = 0; i < rows_; ++i) {
        os << (i ? "; " : "");
        for (size_t j = 0; j < cols_; ++j) os << (j ? " " : "") << (*this)(i, j);
    }
    os << ']';
    return os.str();
}

RMatrix commutator(const RMatrix& a, const RMatrix& b) { return a * b - b * a; }

RMatrix direct_sum(const std::vector<RMatrix>& blocks) {
    size_t r = 0, c = 0;
    for (const auto& b : blocks) { r += b.rows(); c += b.cols(); }
    RMatrix out(r, c);
    size_t i0 = 0, j0 = 0;
    for (const auto& b : blocks) {
        for (size_t i = 0; i < b.rows(); ++i)
            for (size_t j = 0; j < b.cols(); ++j) out(i0 + i, j0 + j) = b(i, j);
        i0 += b.rows();
        j0 += b.cols();
    }
    return out;
}

RVector EchelonBasis::reduce(RVector v) const {
    if (v.size() != n_) throw std::invalid_argument("echelon: size mismatch");
    for (size_t r = 0; r < rows_.size(); ++r) {
        Rational f = v[pivots_[r]];
        if (f.is_zero()) continue;
        const RVector& row = rows_[r];
        for (size_t j = 0; j < n_; ++j)
            if (!row[j].is_zero()) v[j] -= f * row[j];
    }
    return v;
}

bool EchelonBasis::contains(const RVector& v) const { return is_zero(reduce(v)); }

bool EchelonBasis::add(const RVector& v) {
    RVector w = reduce(v);
    size_t p = 0;
    while (p < n_ && w[p].is_zero()) ++p;
    if (p == n_) return false;
    Rational inv = Rational(1) / w[p];
    for (auto& x : w) x *= inv;
    for (auto& row : rows_) {
        Rational f = row[p];
        if (f.is_zero()) continue;
        for (size_t j = 0; j < n_; ++j)
            if (!w[j].is_zero()) row[j] -= f * w[j];
    }
    rows_.push_back(std::move(w));
    pivots_.push_back(p);
    return true;
}

size_t rank(const std::vector<RVector>& rows) {
    if (rows.empty()) return 0;
    EchelonBasis e(rows[0].size());
    for (const auto& r : rows) e.add(r);
    return e.size();
}

size_t rank(const RMatrix& a) {
    std::vector<RVector> rows;
    for (size_t i = 0; i < a.rows(); ++i) rows.push_back(a.row(i));
    if (rows.empty()) return 0;
    return rank(rows);
}

std::vector<RVector> nullspace(const RMatrix& a) {
    EchelonBasis e(a.cols());
    for (size_t i = 0; i < a.rows(); ++i) e.add(a.row(i));
    return nullspace(e);
}

std::vector<RVector> nullspace(const EchelonBasis& e) {
    size_t n = e.ambient();
    std::vector<bool> is_pivot(n, false);
    std::vector<size_t> pivot_of_row;
    for (const auto& row : e.rows()) {
        size_t p = 0;
        while (row[p].is_zero()) ++p;
        is_pivot[p] = true;
        pivot_of_row.push_back(p);
    }
    std::vector<RVector> basis;
    for (size_t f = 0; f < n; ++f) {
        if (is_pivot[f]) continue;
        RVector x(n);
        x[f] = 1;
        for (size_t r = 0; r < e.rows().size(); ++r) x[pivot_of_row[r]] = -e.rows()[r][f];
        basis.push_back(std::move(x));
    }
    return basis;
}

RVector primitive_integer(const RVector& v) {
    if (is_zero(v)) throw std::invalid_argument("primitive_integer: zero vector");
    mpz_class l = 1;
    for (const auto& x : v) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.den().get_mpz_t());
    std::vector<mpz_class> ints;
    mpz_class g = 0;
    for (const auto& x : v) {
        mpz_class k = x.num() * (l / x.den());
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), k.get_mpz_t());
        ints.push_back(k);
    }
    int sgn_first = 0;
    for (const auto& k : ints)
        if (k != 0) { sgn_first = sgn(k); break; }
    RVector out;
    for (const auto& k : ints) out.emplace_back(mpq_class(mpz_class(k * sgn_first / g)));
    return out;
}

}  // namespace eik
