#include "eikonal/polynomial.hpp"

#include <algorithm>
#include <stdexcept>

namespace eik {

Polynomial::Polynomial(std::vector<Rational> coeffs) : c_(std::move(coeffs)) { trim(); }

void Polynomial::trim() {
    while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

Polynomial Polynomial::shifted(const std::vector<Rational>& local, const Rational& shift) {
    // (x - shift)^j expanded by repeated multiplication
    Polynomial result;
    Polynomial power({Rational(1)});
    Polynomial lin({-shift, Rational(1)});
    for (const auto& c : local) {
        result += c * power;
        power = power * lin;
    }
    return result;
}

Rational Polynomial::operator()(const Rational& x) const {
    Rational acc;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
    return acc;
}

Polynomial Polynomial::compose_affine(const Rational& a, const Rational& s) const {
    Polynomial result;
    Polynomial power({Rational(1)});
    Polynomial inner({a, s});
    for (const auto& c : c_) {
        result += c * power;
        power = power * inner;
    }
    return result;
}

Polynomial& Polynomial::operator+=(const Polynomial& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
    for (size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
    trim();
    return *this;
}

Polynomial& Polynomial::operator*=(const Rational& s) {
    for (auto& c : c_) c *= s;
    trim();
    return *this;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    if (a.c_.empty() || b.c_.empty()) return {};
    std::vector<Rational> c(a.c_.size() + b.c_.size() - 1);
    for (size_t i = 0; i < a.c_.size(); ++i)
        for (size_t j = 0; j < b.c_.size(); ++j) c[i + j] += a.c_[i] * b.c_[j];
    return Polynomial(std::move(c));
}

PiecewisePolynomial::PiecewisePolynomial(std::vector<Piece> pieces) : pieces_(std::move(pieces)) {
    for (const auto& p : pieces_)
        if (!(p.lo < p.hi)) throw std::invalid_argument("piecewise polynomial: empty piece");
    std::sort(pieces_.begin(), pieces_.end(), [](const Piece& a, const Piece& b) { return a.lo < b.lo; });
    for (size_t i = 1; i < pieces_.size(); ++i)
        if (pieces_[i].lo < pieces_[i - 1].hi)
            throw std::invalid_argument("piecewise polynomial: overlapping pieces");
}

Rational PiecewisePolynomial::operator()(const Rational& x) const {
    for (const auto& p : pieces_)
        if (p.lo <= x && x <= p.hi) return p.p(x);
    return {};
}

std::vector<Rational> PiecewisePolynomial::breakpoints() const {
    std::vector<Rational> b;
    for (const auto& p : pieces_) { b.push_back(p.lo); b.push_back(p.hi); }
    std::sort(b.begin(), b.end());
    b.erase(std::unique(b.begin(), b.end()), b.end());
    return b;
}

namespace {

const PiecewisePolynomial::Piece* piece_at(const std::vector<PiecewisePolynomial::Piece>& ps, const Rational& x) {
    for (const auto& p : ps)
        if (p.lo < x && x < p.hi) return &p;
    return nullptr;
}

std::vector<Rational> merged_breaks(const PiecewisePolynomial& a, const PiecewisePolynomial& b) {
    auto ba = a.breakpoints();
    auto bb = b.breakpoints();
    ba.insert(ba.end(), bb.begin(), bb.end());
    std::sort(ba.begin(), ba.end());
    ba.erase(std::unique(ba.begin(), ba.end()), ba.end());
    return ba;
}

}  // namespace

PiecewisePolynomial PiecewisePolynomial::pull_back(const Rational& a, int s, const Rational& len) const {
    std::vector<Piece> out;
    for (const auto& p : pieces_) {
        Rational r0 = s > 0 ? p.lo - a : a - p.hi;
        Rational r1 = s > 0 ? p.hi - a : a - p.lo;
        r0 = max(r0, Rational(0));
        r1 = min(r1, len);
        if (!(r0 < r1)) continue;
        out.push_back({r0, r1, p.p.compose_affine(a, Rational(s))});
    }
    return PiecewisePolynomial(std::move(out));
}

bool PiecewisePolynomial::equals(const PiecewisePolynomial& o) const {
    auto br = merged_breaks(*this, o);
    for (size_t i = 0; i + 1 < br.size(); ++i) {
        Rational mid = (br[i] + br[i + 1]) / 2;
        const Piece* pa = piece_at(pieces_, mid);
        const Piece* pb = piece_at(o.pieces_, mid);
        Polynomial qa = pa ? pa->p : Polynomial();
        Polynomial qb = pb ? pb->p : Polynomial();
        if (!(qa == qb)) return false;
    }
    return true;
}

PiecewisePolynomial operator+(const PiecewisePolynomial& a, const PiecewisePolynomial& b) {
    auto br = merged_breaks(a, b);
    std::vector<PiecewisePolynomial::Piece> out;
    for (size_t i = 0; i + 1 < br.size(); ++i) {
        Rational mid = (br[i] + br[i + 1]) / 2;
        const auto* pa = piece_at(a.pieces_, mid);
        const auto* pb = piece_at(b.pieces_, mid);
        if (!pa && !pb) continue;
        Polynomial q;
        if (pa) q += pa->p;
        if (pb) q += pb->p;
        out.push_back({br[i], br[i + 1], q});
    }
    return PiecewisePolynomial(std::move(out));
}

PiecewisePolynomial operator*(const Rational& s, const PiecewisePolynomial& a) {
    std::vector<PiecewisePolynomial::Piece> out = a.pieces_;
    for (auto& p : out) p.p *= s;
    return PiecewisePolynomial(std::move(out));
}

}  // namespace eik
