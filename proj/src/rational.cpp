#include "eikonal/rational.hpp"

#include <stdexcept>

namespace eik {

Rational::Rational(long num, long den) {
    if (den == 0) throw std::domain_error("rational with zero denominator");
    v_ = mpq_class(num, den);
    v_.canonicalize();
}

Rational& Rational::operator/=(const Rational& o) {
    if (o.is_zero()) throw std::domain_error("division by zero");
    v_ /= o.v_;
    return *this;
}

Rational Rational::parse(std::string_view text) {
    std::string s(text);
    auto bad = [&]() { return std::invalid_argument("not a rational: \"" + s + "\""); };
    if (s.empty()) throw bad();
    size_t slash = s.find('/');
    auto digits_ok = [](const std::string& part, bool allow_sign) {
        if (part.empty()) return false;
        size_t i = 0;
        if (allow_sign && (part[0] == '-' || part[0] == '+')) i = 1;
        if (i == part.size()) return false;
        for (; i < part.size(); ++i)
            if (part[i] < '0' || part[i] > '9') return false;
        return true;
    };
    std::string num = slash == std::string::npos ? s : s.substr(0, slash);
    std::string den = slash == std::string::npos ? "1" : s.substr(slash + 1);
    if (!digits_ok(num, true) || !digits_ok(den, false)) throw bad();
    if (num[0] == '+') num = num.substr(1);
    mpz_class n(num, 10), d(den, 10);
    if (d == 0) throw bad();
    mpq_class q(n, d);
    q.canonicalize();
    return Rational(q);
}

Rational abs(const Rational& r) { return r.sign() < 0 ? -r : r; }
Rational min(const Rational& a, const Rational& b) { return b < a ? b : a; }
Rational max(const Rational& a, const Rational& b) { return a < b ? b : a; }

}  // namespace eik
