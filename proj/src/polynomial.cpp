#include "melsa/polynomial.hpp"

#include <sstream>
#include <stdexcept>

namespace melsa {

Polynomial Polynomial::variable() { return Polynomial(std::vector<Rational>{0, 1}); }

Polynomial Polynomial::monomial(int degree, const Rational& c) {
    if (c == 0) return {};
    std::vector<Rational> v(degree + 1, Rational(0));
    v[degree] = c;
    return Polynomial(std::move(v));
}

Polynomial Polynomial::from_factors(const std::vector<std::pair<Rational, int>>& factors) {
    Polynomial p(Rational(1));
    for (const auto& [a, k] : factors) {
        if (k < 1) throw std::invalid_argument("factor multiplicity must be >= 1");
        Polynomial lin(std::vector<Rational>{a, 1});
        for (int i = 0; i < k; ++i) p = p * lin;
    }
    return p;
}

Rational Polynomial::leading() const {
    if (c_.empty()) throw std::logic_error("leading coefficient of zero polynomial");
    return c_.back();
}

Rational Polynomial::eval(const Rational& x) const {
    Rational acc(0);
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
    return acc;
}

double Polynomial::eval(double x) const {
    double acc = 0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + to_double(*it);
    return acc;
}

Polynomial Polynomial::operator-() const {
    std::vector<Rational> v(c_);
    for (auto& c : v) c = -c;
    return Polynomial(std::move(v));
}

Polynomial Polynomial::operator+(const Polynomial& o) const {
    std::vector<Rational> v(std::max(c_.size(), o.c_.size()), Rational(0));
    for (size_t i = 0; i < c_.size(); ++i) v[i] += c_[i];
    for (size_t i = 0; i < o.c_.size(); ++i) v[i] += o.c_[i];
    return Polynomial(std::move(v));
}

Polynomial Polynomial::operator-(const Polynomial& o) const { return *this + (-o); }

Polynomial Polynomial::operator*(const Polynomial& o) const {
    if (is_zero() || o.is_zero()) return {};
    std::vector<Rational> v(c_.size() + o.c_.size() - 1, Rational(0));
    for (size_t i = 0; i < c_.size(); ++i)
        for (size_t j = 0; j < o.c_.size(); ++j) v[i + j] += c_[i] * o.c_[j];
    return Polynomial(std::move(v));
}

Polynomial Polynomial::operator*(const Rational& c) const {
    if (c == 0) return {};
    std::vector<Rational> v(c_);
    for (auto& x : v) x *= c;
    return Polynomial(std::move(v));
}

Polynomial Polynomial::derivative() const {
    if (c_.size() <= 1) return {};
    std::vector<Rational> v(c_.size() - 1);
    for (size_t i = 1; i < c_.size(); ++i) v[i - 1] = c_[i] * Rational(static_cast<long>(i));
    return Polynomial(std::move(v));
}

std::pair<Polynomial, Polynomial> Polynomial::divmod(const Polynomial& d) const {
    if (d.is_zero()) throw std::domain_error("polynomial division by zero");
    std::vector<Rational> rem(c_);
    std::vector<Rational> quo;
    int dd = d.degree();
    while (static_cast<int>(rem.size()) - 1 >= dd) {
        Rational lead = rem.back() / d.c_.back();
        int shift = static_cast<int>(rem.size()) - 1 - dd;
        if (static_cast<int>(quo.size()) < shift + 1) quo.resize(shift + 1, Rational(0));
        quo[shift] = lead;
        for (int i = 0; i <= dd; ++i) rem[shift + i] -= lead * d.c_[i];
        while (!rem.empty() && rem.back() == 0) rem.pop_back();
        if (rem.empty()) break;
    }
    return {Polynomial(std::move(quo)), Polynomial(std::move(rem))};
}

Polynomial Polynomial::composed_with_shift(const Rational& a) const {
    // Horner in (u + a)
    Polynomial acc;
    Polynomial lin(std::vector<Rational>{a, 1});
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * lin + Polynomial(*it);
    return acc;
}

std::vector<Rational> Polynomial::series_inverse(int k) const {
    if (c_.empty() || c_[0] == 0)
        throw std::domain_error("series inverse requires nonzero constant term");
    std::vector<Rational> inv(k, Rational(0));
    inv[0] = 1 / c_[0];
    for (int i = 1; i < k; ++i) {
        Rational s(0);
        for (int j = 1; j <= i; ++j) s += coeff(j) * inv[i - j];
        inv[i] = -s / c_[0];
    }
    return inv;
}

std::string Polynomial::str(const std::string& var) const {
    if (is_zero()) return "0";
    std::ostringstream out;
    bool first = true;
    for (int i = degree(); i >= 0; --i) {
        Rational c = coeff(i);
        if (c == 0) continue;
        if (!first) out << (c > 0 ? " + " : " - ");
        else if (c < 0) out << "-";
        first = false;
        Rational a = boost::multiprecision::abs(c);
        if (a != 1 || i == 0) out << rational_str(a);
        if (i > 0) {
            if (a != 1) out << "*";
            out << var;
            if (i > 1) out << "^" << i;
        }
    }
    return out.str();
}

}  // namespace melsa
