#pragma once

#include "melsa/scalar.hpp"

#include <utility>
#include <vector>

namespace melsa {

// Dense univariate polynomial with exact rational coefficients, ascending
// order, no trailing zeros. Degree of the zero polynomial is -1.
class Polynomial {
public:
    Polynomial() = default;
    Polynomial(const Rational& c) { if (c != 0) c_ = {c}; }
    Polynomial(int c) : Polynomial(Rational(c)) {}
    explicit Polynomial(std::vector<Rational> coeffs) : c_(std::move(coeffs)) { trim(); }

    static Polynomial variable();
    static Polynomial monomial(int degree, const Rational& c);
    // Product of (v + a)^k over the given (a, k) list.
    static Polynomial from_factors(const std::vector<std::pair<Rational, int>>& factors);

    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    Rational coeff(int i) const {
        return (i >= 0 && i < static_cast<int>(c_.size())) ? c_[i] : Rational(0);
    }
    const std::vector<Rational>& coeffs() const { return c_; }
    Rational leading() const;

    Rational eval(const Rational& x) const;
    double eval(double x) const;

    Polynomial operator-() const;
    Polynomial operator+(const Polynomial& o) const;
    Polynomial operator-(const Polynomial& o) const;
    Polynomial operator*(const Polynomial& o) const;
    Polynomial operator*(const Rational& c) const;
    bool operator==(const Polynomial& o) const { return c_ == o.c_; }

    Polynomial derivative() const;

    // Exact Euclidean division; throws on zero divisor.
    std::pair<Polynomial, Polynomial> divmod(const Polynomial& d) const;

    // p(u + a) as a polynomial in u.
    Polynomial composed_with_shift(const Rational& a) const;

    // First k coefficients of 1/p as a power series; requires p(0) != 0.
    std::vector<Rational> series_inverse(int k) const;

    std::string str(const std::string& var = "s") const;

private:
    void trim() { while (!c_.empty() && c_.back() == 0) c_.pop_back(); }
    std::vector<Rational> c_;
};

}  // namespace melsa
