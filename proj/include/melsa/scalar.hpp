#pragma once

#include <boost/multiprecision/gmp.hpp>
#include <boost/multiprecision/mpfr.hpp>

#include <stdexcept>
#include <string>
#include <variant>

namespace melsa {

using Integer = boost::multiprecision::mpz_int;
using Rational = boost::multiprecision::mpq_rational;
// Variable-precision float; precision is set globally via set_working_precision.
using Real = boost::multiprecision::mpfr_float;

// Working precision for the non-exact coefficient path (bits of mantissa,
// default 128) and the magnitude below which non-exact coefficients are
// pruned during canonicalization (default 1e-30).
void set_working_precision(unsigned bits);
unsigned working_precision_bits();
double prune_epsilon();
void set_prune_epsilon(double eps);

// 2^e for any integer e (exact).
Rational pow2(long e);

// Exact parse of "n", "n/d", or decimal/scientific notation ("-2.5e-3").
Rational rational_from_string(const std::string& text);

std::string rational_str(const Rational& q);      // "n" or "n/d"
std::string real_str(double x);                   // 17 significant digits
double to_double(const Rational& q);
Real to_real(const Rational& q);

// Coefficient that is either an exact rational or a working-precision real.
// Arithmetic stays exact as long as both operands are exact.
class Scalar {
public:
    Scalar() : v_(Rational(0)) {}
    Scalar(int n) : v_(Rational(n)) {}
    Scalar(long n) : v_(Rational(n)) {}
    Scalar(const Rational& q) : v_(q) {}
    Scalar(const Real& r) : v_(r) {}
    explicit Scalar(double x) : v_(Real(x)) {}

    bool exact() const { return std::holds_alternative<Rational>(v_); }

    const Rational& rational() const {
        if (!exact()) throw std::logic_error("Scalar: not exact");
        return std::get<Rational>(v_);
    }
    Real real() const {
        return exact() ? to_real(std::get<Rational>(v_)) : std::get<Real>(v_);
    }
    double to_double() const {
        return exact() ? melsa::to_double(std::get<Rational>(v_))
                       : std::get<Real>(v_).convert_to<double>();
    }

    // Exact zero for rationals; reals additionally count as zero below the
    // prune threshold so arithmetic residue does not accumulate dead terms.
    bool is_zero() const;
    bool is_negligible() const;

    Scalar operator-() const;
    Scalar& operator+=(const Scalar& o);
    Scalar& operator-=(const Scalar& o);
    Scalar& operator*=(const Scalar& o);
    Scalar& operator/=(const Scalar& o);

    friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
    friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
    friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
    friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }

    Scalar abs() const;
    std::string str() const;

private:
    std::variant<Rational, Real> v_;
};

}  // namespace melsa
