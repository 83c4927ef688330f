#include "melsa/scalar.hpp"

#include <cmath>
#include <cstdio>

namespace melsa {

namespace {
unsigned g_precision_bits = 128;
double g_prune_epsilon = 1e-30;

unsigned bits_to_digits10(unsigned bits) {
    // floor would under-represent; one extra digit keeps the requested bits.
    return static_cast<unsigned>(bits * 0.3010299956639812) + 2;
}
}  // namespace

void set_working_precision(unsigned bits) {
    if (bits < 24) throw std::invalid_argument("working precision below 24 bits");
    g_precision_bits = bits;
    Real::default_precision(bits_to_digits10(bits));
}

unsigned working_precision_bits() { return g_precision_bits; }

double prune_epsilon() { return g_prune_epsilon; }

void set_prune_epsilon(double eps) {
    if (!(eps >= 0)) throw std::invalid_argument("prune epsilon must be >= 0");
    g_prune_epsilon = eps;
}

Rational pow2(long e) {
    Integer one(1);
    if (e >= 0) return Rational(one << static_cast<unsigned>(e));
    return Rational(one, one << static_cast<unsigned>(-e));
}

Rational rational_from_string(const std::string& text) {
    if (text.empty()) throw std::invalid_argument("empty number");
    auto slash = text.find('/');
    if (slash != std::string::npos) {
        Integer num(text.substr(0, slash));
        Integer den(text.substr(slash + 1));
        if (den == 0) throw std::invalid_argument("zero denominator: " + text);
        return Rational(num, den);
    }
    // decimal / scientific: mantissa wholly exact, then shift by the exponent
    std::string t = text;
    long exp10 = 0;
    auto epos = t.find_first_of("eE");
    if (epos != std::string::npos) {
        exp10 = std::stol(t.substr(epos + 1));
        t = t.substr(0, epos);
    }
    auto dot = t.find('.');
    if (dot != std::string::npos) {
        exp10 -= static_cast<long>(t.size() - dot - 1);
        t.erase(dot, 1);
    }
    if (t.empty() || t == "-" || t == "+")
        throw std::invalid_argument("malformed number: " + text);
    for (size_t i = 0; i < t.size(); ++i) {
        if (std::isdigit(static_cast<unsigned char>(t[i]))) continue;
        if (i == 0 && (t[i] == '-' || t[i] == '+')) continue;
        throw std::invalid_argument("malformed number: " + text);
    }
    Rational r{Integer(t)};
    Integer ten(10);
    if (exp10 >= 0) {
        r *= Rational(boost::multiprecision::pow(ten, static_cast<unsigned>(exp10)));
    } else {
        r /= Rational(boost::multiprecision::pow(ten, static_cast<unsigned>(-exp10)));
    }
    return r;
}

std::string rational_str(const Rational& q) {
    if (denominator(q) == 1) return numerator(q).str();
    return numerator(q).str() + "/" + denominator(q).str();
}

std::string real_str(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

double to_double(const Rational& q) { return q.convert_to<double>(); }

Real to_real(const Rational& q) { return Real(q); }

bool Scalar::is_zero() const {
    if (exact()) return std::get<Rational>(v_) == 0;
    return std::get<Real>(v_) == 0;
}

bool Scalar::is_negligible() const {
    if (exact()) return std::get<Rational>(v_) == 0;
    return boost::multiprecision::abs(std::get<Real>(v_)) <= g_prune_epsilon;
}

Scalar Scalar::operator-() const {
    if (exact()) return Scalar(Rational(-std::get<Rational>(v_)));
    return Scalar(Real(-std::get<Real>(v_)));
}

Scalar& Scalar::operator+=(const Scalar& o) {
    if (exact() && o.exact())
        v_ = Rational(std::get<Rational>(v_) + std::get<Rational>(o.v_));
    else
        v_ = Real(real() + o.real());
    return *this;
}

Scalar& Scalar::operator-=(const Scalar& o) {
    if (exact() && o.exact())
        v_ = Rational(std::get<Rational>(v_) - std::get<Rational>(o.v_));
    else
        v_ = Real(real() - o.real());
    return *this;
}

Scalar& Scalar::operator*=(const Scalar& o) {
    if (exact() && o.exact())
        v_ = Rational(std::get<Rational>(v_) * std::get<Rational>(o.v_));
    else
        v_ = Real(real() * o.real());
    return *this;
}

Scalar& Scalar::operator/=(const Scalar& o) {
    if (o.is_zero()) throw std::domain_error("Scalar: division by zero");
    if (exact() && o.exact())
        v_ = Rational(std::get<Rational>(v_) / std::get<Rational>(o.v_));
    else
        v_ = Real(real() / o.real());
    return *this;
}

Scalar Scalar::abs() const {
    if (exact()) return Scalar(Rational(boost::multiprecision::abs(std::get<Rational>(v_))));
    return Scalar(Real(boost::multiprecision::abs(std::get<Real>(v_))));
}

std::string Scalar::str() const {
    if (exact()) return rational_str(std::get<Rational>(v_));
    return real_str(to_double());
}

}  // namespace melsa
