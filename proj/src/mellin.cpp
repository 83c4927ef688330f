#include "melsa/mellin.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace melsa {

namespace {
Rational factorial(int n) {
    Rational f(1);
    for (int i = 2; i <= n; ++i) f *= i;
    return f;
}
}  // namespace

void RationalMellin::add_term(const Rational& a, int k, const Scalar& c) {
    if (k < 1) throw std::invalid_argument("pole multiplicity must be >= 1");
    if (c.is_negligible()) return;
    PoleKey key{a, k};
    auto it = terms_.find(key);
    if (it == terms_.end()) {
        terms_.emplace(key, c);
    } else {
        it->second += c;
        if (it->second.is_negligible()) terms_.erase(it);
    }
}

bool RationalMellin::all_exact() const {
    for (const auto& [key, c] : terms_)
        if (!c.exact()) return false;
    return true;
}

RationalMellin RationalMellin::operator+(const RationalMellin& o) const {
    RationalMellin r(*this);
    for (const auto& [key, c] : o.terms_) r.add_term(key.a, key.k, c);
    return r;
}

RationalMellin RationalMellin::operator-(const RationalMellin& o) const {
    return *this + (-o);
}

RationalMellin RationalMellin::operator-() const {
    RationalMellin r;
    for (const auto& [key, c] : terms_) r.terms_.emplace(key, -c);
    return r;
}

RationalMellin RationalMellin::scaled(const Scalar& c) const {
    RationalMellin r;
    if (c.is_negligible()) return r;
    for (const auto& [key, v] : terms_) {
        Scalar p = v * c;
        if (!p.is_negligible()) r.terms_.emplace(key, p);
    }
    return r;
}

std::vector<std::pair<Rational, int>> RationalMellin::pole_multiset() const {
    std::vector<std::pair<Rational, int>> out;
    for (const auto& [key, c] : terms_) {
        if (!out.empty() && out.back().first == key.a)
            out.back().second = std::max(out.back().second, key.k);
        else
            out.push_back({key.a, key.k});
    }
    return out;
}

std::pair<Polynomial, Polynomial> RationalMellin::to_quotient() const {
    auto poles = pole_multiset();
    Polynomial den = Polynomial::from_factors(poles);
    Polynomial num;
    for (const auto& [key, c] : terms_) {
        if (!c.exact())
            throw std::logic_error("to_quotient requires exact coefficients");
        // den / (s + a)^k, exact by construction
        std::vector<std::pair<Rational, int>> rest;
        for (const auto& [a, k] : poles) {
            int kk = (a == key.a) ? k - key.k : k;
            if (kk > 0) rest.push_back({a, kk});
        }
        num = num + Polynomial::from_factors(rest) * c.rational();
    }
    return {num, den};
}

std::string RationalMellin::str() const {
    if (terms_.empty()) return "0";
    std::ostringstream out;
    bool first = true;
    for (const auto& [key, c] : terms_) {
        if (!first) out << " + ";
        first = false;
        out << "(" << c.str() << ")*(s";
        if (key.a > 0) out << "+" << rational_str(key.a);
        else if (key.a < 0) out << "-" << rational_str(-key.a);
        out << ")^-" << key.k;
    }
    return out.str();
}

void LogMonomialSeries::add_term(const Rational& mu, int j, const Scalar& c) {
    if (j < 0) throw std::invalid_argument("log power must be >= 0");
    if (c.is_negligible()) return;
    auto key = std::make_pair(mu, j);
    auto it = terms_.find(key);
    if (it == terms_.end()) {
        terms_.emplace(key, c);
    } else {
        it->second += c;
        if (it->second.is_negligible()) terms_.erase(it);
    }
}

int LogMonomialSeries::max_log_power() const {
    int m = 0;
    for (const auto& [key, c] : terms_) m = std::max(m, key.second);
    return m;
}

LogMonomialSeries LogMonomialSeries::operator+(const LogMonomialSeries& o) const {
    LogMonomialSeries r(*this);
    for (const auto& [key, c] : o.terms_) r.add_term(key.first, key.second, c);
    return r;
}

LogMonomialSeries LogMonomialSeries::operator-(const LogMonomialSeries& o) const {
    return *this + o.scaled(Scalar(-1));
}

LogMonomialSeries LogMonomialSeries::operator*(const LogMonomialSeries& o) const {
    // t^a log^i t * t^b log^j t = t^{a+b} log^{i+j} t
    LogMonomialSeries r;
    for (const auto& [ka, ca] : terms_)
        for (const auto& [kb, cb] : o.terms_)
            r.add_term(ka.first + kb.first, ka.second + kb.second, ca * cb);
    return r;
}

LogMonomialSeries LogMonomialSeries::scaled(const Scalar& c) const {
    LogMonomialSeries r;
    if (c.is_negligible()) return r;
    for (const auto& [key, v] : terms_) {
        Scalar p = v * c;
        if (!p.is_negligible()) r.terms_.emplace(key, p);
    }
    return r;
}

double LogMonomialSeries::eval(double t) const {
    if (!(t > 0)) throw std::domain_error("log-monomial series defined on (0,1]");
    double lt = std::log(t);
    double acc = 0;
    for (const auto& [key, c] : terms_)
        acc += c.to_double() * std::pow(t, to_double(key.first)) *
               std::pow(lt, key.second);
    return acc;
}

Real LogMonomialSeries::eval(const Real& t) const {
    if (!(t > 0)) throw std::domain_error("log-monomial series defined on (0,1]");
    Real lt = boost::multiprecision::log(t);
    Real acc(0);
    for (const auto& [key, c] : terms_)
        acc += c.real() * boost::multiprecision::pow(t, to_real(key.first)) *
               boost::multiprecision::pow(lt, key.second);
    return acc;
}

std::string LogMonomialSeries::str() const {
    if (terms_.empty()) return "0";
    std::ostringstream out;
    bool first = true;
    for (const auto& [key, c] : terms_) {
        if (!first) out << " + ";
        first = false;
        out << "(" << c.str() << ")*t^(" << rational_str(key.first) << ")";
        if (key.second > 0) out << "*log(t)^" << key.second;
    }
    return out.str();
}

RationalMellin partial_fractions(const Polynomial& num,
                                 const std::vector<std::pair<Rational, int>>& den_factors) {
    int den_degree = 0;
    for (size_t i = 0; i < den_factors.size(); ++i) {
        const auto& [a, k] = den_factors[i];
        if (k < 1) throw std::invalid_argument("factor multiplicity must be >= 1");
        for (size_t j = i + 1; j < den_factors.size(); ++j)
            if (den_factors[j].first == a)
                throw std::invalid_argument("repeated root in factor list");
        den_degree += k;
    }
    if (num.degree() >= den_degree)
        throw std::invalid_argument("partial fractions require deg num < deg den");

    RationalMellin out;
    for (const auto& [a, k] : den_factors) {
        // Around s = -a put u = s + a.  Then num/den = g(u)/u^k with
        // g = num(u-a) / prod_{b != a} (u + (b-a))^{k_b}; the first k Taylor
        // coefficients of g are the coefficients of (s+a)^{-k}, ..., (s+a)^{-1}.
        Polynomial num_u = num.composed_with_shift(-a);
        std::vector<std::pair<Rational, int>> rest;
        for (const auto& [b, kb] : den_factors)
            if (!(b == a)) rest.push_back({b - a, kb});
        Polynomial den_rest = Polynomial::from_factors(rest);
        std::vector<Rational> inv = den_rest.series_inverse(k);
        for (int r = 0; r < k; ++r) {
            Rational g_r(0);
            for (int j = 0; j <= r; ++j) g_r += num_u.coeff(j) * inv[r - j];
            if (g_r != 0) out.add_term(a, k - r, Scalar(g_r));
        }
    }
    return out;
}

RationalMellin partial_fractions(const Polynomial& num, const Polynomial& den,
                                 const std::vector<std::pair<Rational, int>>& den_factors) {
    Polynomial expanded = Polynomial::from_factors(den_factors);
    if (!(expanded == den))
        throw std::invalid_argument("root multiset inconsistent with denominator");
    return partial_fractions(num, den_factors);
}

LogMonomialSeries inverse_mellin(const RationalMellin& f) {
    LogMonomialSeries out;
    for (const auto& [key, c] : f.terms()) {
        int j = key.k - 1;
        Rational scale = ((j % 2 == 0) ? Rational(1) : Rational(-1)) / factorial(j);
        out.add_term(key.a, j, c * Scalar(scale));
    }
    return out;
}

RationalMellin mellin_log_monomial(const Rational& mu, int j) {
    if (j < 0) throw std::invalid_argument("log power must be >= 0");
    RationalMellin out;
    Rational c = ((j % 2 == 0) ? Rational(1) : Rational(-1)) * factorial(j);
    out.add_term(mu, j + 1, Scalar(c));
    return out;
}

RationalMellin mellin_transform(const LogMonomialSeries& series) {
    RationalMellin out;
    for (const auto& [key, c] : series.terms())
        out = out + mellin_log_monomial(key.first, key.second).scaled(c);
    return out;
}

RationalMellin convolve(const RationalMellin& f, const RationalMellin& g) {
    return mellin_transform(inverse_mellin(f) * inverse_mellin(g));
}

}  // namespace melsa
