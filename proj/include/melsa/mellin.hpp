#pragma once

#include "melsa/polynomial.hpp"
#include "melsa/scalar.hpp"

#include <map>
#include <utility>
#include <vector>

namespace melsa {

// Sign conventions, fixed once for the whole library:
//   * a RationalMellin term (a, k) -> c stands for  c * (s + a)^{-k};
//     the actual pole in the s-plane is at s = -a.
//   * its inverse Mellin transform on (0,1] is
//     c * (-1)^{k-1}/(k-1)! * t^a * (log t)^{k-1},
//   so the time-domain exponent equals the stored a.
// A LogMonomialSeries term (mu, j) -> c stands for  c * t^mu * (log t)^j.

struct PoleKey {
    Rational a;  // term (s + a)^{-k}
    int k;       // multiplicity, >= 1
    bool operator<(const PoleKey& o) const {
        if (a != o.a) return a < o.a;
        return k < o.k;
    }
    bool operator==(const PoleKey& o) const { return a == o.a && k == o.k; }
};

// Rational function of s vanishing at infinity, kept in canonical
// partial-fraction form: at most one entry per (a, k), no zero coefficients.
class RationalMellin {
public:
    RationalMellin() = default;

    void add_term(const Rational& a, int k, const Scalar& c);
    const std::map<PoleKey, Scalar>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    bool all_exact() const;

    RationalMellin operator+(const RationalMellin& o) const;
    RationalMellin operator-(const RationalMellin& o) const;
    RationalMellin operator-() const;
    RationalMellin scaled(const Scalar& c) const;

    // Distinct pole locations a with their maximal multiplicity, ascending in a.
    std::vector<std::pair<Rational, int>> pole_multiset() const;

    // Recombination over the common denominator prod (s+a)^k.  Exact
    // coefficients only; returns (numerator, denominator).
    std::pair<Polynomial, Polynomial> to_quotient() const;

    std::string str() const;

private:
    std::map<PoleKey, Scalar> terms_;
};

// Finite sum of terms c * t^mu * (log t)^j, canonical and sorted by (mu, j).
class LogMonomialSeries {
public:
    LogMonomialSeries() = default;

    void add_term(const Rational& mu, int j, const Scalar& c);
    const std::map<std::pair<Rational, int>, Scalar>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    int max_log_power() const;

    LogMonomialSeries operator+(const LogMonomialSeries& o) const;
    LogMonomialSeries operator-(const LogMonomialSeries& o) const;
    LogMonomialSeries operator*(const LogMonomialSeries& o) const;
    LogMonomialSeries scaled(const Scalar& c) const;

    double eval(double t) const;
    Real eval(const Real& t) const;

    std::string str() const;

private:
    std::map<std::pair<Rational, int>, Scalar> terms_;
};

// num / prod (s+a)^k in canonical partial fractions.  The factor list is the
// exact root data of the denominator; multiplicities must be >= 1 and the a
// values pairwise distinct.  Requires deg num < deg den.
RationalMellin partial_fractions(const Polynomial& num,
                                 const std::vector<std::pair<Rational, int>>& den_factors);

// Same, with the denominator supplied as a polynomial; the factor list is
// checked against it by exact expansion.
RationalMellin partial_fractions(const Polynomial& num, const Polynomial& den,
                                 const std::vector<std::pair<Rational, int>>& den_factors);

// Termwise residue rule (s+a)^{-k} -> t^a (-log t)^{k-1}/(k-1)!.
LogMonomialSeries inverse_mellin(const RationalMellin& f);

// M[t^mu (log t)^j](s) = (-1)^j j! (s+mu)^{-(j+1)} on (0,1].
RationalMellin mellin_log_monomial(const Rational& mu, int j);

// Termwise Mellin transform of a finite log-monomial sum; exact inverse of
// inverse_mellin.
RationalMellin mellin_transform(const LogMonomialSeries& series);

// Mellin-dual of the pointwise product on (0,1]: transform both factors to
// the time domain, multiply, transform back.  On simple poles this reduces to
// 1/(s+a) * 1/(s+b) = 1/(s+a+b); on repeated poles it carries the binomial
// factor, e.g. (s+a)^{-2} conv (s+b)^{-2} = 2 (s+a+b)^{-3}.
RationalMellin convolve(const RationalMellin& f, const RationalMellin& g);

}  // namespace melsa
