#pragma once

#include "melsa/mellin.hpp"
#include "melsa/saddle.hpp"

#include <vector>

namespace melsa {

// Index data of one elementary iterated integral of monomial forms:
// alpha = (m_1, n_1, ..., m_l, n_l), all entries > -M.
class MultiIndex {
public:
    MultiIndex(std::vector<int> entries, int pole_bound);

    int length() const { return static_cast<int>(entries_.size()) / 2; }
    int pole_bound() const { return pole_bound_; }
    int m(int i) const { return entries_[2 * i]; }      // i in [0, l)
    int n(int i) const { return entries_[2 * i + 1]; }
    const std::vector<int>& entries() const { return entries_; }

    // |alpha| = sum (m_i + n_i + 2M) >= 0, the envelope bookkeeping weight.
    int weight() const;

    bool operator<(const MultiIndex& o) const { return entries_ < o.entries_; }

private:
    std::vector<int> entries_;
    int pole_bound_;
};

// v_j = lambda1^{-1} sum_{i<=j} m_i + lambda2^{-1} sum_{i>j} n_i, j = 0..l.
// The poles of the generalized compensator sit at s = -v_j.
std::vector<Rational> pole_vector(const MultiIndex& alpha, const SaddleChart& chart);

// Generalized compensator prod_{j=0}^{l} (s + v_j)^{-1} in canonical
// partial-fraction form (repeated v_j merged into higher multiplicity).
// The l=1 equal-pole case is the Ecalle-Roussarie compensator.
RationalMellin compensator(const MultiIndex& alpha, const SaddleChart& chart);

// One monomial factor of an elementary integral: index pair plus whether the
// form is x^{m-1}y^n dx or x^m y^{n-1} dy.
struct MonomialEntry {
    int m, n;
    bool is_dy = false;
};

// Exact Mellin transform of the elementary iterated integral of monomial
// forms: lambda1^{-l} ell^l_alpha, with an extra factor -lambda1/lambda2 per
// dy entry (via the on-curve pullback).
RationalMellin monomial_mellin(const std::vector<MonomialEntry>& monomials,
                               const SaddleChart& chart);

// Envelope-certified truncation of the Mellin transform of an elementary
// iterated integral of general (truncated-Laurent) forms.
class MellinSeries {
public:
    MellinSeries(SaddleChart chart, int length, int truncation, Rational envelope);

    const SaddleChart& chart() const { return chart_; }
    int length() const { return length_; }
    int truncation() const { return truncation_; }
    const Rational& envelope() const { return envelope_; }
    const std::map<MultiIndex, Scalar>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    // Asserts |c| <= C 2^{-|alpha|} (the kept-term envelope).
    void add_term(const MultiIndex& alpha, const Scalar& c);

    // Exact finite part: sum of c_alpha * compensator(alpha).
    RationalMellin to_rational_mellin() const;

    // Upper bound on sum_{discarded} |c_alpha|, covering both |alpha| > N and
    // kept-weight tuples lost to the per-form truncations.
    const Rational& discarded_weight() const { return discarded_weight_; }
    void set_discarded_weight(const Rational& w) { discarded_weight_ = w; }

    // e* with sup_{path(t)} |x^{m-1} y^n| <= t^{-e*} for all admissible (m,n);
    // the discarded time-domain tail on [tmin, 1] is bounded by
    // discarded_weight * tmin^{-l e*} / l!.
    Rational sup_exponent() const;
    double discarded_value_bound(double tmin) const;

private:
    SaddleChart chart_;
    int length_;
    int truncation_;
    Rational envelope_;
    Rational discarded_weight_{0};
    std::map<MultiIndex, Scalar> terms_;
};

// Expands the product of l validated form series over the saddle chart,
// keeping |alpha| <= truncation.  Throws if the truncation is too small to
// keep any term of a nonzero product.
MellinSeries elementary_mellin(const std::vector<FormSeries>& forms,
                               const SaddleChart& chart, int truncation);

// sum_{weight > N} C(weight-1, r-1) 2^{-weight}: exact tail of the envelope
// weight series for r-part compositions (r = 2l).  Exposed for tests.
Rational envelope_tail_weight(int r, int N);

// Edge-piece expansion: a truncated Puiseux-type series in t^{1/lambda},
// i.e. a LogMonomialSeries with all log powers zero.
struct EdgeExpansion {
    LogMonomialSeries series;
    bool certified = true;     // false when coefficients were fitted
    double fit_residual = 0.0;
};

EdgeExpansion edge_elementary(const EdgeSeries& edge);

// Least-squares fit of edge coefficients on the exponent lattice from
// quadrature samples (t_i, value_i).  Throws QuadratureError-style failure
// via std::runtime_error when the residual exceeds the threshold.
EdgeExpansion fit_edge_series(const Rational& branch_exponent,
                              const std::vector<Rational>& exponents,
                              const std::vector<std::pair<double, double>>& samples,
                              double residual_threshold);

}  // namespace melsa
