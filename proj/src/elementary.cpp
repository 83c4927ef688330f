#include "melsa/elementary.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <sstream>
#include <stdexcept>

namespace melsa {

MultiIndex::MultiIndex(std::vector<int> entries, int pole_bound)
    : entries_(std::move(entries)), pole_bound_(pole_bound) {
    if (entries_.empty() || entries_.size() % 2 != 0)
        throw std::invalid_argument("multi-index must have 2l entries, l >= 1");
    for (int e : entries_)
        if (e <= -pole_bound_)
            throw std::invalid_argument("multi-index entry below -M");
}

int MultiIndex::weight() const {
    int s = 0;
    for (int e : entries_) s += e + pole_bound_;
    return s;
}

std::vector<Rational> pole_vector(const MultiIndex& alpha, const SaddleChart& chart) {
    int l = alpha.length();
    Rational inv1 = 1 / chart.lambda1;
    Rational inv2 = 1 / chart.lambda2;
    std::vector<Rational> v(l + 1, Rational(0));
    for (int j = 0; j <= l; ++j) {
        Rational s(0);
        for (int i = 0; i < j; ++i) s += inv1 * alpha.m(i);
        for (int i = j; i < l; ++i) s += inv2 * alpha.n(i);
        v[j] = s;
    }
    return v;
}

RationalMellin compensator(const MultiIndex& alpha, const SaddleChart& chart) {
    std::vector<Rational> v = pole_vector(alpha, chart);
    std::sort(v.begin(), v.end());
    std::vector<std::pair<Rational, int>> factors;
    for (const Rational& vj : v) {
        if (!factors.empty() && factors.back().first == vj)
            ++factors.back().second;
        else
            factors.push_back({vj, 1});
    }
    return partial_fractions(Polynomial(Rational(1)), factors);
}

RationalMellin monomial_mellin(const std::vector<MonomialEntry>& monomials,
                               const SaddleChart& chart) {
    if (monomials.empty()) throw std::invalid_argument("empty monomial list");
    std::vector<int> entries;
    Rational factor = 1;
    Rational l1inv = 1 / chart.lambda1;
    for (const auto& mono : monomials) {
        entries.push_back(mono.m);
        entries.push_back(mono.n);
        factor *= l1inv;
        if (mono.is_dy) factor *= -chart.mu_ratio();
    }
    MultiIndex alpha(entries, chart.pole_bound);
    return compensator(alpha, chart).scaled(Scalar(factor));
}

MellinSeries::MellinSeries(SaddleChart chart, int length, int truncation,
                           Rational envelope)
    : chart_(std::move(chart)), length_(length), truncation_(truncation),
      envelope_(std::move(envelope)) {
    if (length_ < 1) throw std::invalid_argument("series length must be >= 1");
    if (truncation_ < 1) throw std::invalid_argument("series truncation must be >= 1");
    if (envelope_ < 0) throw std::invalid_argument("envelope must be >= 0");
}

void MellinSeries::add_term(const MultiIndex& alpha, const Scalar& c) {
    if (alpha.length() != length_)
        throw std::invalid_argument("multi-index length mismatch");
    if (alpha.weight() > truncation_)
        throw std::invalid_argument("kept term beyond truncation");
    if (c.is_negligible()) return;
    Rational bound = envelope_ * pow2(-alpha.weight());
    bool violated;
    if (c.exact())
        violated = boost::multiprecision::abs(c.rational()) > bound;
    else
        violated = std::abs(c.to_double()) > to_double(bound) * (1 + 1e-9);
    if (violated)
        throw std::logic_error("kept-term envelope |c| <= C 2^{-|alpha|} violated");
    auto it = terms_.find(alpha);
    if (it == terms_.end()) terms_.emplace(alpha, c);
    else {
        it->second += c;
        if (it->second.is_negligible()) terms_.erase(it);
    }
}

RationalMellin MellinSeries::to_rational_mellin() const {
    RationalMellin out;
    Rational scale = 1;
    for (int i = 0; i < length_; ++i) scale /= chart_.lambda1;
    for (const auto& [alpha, c] : terms_)
        out = out + compensator(alpha, chart_).scaled(c * Scalar(scale));
    return out;
}

Rational MellinSeries::sup_exponent() const {
    // On the saddle path at level t: y = t^{1/l2} x^{-mu}, so
    // x^{m-1} y^n = t^{n/l2} x^{m-1-n*mu}, whose sup over x in [t^{1/l1}, 1]
    // is t^{min(n/l2, (m-1)/l1)}.  Minimizing over admissible m, n > -M
    // gives the exponent -e* = min(-(M-1)/l2, -M/l1).
    const int M = chart_.pole_bound;
    Rational e1 = Rational(M) / chart_.lambda1;
    Rational e2 = Rational(M - 1) / chart_.lambda2;
    Rational e = e1 > e2 ? e1 : e2;
    return e > 0 ? e : Rational(0);
}

double MellinSeries::discarded_value_bound(double tmin) const {
    if (discarded_weight_ == 0) return 0.0;
    if (!(tmin > 0 && tmin <= 1)) throw std::invalid_argument("tmin must be in (0,1]");
    double lfact = 1;
    for (int i = 2; i <= length_; ++i) lfact *= i;
    return to_double(discarded_weight_) *
           std::pow(tmin, -to_double(sup_exponent()) * length_) / lfact;
}

Rational envelope_tail_weight(int r, int N) {
    // sum_{sigma > N} C(sigma-1, r-1) 2^{-sigma}, exact: sum terms until the
    // ratio falls below 3/4, then close with the geometric bound.
    if (r < 1) throw std::invalid_argument("r must be >= 1");
    int start = std::max(N + 1, r);
    // binomial C(start-1, r-1)
    Rational binom = 1;
    for (int i = 1; i <= r - 1; ++i)
        binom = binom * (start - i) / i;
    Rational term = binom * pow2(-start);
    Rational total = 0;
    int sigma = start;
    while (true) {
        // ratio t_{sigma+1}/t_sigma = sigma / (2 (sigma - r + 1))
        Rational ratio = Rational(sigma) / (2 * (sigma - r + 1));
        if (ratio <= Rational(3, 4)) {
            total += term / (1 - ratio);  // geometric majorant from here on
            return total;
        }
        total += term;
        term *= ratio;
        ++sigma;
    }
}

namespace {

// Kept monomials of a pulled-back form, as (m, n, sigma=m+n+2M, coeff).
struct KeptMonomial {
    int m, n, sigma;
    Scalar c;
};

}  // namespace

MellinSeries elementary_mellin(const std::vector<FormSeries>& forms,
                               const SaddleChart& chart, int truncation) {
    if (forms.empty()) throw std::invalid_argument("no forms given");
    const int l = static_cast<int>(forms.size());
    const int M = chart.pole_bound;

    std::vector<std::vector<KeptMonomial>> kept(l);
    Rational envelope = 1;
    for (int i = 0; i < l; ++i) {
        FormSeries pulled = pullback_form(chart, forms[i]);
        envelope *= pulled.envelope() * pow2(2 * M);
        for (const auto& [mn, c] : pulled.dx_coeffs())
            kept[i].push_back({mn.first, mn.second, mn.first + mn.second + 2 * M, c});
    }
    Rational l1_scale = 1;
    for (int i = 0; i < l; ++i) l1_scale /= chart.lambda1;
    // The scale enters the envelope so that |c_alpha| <= C 2^{-|alpha|} holds
    // for the stored coefficients, which include the lambda1^{-l} factor.
    Rational abs_scale = boost::multiprecision::abs(l1_scale);
    envelope *= abs_scale;

    MellinSeries series(chart, l, truncation, envelope);

    bool any_zero_form = false;
    for (int i = 0; i < l; ++i)
        if (kept[i].empty()) any_zero_form = true;

    if (!any_zero_form) {
        // depth-first product expansion, pruning on the weight budget
        std::vector<int> pick(l, 0);
        std::vector<int> entries(2 * l, 0);
        std::function<void(int, int, Scalar)> expand = [&](int i, int weight, Scalar prod) {
            if (weight > truncation) return;
            if (i == l) {
                series.add_term(MultiIndex(entries, M), prod * Scalar(l1_scale));
                return;
            }
            for (const auto& mono : kept[i]) {
                if (weight + mono.sigma > truncation) continue;
                entries[2 * i] = mono.m;
                entries[2 * i + 1] = mono.n;
                expand(i + 1, weight + mono.sigma, prod * mono.c);
            }
        };
        expand(0, 0, Scalar(Rational(1)));
        if (series.terms().empty()) {
            std::ostringstream msg;
            msg << "truncation " << truncation << " keeps no term of the product";
            throw std::invalid_argument(msg.str());
        }
    }

    // Discarded weight: tuples with |alpha| > N, plus tuples whose factor was
    // dropped by its per-form truncation (each per-factor envelope series sums
    // to at most sum_{sigma>=2}(sigma-1)2^{-sigma} = 1 in normalized units).
    Rational discarded = envelope_tail_weight(2 * l, truncation);
    for (int i = 0; i < l; ++i)
        discarded += envelope_tail_weight(2, forms[i].truncation() + 2 * M);
    series.set_discarded_weight(envelope * discarded);
    return series;
}

EdgeExpansion edge_elementary(const EdgeSeries& edge) {
    edge.validate();
    EdgeExpansion out;
    for (const auto& [q, c] : edge.coefficients) out.series.add_term(q, 0, c);
    return out;
}

EdgeExpansion fit_edge_series(const Rational& branch_exponent,
                              const std::vector<Rational>& exponents,
                              const std::vector<std::pair<double, double>>& samples,
                              double residual_threshold) {
    if (branch_exponent <= 0)
        throw std::invalid_argument("branch exponent must be positive");
    const size_t k = exponents.size();
    if (samples.size() < k)
        throw std::invalid_argument("fewer samples than fit coefficients");
    Rational step = 1 / branch_exponent;
    for (const Rational& q : exponents)
        if (denominator(q / step) != 1)
            throw std::invalid_argument("fit exponent off the lattice (1/lambda)Z");

    // normal equations of the least-squares problem, solved by Gaussian
    // elimination in long double (systems here are tiny)
    std::vector<std::vector<long double>> ata(k, std::vector<long double>(k, 0.0L));
    std::vector<long double> atb(k, 0.0L);
    for (const auto& [t, v] : samples) {
        std::vector<long double> row(k);
        for (size_t j = 0; j < k; ++j)
            row[j] = std::pow(static_cast<long double>(t),
                              static_cast<long double>(to_double(exponents[j])));
        for (size_t i = 0; i < k; ++i) {
            for (size_t j = 0; j < k; ++j) ata[i][j] += row[i] * row[j];
            atb[i] += row[i] * v;
        }
    }
    for (size_t col = 0; col < k; ++col) {
        size_t piv = col;
        for (size_t r = col + 1; r < k; ++r)
            if (std::abs(ata[r][col]) > std::abs(ata[piv][col])) piv = r;
        std::swap(ata[col], ata[piv]);
        std::swap(atb[col], atb[piv]);
        if (ata[col][col] == 0.0L)
            throw std::runtime_error("edge fit: singular normal equations");
        for (size_t r = 0; r < k; ++r) {
            if (r == col) continue;
            long double f = ata[r][col] / ata[col][col];
            for (size_t c = col; c < k; ++c) ata[r][c] -= f * ata[col][c];
            atb[r] -= f * atb[col];
        }
    }
    std::vector<double> coeffs(k);
    for (size_t i = 0; i < k; ++i)
        coeffs[i] = static_cast<double>(atb[i] / ata[i][i]);

    double residual = 0;
    for (const auto& [t, v] : samples) {
        double fit = 0;
        for (size_t j = 0; j < k; ++j) fit += coeffs[j] * std::pow(t, to_double(exponents[j]));
        residual = std::max(residual, std::abs(fit - v));
    }
    if (residual > residual_threshold) {
        std::ostringstream msg;
        msg << "edge fit residual " << residual << " above threshold "
            << residual_threshold;
        throw std::runtime_error(msg.str());
    }
    EdgeExpansion out;
    out.certified = false;
    out.fit_residual = residual;
    for (size_t j = 0; j < k; ++j)
        out.series.add_term(exponents[j], 0, Scalar(coeffs[j]));
    return out;
}

}  // namespace melsa
