#include "melsa/saddle.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace melsa {

FormSeries::FormSeries(CoeffMap dx, CoeffMap dy, int truncation,
                       std::optional<Rational> envelope)
    : dx_(std::move(dx)), dy_(std::move(dy)), truncation_(truncation) {
    if (truncation_ < 1) throw std::invalid_argument("form truncation must be >= 1");
    for (auto* part : {&dx_, &dy_}) {
        for (auto it = part->begin(); it != part->end();) {
            if (it->second.is_negligible()) it = part->erase(it);
            else ++it;
        }
    }
    if (envelope) {
        if (*envelope <= 0) throw std::invalid_argument("envelope constant must be > 0");
        envelope_ = *envelope;
        envelope_declared_ = true;
    }
}

double FormSeries::eval_dx_coefficient(double x, double y) const {
    double acc = 0;
    for (const auto& [mn, c] : dx_)
        acc += c.to_double() * std::pow(x, mn.first - 1) * std::pow(y, mn.second);
    return acc;
}

double FormSeries::eval_dy_coefficient(double x, double y) const {
    double acc = 0;
    for (const auto& [mn, c] : dy_)
        acc += c.to_double() * std::pow(x, mn.first) * std::pow(y, mn.second - 1);
    return acc;
}

namespace {

std::string index_str(int m, int n) {
    std::ostringstream o;
    o << "(" << m << "," << n << ")";
    return o.str();
}

// |c| as an exact upper bound: rationals verbatim, reals rounded up slightly.
Rational coeff_abs_bound(const Scalar& c) {
    if (c.exact()) return boost::multiprecision::abs(c.rational());
    double a = std::abs(c.to_double());
    return rational_from_string(real_str(a * (1 + 1e-15) + 1e-300));
}

}  // namespace

std::vector<FormSeries> validate_chart(const SaddleChart& chart,
                                       std::vector<FormSeries> forms) {
    if (chart.lambda1 <= 0 || chart.lambda2 <= 0)
        throw std::invalid_argument("hyperbolicity exponents must be positive");
    if (chart.pole_bound < 0)
        throw std::invalid_argument("pole bound M must be >= 0");
    if (chart.scale <= 0)
        throw std::invalid_argument("scale must be positive");

    const int M = chart.pole_bound;
    for (size_t f = 0; f < forms.size(); ++f) {
        FormSeries& form = forms[f];
        Rational max_scaled(0);
        for (auto* part : {&form.dx_, &form.dy_}) {
            for (const auto& [mn, c] : *part) {
                auto [m, n] = mn;
                if (m <= -M || n <= -M) {
                    std::ostringstream msg;
                    msg << "form " << f + 1 << ": index " << index_str(m, n)
                        << " below -M (M=" << M << ")";
                    throw std::invalid_argument(msg.str());
                }
                if (m + n > form.truncation_) {
                    std::ostringstream msg;
                    msg << "form " << f + 1 << ": index " << index_str(m, n)
                        << " beyond truncation " << form.truncation_;
                    throw std::invalid_argument(msg.str());
                }
                Rational scaled = coeff_abs_bound(c) * pow2(m + n);
                if (scaled > max_scaled) max_scaled = scaled;
            }
        }
        if (form.envelope_declared_) {
            if (max_scaled > form.envelope_) {
                std::ostringstream msg;
                msg << "form " << f + 1 << ": envelope violated (need C >= "
                    << rational_str(max_scaled) << ", declared "
                    << rational_str(form.envelope_) << ")";
                throw std::invalid_argument(msg.str());
            }
        } else {
            form.envelope_ = max_scaled > 0 ? max_scaled : Rational(1);
            form.envelope_estimated_ = true;
        }
    }
    return forms;
}

FormSeries pullback_form(const SaddleChart& chart, const FormSeries& form) {
    if (!form.has_dy()) return form;
    FormSeries::CoeffMap dx = form.dx_coeffs();
    Scalar factor{Rational(-chart.mu_ratio())};
    for (const auto& [mn, c] : form.dy_coeffs()) {
        Scalar add = c * factor;
        auto it = dx.find(mn);
        if (it == dx.end()) dx.emplace(mn, add);
        else {
            it->second += add;
            if (it->second.is_negligible()) dx.erase(it);
        }
    }
    Rational env = form.envelope() * (1 + chart.mu_ratio());
    return FormSeries(std::move(dx), {}, form.truncation(), env);
}

void EdgeSeries::validate() const {
    if (branch_exponent <= 0)
        throw std::invalid_argument("edge branch exponent must be positive");
    Rational step = 1 / branch_exponent;
    for (const auto& [q, c] : coefficients) {
        Rational ratio = q / step;
        if (denominator(ratio) != 1)
            throw std::invalid_argument("edge exponent " + rational_str(q) +
                                        " off the lattice (1/lambda)Z");
    }
}

void PolycycleDescriptor::validate() const {
    if (pieces.empty()) throw std::invalid_argument("empty polycycle");
    for (size_t i = 0; i + 1 < pieces.size(); ++i) {
        if (pieces[i].index() == pieces[i + 1].index() && pieces.size() > 1)
            throw std::invalid_argument("polycycle pieces must alternate saddle/edge");
    }
    if (cuts.size() + 1 != pieces.size() && !pieces.empty() && pieces.size() > 1)
        throw std::invalid_argument("cut count must be pieces-1");
    double prev = 0.0;
    for (double v : cuts) {
        if (!(v > prev && v < 1.0))
            throw std::invalid_argument("cut parameters must be strictly increasing in (0,1)");
        prev = v;
    }
}

}  // namespace melsa
