#pragma once

#include "melsa/mellin.hpp"
#include "melsa/scalar.hpp"

#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace melsa {

// Local model of a hyperbolic saddle with Darboux level parameter:
// the level curve at level t is {x^lambda1 y^lambda2 = scale * t},
// intersected with the unit square.
struct SaddleChart {
    Rational lambda1{1};
    Rational lambda2{1};
    int pole_bound = 0;  // M: form indices satisfy m, n > -M
    Rational scale{1};   // level normalization applied to t, default 1

    Rational mu_ratio() const { return lambda1 / lambda2; }
    // Level actually used by series evaluation and path construction.
    double normalized_level(double t) const { return to_double(scale) * t; }
};

// Truncated bi-indexed Laurent data of a meromorphic one-form:
//   dx part: (m, n) -> c  means  c * x^{m-1} y^n dx
//   dy part: (m, n) -> c  means  c * x^m y^{n-1} dy
// Indices respect m, n > -M; the envelope constant C certifies
// |c(m,n)| <= C * 2^{-m-n} for all coefficients, stored or not.
class FormSeries {
public:
    using CoeffMap = std::map<std::pair<int, int>, Scalar>;

    FormSeries() = default;
    FormSeries(CoeffMap dx, CoeffMap dy, int truncation,
               std::optional<Rational> envelope = std::nullopt);

    const CoeffMap& dx_coeffs() const { return dx_; }
    const CoeffMap& dy_coeffs() const { return dy_; }
    int truncation() const { return truncation_; }
    const Rational& envelope() const { return envelope_; }
    bool envelope_estimated() const { return envelope_estimated_; }
    bool is_zero() const { return dx_.empty() && dy_.empty(); }
    bool has_dy() const { return !dy_.empty(); }

    // Numeric evaluation of the two coefficient functions (for the oracle).
    double eval_dx_coefficient(double x, double y) const;
    double eval_dy_coefficient(double x, double y) const;

private:
    friend std::vector<FormSeries> validate_chart(const SaddleChart&,
                                                  std::vector<FormSeries>);
    CoeffMap dx_, dy_;
    int truncation_ = 1;
    Rational envelope_{0};
    bool envelope_declared_ = false;
    bool envelope_estimated_ = false;
};

// Checks chart positivity, index lower bounds m, n > -M, truncation, and the
// envelope |c| <= C 2^{-m-n} for every stored coefficient.  A missing
// envelope constant is estimated as max |c| 2^{m+n} and flagged as such.
// Throws std::invalid_argument with a descriptive message on violation.
std::vector<FormSeries> validate_chart(const SaddleChart& chart,
                                       std::vector<FormSeries> forms);

// On the level curve, lambda1 dx/x + lambda2 dy/y = 0, so
// x^m y^{n-1} dy = -(lambda1/lambda2) x^{m-1} y^n dx.  Folds the dy part into
// the dx part with factor -mu_ratio; indices are unchanged.  The envelope
// grows by the factor (1 + mu_ratio) when a dy part was present.
FormSeries pullback_form(const SaddleChart& chart, const FormSeries& form);

// Puiseux-type data on an edge piece: a finite series in powers of t^{1/lambda}.
struct EdgeSeries {
    Rational branch_exponent{1};            // lambda > 0
    std::map<Rational, Scalar> coefficients;  // exponent q in (1/lambda)Z -> c
    int truncation_order = 0;

    void validate() const;  // lattice membership and positivity
};

// One piece of a polycycle: a saddle chart carrying the form list, or an edge
// carrying one precomputed/fitted series per form.
struct SaddlePiece {
    SaddleChart chart;
    std::vector<FormSeries> forms;
};
struct EdgePiece {
    std::vector<EdgeSeries> series_per_form;
};

struct PolycycleDescriptor {
    std::vector<std::variant<SaddlePiece, EdgePiece>> pieces;
    std::vector<double> cuts;  // v_1 < ... < v_{m-1} strictly inside (0,1)

    // Pieces must alternate saddle/edge (cyclically) and cuts must be
    // strictly increasing inside (0,1) with count pieces-1.
    void validate() const;
};

}  // namespace melsa
