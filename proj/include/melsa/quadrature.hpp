#pragma once

#include "melsa/saddle.hpp"

#include <functional>
#include <string>
#include <vector>

namespace melsa {

// Brute-force evaluation of iterated path integrals by nested adaptive
// quadrature.  Deliberately shares no series code with the symbolic modules;
// this is the independent cross-check.

struct QuadratureError : std::runtime_error {
    QuadratureError(const std::string& msg, double achieved)
        : std::runtime_error(msg), achieved_error(achieved) {}
    double achieved_error;
};

// One smooth piece of a parameterized path: u in [u0, u1] -> (x, y).
struct PathPiece {
    std::function<double(double)> x, y, dx_du, dy_du;
    double u0 = 0, u1 = 1;
};

struct ParamPath {
    std::vector<PathPiece> pieces;
    double length() const;  // total parameter length
};

// Coefficient functions of a one-form f_x dx + f_y dy, evaluated pointwise.
struct PathForm {
    std::function<double(double x, double y)> fx, fy;

    static PathForm from_series(const FormSeries& form);
    double pulled_back(const PathPiece& piece, double u) const;
};

// The saddle piece of the level curve {x^l1 y^l2 = scale*t}, oriented with x
// increasing from (teff^{1/l1}, 1) to (1, teff^{1/l2}).  If log_param is set
// the piece is reparameterized by x = exp(w), which removes the algebraic
// endpoint behavior of integrands with x-exponent near -1.
ParamPath saddle_path(const SaddleChart& chart, double t, bool log_param = false);

// Verifies x^l1 y^l2 == scale*t along the path to 1e-14 relative.
void check_level_invariance(const SaddleChart& chart, double t, const ParamPath& path);

// Iterated integral int g_1(u_1)...g_l(u_l) du over the ordered simplex
// u_1 <= ... <= u_l of the path parameter, forms[0] integrated outermost,
// by nested adaptive Gauss-Kronrod panels (level j runs at tol/3^j).
// Throws QuadratureError when an error estimate cannot be met.
double iterated_quadrature(const std::vector<PathForm>& forms, const ParamPath& path,
                           double tol);

// Length-1 integral over a (possibly multi-piece, possibly closed) path.
double abelian_integral(const PathForm& form, const ParamPath& path, double tol);

// Saddle-piece elementary integral with the parameterization rule applied:
// when the leading pulled-back x-exponent of any form is within 0.1 of -1,
// the log parameterization is used.
double saddle_iterated_integral(const SaddleChart& chart,
                                const std::vector<FormSeries>& forms, double t,
                                double tol);

// Smallest x-exponent of the pulled-back form (m - 1 - n*mu over stored
// monomials); used by the parameterization rule.
double leading_pullback_exponent(const SaddleChart& chart, const FormSeries& form);

// Building block also used by tests: adaptive 1D integral with breakpoints.
double integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                          const std::vector<double>& breakpoints, double tol,
                          int max_panels = 4000);

}  // namespace melsa
