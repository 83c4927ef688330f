#include "melsa/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <sstream>

namespace melsa {

namespace {

// Gauss 7 / Kronrod 15 nodes and weights on [-1, 1] (QUADPACK values).
const double kKronrodNodes[8] = {
    0.991455371120813, 0.949107912342759, 0.864864423359769, 0.741531185599394,
    0.586087235467691, 0.405845151377397, 0.207784955007898, 0.000000000000000};
const double kKronrodWeights[8] = {
    0.022935322010529, 0.063092092629979, 0.104790010322250, 0.140653259715525,
    0.169004726639267, 0.190350578064785, 0.204432940075298, 0.209482141084728};
const double kGaussWeights[4] = {
    0.129484966168870, 0.279705391489277, 0.381830050505119, 0.417959183673469};

struct PanelResult {
    double value;
    double error;
};

PanelResult gk15(const std::function<double(double)>& f, double a, double b) {
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    double fc = f(c);
    double kron = kKronrodWeights[7] * fc;
    double gauss = kGaussWeights[3] * fc;
    for (int i = 0; i < 7; ++i) {
        double fl = f(c - h * kKronrodNodes[i]);
        double fr = f(c + h * kKronrodNodes[i]);
        kron += kKronrodWeights[i] * (fl + fr);
        if (i % 2 == 1) gauss += kGaussWeights[i / 2] * (fl + fr);
    }
    // |K15 - G7| estimates the Gauss error and so overestimates the Kronrod
    // error; kept as-is to stay conservative.
    return {kron * h, std::abs((kron - gauss) * h)};
}

}  // namespace

double integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                          const std::vector<double>& breakpoints, double tol,
                          int max_panels) {
    if (a == b) return 0.0;
    if (a > b) return -integrate_adaptive(f, b, a, breakpoints, tol, max_panels);

    struct Panel {
        double a, b, value, error;
        bool operator<(const Panel& o) const { return error < o.error; }
    };
    std::priority_queue<Panel> queue;
    double total = 0, total_err = 0;

    std::vector<double> edges{a};
    for (double v : breakpoints)
        if (v > a && v < b) edges.push_back(v);
    edges.push_back(b);
    std::sort(edges.begin(), edges.end());
    for (size_t i = 0; i + 1 < edges.size(); ++i) {
        auto r = gk15(f, edges[i], edges[i + 1]);
        queue.push({edges[i], edges[i + 1], r.value, r.error});
        total += r.value;
        total_err += r.error;
    }

    int panels = static_cast<int>(edges.size()) - 1;
    while (total_err > tol && panels < max_panels) {
        Panel worst = queue.top();
        queue.pop();
        double mid = 0.5 * (worst.a + worst.b);
        if (mid <= worst.a || mid >= worst.b) {  // interval at double resolution
            total_err -= worst.error;
            continue;
        }
        auto left = gk15(f, worst.a, mid);
        auto right = gk15(f, mid, worst.b);
        total += left.value + right.value - worst.value;
        total_err += left.error + right.error - worst.error;
        queue.push({worst.a, mid, left.value, left.error});
        queue.push({mid, worst.b, right.value, right.error});
        ++panels;
    }
    if (total_err > tol) {
        std::ostringstream msg;
        msg << "quadrature did not converge: requested " << tol << ", achieved "
            << total_err << " with " << panels << " panels";
        throw QuadratureError(msg.str(), total_err);
    }
    return total;
}

double ParamPath::length() const {
    double s = 0;
    for (const auto& p : pieces) s += p.u1 - p.u0;
    return s;
}

PathForm PathForm::from_series(const FormSeries& form) {
    PathForm pf;
    pf.fx = [form](double x, double y) { return form.eval_dx_coefficient(x, y); };
    pf.fy = [form](double x, double y) { return form.eval_dy_coefficient(x, y); };
    return pf;
}

double PathForm::pulled_back(const PathPiece& piece, double u) const {
    double x = piece.x(u), y = piece.y(u);
    double g = 0;
    if (fx) g += fx(x, y) * piece.dx_du(u);
    if (fy) g += fy(x, y) * piece.dy_du(u);
    return g;
}

ParamPath saddle_path(const SaddleChart& chart, double t, bool log_param) {
    double teff = chart.normalized_level(t);
    if (!(teff > 0.0 && teff < 1.0))
        throw std::invalid_argument("saddle path requires scale*t in (0,1)");
    double l1 = to_double(chart.lambda1);
    double l2 = to_double(chart.lambda2);
    double mu = l1 / l2;
    double x_lo = std::pow(teff, 1.0 / l1);
    double yc = std::pow(teff, 1.0 / l2);  // y = yc * x^{-mu}

    PathPiece piece;
    if (!log_param) {
        piece.u0 = x_lo;
        piece.u1 = 1.0;
        piece.x = [](double u) { return u; };
        piece.y = [yc, mu](double u) { return yc * std::pow(u, -mu); };
        piece.dx_du = [](double) { return 1.0; };
        piece.dy_du = [yc, mu](double u) { return -mu * yc * std::pow(u, -mu - 1.0); };
    } else {
        // x = exp(w0 (1-u)), w0 = log(teff)/l1 < 0; u in [0,1]
        double w0 = std::log(teff) / l1;
        piece.u0 = 0.0;
        piece.u1 = 1.0;
        piece.x = [w0](double u) { return std::exp(w0 * (1.0 - u)); };
        piece.y = [yc, mu, w0](double u) { return yc * std::exp(-mu * w0 * (1.0 - u)); };
        piece.dx_du = [w0](double u) { return -w0 * std::exp(w0 * (1.0 - u)); };
        piece.dy_du = [yc, mu, w0](double u) {
            return mu * w0 * yc * std::exp(-mu * w0 * (1.0 - u));
        };
    }
    ParamPath path;
    path.pieces.push_back(std::move(piece));
    return path;
}

void check_level_invariance(const SaddleChart& chart, double t, const ParamPath& path) {
    double teff = chart.normalized_level(t);
    double l1 = to_double(chart.lambda1);
    double l2 = to_double(chart.lambda2);
    for (const auto& piece : path.pieces) {
        for (double f : {0.0, 0.25, 0.5, 0.75, 1.0}) {
            double u = piece.u0 + f * (piece.u1 - piece.u0);
            double h = std::pow(piece.x(u), l1) * std::pow(piece.y(u), l2);
            if (std::abs(h - teff) > 1e-14 * std::abs(teff) + 1e-300)
                throw std::logic_error("level function not constant along saddle path");
        }
    }
}

namespace {

// Global parameter: piece i occupies [offset_i, offset_i + (u1-u0)].
struct FlatPath {
    const ParamPath* path;
    std::vector<double> offsets;  // size pieces+1
    double total;

    explicit FlatPath(const ParamPath& p) : path(&p) {
        offsets.push_back(0);
        for (const auto& piece : p.pieces)
            offsets.push_back(offsets.back() + (piece.u1 - piece.u0));
        total = offsets.back();
    }
    // g_i(s) for global parameter s
    double eval(const PathForm& form, double s) const {
        size_t i = 0;
        while (i + 2 < offsets.size() && s >= offsets[i + 1]) ++i;
        const PathPiece& piece = path->pieces[i];
        double u = piece.u0 + (s - offsets[i]);
        return form.pulled_back(piece, u);
    }
};

double nested(const std::vector<PathForm>& forms, const FlatPath& flat, size_t level,
              double from, double tol) {
    if (level == forms.size()) return 1.0;
    std::vector<double> breaks(flat.offsets.begin() + 1, flat.offsets.end() - 1);
    auto integrand = [&](double s) {
        double g = flat.eval(forms[level], s);
        if (level + 1 == forms.size()) return g;
        return g * nested(forms, flat, level + 1, s, tol / 3.0);
    };
    return integrate_adaptive(integrand, from, flat.total, breaks, tol);
}

}  // namespace

double iterated_quadrature(const std::vector<PathForm>& forms, const ParamPath& path,
                           double tol) {
    if (!(tol > 0)) throw std::invalid_argument("tolerance must be positive");
    if (forms.empty()) return 1.0;  // empty iterated integral
    FlatPath flat(path);
    return nested(forms, flat, 0, 0.0, tol);
}

double abelian_integral(const PathForm& form, const ParamPath& path, double tol) {
    FlatPath flat(path);
    std::vector<double> breaks(flat.offsets.begin() + 1, flat.offsets.end() - 1);
    auto integrand = [&](double s) { return flat.eval(form, s); };
    return integrate_adaptive(integrand, 0.0, flat.total, breaks, tol);
}

double leading_pullback_exponent(const SaddleChart& chart, const FormSeries& form) {
    FormSeries pulled = pullback_form(chart, form);
    double mu = to_double(chart.mu_ratio());
    double lead = std::numeric_limits<double>::infinity();
    for (const auto& [mn, c] : pulled.dx_coeffs())
        lead = std::min(lead, (mn.first - 1) - mn.second * mu);
    return lead;
}

double saddle_iterated_integral(const SaddleChart& chart,
                                const std::vector<FormSeries>& forms, double t,
                                double tol) {
    bool log_param = false;
    for (const auto& form : forms) {
        double lead = leading_pullback_exponent(chart, form);
        if (std::isfinite(lead) && std::abs(lead + 1.0) < 0.1) log_param = true;
    }
    ParamPath path = saddle_path(chart, t, log_param);
    std::vector<PathForm> pf;
    pf.reserve(forms.size());
    for (const auto& form : forms) pf.push_back(PathForm::from_series(form));
    return iterated_quadrature(pf, path, tol);
}

}  // namespace melsa
