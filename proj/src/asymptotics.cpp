#include "melsa/asymptotics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace melsa {

namespace {

constexpr double kPi = 3.14159265358979323846;

Integer rational_floor(const Rational& r) {
    Integer n = numerator(r), d = denominator(r);  // d > 0 canonical
    Integer q = n / d;
    if (n < 0 && q * d != n) --q;
    return q;
}

Rational rational_gcd(const Rational& a, const Rational& b) {
    if (a == 0) return boost::multiprecision::abs(b);
    if (b == 0) return boost::multiprecision::abs(a);
    Integer na = numerator(a), da = denominator(a);
    Integer nb = numerator(b), db = denominator(b);
    Integer num = boost::multiprecision::gcd(na * db, nb * da);
    Rational g(num, da * db);
    return boost::multiprecision::abs(g);
}

// sup over [tmin, 1] of t^mu |log t|^j, with the interior critical point
// t = exp(-j/mu) of t^mu (-log t)^j used when mu > 0.
double sup_log_monomial(double mu, int j, double tmin) {
    auto h = [&](double t) { return std::pow(t, mu) * std::pow(-std::log(t), j); };
    if (j == 0) return mu >= 0 ? 1.0 : std::pow(tmin, mu);
    if (mu <= 0) return h(tmin);
    double tc = std::exp(-static_cast<double>(j) / mu);
    return h(std::min(std::max(tc, tmin), 1.0));
}

}  // namespace

Rational lattice_spacing(const Rational& lambda1, const Rational& lambda2) {
    return rational_gcd(1 / lambda1, 1 / lambda2);
}

PoleLattice::PoleLattice(std::vector<PoleEntry> poles, std::optional<Rational> spacing,
                         int depth)
    : poles_(std::move(poles)), spacing_(std::move(spacing)), depth_(depth) {
    if (depth_ < 1) throw std::invalid_argument("lattice depth must be >= 1");
    for (const auto& e : poles_)
        if (e.multiplicity < 1)
            throw std::invalid_argument("pole multiplicity must be >= 1");
    std::sort(poles_.begin(), poles_.end(),
              [](const PoleEntry& a, const PoleEntry& b) { return a.location > b.location; });
    for (size_t i = 0; i + 1 < poles_.size(); ++i)
        if (poles_[i].location == poles_[i + 1].location)
            throw std::invalid_argument("duplicate pole location");
    if (spacing_ && *spacing_ <= 0)
        throw std::invalid_argument("lattice spacing must be positive");
}

GapPoint select_gap_point(const PoleLattice& lattice, int p) {
    if (p < 1) throw std::invalid_argument("p must be >= 1");
    if (lattice.depth() < p)
        throw std::invalid_argument("lattice depth insufficient for requested p");
    Rational lo(-(p + 1)), hi(-p);

    std::vector<Rational> cuts;
    for (const auto& e : lattice.poles())
        if (e.location >= lo && e.location <= hi) cuts.push_back(e.location);
    if (lattice.spacing()) {
        const Rational& g = *lattice.spacing();
        Integer k0 = rational_floor(lo / g);
        for (Integer k = k0; Rational(k) * g <= hi; ++k) {
            Rational v = Rational(k) * g;
            if (v >= lo && v <= hi) cuts.push_back(v);
        }
    }
    cuts.push_back(lo);
    cuts.push_back(hi);
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

    // leftmost largest gap = most negative midpoint = largest s_p
    Rational best_len(-1), best_mid(0);
    for (size_t i = 0; i + 1 < cuts.size(); ++i) {
        Rational len = cuts[i + 1] - cuts[i];
        if (len > best_len) {
            best_len = len;
            best_mid = (cuts[i] + cuts[i + 1]) / 2;
        }
    }
    if (best_len <= 0)
        throw std::logic_error("gap interval entirely filled by poles");
    return GapPoint{-best_mid, best_len / 2};
}

AlgebraElement AlgebraElement::exact(RationalMellin m, int length) {
    AlgebraElement e;
    e.mellin_ = std::move(m);
    e.length_ = std::max(1, length);
    return e;
}

AlgebraElement AlgebraElement::from_series(const MellinSeries& s) {
    AlgebraElement e;
    e.mellin_ = s.to_rational_mellin();
    if (s.discarded_weight() > 0)
        e.tails_.push_back({s.discarded_weight(),
                            s.sup_exponent() * s.length(), s.length()});
    e.spacing_ = lattice_spacing(s.chart().lambda1, s.chart().lambda2);
    e.length_ = s.length();
    return e;
}

AlgebraElement AlgebraElement::from_edge(const EdgeExpansion& edge) {
    AlgebraElement e;
    e.mellin_ = mellin_transform(edge.series);
    e.rigorous_ = edge.certified;
    return e;
}

bool AlgebraElement::has_truncation_data() const {
    return !tails_.empty() || region_bound_ > 0;
}

AlgebraElement AlgebraElement::operator+(const AlgebraElement& o) const {
    AlgebraElement e;
    e.mellin_ = mellin_ + o.mellin_;
    e.tails_ = tails_;
    e.tails_.insert(e.tails_.end(), o.tails_.begin(), o.tails_.end());
    if (spacing_ && o.spacing_) e.spacing_ = rational_gcd(*spacing_, *o.spacing_);
    else if (spacing_) e.spacing_ = spacing_;
    else e.spacing_ = o.spacing_;
    e.region_tmin_ = std::max(region_tmin_, o.region_tmin_);
    e.region_bound_ = region_bound_ + o.region_bound_;
    e.length_ = std::max(length_, o.length_);
    e.rigorous_ = rigorous_ && o.rigorous_;
    return e;
}

AlgebraElement AlgebraElement::scaled(const Scalar& c) const {
    AlgebraElement e(*this);
    e.mellin_ = mellin_.scaled(c);
    double ca = std::abs(c.to_double());
    for (auto& tail : e.tails_) {
        // rational upper bound on |c| (exact when c is exact)
        Rational f = c.exact() ? boost::multiprecision::abs(c.rational())
                               : rational_from_string(real_str(ca * (1 + 1e-12)));
        tail.weight *= f;
    }
    e.region_bound_ *= ca;
    return e;
}

double AlgebraElement::kept_sup_bound(double tmin) const {
    if (!(tmin > 0 && tmin <= 1)) throw std::invalid_argument("tmin must be in (0,1]");
    LogMonomialSeries series = inverse_mellin(mellin_);
    double total = 0;
    for (const auto& [key, c] : series.terms())
        total += std::abs(c.to_double()) *
                 sup_log_monomial(to_double(key.first), key.second, tmin);
    return total * (1 + 1e-9);
}

double AlgebraElement::discarded_bound(double t) const {
    if (!(t > 0 && t <= 1)) throw std::invalid_argument("t must be in (0,1]");
    double total = 0;
    for (const auto& tail : tails_) {
        double lfact = 1;
        for (int i = 2; i <= tail.length; ++i) lfact *= i;
        total += to_double(tail.weight) * std::pow(t, -to_double(tail.exponent)) / lfact;
    }
    if (region_bound_ > 0) {
        if (t < region_tmin_)
            throw std::domain_error("truncation bound not valid below the declared region");
        total += region_bound_;
    }
    return total;
}

AlgebraElement AlgebraElement::multiplied(const AlgebraElement& o,
                                          double region_tmin) const {
    AlgebraElement e;
    e.mellin_ = convolve(mellin_, o.mellin_);
    e.length_ = length_ + o.length_;
    e.rigorous_ = rigorous_ && o.rigorous_;

    bool a_trunc = has_truncation_data();
    bool b_trunc = o.has_truncation_data();
    if (a_trunc || b_trunc) {
        double tmin = std::max({region_tmin, region_tmin_, o.region_tmin_});
        if (!(tmin > 0 && tmin < 1))
            throw std::invalid_argument("product of truncated elements needs a region in (0,1)");
        double da = a_trunc ? discarded_bound(tmin) : 0.0;
        double db = b_trunc ? o.discarded_bound(tmin) : 0.0;
        double ka = kept_sup_bound(tmin);
        double kb = o.kept_sup_bound(tmin);
        e.region_tmin_ = tmin;
        e.region_bound_ = da * kb + ka * db + da * db;
        // every possible pole of either factor (explicit or lattice) must lie
        // on the combined lattice, since product poles are sums
        Rational g(0);
        if (spacing_) g = rational_gcd(g, *spacing_);
        if (o.spacing_) g = rational_gcd(g, *o.spacing_);
        for (const auto& [key, c] : mellin_.terms()) g = rational_gcd(g, key.a);
        for (const auto& [key, c] : o.mellin_.terms()) g = rational_gcd(g, key.a);
        if (g > 0) e.spacing_ = g;
    }
    return e;
}

PoleLattice pole_lattice(const RationalMellin& f, int depth) {
    std::vector<PoleEntry> poles;
    for (const auto& [a, k] : f.pole_multiset())
        if (-a >= Rational(-(depth + 1))) poles.push_back({-a, k});
    return PoleLattice(std::move(poles), std::nullopt, depth);
}

PoleLattice pole_lattice(const MellinSeries& f, int depth) {
    return pole_lattice(AlgebraElement::from_series(f), depth);
}

PoleLattice pole_lattice(const AlgebraElement& f, int depth) {
    std::vector<PoleEntry> poles;
    for (const auto& [a, k] : f.mellin().pole_multiset())
        if (-a >= Rational(-(depth + 1))) poles.push_back({-a, k});
    std::optional<Rational> spacing;
    if (f.has_truncation_data()) spacing = f.lattice_spacing();
    return PoleLattice(std::move(poles), spacing, depth);
}

LogMonomialSeries partial_sum(const RationalMellin& f, const Rational& s_cut) {
    RationalMellin kept;
    for (const auto& [key, c] : f.terms())
        if (key.a < s_cut) kept.add_term(key.a, key.k, c);
    return inverse_mellin(kept);
}

LogMonomialSeries partial_sum(const AlgebraElement& f, int p) {
    GapPoint gap = select_gap_point(pole_lattice(f, p), p);
    return partial_sum(f.mellin(), gap.s_exact);
}

double TailCertificate::value(double t) const {
    if (!(t > 0 && t < 1))
        throw std::domain_error("tail bound evaluated for t in (0,1)");
    double log_inv = std::log(1.0 / t);
    double contour = 0;
    for (const auto& term : terms) {
        double horizontal = std::min(term.sup_h / log_inv, term.decay);
        contour += term.c_abs * (std::pow(term.dist, -term.k) + horizontal);
    }
    double total = std::pow(t, s_p) * contour / kPi;
    for (const auto& tail : tails)
        total += tail.weight * std::pow(t, -tail.exponent) * tail.inv_factorial;
    if (region_bound > 0) {
        if (t < region_tmin)
            throw std::domain_error("truncation bound not valid below the declared region");
        total += region_bound;
    }
    return total;
}

TailCertificate tail_certificate(const AlgebraElement& f, int p) {
    // Remainder after the partial sum = (1/2pi*i) * contour integral of
    // t^{-s} Mf(s) over the boundary of the half-strip
    //     { Re s <= -s_p, |Im s| <= 1 }.
    // Per partial-fraction term c (s+a)^{-k} (pole at s = -a, all poles real):
    //   * vertical edge Re s = -s_p, length 2:  |t^{-s}| = t^{s_p} and
    //     |s+a| >= |s_p - a| = D, giving (|c|/pi) t^{s_p} D^{-k};
    //   * two horizontal edges s = sigma -+ i, sigma <= -s_p, where
    //     |s+a|^2 = (sigma+a)^2 + 1, bounded two ways:
    //       - sup of the modulus (=: sup_h) times  int t^{-sigma} dsigma
    //         = t^{s_p}/log(1/t),
    //       - for k >= 2, t^{-sigma} <= t^{s_p} times the full decay
    //         integral int ((sigma+a)^2+1)^{-1} dsigma = pi/2 + atan(a - s_p);
    //     the smaller of the two applies.
    // Envelope tails (truncated series data) add their pointwise time-domain
    // bounds weight * t^{-e} / l!.
    GapPoint gap = select_gap_point(pole_lattice(f, p), p);
    TailCertificate cert;
    cert.p = p;
    cert.s_p = gap.s();
    cert.rho = gap.rho();
    cert.rigorous = f.rigorous();
    double c_total = 0;
    for (const auto& [key, c] : f.mellin().terms()) {
        TailCertificate::ContourTerm term;
        term.c_abs = std::abs(c.to_double());
        Rational dist = boost::multiprecision::abs(gap.s_exact - key.a);
        if (dist == 0)
            throw std::logic_error("gap point collides with a pole");
        term.dist = to_double(dist);
        term.k = key.k;
        double diff = to_double(Rational(gap.s_exact - key.a));
        term.sup_h = key.a >= gap.s_exact
                         ? 1.0
                         : std::pow(diff * diff + 1.0, -0.5 * key.k);
        term.decay = key.k >= 2
                         ? kPi / 2 + std::atan(to_double(Rational(key.a - gap.s_exact)))
                         : std::numeric_limits<double>::infinity();
        cert.terms.push_back(term);
        c_total += term.c_abs;
    }
    for (const auto& tail : f.tails()) {
        double lfact = 1;
        for (int i = 2; i <= tail.length; ++i) lfact *= i;
        cert.tails.push_back({to_double(tail.weight), to_double(tail.exponent), 1.0 / lfact});
        c_total += to_double(tail.weight);
    }
    cert.region_tmin = f.region_tmin();
    cert.region_bound = f.region_bound();
    c_total += f.region_bound();
    cert.C_total = c_total;
    cert.d_reference = static_cast<double>(f.total_length()) * f.total_length();
    return cert;
}

double tail_bound(const AlgebraElement& f, int p, double t) {
    TailCertificate cert = tail_certificate(f, p);
    double b = cert.value(t);
    // product-combined flat bounds live on the element, not the certificate
    if (f.has_truncation_data()) {
        double disc = f.discarded_bound(t);
        double analytic = 0;
        for (const auto& tail : cert.tails)
            analytic += tail.weight * std::pow(t, -tail.exponent) * tail.inv_factorial;
        b += disc - analytic;
    }
    return b;
}

ZeroFreeCertificate certify_zero_free(const AlgebraElement& f, int p_max, double t_max) {
    if (p_max < 1) throw std::invalid_argument("p_max must be >= 1");
    if (!(t_max > 0 && t_max < 1)) throw std::invalid_argument("t_max must be in (0,1)");
    ZeroFreeCertificate cert;
    if (!f.rigorous()) {
        cert.status = ZeroFreeCertificate::Status::inconclusive;
        cert.detail = "bounds involve non-certified (fitted) data";
        return cert;
    }

    const auto& terms = f.mellin().terms();
    if (terms.empty()) {
        cert.status = ZeroFreeCertificate::Status::zero_to_order;
        cert.order = p_max;
        cert.residual_bound = f.has_truncation_data() ? f.discarded_bound(t_max) : 0.0;
        cert.detail = f.has_truncation_data()
                          ? "all kept coefficients vanish; truncation residual remains"
                          : "identically zero to every computed order";
        return cert;
    }

    Rational mu0 = terms.begin()->first.a;
    cert.mu = mu0;

    // choose the first order whose gap point clears the leading exponent
    int p = std::max<long long>(1, (rational_floor(mu0) + 1).convert_to<long long>());
    if (p > p_max) {
        cert.status = ZeroFreeCertificate::Status::inconclusive;
        cert.detail = "leading exponent beyond the order budget";
        return cert;
    }

    LogMonomialSeries sum = partial_sum(f, p);
    if (sum.is_zero()) {
        cert.status = ZeroFreeCertificate::Status::zero_to_order;
        cert.order = p;
        cert.residual_bound = tail_bound(f, p, t_max);
        cert.detail = "partial sum vanishes to the computed order";
        return cert;
    }

    // leading log-polynomial P(w), w = log t, and the rest of the partial sum
    int deg = -1;
    for (const auto& [key, c] : sum.terms())
        if (key.first == mu0) deg = std::max(deg, key.second);
    std::vector<Scalar> pcoeff(deg + 1, Scalar(Rational(0)));
    std::vector<std::array<double, 3>> rest;  // (beta, delta, logpow)
    for (const auto& [key, c] : sum.terms()) {
        if (key.first == mu0) pcoeff[key.second] = c;
        else
            rest.push_back({std::abs(c.to_double()),
                            to_double(Rational(key.first - mu0)),
                            static_cast<double>(key.second)});
    }
    cert.log_poly = pcoeff;

    // envelope tails as extra rest terms w * t^{-e-mu0}; they must decay
    // toward t = 0, otherwise no certificate is possible near 0
    for (const auto& tail : f.tails()) {
        double e = to_double(tail.exponent);
        double delta = -e - to_double(mu0);
        if (to_double(tail.weight) > 0 && delta <= 0) {
            cert.status = ZeroFreeCertificate::Status::inconclusive;
            cert.detail = "truncation tail does not decay against the leading term";
            return cert;
        }
        double lfact = 1;
        for (int i = 2; i <= tail.length; ++i) lfact *= i;
        if (to_double(tail.weight) > 0)
            rest.push_back({to_double(tail.weight) / lfact, delta, 0.0});
    }
    // flat product-region bounds block any punctured-neighborhood claim
    try {
        double probe = std::min(t_max, 0.5);
        double disc = f.has_truncation_data() ? f.discarded_bound(probe) : 0.0;
        double analytic = 0;
        for (const auto& tail : f.tails()) {
            double lfact = 1;
            for (int i = 2; i <= tail.length; ++i) lfact *= i;
            analytic += to_double(tail.weight) * std::pow(probe, -to_double(tail.exponent)) / lfact;
        }
        if (disc - analytic > 1e-300) {
            cert.status = ZeroFreeCertificate::Status::inconclusive;
            cert.detail = "region-limited product bound blocks certification near 0";
            return cert;
        }
    } catch (const std::domain_error&) {
        cert.status = ZeroFreeCertificate::Status::inconclusive;
        cert.detail = "region-limited product bound blocks certification near 0";
        return cert;
    }

    // lower bound for |P(log t)|: with u = |log t| and d = deg P,
    // Q(u) = |a_d| u^d - sum_{i<d} |a_i| u^i is positive and increasing for
    // u >= w_req = 1 + sum |a_i| / |a_d|.
    std::vector<double> pabs(deg + 1);
    for (int i = 0; i <= deg; ++i) pabs[i] = std::abs(pcoeff[i].to_double());
    double w_req = 0;
    if (deg >= 1) {
        double s = 0;
        for (int i = 0; i < deg; ++i) s += pabs[i];
        w_req = 1.0 + s / pabs[deg];
    }
    auto q_lower = [&](double u) {
        double v = pabs[deg] * std::pow(u, deg);
        for (int i = 0; i < deg; ++i) v -= pabs[i] * std::pow(u, i);
        return v;
    };

    TailCertificate tc = tail_certificate(f, p);

    // All competing contributions are increasing in t on (0, tau] once tau is
    // below each power term's critical point exp(-logpow/delta); then a single
    // evaluation at tau certifies the whole interval (0, tau).
    double tau = std::min(t_max, 0.999);
    if (deg >= 1) tau = std::min(tau, std::exp(-w_req));
    for (const auto& r : rest)
        if (r[2] > 0) tau = std::min(tau, std::exp(-r[2] / r[1]));

    double mu0d = to_double(mu0);
    for (int iter = 0; iter < 200; ++iter) {
        double lhs = deg >= 1 ? q_lower(-std::log(tau)) : pabs[0];
        double rhs = 0;
        for (const auto& r : rest)
            rhs += r[0] * std::pow(tau, r[1]) * std::pow(-std::log(tau), r[2]);
        rhs += tc.value(tau) * std::pow(tau, -mu0d);
        if (lhs > rhs * (1 + 1e-9) && lhs > 0) {
            cert.status = ZeroFreeCertificate::Status::zero_free;
            cert.t_star = tau;
            std::ostringstream msg;
            msg << "leading term t^" << rational_str(mu0)
                << " * P(log t) dominates the certified remainder on (0, "
                << real_str(tau) << ")";
            cert.detail = msg.str();
            return cert;
        }
        tau *= 0.5;
    }
    cert.status = ZeroFreeCertificate::Status::inconclusive;
    cert.detail = "leading term could not be made to dominate the bound";
    return cert;
}

}  // namespace melsa
