#pragma once

#include "melsa/elementary.hpp"
#include "melsa/mellin.hpp"

#include <optional>
#include <string>
#include <vector>

namespace melsa {

struct PoleEntry {
    Rational location;  // actual pole position in the s-plane
    int multiplicity;
};

// Pole bookkeeping for gap selection: explicitly known poles (sorted strictly
// decreasing) plus, when envelope-truncated data is involved, the spacing g of
// the lattice g*Z known to contain every possible pole.
class PoleLattice {
public:
    PoleLattice(std::vector<PoleEntry> poles, std::optional<Rational> spacing, int depth);

    const std::vector<PoleEntry>& poles() const { return poles_; }
    const std::optional<Rational>& spacing() const { return spacing_; }
    int depth() const { return depth_; }

private:
    std::vector<PoleEntry> poles_;
    std::optional<Rational> spacing_;
    int depth_;
};

// Gap point in [p, p+1]: midpoint of the largest pole-free subinterval of
// [-p-1, -p] (negated), with rho = half that gap.  Ties break toward the
// larger s_p.  Deterministic; exact rational arithmetic.
struct GapPoint {
    Rational s_exact;
    Rational rho_exact;
    double s() const { return to_double(s_exact); }
    double rho() const { return to_double(rho_exact); }
};

GapPoint select_gap_point(const PoleLattice& lattice, int p);

// Spacing of the lattice lambda1^{-1}Z + lambda2^{-1}Z (the rational gcd).
Rational lattice_spacing(const Rational& lambda1, const Rational& lambda2);

// Element of the algebra generated by elementary iterated integrals, carried
// as an exact rational Mellin part plus certified bounds for everything that
// was truncated away.
class AlgebraElement {
public:
    // Envelope tail of one truncated elementary series: the discarded
    // time-domain contribution is bounded by weight * t^{-exponent} / length!
    // pointwise on (0, 1].
    struct EnvelopeTail {
        Rational weight;
        Rational exponent;
        int length;
    };

    static AlgebraElement exact(RationalMellin m, int length = 1);
    static AlgebraElement from_series(const MellinSeries& s);
    static AlgebraElement from_edge(const EdgeExpansion& e);

    const RationalMellin& mellin() const { return mellin_; }
    const std::vector<EnvelopeTail>& tails() const { return tails_; }
    const std::optional<Rational>& lattice_spacing() const { return spacing_; }
    int total_length() const { return length_; }
    bool rigorous() const { return rigorous_; }
    bool has_truncation_data() const;
    double region_tmin() const { return region_tmin_; }
    double region_bound() const { return region_bound_; }

    AlgebraElement operator+(const AlgebraElement& o) const;
    AlgebraElement scaled(const Scalar& c) const;

    // Pointwise product on (0,1], Mellin-dual convolution on the exact parts.
    // Truncation bounds of the factors combine into a bound valid on
    // [region_tmin, 1]; for exact factors the region is irrelevant.
    AlgebraElement multiplied(const AlgebraElement& o, double region_tmin = 0.05) const;

    // Upper bound for everything not represented in mellin(), valid at t
    // (throws if t lies below the declared product region).
    double discarded_bound(double t) const;

    // sup over [tmin, 1] of |inverse Mellin of the exact part|.
    double kept_sup_bound(double tmin) const;

private:
    RationalMellin mellin_;
    std::vector<EnvelopeTail> tails_;
    std::optional<Rational> spacing_;
    double region_tmin_ = 0.0;   // product-combined bounds valid on [region_tmin, 1]
    double region_bound_ = 0.0;  // flat bound amount on that region
    int length_ = 1;             // sum of elementary lengths (reference exponent)
    bool rigorous_ = true;       // false once fitted edge data enters
};

PoleLattice pole_lattice(const RationalMellin& f, int depth);
PoleLattice pole_lattice(const MellinSeries& f, int depth);
PoleLattice pole_lattice(const AlgebraElement& f, int depth);

// Partial sum of the asymptotic series: residues at the poles -mu with
// mu < s_p, as a log-monomial series.  Exact.
LogMonomialSeries partial_sum(const AlgebraElement& f, int p);
LogMonomialSeries partial_sum(const RationalMellin& f, const Rational& s_cut);

// Everything needed to evaluate the certified remainder bound B(p, t) with
// |f(t) - partial_sum(f,p)(t)| <= B(p,t) for t in (0,1).
struct TailCertificate {
    int p;
    double s_p, rho;
    double C_total;      // sum of kept |coefficients| plus discarded weights
    double d_reference;  // paper-style reference exponent (sum of lengths)^2
    bool rigorous;

    struct ContourTerm {
        double c_abs;    // |coefficient|
        double dist;     // distance from the pole to the vertical edge
        int k;           // pole multiplicity of this term
        double sup_h;    // sup of the term modulus on the horizontal edges
        double decay;    // t-uniform horizontal integral (k >= 2), else inf
    };
    std::vector<ContourTerm> terms;
    struct TailPiece {
        double weight;
        double exponent;
        double inv_factorial;
    };
    std::vector<TailPiece> tails;
    double region_tmin = 0.0;
    double region_bound = 0.0;

    double value(double t) const;
};

TailCertificate tail_certificate(const AlgebraElement& f, int p);
double tail_bound(const AlgebraElement& f, int p, double t);

struct ZeroFreeCertificate {
    enum class Status { zero_free, zero_to_order, inconclusive };
    Status status = Status::inconclusive;
    double t_star = 0.0;          // zero_free: no zeros of f on (0, t_star)
    int order = 0;                // zero_to_order: coefficients vanish below s_order
    double residual_bound = 0.0;  // zero_to_order: remaining bound at t_max
    Rational mu{0};               // leading exponent
    std::vector<Scalar> log_poly;  // P coefficients, ascending powers of log t
    std::string detail;
};

// Extracts the rightmost-pole term t^mu P(log t) and certifies a punctured
// interval (0, t*) on which |t^mu P(log t)| dominates the certified bound on
// |f - t^mu P(log t)|, hence f has no zeros there.  Never guesses: returns
// an explicit inconclusive status when the bounds cannot be made rigorous.
ZeroFreeCertificate certify_zero_free(const AlgebraElement& f, int p_max, double t_max);

}  // namespace melsa
