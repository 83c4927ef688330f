#include "melsa/chen.hpp"

#include <stdexcept>

namespace melsa {

IteratedPolynomial::IteratedPolynomial(int length, int pieces,
                                       std::vector<IteratedTerm> terms)
    : length_(length), pieces_(pieces), terms_(std::move(terms)) {
    if (length_ < 1 || pieces_ < 1)
        throw std::invalid_argument("length and piece count must be >= 1");
    for (const auto& term : terms_) {
        int expected_first = 1;
        int prev_piece = 0;
        for (const auto& sym : term.factors) {
            if (sym.piece <= prev_piece || sym.piece > pieces_)
                throw std::invalid_argument("factors must be ordered by valid piece");
            if (sym.first != expected_first || sym.last < sym.first || sym.last > length_)
                throw std::invalid_argument("sub-words must partition 1..k contiguously");
            expected_first = sym.last + 1;
            prev_piece = sym.piece;
        }
        if (expected_first != length_ + 1)
            throw std::invalid_argument("sub-words must cover 1..k");
    }
}

IteratedPolynomial decompose(int k, int m) {
    if (k < 1 || m < 1)
        throw std::invalid_argument("decompose requires k >= 1, m >= 1");
    std::vector<IteratedTerm> terms;
    // enumerate weak compositions k = k_1 + ... + k_m in lexicographic order
    std::vector<int> comp(m, 0);
    std::function<void(int, int)> rec = [&](int j, int remaining) {
        if (j == m - 1) {
            comp[j] = remaining;
            IteratedTerm term;
            int pos = 1;
            for (int piece = 0; piece < m; ++piece) {
                if (comp[piece] == 0) continue;
                term.factors.push_back({piece + 1, pos, pos + comp[piece] - 1});
                pos += comp[piece];
            }
            terms.push_back(std::move(term));
            return;
        }
        for (int take = 0; take <= remaining; ++take) {
            comp[j] = take;
            rec(j + 1, remaining - take);
        }
    };
    rec(0, k);
    return IteratedPolynomial(k, m, std::move(terms));
}

double evaluate(const IteratedPolynomial& poly,
                const std::function<double(const ElementarySymbol&)>& provider) {
    double total = 0;
    for (const auto& term : poly.terms()) {
        double prod = static_cast<double>(term.coeff);
        for (const auto& sym : term.factors) prod *= provider(sym);
        total += prod;
    }
    return total;
}

LogMonomialSeries evaluate(
    const IteratedPolynomial& poly,
    const std::function<LogMonomialSeries(const ElementarySymbol&)>& provider) {
    LogMonomialSeries total;
    for (const auto& term : poly.terms()) {
        LogMonomialSeries prod;
        prod.add_term(Rational(0), 0, Scalar(Rational(term.coeff)));
        for (const auto& sym : term.factors) prod = prod * provider(sym);
        total = total + prod;
    }
    return total;
}

}  // namespace melsa
