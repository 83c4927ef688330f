#pragma once

#include "melsa/mellin.hpp"

#include <functional>
#include <vector>

namespace melsa {

// int_{gamma_piece} omega_first ... omega_last (1-based inclusive sub-word).
struct ElementarySymbol {
    int piece;  // 1-based piece index
    int first;
    int last;

    bool operator<(const ElementarySymbol& o) const {
        if (piece != o.piece) return piece < o.piece;
        if (first != o.first) return first < o.first;
        return last < o.last;
    }
    bool operator==(const ElementarySymbol& o) const {
        return piece == o.piece && first == o.first && last == o.last;
    }
};

struct IteratedTerm {
    long long coeff = 1;
    std::vector<ElementarySymbol> factors;  // sorted by piece index
};

// Integer-coefficient polynomial in elementary-integral symbols.  In every
// term the factor sub-words, ordered by piece, partition {1..k} into
// contiguous blocks (empty blocks omitted).
class IteratedPolynomial {
public:
    IteratedPolynomial(int length, int pieces, std::vector<IteratedTerm> terms);

    int length() const { return length_; }
    int pieces() const { return pieces_; }
    const std::vector<IteratedTerm>& terms() const { return terms_; }

private:
    int length_;
    int pieces_;
    std::vector<IteratedTerm> terms_;
};

// Splitting of the length-k iterated integral over a path concatenated from m
// pieces: one +1 term per weak composition k = k_1 + ... + k_m, the term
// being the product over pieces with k_j > 0 of the elementary integral of
// the corresponding contiguous sub-word.  C(k+m-1, m-1) terms total; depends
// on k and m only.
IteratedPolynomial decompose(int k, int m);

double evaluate(const IteratedPolynomial& poly,
                const std::function<double(const ElementarySymbol&)>& provider);

LogMonomialSeries evaluate(
    const IteratedPolynomial& poly,
    const std::function<LogMonomialSeries(const ElementarySymbol&)>& provider);

}  // namespace melsa
