#pragma once

#include <vector>

#include "k3auto/poly.hpp"

namespace k3auto {

// f = unit * prod parts[i].part ^ parts[i].multiplicity with the parts
// squarefree, pairwise coprime and monic (Yun's algorithm).
struct SquarefreePart {
    RatPoly part;
    int multiplicity;
};
std::vector<SquarefreePart> squarefree_decomposition(const RatPoly& f);
bool is_squarefree(const RatPoly& f);

// Irreducible factorization over Q: f = unit * prod factors[i].first ^ second,
// factors monic irreducible, deterministically ordered (degree, then
// lexicographic coefficients). Berlekamp mod p + Hensel lifting + subset
// recombination; inputs here stay small (degree <= 24N).
struct Factorization {
    Rat unit;
    std::vector<std::pair<RatPoly, int>> factors;
};
Factorization factor_rational(const RatPoly& f);

}  // namespace k3auto
