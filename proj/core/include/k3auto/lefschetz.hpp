#pragma once

#include <set>
#include <string>
#include <vector>

#include "k3auto/cyclotomic.hpp"
#include "k3auto/numtheory.hpp"

namespace k3auto {

// Ramanujan sum c_k(m): sum of m-th powers of the primitive k-th roots of
// unity, computed as mu(k/g) * phi(k) / phi(k/g) with g = gcd(k, m).
long ramanujan(long k, long m);

// Dimensions of the zeta_k-eigenspaces of the induced action on H^2(X,C),
// keyed by the divisors of n in decreasing order (the paper-style tuple).
struct EigenDims {
    long n = 1;
    std::vector<std::pair<long, int>> dims;  // (divisor, d_divisor), divisor descending

    int at(long k) const;
    std::vector<int> tuple() const;
    bool operator==(const EigenDims& o) const { return n == o.n && dims == o.dims; }
    bool operator<(const EigenDims& o) const { return tuple() < o.tuple(); }
};

struct DimConstraint {
    long divisor;
    char rel;  // '=', '<' (meaning <=), '>' (meaning >=)
    int value;
};

struct DimOptions {
    int h2_total = 22;
    int d1_min = 1;  // an invariant ample class forces d_1 >= 1
    int dn_min = 1;  // omega itself lives in the zeta_n-eigenspace
};

// All nonnegative solutions of sum phi(k) d_k = 22 meeting the constraints,
// in ascending lexicographic order of the divisor-descending tuple.
// Contradictory constraints yield an empty list.
std::vector<EigenDims> enumerate_dims(long n, const std::vector<DimConstraint>& constraints = {},
                                      const DimOptions& opts = {});

// chi(Fix(sigma^m)) = 2 + sum_k d_k c_k(m).
long chi_of_power(const EigenDims& d, long m);

// Terms of the holomorphic fixed point identity over Q(zeta_n).
CycNum holo_lhs(long n, long e);                  // 1 + conj(zeta^e)
CycNum pair_term(long n, long p, long q);         // 1/((1-z^p)(1-z^q))
CycNum point_term(long n, long i);                // pair (i+1, n-i), the e=1 indexing
CycNum curve_term(long n, long e);                // (1+z^e)/(1-z^e)^2

// Unordered eigenvalue-exponent pairs {p, q}, p+q = e (mod n), p,q != 0,
// ordered by p; for e = 1 the list index +1 is the canonical type index.
std::vector<std::pair<long, long>> holo_type_pairs(long n, long e);

// Linear side constraints over the variables a_1..a_k, alpha
// (coefficient vector has length k+1, alpha last).
enum class Rel { Le, Eq, Mod, SumIn };
struct LinearConstraint {
    std::vector<Rat> coefs;
    Rel rel = Rel::Le;
    Rat rhs = 0;
    long modulus = 0;          // Rel::Mod
    std::set<long> allowed;    // Rel::SumIn
    std::string tag;           // provenance, free-form

    static LinearConstraint sum_le(std::size_t nvars, const std::vector<int>& vars, long rhs,
                                   std::string tag = {});
    static LinearConstraint sum_eq(std::size_t nvars, const std::vector<int>& vars, long rhs,
                                   std::string tag = {});
    static LinearConstraint sum_mod(std::size_t nvars, const std::vector<int>& vars, long rhs,
                                    long modulus, std::string tag = {});
    static LinearConstraint sum_in(std::size_t nvars, const std::vector<int>& vars,
                                   std::set<long> allowed, std::string tag = {});
    static LinearConstraint alpha_eq(std::size_t nvars, long value, std::string tag = {});
};

struct HoloSolution {
    long n = 1;
    long e = 1;
    std::vector<int> a;
    int alpha = 0;

    int point_count() const;
    bool operator<(const HoloSolution& o) const;
    bool operator==(const HoloSolution& o) const;
};

struct HoloOptions {
    int a_max = 24;
    int alpha_min = -10;
    int alpha_max = 2;
    bool parallel = true;
};

// All integer vectors (a, alpha), a_i >= 0, satisfying the exact cyclotomic
// identity plus the extra constraints, within bounds; lexicographic order
// on (a, alpha). Every returned solution is re-verified by substitution
// into the cyclotomic identity.
std::vector<HoloSolution> holo_solve(long n, long e = 1, const HoloOptions& opts = {},
                                     const std::vector<LinearConstraint>& extra = {});

// Re-substitution check used as the independent verification path.
bool holo_verify(const HoloSolution& s);

}  // namespace k3auto
