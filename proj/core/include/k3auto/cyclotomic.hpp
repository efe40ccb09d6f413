#pragma once

#include <complex>
#include <vector>

#include "k3auto/poly.hpp"

namespace k3auto {

// Largest conductor the engine accepts: 66 is the largest n with phi(n) <= 20.
inline constexpr long kMaxConductor = 66;

// n-th cyclotomic polynomial, computed by recursive division of x^n - 1
// by Phi_d over the proper divisors d. Cached.
const RatPoly& cyclotomic_poly(long n);

// Element of Q(zeta_n) in the power basis 1, z, ..., z^(phi(n)-1) mod Phi_n.
class CycNum {
public:
    CycNum() : n_(1), c_(1, Rat(0)) {}
    CycNum(long conductor, std::vector<Rat> coords);
    static CycNum from_rat(long conductor, const Rat& value);
    static CycNum zero(long conductor) { return from_rat(conductor, 0); }
    static CycNum one(long conductor) { return from_rat(conductor, 1); }

    long conductor() const { return n_; }
    const std::vector<Rat>& coords() const { return c_; }

    bool is_zero() const;
    bool is_rational() const;
    bool operator==(const CycNum& o) const;

private:
    long n_;
    std::vector<Rat> c_;  // length phi(n_)
    friend CycNum reduce_mod_phi(long n, const RatPoly& p);
};

// zeta_n^k reduced mod Phi_n.
CycNum zeta_pow(long n, long k);

CycNum cyc_add(const CycNum& x, const CycNum& y);
CycNum cyc_sub(const CycNum& x, const CycNum& y);
CycNum cyc_mul(const CycNum& x, const CycNum& y);
CycNum cyc_neg(const CycNum& x);
CycNum cyc_mul_rat(const CycNum& x, const Rat& s);

// Multiplicative inverse via extended gcd with Phi_n; throws on zero.
CycNum cyc_inv(const CycNum& x);

// Complex conjugation, the Galois map zeta -> zeta^(n-1).
CycNum cyc_conj(const CycNum& x);

// Galois-style substitution zeta -> zeta^k (used by tests and push checks).
CycNum cyc_subst(const CycNum& x, long k);

// Basis coordinates (length phi(n)); injective on field elements.
std::vector<Rat> rational_coordinates(const CycNum& x);

// Numeric embedding at zeta_n = exp(2*pi*i/n). Test-only cross-check:
// solver logic never consults this.
std::complex<double> to_complex(const CycNum& x);

// Multiplicative order of zeta_n^k, i.e. n/gcd(n,k).
long zeta_order(long n, long k);

}  // namespace k3auto
