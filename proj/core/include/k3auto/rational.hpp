#pragma once

#include <gmpxx.h>

#include <optional>
#include <stdexcept>
#include <string>

namespace k3auto {

// Exact arithmetic substrate. mpq_class keeps values canonical
// (lowest terms, positive denominator), which is the invariant the
// rest of the library relies on.
using Int = mpz_class;
using Rat = mpq_class;

inline Int num(const Rat& q) { return q.get_num(); }
inline Int den(const Rat& q) { return q.get_den(); }

inline bool is_integer(const Rat& q) { return q.get_den() == 1; }

inline Int to_int(const Rat& q) {
    if (!is_integer(q)) throw std::domain_error("to_int: not an integer: " + q.get_str());
    return q.get_num();
}

inline long to_long(const Int& z) {
    if (!z.fits_slong_p()) throw std::domain_error("to_long: out of range");
    return z.get_si();
}

// floor(a/b) for exact rationals, used by interval propagation.
inline Int rat_floor(const Rat& q) {
    Int r;
    mpz_fdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
    return r;
}

inline Int rat_ceil(const Rat& q) {
    Int r;
    mpz_cdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
    return r;
}

inline Int ipow(Int base, unsigned long e) {
    Int r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
    return r;
}

inline Rat rat_pow(const Rat& base, unsigned long e) {
    Rat r;
    mpz_pow_ui(r.get_num().get_mpz_t(), base.get_num_mpz_t(), e);
    mpz_pow_ui(r.get_den().get_mpz_t(), base.get_den_mpz_t(), e);
    return r;
}

// Parses "p" or "p/q"; returns nullopt on malformed input.
std::optional<Rat> parse_rat(const std::string& s);

inline std::string to_string(const Rat& q) { return q.get_str(); }

}  // namespace k3auto
