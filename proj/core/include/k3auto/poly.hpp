#pragma once

#include <complex>
#include <string>
#include <vector>

#include "k3auto/rational.hpp"

namespace k3auto {

// Univariate polynomial over Q, dense representation.
// Invariant: coefficient vector is empty (zero polynomial) or has a
// nonzero leading coefficient.
class RatPoly {
public:
    RatPoly() = default;
    explicit RatPoly(const Rat& constant) {
        if (constant != 0) c_.push_back(constant);
    }
    explicit RatPoly(std::vector<Rat> coeffs) : c_(std::move(coeffs)) { trim(); }

    static RatPoly monomial(const Rat& c, std::size_t k);
    static RatPoly t() { return monomial(1, 1); }

    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    Rat coeff(std::size_t k) const { return k < c_.size() ? c_[k] : Rat(0); }
    const std::vector<Rat>& coeffs() const { return c_; }
    Rat leading() const { return c_.empty() ? Rat(0) : c_.back(); }

    bool operator==(const RatPoly& o) const { return c_ == o.c_; }

    RatPoly operator-() const;
    RatPoly operator+(const RatPoly& o) const;
    RatPoly operator-(const RatPoly& o) const;
    RatPoly operator*(const RatPoly& o) const;
    RatPoly operator*(const Rat& s) const;

    Rat eval(const Rat& x) const;
    std::complex<double> eval(const std::complex<double>& z) const;

    RatPoly derivative() const;
    RatPoly pow(unsigned e) const;

    // Vanishing order at the root set of f (f irreducible in intended use):
    // largest k with f^k | this. Returns a large sentinel for the zero poly.
    int valuation(const RatPoly& f) const;

private:
    void trim() {
        while (!c_.empty() && c_.back() == 0) c_.pop_back();
    }
    std::vector<Rat> c_;
};

// Euclidean division: f = q*g + r with deg r < deg g. Throws on g = 0.
std::pair<RatPoly, RatPoly> divmod(const RatPoly& f, const RatPoly& g);
RatPoly operator/(const RatPoly& f, const RatPoly& g);
RatPoly operator%(const RatPoly& f, const RatPoly& g);
bool divides(const RatPoly& g, const RatPoly& f);

// Monic gcd.
RatPoly poly_gcd(RatPoly a, RatPoly b);

// Content (rational) and integer primitive part with positive leading
// coefficient: f = content * primitive.
std::pair<Rat, std::vector<Int>> content_primitive(const RatPoly& f);
RatPoly from_int_coeffs(const std::vector<Int>& c);

std::string to_string(const RatPoly& f, const std::string& var = "t");

}  // namespace k3auto
