#include "k3auto/cyclotomic.hpp"

#include <map>
#include <mutex>
#include <stdexcept>

#include "k3auto/numtheory.hpp"

namespace k3auto {

const RatPoly& cyclotomic_poly(long n) {
    static std::map<long, RatPoly> cache;
    static std::mutex mu;
    std::lock_guard<std::mutex> lock(mu);
    if (n < 1) throw std::invalid_argument("cyclotomic_poly: n must be positive");
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;
    std::function<const RatPoly&(long)> get = [&](long m) -> const RatPoly& {
        auto found = cache.find(m);
        if (found != cache.end()) return found->second;
        // x^m - 1 divided by Phi_d over proper divisors d
        std::vector<Rat> xm(m + 1, Rat(0));
        xm[0] = -1;
        xm[m] = 1;
        RatPoly f{std::vector<Rat>(xm)};
        for (long d : divisors(m)) {
            if (d == m) continue;
            f = f / get(d);
        }
        return cache.emplace(m, std::move(f)).first->second;
    };
    return get(n);
}

namespace {

long phi_of(long n) { return euler_phi(n); }

}  // namespace

CycNum::CycNum(long conductor, std::vector<Rat> coords) : n_(conductor), c_(std::move(coords)) {
    if (conductor < 1 || conductor > kMaxConductor)
        throw std::invalid_argument("CycNum: conductor out of range");
    if (static_cast<long>(c_.size()) != phi_of(conductor))
        throw std::invalid_argument("CycNum: coordinate length must equal phi(conductor)");
}

CycNum CycNum::from_rat(long conductor, const Rat& value) {
    std::vector<Rat> v(phi_of(conductor), Rat(0));
    v[0] = value;
    return CycNum(conductor, std::move(v));
}

bool CycNum::is_zero() const {
    for (const auto& c : c_)
        if (c != 0) return false;
    return true;
}

bool CycNum::is_rational() const {
    for (std::size_t i = 1; i < c_.size(); ++i)
        if (c_[i] != 0) return false;
    return true;
}

bool CycNum::operator==(const CycNum& o) const { return n_ == o.n_ && c_ == o.c_; }

CycNum reduce_mod_phi(long n, const RatPoly& p) {
    RatPoly r = p % cyclotomic_poly(n);
    std::vector<Rat> v(phi_of(n), Rat(0));
    for (int i = 0; i <= r.degree(); ++i) v[i] = r.coeff(i);
    return CycNum(n, std::move(v));
}

CycNum zeta_pow(long n, long k) {
    k %= n;
    if (k < 0) k += n;
    return reduce_mod_phi(n, RatPoly::monomial(1, static_cast<std::size_t>(k)));
}

namespace {

void check_same(const CycNum& x, const CycNum& y) {
    if (x.conductor() != y.conductor())
        throw std::invalid_argument("cyclotomic arithmetic: conductor mismatch");
}

RatPoly as_poly(const CycNum& x) { return RatPoly(std::vector<Rat>(x.coords())); }

}  // namespace

CycNum cyc_add(const CycNum& x, const CycNum& y) {
    check_same(x, y);
    std::vector<Rat> v(x.coords());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] += y.coords()[i];
    return CycNum(x.conductor(), std::move(v));
}

CycNum cyc_sub(const CycNum& x, const CycNum& y) { return cyc_add(x, cyc_neg(y)); }

CycNum cyc_neg(const CycNum& x) {
    std::vector<Rat> v(x.coords());
    for (auto& c : v) c = -c;
    return CycNum(x.conductor(), std::move(v));
}

CycNum cyc_mul(const CycNum& x, const CycNum& y) {
    check_same(x, y);
    return reduce_mod_phi(x.conductor(), as_poly(x) * as_poly(y));
}

CycNum cyc_mul_rat(const CycNum& x, const Rat& s) {
    std::vector<Rat> v(x.coords());
    for (auto& c : v) c *= s;
    return CycNum(x.conductor(), std::move(v));
}

CycNum cyc_inv(const CycNum& x) {
    if (x.is_zero()) throw std::domain_error("cyc_inv: division by zero");
    // extended gcd of the representing polynomial with Phi_n
    const RatPoly& phi = cyclotomic_poly(x.conductor());
    RatPoly r0 = phi, r1 = as_poly(x);
    RatPoly s0, s1(Rat(1));
    while (!r1.is_zero()) {
        auto [q, r] = divmod(r0, r1);
        RatPoly s2 = s0 - q * s1;
        r0 = std::move(r1);
        r1 = std::move(r);
        s0 = std::move(s1);
        s1 = std::move(s2);
    }
    if (r0.degree() != 0)
        throw std::domain_error("cyc_inv: element not invertible (gcd with Phi_n nontrivial)");
    return reduce_mod_phi(x.conductor(), s0 * (Rat(1) / r0.coeff(0)));
}

CycNum cyc_subst(const CycNum& x, long k) {
    long n = x.conductor();
    RatPoly acc;
    for (std::size_t i = 0; i < x.coords().size(); ++i) {
        if (x.coords()[i] == 0) continue;
        long e = (static_cast<long>(i) * k) % n;
        if (e < 0) e += n;
        acc = acc + RatPoly::monomial(x.coords()[i], static_cast<std::size_t>(e));
    }
    return reduce_mod_phi(n, acc);
}

CycNum cyc_conj(const CycNum& x) { return cyc_subst(x, x.conductor() - 1); }

std::vector<Rat> rational_coordinates(const CycNum& x) { return x.coords(); }

std::complex<double> to_complex(const CycNum& x) {
    const double two_pi = 6.28318530717958647692;
    long n = x.conductor();
    std::complex<double> z(std::cos(two_pi / n), std::sin(two_pi / n));
    std::complex<double> acc(0.0, 0.0);
    for (auto it = x.coords().rbegin(); it != x.coords().rend(); ++it)
        acc = acc * z + std::complex<double>(it->get_d(), 0.0);
    return acc;
}

long zeta_order(long n, long k) {
    long g = igcd(((k % n) + n) % n, n);
    if (g == 0) g = n;
    return n / g;
}

}  // namespace k3auto
