#include "k3auto/poly.hpp"

#include <sstream>
#include <stdexcept>

namespace k3auto {

std::optional<Rat> parse_rat(const std::string& s) {
    if (s.empty()) return std::nullopt;
    std::size_t slash = s.find('/');
    try {
        if (slash == std::string::npos) {
            Int n(s);
            return Rat(n);
        }
        std::string sn = s.substr(0, slash), sd = s.substr(slash + 1);
        if (sn.empty() || sd.empty()) return std::nullopt;
        Int n(sn), d(sd);
        if (d == 0) return std::nullopt;
        Rat q(n, d);
        q.canonicalize();
        return q;
    } catch (const std::invalid_argument&) {
        return std::nullopt;
    }
}

RatPoly RatPoly::monomial(const Rat& c, std::size_t k) {
    if (c == 0) return RatPoly();
    std::vector<Rat> v(k + 1, Rat(0));
    v[k] = c;
    RatPoly p;
    p.c_ = std::move(v);
    return p;
}

RatPoly RatPoly::operator-() const {
    RatPoly r = *this;
    for (auto& x : r.c_) x = -x;
    return r;
}

RatPoly RatPoly::operator+(const RatPoly& o) const {
    std::vector<Rat> v(std::max(c_.size(), o.c_.size()), Rat(0));
    for (std::size_t i = 0; i < c_.size(); ++i) v[i] += c_[i];
    for (std::size_t i = 0; i < o.c_.size(); ++i) v[i] += o.c_[i];
    return RatPoly(std::move(v));
}

RatPoly RatPoly::operator-(const RatPoly& o) const { return *this + (-o); }

RatPoly RatPoly::operator*(const RatPoly& o) const {
    if (is_zero() || o.is_zero()) return RatPoly();
    std::vector<Rat> v(c_.size() + o.c_.size() - 1, Rat(0));
    for (std::size_t i = 0; i < c_.size(); ++i)
        for (std::size_t j = 0; j < o.c_.size(); ++j) v[i + j] += c_[i] * o.c_[j];
    return RatPoly(std::move(v));
}

RatPoly RatPoly::operator*(const Rat& s) const {
    if (s == 0) return RatPoly();
    RatPoly r = *this;
    for (auto& x : r.c_) x *= s;
    return r;
}

Rat RatPoly::eval(const Rat& x) const {
    Rat acc(0);
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
    return acc;
}

std::complex<double> RatPoly::eval(const std::complex<double>& z) const {
    std::complex<double> acc(0.0, 0.0);
    for (auto it = c_.rbegin(); it != c_.rend(); ++it)
        acc = acc * z + std::complex<double>(it->get_d(), 0.0);
    return acc;
}

RatPoly RatPoly::derivative() const {
    if (c_.size() <= 1) return RatPoly();
    std::vector<Rat> v(c_.size() - 1);
    for (std::size_t i = 1; i < c_.size(); ++i) v[i - 1] = c_[i] * Rat(static_cast<long>(i));
    return RatPoly(std::move(v));
}

RatPoly RatPoly::pow(unsigned e) const {
    RatPoly r(Rat(1)), base = *this;
    while (e) {
        if (e & 1) r = r * base;
        base = base * base;
        e >>= 1;
    }
    return r;
}

int RatPoly::valuation(const RatPoly& f) const {
    if (is_zero()) return 1 << 20;
    if (f.degree() < 1) throw std::invalid_argument("valuation: constant modulus");
    int v = 0;
    RatPoly cur = *this;
    while (true) {
        auto [q, r] = divmod(cur, f);
        if (!r.is_zero()) return v;
        cur = q;
        ++v;
    }
}

std::pair<RatPoly, RatPoly> divmod(const RatPoly& f, const RatPoly& g) {
    if (g.is_zero()) throw std::invalid_argument("divmod: division by zero polynomial");
    std::vector<Rat> r(f.coeffs());
    int dg = g.degree();
    Rat lg = g.leading();
    if (static_cast<int>(r.size()) - 1 < dg) return {RatPoly(), f};
    std::vector<Rat> q(r.size() - dg, Rat(0));
    for (int i = static_cast<int>(r.size()) - 1; i >= dg; --i) {
        if (r[i] == 0) continue;
        Rat c = r[i] / lg;
        q[i - dg] = c;
        for (int j = 0; j <= dg; ++j) r[i - dg + j] -= c * g.coeff(j);
    }
    return {RatPoly(std::move(q)), RatPoly(std::move(r))};
}

RatPoly operator/(const RatPoly& f, const RatPoly& g) { return divmod(f, g).first; }
RatPoly operator%(const RatPoly& f, const RatPoly& g) { return divmod(f, g).second; }

bool divides(const RatPoly& g, const RatPoly& f) {
    if (g.is_zero()) return f.is_zero();
    return divmod(f, g).second.is_zero();
}

RatPoly poly_gcd(RatPoly a, RatPoly b) {
    while (!b.is_zero()) {
        RatPoly r = a % b;
        a = std::move(b);
        b = std::move(r);
    }
    if (a.is_zero()) return a;
    return a * (Rat(1) / a.leading());
}

std::pair<Rat, std::vector<Int>> content_primitive(const RatPoly& f) {
    if (f.is_zero()) return {Rat(0), {}};
    Int den_lcm = 1;
    for (const auto& c : f.coeffs())
        den_lcm = den_lcm / gcd(den_lcm, den(c)) * den(c);
    Int num_gcd = 0;
    for (const auto& c : f.coeffs()) {
        Int scaled = num(c) * (den_lcm / den(c));
        num_gcd = gcd(num_gcd, scaled);
    }
    if (f.leading() < 0) num_gcd = -num_gcd;
    Rat content(num_gcd, den_lcm);
    content.canonicalize();
    std::vector<Int> prim;
    prim.reserve(f.coeffs().size());
    for (const auto& c : f.coeffs()) prim.push_back(num(c) * (den_lcm / den(c)) / num_gcd);
    return {content, prim};
}

RatPoly from_int_coeffs(const std::vector<Int>& c) {
    std::vector<Rat> v;
    v.reserve(c.size());
    for (const auto& z : c) v.emplace_back(z);
    return RatPoly(std::move(v));
}

std::string to_string(const RatPoly& f, const std::string& var) {
    if (f.is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (int k = f.degree(); k >= 0; --k) {
        Rat c = f.coeff(k);
        if (c == 0) continue;
        if (!first) os << (c > 0 ? " + " : " - ");
        else if (c < 0) os << "-";
        first = false;
        Rat a = abs(c);
        if (k == 0) os << a.get_str();
        else {
            if (a != 1) os << a.get_str() << "*";
            os << var;
            if (k > 1) os << "^" << k;
        }
    }
    return os.str();
}

}  // namespace k3auto
