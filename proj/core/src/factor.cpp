#include "k3auto/factor.hpp"

#include <algorithm>
#include <cstdint>
#include <stdexcept>

namespace k3auto {
namespace {

// ---- arithmetic mod a small prime ----------------------------------------

using ModPoly = std::vector<long>;  // coeff of x^i in [0,p), trailing zeros trimmed

void mp_trim(ModPoly& f) {
    while (!f.empty() && f.back() == 0) f.pop_back();
}

int mp_deg(const ModPoly& f) { return static_cast<int>(f.size()) - 1; }

long inv_mod(long a, long p) {
    long t = 0, newt = 1, r = p, newr = a % p;
    while (newr != 0) {
        long q = r / newr;
        std::swap(t -= q * newt, newt);
        std::swap(r -= q * newr, newr);
    }
    return ((t % p) + p) % p;
}

ModPoly mp_mul(const ModPoly& a, const ModPoly& b, long p) {
    if (a.empty() || b.empty()) return {};
    ModPoly c(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (!a[i]) continue;
        for (std::size_t j = 0; j < b.size(); ++j)
            c[i + j] = (c[i + j] + a[i] * b[j]) % p;
    }
    mp_trim(c);
    return c;
}

ModPoly mp_sub(ModPoly a, const ModPoly& b, long p) {
    if (a.size() < b.size()) a.resize(b.size(), 0);
    for (std::size_t i = 0; i < b.size(); ++i) a[i] = ((a[i] - b[i]) % p + p) % p;
    mp_trim(a);
    return a;
}

// division with remainder, divisor need not be monic
std::pair<ModPoly, ModPoly> mp_divmod(ModPoly f, const ModPoly& g, long p) {
    long li = inv_mod(g.back(), p);
    ModPoly q;
    if (mp_deg(f) >= mp_deg(g)) q.assign(f.size() - g.size() + 1, 0);
    while (mp_deg(f) >= mp_deg(g)) {
        long c = f.back() * li % p;
        int shift = mp_deg(f) - mp_deg(g);
        q[shift] = c;
        for (std::size_t i = 0; i < g.size(); ++i)
            f[shift + i] = ((f[shift + i] - c * g[i]) % p + p) % p;
        mp_trim(f);
    }
    mp_trim(q);
    return {q, f};
}

ModPoly mp_mod(const ModPoly& f, const ModPoly& g, long p) { return mp_divmod(f, g, p).second; }

ModPoly mp_gcd(ModPoly a, ModPoly b, long p) {
    while (!b.empty()) {
        ModPoly r = mp_mod(a, b, p);
        a = std::move(b);
        b = std::move(r);
    }
    if (!a.empty()) {
        long li = inv_mod(a.back(), p);
        for (auto& c : a) c = c * li % p;
    }
    return a;
}

ModPoly mp_deriv(const ModPoly& f, long p) {
    ModPoly d;
    for (std::size_t i = 1; i < f.size(); ++i) d.push_back(f[i] * (long)(i % p) % p);
    mp_trim(d);
    return d;
}

ModPoly mp_powmod_x(long e, const ModPoly& f, long p) {
    // x^e mod f by square and multiply
    ModPoly result{1}, base{0, 1};
    base = mp_mod(base, f, p);
    while (e) {
        if (e & 1) result = mp_mod(mp_mul(result, base, p), f, p);
        base = mp_mod(mp_mul(base, base, p), f, p);
        e >>= 1;
    }
    return result;
}

// Berlekamp: all monic irreducible factors of squarefree monic f mod p.
std::vector<ModPoly> berlekamp(const ModPoly& f, long p) {
    int n = mp_deg(f);
    if (n <= 1) return {f};
    // rows of Q - I: row i = coeffs of x^(p*i) mod f, minus e_i
    std::vector<std::vector<long>> m(n, std::vector<long>(n, 0));
    for (int i = 0; i < n; ++i) {
        ModPoly xe = mp_powmod_x((long)p * i, f, p);
        for (std::size_t j = 0; j < xe.size(); ++j) m[i][j] = xe[j];
        m[i][i] = ((m[i][i] - 1) % p + p) % p;
    }
    // left nullspace: eliminate columns of m treated as row-vector system v*m=0;
    // equivalently nullspace of transpose
    std::vector<std::vector<long>> a(n, std::vector<long>(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) a[i][j] = m[j][i];
    std::vector<int> pivot_col(n, -1);
    int rank = 0;
    for (int col = 0; col < n && rank < n; ++col) {
        int piv = -1;
        for (int r = rank; r < n; ++r)
            if (a[r][col]) { piv = r; break; }
        if (piv < 0) continue;
        std::swap(a[rank], a[piv]);
        long li = inv_mod(a[rank][col], p);
        for (int j = 0; j < n; ++j) a[rank][j] = a[rank][j] * li % p;
        for (int r = 0; r < n; ++r) {
            if (r != rank && a[r][col]) {
                long c = a[r][col];
                for (int j = 0; j < n; ++j)
                    a[r][j] = ((a[r][j] - c * a[rank][j]) % p + p) % p;
            }
        }
        pivot_col[rank++] = col;
    }
    std::vector<ModPoly> basis;
    std::vector<bool> is_pivot(n, false);
    for (int r = 0; r < rank; ++r) is_pivot[pivot_col[r]] = true;
    for (int col = 0; col < n; ++col) {
        if (is_pivot[col]) continue;
        ModPoly v(n, 0);
        v[col] = 1;
        for (int r = 0; r < rank; ++r)
            v[pivot_col[r]] = ((-a[r][col]) % p + p) % p;
        mp_trim(v);
        basis.push_back(v);
    }
    std::size_t target = basis.size();  // number of irreducible factors
    std::vector<ModPoly> factors{f};
    for (const auto& v : basis) {
        if (factors.size() >= target) break;
        if (mp_deg(v) < 1) continue;
        std::vector<ModPoly> next;
        for (const auto& g : factors) {
            ModPoly rest = g;
            for (long s = 0; s < p && mp_deg(rest) > 0; ++s) {
                ModPoly vs = v;
                if (vs.empty()) vs.push_back(0);
                vs[0] = ((vs[0] - s) % p + p) % p;
                mp_trim(vs);
                ModPoly d = mp_gcd(rest, vs, p);
                if (mp_deg(d) > 0 && mp_deg(d) < mp_deg(rest)) {
                    next.push_back(d);
                    rest = mp_divmod(rest, d, p).first;
                }
            }
            if (mp_deg(rest) > 0) next.push_back(rest);
        }
        factors = std::move(next);
    }
    return factors;
}

// ---- Hensel lifting --------------------------------------------------------

using ZPoly = std::vector<Int>;  // trailing zeros trimmed

void z_trim(ZPoly& f) {
    while (!f.empty() && f.back() == 0) f.pop_back();
}

int z_deg(const ZPoly& f) { return static_cast<int>(f.size()) - 1; }

Int mod_sym(const Int& a, const Int& m) {
    Int r = a % m;
    if (r < 0) r += m;
    if (2 * r > m) r -= m;
    return r;
}

ZPoly z_mod(ZPoly f, const Int& m, bool symmetric) {
    for (auto& c : f) c = symmetric ? mod_sym(c, m) : ((c % m) + m) % m;
    z_trim(f);
    return f;
}

ZPoly z_mul(const ZPoly& a, const ZPoly& b, const Int& m) {
    if (a.empty() || b.empty()) return {};
    ZPoly c(a.size() + b.size() - 1, Int(0));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) c[i + j] = (c[i + j] + a[i] * b[j]) % m;
    z_trim(c);
    return c;
}

ZPoly z_sub(ZPoly a, const ZPoly& b, const Int& m) {
    if (a.size() < b.size()) a.resize(b.size(), Int(0));
    for (std::size_t i = 0; i < b.size(); ++i) a[i] = ((a[i] - b[i]) % m + m) % m;
    z_trim(a);
    return a;
}

// remainder of f by monic g, coefficients mod m
ZPoly z_rem_monic(ZPoly f, const ZPoly& g, const Int& m) {
    while (z_deg(f) >= z_deg(g)) {
        Int c = f.back();
        int shift = z_deg(f) - z_deg(g);
        for (std::size_t i = 0; i < g.size(); ++i)
            f[shift + i] = ((f[shift + i] - c * g[i]) % m + m) % m;
        z_trim(f);
    }
    return f;
}

// exact quotient f / g mod m with g monic (remainder must vanish mod m)
ZPoly z_quo_monic(ZPoly f, const ZPoly& g, const Int& m) {
    ZPoly q;
    if (z_deg(f) >= z_deg(g)) q.assign(f.size() - g.size() + 1, Int(0));
    while (z_deg(f) >= z_deg(g)) {
        Int c = f.back();
        int shift = z_deg(f) - z_deg(g);
        q[shift] = c;
        for (std::size_t i = 0; i < g.size(); ++i)
            f[shift + i] = ((f[shift + i] - c * g[i]) % m + m) % m;
        z_trim(f);
    }
    z_trim(q);
    return q;
}

ModPoly z_to_mp(const ZPoly& f, long p) {
    ModPoly r(f.size());
    for (std::size_t i = 0; i < f.size(); ++i) {
        Int c = f[i] % p;
        if (c < 0) c += p;
        r[i] = c.get_si();
    }
    mp_trim(r);
    return r;
}

ZPoly mp_to_z(const ModPoly& f) {
    ZPoly r(f.size());
    for (std::size_t i = 0; i < f.size(); ++i) r[i] = f[i];
    return r;
}

// Bezout a*g + b*h = 1 mod p for coprime g, h
std::pair<ModPoly, ModPoly> mp_bezout(const ModPoly& g, const ModPoly& h, long p) {
    ModPoly r0 = g, r1 = h, s0{1}, s1{}, t0{}, t1{1};
    while (!r1.empty()) {
        auto [q, r] = mp_divmod(r0, r1, p);
        r0 = std::move(r1);
        r1 = std::move(r);
        ModPoly s2 = mp_sub(s0, mp_mul(q, s1, p), p);
        s0 = std::move(s1);
        s1 = std::move(s2);
        ModPoly t2 = mp_sub(t0, mp_mul(q, t1, p), p);
        t0 = std::move(t1);
        t1 = std::move(t2);
    }
    // r0 = constant gcd
    long li = inv_mod(r0[0], p);
    for (auto& c : s0) c = c * li % p;
    for (auto& c : t0) c = c * li % p;
    return {s0, t0};  // s0*g + t0*h = 1
}

// Lift F = G*H (mod p) with F, G, H monic to modulus p^k (linear steps).
// Returns lifted (G, H) mod p^k.
std::pair<ZPoly, ZPoly> hensel_pair(const ZPoly& F, ModPoly g, ModPoly h, long p, const Int& pk) {
    auto [a, b] = mp_bezout(g, h, p);
    ZPoly G = mp_to_z(g), H = mp_to_z(h);
    ZPoly A = mp_to_z(a), B = mp_to_z(b);
    Int modulus = p;
    while (modulus < pk) {
        // error term d = (F - G*H)/modulus  (mod p)
        Int next = modulus * p;
        ZPoly GH = z_mul(G, H, next);
        ZPoly E = z_sub(z_mod(F, next, false), GH, next);
        ZPoly d(E.size());
        for (std::size_t i = 0; i < E.size(); ++i) d[i] = E[i] / modulus;
        z_trim(d);
        ModPoly dp = z_to_mp(d, p);
        // S = B*d mod G, T = (d - S*H)/G  (mod p)
        ModPoly gp = z_to_mp(G, p), hp = z_to_mp(H, p);
        ModPoly S = mp_mod(mp_mul(z_to_mp(B, p), dp, p), gp, p);
        ModPoly rem = mp_sub(dp, mp_mul(S, hp, p), p);
        ModPoly T = mp_divmod(rem, gp, p).first;
        ZPoly Gn = G, Hn = H;
        auto add_scaled = [&](ZPoly& dst, const ModPoly& corr) {
            if (dst.size() < corr.size()) dst.resize(corr.size(), Int(0));
            for (std::size_t i = 0; i < corr.size(); ++i)
                dst[i] = (dst[i] + modulus * corr[i]) % next;
            z_trim(dst);
        };
        add_scaled(Gn, S);
        add_scaled(Hn, T);
        G = std::move(Gn);
        H = std::move(Hn);
        modulus = next;
    }
    return {z_mod(G, pk, false), z_mod(H, pk, false)};
}

// lift F = prod(mods) (mod p), F monic, to factors mod p^k
void hensel_tree(const ZPoly& F, const std::vector<ModPoly>& mods, long p, const Int& pk,
                 std::vector<ZPoly>& out) {
    if (mods.size() == 1) {
        out.push_back(z_mod(F, pk, false));
        return;
    }
    std::size_t half = mods.size() / 2;
    ModPoly g{1}, h{1};
    for (std::size_t i = 0; i < half; ++i) g = mp_mul(g, mods[i], p);
    for (std::size_t i = half; i < mods.size(); ++i) h = mp_mul(h, mods[i], p);
    auto [G, H] = hensel_pair(F, g, h, p, pk);
    hensel_tree(G, {mods.begin(), mods.begin() + half}, p, pk, out);
    hensel_tree(H, {mods.begin() + half, mods.end()}, p, pk, out);
}

Int coeff_bound(const ZPoly& f) {
    // Mignotte-style: factors of monic f have coefficients bounded by
    // 2^deg * (1 + sum |c_i|)
    Int s = 1;
    for (const auto& c : f) s += abs(c);
    return (Int(1) << (z_deg(f) + 1)) * s;
}

// Factor a monic squarefree integer polynomial into monic irreducible
// integer polynomials.
std::vector<ZPoly> factor_monic_squarefree(const ZPoly& F) {
    if (z_deg(F) <= 1) return {F};
    static const long primes[] = {3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53};
    long best_p = 0;
    std::vector<ModPoly> best;
    int tried = 0;
    for (long p : primes) {
        ModPoly fp = z_to_mp(F, p);
        if (mp_deg(fp) != z_deg(F)) continue;  // leading coeff vanished (monic: cannot)
        ModPoly g = mp_gcd(fp, mp_deriv(fp, p), p);
        if (mp_deg(g) != 0) continue;  // not squarefree mod p
        auto fac = berlekamp(fp, p);
        if (best.empty() || fac.size() < best.size()) {
            best = fac;
            best_p = p;
        }
        if (++tried >= 3 || best.size() == 1) break;
    }
    if (best.empty()) throw std::runtime_error("factor: no usable prime found");
    if (best.size() == 1) return {F};
    std::sort(best.begin(), best.end(),
              [](const ModPoly& a, const ModPoly& b) { return a.size() < b.size(); });
    long p = best_p;
    Int bound = 2 * coeff_bound(F);
    Int pk = p;
    while (pk <= bound) pk *= p;
    std::vector<ZPoly> lifted;
    hensel_tree(z_mod(F, pk, false), best, p, pk, lifted);

    // subset recombination
    std::vector<ZPoly> result;
    ZPoly rest = F;
    std::vector<int> alive(lifted.size(), 1);
    std::size_t nalive = lifted.size();
    for (std::size_t card = 1; card <= nalive / 2 && nalive > 0;) {
        std::vector<std::size_t> idx;
        for (std::size_t i = 0; i < lifted.size(); ++i)
            if (alive[i]) idx.push_back(i);
        if (card > idx.size() / 2) break;
        bool found = false;
        std::vector<std::size_t> sel(card);
        // iterate cardinality-card subsets of idx in lexicographic order
        std::vector<std::size_t> c(card);
        for (std::size_t i = 0; i < card; ++i) c[i] = i;
        while (true) {
            ZPoly cand{Int(1)};
            for (std::size_t i = 0; i < card; ++i) cand = z_mul(cand, lifted[idx[c[i]]], pk);
            cand = z_mod(cand, pk, true);
            RatPoly cr = from_int_coeffs(cand);
            RatPoly restr = from_int_coeffs(rest);
            if (divides(cr, restr)) {
                result.push_back(cand);
                auto [q, r] = divmod(restr, cr);
                ZPoly newrest;
                for (const auto& co : q.coeffs()) newrest.push_back(num(co));
                rest = newrest;
                for (std::size_t i = 0; i < card; ++i) alive[idx[c[i]]] = 0;
                nalive -= card;
                found = true;
                break;
            }
            // next subset
            std::size_t i = card;
            while (i > 0 && c[i - 1] == idx.size() - card + (i - 1)) --i;
            if (i == 0) break;
            ++c[i - 1];
            for (std::size_t j = i; j < card; ++j) c[j] = c[j - 1] + 1;
        }
        if (!found) ++card;
    }
    if (z_deg(rest) > 0) result.push_back(rest);
    return result;
}

}  // namespace

std::vector<SquarefreePart> squarefree_decomposition(const RatPoly& f) {
    std::vector<SquarefreePart> out;
    if (f.degree() < 1) return out;
    RatPoly a = f * (Rat(1) / f.leading());
    RatPoly g = poly_gcd(a, a.derivative());
    RatPoly w = a / g;
    int mult = 1;
    while (w.degree() > 0) {
        RatPoly y = poly_gcd(w, g);
        RatPoly part = w / y;
        if (part.degree() > 0) out.push_back({part, mult});
        w = y;
        g = g / y;
        ++mult;
    }
    return out;
}

bool is_squarefree(const RatPoly& f) {
    if (f.degree() < 1) return true;
    return poly_gcd(f, f.derivative()).degree() == 0;
}

Factorization factor_rational(const RatPoly& f) {
    if (f.is_zero()) throw std::invalid_argument("factor_rational: zero polynomial");
    Factorization out;
    out.unit = f.coeff(f.degree());
    if (f.degree() == 0) return out;

    std::vector<std::pair<RatPoly, int>> raw;
    for (const auto& sq : squarefree_decomposition(f)) {
        RatPoly part = sq.part;
        // strip powers of t
        if (part.coeff(0) == 0) {
            int k = 0;
            std::vector<Rat> cs = part.coeffs();
            while (k <= part.degree() && cs[k] == 0) ++k;
            raw.emplace_back(RatPoly::t(), sq.multiplicity);
            std::vector<Rat> rest(cs.begin() + k, cs.end());
            part = RatPoly(std::move(rest));
            if (part.degree() < 1) continue;
        }
        auto [content, prim] = content_primitive(part);
        (void)content;  // part is monic; content only clears denominators
        // monicize: F(y) = lc^(d-1) * prim(y/lc), so F[i] = prim[i] * lc^(d-1-i)
        Int lc = prim.back();
        int d = static_cast<int>(prim.size()) - 1;
        ZPoly F(prim.size());
        for (int i = 0; i < d; ++i) F[i] = prim[i] * ipow(lc, static_cast<unsigned long>(d - 1 - i));
        F[d] = 1;
        auto monic_factors = factor_monic_squarefree(F);
        for (const auto& G : monic_factors) {
            // map back: g(t) = primitive part of G(lc * t)
            RatPoly tlc = RatPoly::monomial(Rat(lc), 1);
            RatPoly acc(Rat(0));
            for (int i = z_deg(G); i >= 0; --i) acc = acc * tlc + RatPoly(Rat(G[i]));
            auto [c2, prim2] = content_primitive(acc);
            (void)c2;
            RatPoly gfac = from_int_coeffs(prim2);
            gfac = gfac * (Rat(1) / gfac.leading());
            raw.emplace_back(gfac, sq.multiplicity);
        }
    }
    // merge duplicates (t factors may repeat across multiplicities) and sort
    std::sort(raw.begin(), raw.end(), [](const auto& a, const auto& b) {
        if (a.first.degree() != b.first.degree()) return a.first.degree() < b.first.degree();
        return a.first.coeffs() < b.first.coeffs();
    });
    for (auto& [g, m] : raw) {
        if (!out.factors.empty() && out.factors.back().first == g)
            out.factors.back().second += m;
        else
            out.factors.emplace_back(g, m);
    }
    return out;
}

}  // namespace k3auto
