#include "k3auto/lefschetz.hpp"

#include <algorithm>
#include <future>
#include <stdexcept>
#include <thread>

namespace k3auto {

long ramanujan(long k, long m) {
    if (k < 1) throw std::invalid_argument("ramanujan: k must be positive");
    long mm = m % k;
    if (mm < 0) mm += k;
    long g = (mm == 0) ? k : igcd(k, mm);
    long q = k / g;
    long mu = mobius(q);
    if (mu == 0) return 0;
    return mu * (euler_phi(k) / euler_phi(q));
}

int EigenDims::at(long k) const {
    for (const auto& [div, v] : dims)
        if (div == k) return v;
    return 0;
}

std::vector<int> EigenDims::tuple() const {
    std::vector<int> t;
    t.reserve(dims.size());
    for (const auto& [div, v] : dims) t.push_back(v);
    return t;
}

std::vector<EigenDims> enumerate_dims(long n, const std::vector<DimConstraint>& constraints,
                                      const DimOptions& opts) {
    if (n < 2) throw std::invalid_argument("enumerate_dims: n must be >= 2");
    std::vector<long> divs = divisors(n);
    std::reverse(divs.begin(), divs.end());  // descending
    std::vector<long> phis;
    phis.reserve(divs.size());
    for (long d : divs) phis.push_back(euler_phi(d));

    // per-divisor bounds
    std::vector<int> lo(divs.size(), 0), hi(divs.size(), opts.h2_total);
    for (std::size_t i = 0; i < divs.size(); ++i) {
        hi[i] = opts.h2_total / static_cast<int>(phis[i]);
        if (divs[i] == 1) lo[i] = std::max(lo[i], opts.d1_min);
        if (divs[i] == n) lo[i] = std::max(lo[i], opts.dn_min);
    }
    for (const auto& c : constraints) {
        auto it = std::find(divs.begin(), divs.end(), c.divisor);
        if (it == divs.end())
            throw std::invalid_argument("enumerate_dims: constraint on non-divisor");
        std::size_t i = it - divs.begin();
        switch (c.rel) {
            case '=': lo[i] = std::max(lo[i], c.value); hi[i] = std::min(hi[i], c.value); break;
            case '<': hi[i] = std::min(hi[i], c.value); break;
            case '>': lo[i] = std::max(lo[i], c.value); break;
            default: throw std::invalid_argument("enumerate_dims: bad relation");
        }
    }

    std::vector<EigenDims> out;
    std::vector<int> cur(divs.size(), 0);
    // lexicographic ascending on the descending-divisor tuple
    std::function<void(std::size_t, int)> rec = [&](std::size_t i, int remaining) {
        if (i == divs.size()) {
            if (remaining == 0) {
                EigenDims d;
                d.n = n;
                for (std::size_t j = 0; j < divs.size(); ++j) d.dims.emplace_back(divs[j], cur[j]);
                out.push_back(std::move(d));
            }
            return;
        }
        // minimal budget the remaining positions must consume
        long min_rest = 0;
        for (std::size_t j = i + 1; j < divs.size(); ++j) min_rest += phis[j] * lo[j];
        for (int v = lo[i]; v <= hi[i]; ++v) {
            long used = phis[i] * static_cast<long>(v);
            if (used > remaining) break;
            if (remaining - used < min_rest) continue;
            cur[i] = v;
            rec(i + 1, remaining - static_cast<int>(used));
        }
        cur[i] = 0;
    };
    rec(0, opts.h2_total);
    std::sort(out.begin(), out.end());
    return out;
}

long chi_of_power(const EigenDims& d, long m) {
    long chi = 2;
    for (const auto& [k, v] : d.dims) chi += static_cast<long>(v) * ramanujan(k, m);
    return chi;
}

CycNum holo_lhs(long n, long e) {
    if (igcd(((e % n) + n) % n, n) != 1)
        throw std::invalid_argument("holo_lhs: omega exponent must be coprime to n");
    return cyc_add(CycNum::one(n), cyc_conj(zeta_pow(n, e)));
}

CycNum pair_term(long n, long p, long q) {
    CycNum one = CycNum::one(n);
    CycNum d = cyc_mul(cyc_sub(one, zeta_pow(n, p)), cyc_sub(one, zeta_pow(n, q)));
    return cyc_inv(d);
}

CycNum point_term(long n, long i) {
    if (i < 1 || i > (n - 1) / 2) throw std::invalid_argument("point_term: index out of range");
    return pair_term(n, i + 1, n - i);
}

CycNum curve_term(long n, long e) {
    CycNum one = CycNum::one(n);
    CycNum z = zeta_pow(n, e);
    CycNum d = cyc_mul(cyc_sub(one, z), cyc_sub(one, z));
    return cyc_mul(cyc_add(one, z), cyc_inv(d));
}

std::vector<std::pair<long, long>> holo_type_pairs(long n, long e) {
    std::vector<std::pair<long, long>> pairs;
    long ee = ((e % n) + n) % n;
    for (long p = 1; p <= n - 1; ++p) {
        long q = ((ee - p) % n + n) % n;
        if (q == 0 || p > q) continue;
        pairs.emplace_back(p, q);
    }
    return pairs;
}

LinearConstraint LinearConstraint::sum_le(std::size_t nvars, const std::vector<int>& vars,
                                          long rhs, std::string tag) {
    LinearConstraint c;
    c.coefs.assign(nvars, Rat(0));
    for (int v : vars) c.coefs[v] = 1;
    c.rel = Rel::Le;
    c.rhs = rhs;
    c.tag = std::move(tag);
    return c;
}

LinearConstraint LinearConstraint::sum_eq(std::size_t nvars, const std::vector<int>& vars,
                                          long rhs, std::string tag) {
    LinearConstraint c = sum_le(nvars, vars, rhs, std::move(tag));
    c.rel = Rel::Eq;
    return c;
}

LinearConstraint LinearConstraint::sum_mod(std::size_t nvars, const std::vector<int>& vars,
                                           long rhs, long modulus, std::string tag) {
    LinearConstraint c = sum_le(nvars, vars, rhs, std::move(tag));
    c.rel = Rel::Mod;
    c.modulus = modulus;
    return c;
}

LinearConstraint LinearConstraint::sum_in(std::size_t nvars, const std::vector<int>& vars,
                                          std::set<long> allowed, std::string tag) {
    LinearConstraint c = sum_le(nvars, vars, 0, std::move(tag));
    c.rel = Rel::SumIn;
    c.allowed = std::move(allowed);
    return c;
}

LinearConstraint LinearConstraint::alpha_eq(std::size_t nvars, long value, std::string tag) {
    LinearConstraint c;
    c.coefs.assign(nvars, Rat(0));
    c.coefs[nvars - 1] = 1;
    c.rel = Rel::Eq;
    c.rhs = value;
    c.tag = std::move(tag);
    return c;
}

int HoloSolution::point_count() const {
    int s = 0;
    for (int x : a) s += x;
    return s;
}

bool HoloSolution::operator<(const HoloSolution& o) const {
    if (a != o.a) return a < o.a;
    return alpha < o.alpha;
}

bool HoloSolution::operator==(const HoloSolution& o) const {
    return n == o.n && e == o.e && a == o.a && alpha == o.alpha;
}

bool holo_verify(const HoloSolution& s) {
    auto pairs = holo_type_pairs(s.n, s.e);
    CycNum acc = CycNum::zero(s.n);
    for (std::size_t i = 0; i < pairs.size(); ++i) {
        if (s.a[i] == 0) continue;
        acc = cyc_add(acc, cyc_mul_rat(pair_term(s.n, pairs[i].first, pairs[i].second),
                                       Rat(s.a[i])));
    }
    acc = cyc_add(acc, cyc_mul_rat(curve_term(s.n, s.e), Rat(s.alpha)));
    return acc == holo_lhs(s.n, s.e);
}

namespace {

struct ReducedSystem {
    // pivot variable p equals offset[p] + sum over free vars f of slope[p][f]*x_f
    std::vector<int> pivot_vars, free_vars;
    std::vector<std::vector<Rat>> slope;  // indexed [pivot_idx][free_idx]
    std::vector<Rat> offset;
    bool consistent = true;
};

ReducedSystem reduce(const std::vector<std::vector<Rat>>& cols, const std::vector<Rat>& rhs) {
    std::size_t nrows = rhs.size(), ncols = cols.size();
    std::vector<std::vector<Rat>> m(nrows, std::vector<Rat>(ncols + 1, Rat(0)));
    for (std::size_t j = 0; j < ncols; ++j)
        for (std::size_t i = 0; i < nrows; ++i) m[i][j] = cols[j][i];
    for (std::size_t i = 0; i < nrows; ++i) m[i][ncols] = rhs[i];

    ReducedSystem sys;
    std::size_t row = 0;
    std::vector<int> pivot_of_col(ncols, -1);
    for (std::size_t col = 0; col < ncols && row < nrows; ++col) {
        std::size_t piv = row;
        while (piv < nrows && m[piv][col] == 0) ++piv;
        if (piv == nrows) continue;
        std::swap(m[row], m[piv]);
        Rat inv = Rat(1) / m[row][col];
        for (auto& x : m[row]) x *= inv;
        for (std::size_t r = 0; r < nrows; ++r) {
            if (r != row && m[r][col] != 0) {
                Rat c = m[r][col];
                for (std::size_t j = col; j <= ncols; ++j) m[r][j] -= c * m[row][j];
            }
        }
        pivot_of_col[col] = static_cast<int>(row);
        ++row;
    }
    for (std::size_t r = row; r < nrows; ++r)
        if (m[r][ncols] != 0) {
            sys.consistent = false;
            return sys;
        }
    for (std::size_t col = 0; col < ncols; ++col)
        (pivot_of_col[col] >= 0 ? sys.pivot_vars : sys.free_vars).push_back(static_cast<int>(col));
    for (int pv : sys.pivot_vars) {
        int r = pivot_of_col[pv];
        sys.offset.push_back(m[r][ncols]);
        std::vector<Rat> s;
        for (int fv : sys.free_vars) s.push_back(-m[r][fv]);
        sys.slope.push_back(std::move(s));
    }
    return sys;
}

struct SearchContext {
    const ReducedSystem* sys;
    const std::vector<LinearConstraint>* extra;
    std::vector<long> lo, hi;  // inclusive variable bounds, size nvars
    std::size_t nvars;
};

void search(const SearchContext& ctx, std::vector<long>& freevals, std::size_t depth,
            std::vector<HoloSolution>& out, long n, long e, std::size_t npoints) {
    const ReducedSystem& sys = *ctx.sys;
    // interval check on every pivot expression over the unassigned tail
    for (std::size_t pi = 0; pi < sys.pivot_vars.size(); ++pi) {
        Rat lo_val = sys.offset[pi], hi_val = sys.offset[pi];
        for (std::size_t fi = 0; fi < sys.free_vars.size(); ++fi) {
            const Rat& sl = sys.slope[pi][fi];
            if (sl == 0) continue;
            if (fi < depth) {
                lo_val += sl * Rat(freevals[fi]);
                hi_val += sl * Rat(freevals[fi]);
            } else {
                int var = sys.free_vars[fi];
                if (sl > 0) {
                    lo_val += sl * Rat(ctx.lo[var]);
                    hi_val += sl * Rat(ctx.hi[var]);
                } else {
                    lo_val += sl * Rat(ctx.hi[var]);
                    hi_val += sl * Rat(ctx.lo[var]);
                }
            }
        }
        int pv = sys.pivot_vars[pi];
        if (hi_val < Rat(ctx.lo[pv]) || lo_val > Rat(ctx.hi[pv])) return;
    }
    if (depth == sys.free_vars.size()) {
        std::vector<Rat> full(ctx.nvars, Rat(0));
        for (std::size_t fi = 0; fi < sys.free_vars.size(); ++fi)
            full[sys.free_vars[fi]] = Rat(freevals[fi]);
        for (std::size_t pi = 0; pi < sys.pivot_vars.size(); ++pi) {
            Rat v = sys.offset[pi];
            for (std::size_t fi = 0; fi < sys.free_vars.size(); ++fi)
                v += sys.slope[pi][fi] * Rat(freevals[fi]);
            if (!is_integer(v)) return;
            Int z = to_int(v);
            int pv = sys.pivot_vars[pi];
            if (z < ctx.lo[pv] || z > ctx.hi[pv]) return;
            full[pv] = Rat(z);
        }
        for (const auto& c : *ctx.extra) {
            Rat s(0);
            for (std::size_t j = 0; j < ctx.nvars; ++j)
                if (c.coefs[j] != 0) s += c.coefs[j] * full[j];
            switch (c.rel) {
                case Rel::Le:
                    if (s > c.rhs) return;
                    break;
                case Rel::Eq:
                    if (s != c.rhs) return;
                    break;
                case Rel::Mod: {
                    Rat diff = s - c.rhs;
                    if (!is_integer(diff)) return;
                    if (to_int(diff) % c.modulus != 0) return;
                    break;
                }
                case Rel::SumIn: {
                    if (!is_integer(s)) return;
                    if (!c.allowed.count(to_long(to_int(s)))) return;
                    break;
                }
            }
        }
        HoloSolution sol;
        sol.n = n;
        sol.e = e;
        sol.a.resize(npoints);
        for (std::size_t i = 0; i < npoints; ++i) sol.a[i] = static_cast<int>(to_long(to_int(full[i])));
        sol.alpha = static_cast<int>(to_long(to_int(full[npoints])));
        out.push_back(std::move(sol));
        return;
    }
    int var = sys.free_vars[depth];
    for (long v = ctx.lo[var]; v <= ctx.hi[var]; ++v) {
        freevals[depth] = v;
        search(ctx, freevals, depth + 1, out, n, e, npoints);
    }
    freevals[depth] = ctx.lo[var];
}

}  // namespace

std::vector<HoloSolution> holo_solve(long n, long e, const HoloOptions& opts,
                                     const std::vector<LinearConstraint>& extra) {
    if (n < 3) throw std::invalid_argument("holo_solve: order must be >= 3");
    auto pairs = holo_type_pairs(n, e);
    std::size_t k = pairs.size(), nvars = k + 1;
    for (const auto& c : extra)
        if (c.coefs.size() != nvars)
            throw std::invalid_argument("holo_solve: constraint arity mismatch");

    std::vector<std::vector<Rat>> cols;
    cols.reserve(nvars);
    for (const auto& [p, q] : pairs) cols.push_back(rational_coordinates(pair_term(n, p, q)));
    cols.push_back(rational_coordinates(curve_term(n, e)));
    std::vector<Rat> rhs = rational_coordinates(holo_lhs(n, e));

    ReducedSystem sys = reduce(cols, rhs);
    if (!sys.consistent) return {};

    SearchContext ctx;
    ctx.sys = &sys;
    ctx.extra = &extra;
    ctx.nvars = nvars;
    ctx.lo.assign(nvars, 0);
    ctx.hi.assign(nvars, opts.a_max);
    ctx.lo[k] = opts.alpha_min;
    ctx.hi[k] = opts.alpha_max;
    // tighten per-variable caps from nonnegative-coefficient Le/Eq constraints
    for (const auto& c : extra) {
        if (c.rel != Rel::Le && c.rel != Rel::Eq) continue;
        bool nonneg = true;
        for (std::size_t j = 0; j < k; ++j)
            if (c.coefs[j] < 0) nonneg = false;
        if (!nonneg || c.coefs[k] != 0) continue;
        for (std::size_t j = 0; j < k; ++j) {
            if (c.coefs[j] > 0) {
                Rat cap = c.rhs / c.coefs[j];
                long capl = to_long(rat_floor(cap));
                if (capl < ctx.hi[j]) ctx.hi[j] = std::max(0L, capl);
            }
        }
    }
    // SumIn constraints also cap their variables
    for (const auto& c : extra) {
        if (c.rel != Rel::SumIn || c.allowed.empty()) continue;
        long cap = *c.allowed.rbegin();
        for (std::size_t j = 0; j < k; ++j)
            if (c.coefs[j] > 0 && cap < ctx.hi[j]) ctx.hi[j] = std::max(0L, cap);
    }

    std::vector<HoloSolution> sols;
    if (sys.free_vars.empty() || !opts.parallel) {
        std::vector<long> freevals(sys.free_vars.size(), 0);
        search(ctx, freevals, 0, sols, n, e, k);
    } else {
        // split the first free variable's range across tasks; the merge is a
        // sorted union so the schedule cannot influence the output
        int var0 = sys.free_vars[0];
        long lo0 = ctx.lo[var0], hi0 = ctx.hi[var0];
        unsigned tasks = std::max(1u, std::min<unsigned>(std::thread::hardware_concurrency(),
                                                         static_cast<unsigned>(hi0 - lo0 + 1)));
        std::vector<std::future<std::vector<HoloSolution>>> futs;
        for (unsigned tix = 0; tix < tasks; ++tix) {
            futs.push_back(std::async(std::launch::async, [&, tix]() {
                SearchContext local = ctx;
                std::vector<HoloSolution> part;
                std::vector<long> freevals(sys.free_vars.size(), 0);
                for (long v = lo0 + tix; v <= hi0; v += tasks) {
                    local.lo[var0] = v;
                    local.hi[var0] = v;
                    freevals[0] = v;
                    search(local, freevals, 1, part, n, e, k);
                }
                return part;
            }));
        }
        for (auto& f : futs) {
            auto part = f.get();
            sols.insert(sols.end(), part.begin(), part.end());
        }
    }
    std::sort(sols.begin(), sols.end());
    for (const auto& s : sols)
        if (!holo_verify(s)) throw std::logic_error("holo_solve: re-substitution check failed");
    return sols;
}

}  // namespace k3auto
