#include "k3auto/fixedlocus.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <stdexcept>

#include "k3auto/refdata.hpp"

namespace k3auto {

LocalType make_local_type(long n, long e, long p, long q) {
    p = ((p % n) + n) % n;
    q = ((q % n) + n) % n;
    if (p == 0 || q == 0)
        throw std::invalid_argument("make_local_type: exponent vanishes (point on a fixed curve)");
    if ((p + q - e) % n != 0)
        throw std::invalid_argument("make_local_type: exponents do not sum to omega exponent");
    if (p > q) std::swap(p, q);
    return LocalType{n, ((e % n) + n) % n, p, q};
}

LocalType local_type_from_index(long n, long i) {
    if (i < 1 || i > (n - 1) / 2)
        throw std::invalid_argument("local_type_from_index: index out of range");
    return make_local_type(n, 1, i + 1, n - i);
}

long type_index(const LocalType& t) {
    if (t.e != 1) throw std::invalid_argument("type_index: canonical index defined for e = 1");
    return t.p - 1;
}

std::vector<LocalType> canonical_types(long n, long e) {
    std::vector<LocalType> out;
    for (const auto& [p, q] : holo_type_pairs(n, e)) out.push_back(LocalType{n, e, p, q});
    return out;
}

PushResult push_type(const LocalType& t, long m) {
    long mm = ((m % t.n) + t.n) % t.n;
    if (mm == 0) throw std::invalid_argument("push_type: exponent must not vanish mod n");
    long g = igcd(t.n, mm);
    long npr = t.n / g;
    long pm = (t.p * mm) % t.n, qm = (t.q * mm) % t.n;
    PushResult r;
    if (pm == 0 || qm == 0) {
        r.on_fixed_curve = true;
        return r;
    }
    long epr = ((t.e * mm) % t.n) / g;
    r.type = make_local_type(npr, epr, pm / g, qm / g);
    return r;
}

int FixedLocusProfile::point_count() const {
    int s = 0;
    for (int x : points) s += x;
    return s;
}

int FixedLocusProfile::alpha() const {
    int s = 0;
    for (int g : curve_genera) s += 1 - g;
    return s;
}

long FixedLocusProfile::chi() const {
    long s = point_count();
    for (int g : curve_genera) s += 2 - 2 * g;
    return s;
}

int FixedLocusProfile::genus_column() const {
    return curve_genera.empty() ? -1 : curve_genera.front();
}

int FixedLocusProfile::rational_column() const {
    return curve_genera.empty() ? 0 : static_cast<int>(curve_genera.size()) - 1;
}

bool FixedLocusProfile::operator==(const FixedLocusProfile& o) const {
    return n == o.n && curve_genera == o.curve_genera && points == o.points;
}

FixedLocusProfile make_profile(long n, std::vector<int> genera, std::vector<int> points) {
    FixedLocusProfile p;
    p.n = n;
    p.curve_genera = std::move(genera);
    std::sort(p.curve_genera.rbegin(), p.curve_genera.rend());
    int big = 0;
    for (int g : p.curve_genera)
        if (g >= 2) ++big;
    if (big > 1)
        throw std::invalid_argument("profile: at most one fixed curve of genus >= 2 (Hodge index)");
    std::size_t ntypes = (n >= 3) ? holo_type_pairs(n, 1).size() : 0;
    if (points.empty()) points.assign(ntypes, 0);
    if (points.size() != ntypes)
        throw std::invalid_argument("profile: point vector length != number of local types");
    p.points = std::move(points);
    return p;
}

std::optional<long> rh_feasible(long g, long p, long N) {
    // 2 - 2g = p(2 - 2g') - N(p - 1)
    long rhs = 2 - 2 * g + N * (p - 1);
    if (rhs % p != 0) return std::nullopt;
    long two_minus = rhs / p;  // = 2 - 2g'
    if ((2 - two_minus) % 2 != 0) return std::nullopt;
    long gq = (2 - two_minus) / 2;
    if (gq < 0) return std::nullopt;
    return gq;
}

std::vector<long> rh_counts(long g, long p) {
    std::vector<long> out;
    for (long gq = g; gq >= 0; --gq) {
        long num = 2 * p - 2 + 2 * g - 2 * p * gq;
        if (num < 0) continue;
        if (num % (p - 1) != 0) continue;
        out.push_back(num / (p - 1));
    }
    std::sort(out.begin(), out.end());
    return out;
}

namespace {

// counts for an involution together with the quotient genus
std::vector<std::pair<long, long>> invol_counts_with_quotient(long g) {
    std::vector<std::pair<long, long>> out;
    for (long N : rh_counts(g, 2)) {
        auto gq = rh_feasible(g, 2, N);
        if (gq) out.emplace_back(N, *gq);
    }
    return out;
}

}  // namespace

FixedCountOptions fixed_count_options(long g, long r) {
    FixedCountOptions out;
    if (r < 2) throw std::invalid_argument("fixed_count_options: order must be >= 2");
    if (g == 0) {
        // a nontrivial automorphism of P^1 fixes exactly two points
        out.counts = {2};
        return out;
    }
    if (is_prime(r)) {
        for (long N : rh_counts(g, r)) out.counts.insert(N);
        return out;
    }
    if (r == 4 || r == 8) {
        // walk the involution tower through the quotients; at each level the
        // induced involution's fixed points are exactly the images of the
        // fixed points from the level above
        for (auto [n1, g1] : invol_counts_with_quotient(g)) {
            if (r == 4) {
                for (auto [f, g2] : invol_counts_with_quotient(g1)) {
                    (void)g2;
                    if (f <= n1) out.counts.insert(f);
                }
            } else {
                for (auto [n2, g2] : invol_counts_with_quotient(g1)) {
                    if (n2 > n1) continue;
                    for (auto [f, g3] : invol_counts_with_quotient(g2)) {
                        (void)g3;
                        if (f <= n2) out.counts.insert(f);
                    }
                }
            }
        }
        return out;
    }
    // composite non-prime-power residual order: sound relaxation
    long cap = 0;
    bool first = true;
    for (long p : prime_divisors(r)) {
        auto cs = rh_counts(g, p);
        long mx = cs.empty() ? 0 : cs.back();
        cap = first ? mx : std::min(cap, mx);
        first = false;
    }
    for (long v = 0; v <= cap; ++v) out.counts.insert(v);
    out.exact = false;
    return out;
}

std::optional<bool> genus_order_possible(long g, long ord) {
    if (ord < 2) return true;
    std::string citation;
    if (refdata_genus_order_excluded(g, ord, &citation)) return false;
    for (long p : prime_divisors(ord)) {
        if (rh_counts(g, p).empty()) return false;
        if (refdata_genus_order_excluded(g, p, &citation)) return false;
    }
    return std::nullopt;  // not excluded; existence is not decided here
}

std::vector<InvolutionProfile> involution_profiles(long chi) {
    if (chi % 2 != 0) throw std::invalid_argument("involution_profiles: chi must be even");
    std::vector<InvolutionProfile> out;
    auto cited = refdata_involution_rows(chi);
    for (int g = 0; g <= 10; ++g) {
        long k2 = chi - 2 + 2 * g;  // 2k = chi - 2 + 2g
        if (k2 < 0 || k2 % 2 != 0) continue;
        int k = static_cast<int>(k2 / 2);
        if (k > 19) continue;
        InvolutionProfile row{g, k, false, false, ""};
        if (cited) {
            bool listed = false;
            for (const auto& [cg, ck] : cited->rows)
                if (cg == g && ck == k) listed = true;
            row.cited = listed;
            if (!listed) {
                row.excluded = true;
                row.note = cited->citation;
            }
        }
        out.push_back(row);
    }
    return out;
}

std::set<long> orbit_leftover_sums(long r, long cap) {
    std::set<long> gens;
    for (long d : divisors(r))
        if (d > 1) gens.insert(d);
    std::vector<char> reach(cap + 1, 0);
    reach[0] = 1;
    for (long v = 1; v <= cap; ++v)
        for (long gsz : gens)
            if (v >= gsz && reach[v - gsz]) reach[v] = 1;
    std::set<long> out;
    for (long v = 0; v <= cap; ++v)
        if (reach[v]) out.insert(v);
    return out;
}

std::vector<CompatBranch> compatibility_constraints(long n, long m,
                                                    const FixedLocusProfile& profile) {
    long g = igcd(n, ((m % n) + n) % n);
    long npr = n / g;
    if (profile.n != npr)
        throw std::invalid_argument("compatibility_constraints: profile order mismatch");
    long r = n / npr;  // residual order of the quotient action
    auto types = canonical_types(n, 1);
    std::size_t nvars = types.size() + 1;

    // group sigma-types by their pushforward
    std::map<long, std::vector<int>> iso_buckets;  // target canonical index -> vars
    std::vector<int> curve_vars;
    for (std::size_t i = 0; i < types.size(); ++i) {
        PushResult pr = push_type(types[i], m);
        if (pr.on_fixed_curve) {
            curve_vars.push_back(static_cast<int>(i));
        } else {
            if (pr.type.e != 1)
                throw std::invalid_argument(
                    "compatibility_constraints: pushed omega exponent is not 1 (need m | n)");
            iso_buckets[type_index(pr.type)].push_back(static_cast<int>(i));
        }
    }

    std::vector<LinearConstraint> iso_cons;
    for (const auto& [j, vars] : iso_buckets) {
        long cap = (static_cast<std::size_t>(j) < profile.points.size()) ? profile.points[j] : 0;
        std::set<long> leftovers = orbit_leftover_sums(r, cap);
        std::set<long> allowed;
        for (long l : leftovers) allowed.insert(cap - l);
        iso_cons.push_back(LinearConstraint::sum_in(
            nvars, vars, allowed, "points over A_" + std::to_string(j + 1) + "," +
                                      std::to_string(npr)));
    }

    // curve bookkeeping: choose the sigma-fixed subset, then per-curve counts
    std::vector<CompatBranch> branches;
    std::size_t ncurves = profile.curve_genera.size();
    std::vector<int> subset(ncurves, 0);
    std::function<void(std::size_t)> rec = [&](std::size_t idx) {
        if (idx == ncurves) {
            // remaining curves host exact fixed counts of the residual action
            std::set<long> totals{0};
            bool exact = true;
            int alpha = 0;
            std::vector<int> fixed;
            for (std::size_t c = 0; c < ncurves; ++c) {
                if (subset[c]) {
                    alpha += 1 - profile.curve_genera[c];
                    fixed.push_back(profile.curve_genera[c]);
                    continue;
                }
                // order of sigma on the curve divides r and exceeds 1
                std::set<long> per;
                bool per_exact = true;
                for (long rp : divisors(r)) {
                    if (rp < 2) continue;
                    auto possible = genus_order_possible(profile.curve_genera[c], rp);
                    if (possible.has_value() && !*possible) continue;
                    FixedCountOptions o = fixed_count_options(profile.curve_genera[c], rp);
                    per.insert(o.counts.begin(), o.counts.end());
                    per_exact = per_exact && o.exact;
                }
                if (per.empty()) return;  // no admissible action on this curve at all
                exact = exact && per_exact;
                std::set<long> next;
                for (long t : totals)
                    for (long v : per) next.insert(t + v);
                totals = std::move(next);
            }
            CompatBranch br;
            br.constraints = iso_cons;
            br.constraints.push_back(
                LinearConstraint::sum_in(nvars, curve_vars, totals,
                                         "points on Fix(sigma^" + std::to_string(m) + ") curves"));
            br.constraints.push_back(LinearConstraint::alpha_eq(
                nvars, alpha, "alpha from pointwise-fixed curves"));
            br.fixed_curve_genera = fixed;
            br.alpha = alpha;
            br.exact = exact;
            branches.push_back(std::move(br));
            return;
        }
        // avoid duplicate branches over identical genera
        if (idx > 0 && profile.curve_genera[idx] == profile.curve_genera[idx - 1] &&
            subset[idx - 1] == 0) {
            subset[idx] = 0;
            rec(idx + 1);
            return;
        }
        for (int b = 0; b <= 1; ++b) {
            subset[idx] = b;
            rec(idx + 1);
        }
        subset[idx] = 0;
    };
    rec(0);
    // deterministic order: by alpha, then fixed set
    std::sort(branches.begin(), branches.end(), [](const CompatBranch& x, const CompatBranch& y) {
        if (x.alpha != y.alpha) return x.alpha < y.alpha;
        return x.fixed_curve_genera < y.fixed_curve_genera;
    });
    return branches;
}

}  // namespace k3auto
