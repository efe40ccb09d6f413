#include "k3auto/classify.hpp"

#include <algorithm>
#include <functional>
#include <sstream>
#include <stdexcept>

#include "k3auto/io.hpp"
#include "k3auto/refdata.hpp"

namespace k3auto {

long gamma_bound(long n) {
    if (n < 2) throw std::invalid_argument("gamma: n must be >= 2");
    return 21 / euler_phi(n) - 1;
}

std::vector<long> tv_k3() {
    std::vector<long> out;
    for (long n = 2; n <= 1000; ++n)
        if (n != 60 && euler_phi(n) <= 20) out.push_back(n);
    return out;
}

std::string to_string(RowStatus s) {
    switch (s) {
        case RowStatus::Admissible: return "Admissible";
        case RowStatus::MatchesPaperRow: return "MatchesPaperRow";
        case RowStatus::EliminatedArithmetic: return "EliminatedArithmetic";
        case RowStatus::RequiresGeometricAnalysis: return "RequiresGeometricAnalysis";
    }
    return "?";
}

std::optional<DoublingFact> doubling_facts(long n, const FixedLocusProfile& profile) {
    bool has_curve = !profile.curve_genera.empty();
    for (const auto& f : reference_data()["facts"]) {
        if (f["kind"] != "doubling") continue;
        if (f["order"].get<long>() != n) continue;
        std::string cond = f["condition"].get<std::string>();
        bool applies = (cond == "always") || (cond == "curve" && has_curve) ||
                       (cond == "isolated_only" && !has_curve) ||
                       (cond == "two_curves" && profile.curve_genera.size() >= 2) ||
                       (cond == "curve_and_two_points" && has_curve && profile.point_count() >= 2);
        if (!applies) continue;
        DoublingFact d;
        d.lift_exists = f["lift"].get<bool>();
        d.citation = f["citation"].get<std::string>();
        if (cond == "two_curves" || cond == "curve_and_two_points")
            d.note = "unexercised order-3 variant triggered";
        return d;
    }
    return std::nullopt;
}

std::string row_content_label(const ClassificationRow& row) {
    std::ostringstream os;
    os << row.n << "|";
    for (int v : row.d.tuple()) os << v << ",";
    os << "|";
    for (int v : row.holo.a) os << v << ",";
    os << row.holo.alpha << "|";
    for (const auto& [ord, p] : row.profiles) {
        os << ord << ":";
        for (int g : p.curve_genera) os << g << ".";
        os << ";";
    }
    return "row-" + fnv1a_digest(os.str()).substr(0, 8);
}

namespace {

// ---------------------------------------------------------------- helpers

std::vector<int> d_tuple(const EigenDims& d) { return d.tuple(); }

std::map<long, long> chi_map_all(const EigenDims& d) {
    std::map<long, long> chi;
    for (long k : divisors(d.n))
        if (k > 1) chi[k] = chi_of_power(d, d.n / k);  // order-k power sigma^{n/k}
    return chi;
}

LinearConstraint chi_link(std::size_t nvars, long chi) {
    LinearConstraint c;
    c.coefs.assign(nvars, Rat(1));
    c.coefs[nvars - 1] = 2;  // N + 2*alpha = chi
    c.rel = Rel::Eq;
    c.rhs = chi;
    c.tag = "chi link";
    return c;
}

bool sol_satisfies(const HoloSolution& s, const LinearConstraint& c) {
    Rat acc(0);
    for (std::size_t i = 0; i < s.a.size(); ++i) acc += c.coefs[i] * Rat(s.a[i]);
    acc += c.coefs[s.a.size()] * Rat(s.alpha);
    switch (c.rel) {
        case Rel::Le: return acc <= c.rhs;
        case Rel::Eq: return acc == c.rhs;
        case Rel::Mod: {
            Rat diff = acc - c.rhs;
            return is_integer(diff) && to_int(diff) % c.modulus == 0;
        }
        case Rel::SumIn:
            return is_integer(acc) && c.allowed.count(to_long(to_int(acc))) > 0;
    }
    return false;
}

bool sol_satisfies_all(const HoloSolution& s, const std::vector<LinearConstraint>& cs) {
    for (const auto& c : cs)
        if (!sol_satisfies(s, c)) return false;
    return true;
}

std::vector<int> gk_genera(int g, int k) {
    std::vector<int> genera;
    if (g >= 0) genera.push_back(g);
    for (int i = 0; i < k; ++i) genera.push_back(0);
    return genera;
}

// Known profile of sigma^u against a known profile of (sigma^u)^r, both with
// omega exponent 1. Checks point buckets and distributes curve-bound points
// over the lower profile's curves.
bool profile_pair_feasible(const FixedLocusProfile& upper, long r,
                           const FixedLocusProfile& lower, std::string* why = nullptr) {
    long nu = upper.n, nl = lower.n;
    if (nu / igcd(nu, r) != nl && nu / r != nl) {
        if (why) *why = "order mismatch in profile pair";
        return false;
    }
    auto types = canonical_types(nu, 1);
    std::map<long, long> iso_sums;
    long curve_sum = 0;
    for (std::size_t i = 0; i < types.size(); ++i) {
        if (upper.points[i] == 0) continue;
        PushResult pr = push_type(types[i], r);
        if (pr.on_fixed_curve)
            curve_sum += upper.points[i];
        else
            iso_sums[type_index(pr.type)] += upper.points[i];
    }
    for (const auto& [j, s] : iso_sums) {
        long cap = (static_cast<std::size_t>(j) < lower.points.size()) ? lower.points[j] : 0;
        if (s > cap) {
            if (why) *why = "isolated-point bucket exceeds the lower profile";
            return false;
        }
        if (!orbit_leftover_sums(r, cap).count(cap - s)) {
            if (why) *why = "isolated-point bucket leftover not a sum of orbit lengths";
            return false;
        }
    }
    // upper curves embed into lower curves (pointwise-fixed there, hosting 0)
    std::vector<int> avail = lower.curve_genera;
    for (int g : upper.curve_genera) {
        auto it = std::find(avail.begin(), avail.end(), g);
        if (it == avail.end()) {
            if (why) *why = "fixed curve of the power is missing from the lower profile";
            return false;
        }
        avail.erase(it);
    }
    std::set<long> totals{0};
    for (int g : avail) {
        std::set<long> per;
        for (long rp : divisors(r)) {
            if (rp < 2) continue;
            auto possible = genus_order_possible(g, rp);
            if (possible.has_value() && !*possible) continue;
            auto opts = fixed_count_options(g, rp);
            per.insert(opts.counts.begin(), opts.counts.end());
        }
        if (per.empty()) {
            if (why) *why = "a genus-" + std::to_string(g) + " curve admits no residual action";
            return false;
        }
        std::set<long> next;
        for (long t : totals)
            for (long v : per)
                if (t + v <= curve_sum) next.insert(t + v);
        totals = std::move(next);
    }
    if (!totals.count(curve_sum)) {
        if (why)
            *why = "curve-bound points (" + std::to_string(curve_sum) +
                   ") cannot be distributed over the lower profile's curves";
        return false;
    }
    return true;
}

// ------------------------------------------------- embedded profile tables

struct Order5Case {
    std::string label;
    int a1 = 0, a2 = 0;
    std::vector<int> genera;
};

std::vector<Order5Case> order5_cases() {
    std::vector<Order5Case> out;
    for (const auto& r : reference_table("order5")["rows"]) {
        Order5Case c;
        c.label = r[0].get<std::string>();
        c.a1 = r[1].get<int>();
        c.a2 = r[2].get<int>();
        int g = r[3].get<int>(), k = r[4].get<int>();
        c.genera = gk_genera(g, k);
        out.push_back(std::move(c));
    }
    return out;
}

// (g, k) rows of the embedded order-3 data for a given chi; nullopt when chi
// is outside the cited rows.
std::optional<std::vector<std::pair<int, int>>> order3_rows(long chi) {
    std::vector<std::pair<int, int>> rows;
    bool seen = false;
    for (const auto& r : reference_table("order3")["rows"]) {
        if (r[0].get<long>() != chi) continue;
        seen = true;
        rows.emplace_back(r[1].get<int>(), r[2].get<int>());
    }
    if (!seen) return std::nullopt;
    return rows;
}

struct Order11Case {
    std::string label;
    std::vector<int> genera;
    std::vector<int> points;
    int d11 = 0, d1 = 0;
    std::string ns;
};

std::vector<Order11Case> order11_cases() {
    std::vector<Order11Case> out;
    for (const auto& r : reference_table("order11")["rows"]) {
        Order11Case c;
        c.label = r[0].get<std::string>();
        for (const auto& g : r[1]) c.genera.push_back(g.get<int>());
        for (const auto& p : r[2]) c.points.push_back(p.get<int>());
        c.d11 = r[3].get<int>();
        c.d1 = r[4].get<int>();
        c.ns = r[5].get<std::string>();
        out.push_back(std::move(c));
    }
    return out;
}

// ------------------------------------------------------------- annotations

struct Annotation {
    long n;
    std::vector<int> d;
    std::map<long, std::pair<int, int>> profile_keys;  // order -> (g, k)
    std::string label, note;
};

std::vector<Annotation> annotations_for(long n) {
    std::vector<Annotation> out;
    for (const auto& a : reference_data()["annotations"]) {
        if (a["n"].get<long>() != n) continue;
        Annotation an;
        an.n = n;
        for (const auto& v : a["d"]) an.d.push_back(v.get<int>());
        an.note = a.value("note", "");
        an.label = a.value("label", "");
        if (a.contains("profiles"))
            for (const auto& [key, gk] : a["profiles"].items())
                an.profile_keys[std::stol(key)] = {gk[0].get<int>(), gk[1].get<int>()};
        out.push_back(std::move(an));
    }
    return out;
}

std::optional<Annotation> find_annotation(const ClassificationRow& row) {
    for (const auto& an : annotations_for(row.n)) {
        if (an.d != row.d.tuple()) continue;
        bool ok = true;
        for (const auto& [ord, gk] : an.profile_keys) {
            auto it = row.profiles.find(ord);
            if (it == row.profiles.end() || it->second.genus_column() != gk.first ||
                it->second.rational_column() != gk.second)
                ok = false;
        }
        if (ok) return an;
    }
    return std::nullopt;
}

void finalize_status(ClassificationRow& row) {
    if (row.status == RowStatus::EliminatedArithmetic) return;
    if (auto an = find_annotation(row)) {
        row.status = RowStatus::RequiresGeometricAnalysis;
        row.note = an->note;
        if (!an->label.empty()) row.label = an->label;
    }
    if (row.label.empty()) row.label = row_content_label(row);
}

ClassificationRow eliminated_row(long n, const EigenDims& d, std::string note) {
    ClassificationRow row;
    row.n = n;
    row.d = d;
    if (d.n == n) row.chi = chi_map_all(d);
    row.status = RowStatus::EliminatedArithmetic;
    row.note = std::move(note);
    row.label = row_content_label(row);
    return row;
}

void push_unique(std::vector<ClassificationRow>& rows, ClassificationRow&& row) {
    for (const auto& r : rows) {
        if (r.n == row.n && r.d == row.d && r.holo == row.holo && r.profiles == row.profiles &&
            r.status == row.status)
            return;
    }
    rows.push_back(std::move(row));
}

// --------------------------------------------------------------- order 11

std::vector<ClassificationRow> classify11(const ClassifyOptions& opts) {
    std::vector<DimConstraint> cs;
    if (opts.dn) cs.push_back({11, '=', *opts.dn});
    std::vector<ClassificationRow> rows;
    for (const EigenDims& d : enumerate_dims(11, cs)) {
        long chi11 = chi_of_power(d, 1);
        bool matched_case = false;
        for (const Order11Case& c : order11_cases()) {
            if (c.d11 != d.at(11) || c.d1 != d.at(1)) continue;
            FixedLocusProfile prof = make_profile(11, c.genera, c.points);
            if (prof.chi() != chi11) continue;
            matched_case = true;
            // pin the embedded type data and verify the holomorphic identity
            HoloSolution sol;
            sol.n = 11;
            sol.e = 1;
            sol.a = c.points;
            sol.alpha = prof.alpha();
            if (!holo_verify(sol))
                throw std::logic_error("order-11 embedded profile fails the holomorphic identity");
            ClassificationRow row;
            row.n = 11;
            row.d = d;
            row.chi = chi_map_all(d);
            row.profiles[11] = prof;
            row.holo = sol;
            row.label = c.label;
            row.ns_name = c.ns;
            finalize_status(row);
            push_unique(rows, std::move(row));
        }
        if (!matched_case && opts.keep_eliminated)
            rows.push_back(eliminated_row(11, d, "no embedded order-11 profile matches chi"));
    }
    return rows;
}

// --------------------------------------------------------------- order 15

std::vector<ClassificationRow> classify15(const ClassifyOptions& opts) {
    std::vector<DimConstraint> cs;
    if (opts.dn) cs.push_back({15, '=', *opts.dn});
    auto dims = enumerate_dims(15, cs);
    std::vector<ClassificationRow> rows;
    std::size_t nvars = holo_type_pairs(15, 1).size() + 1;

    for (const Order5Case& c5 : order5_cases()) {
        FixedLocusProfile prof5 = make_profile(5, c5.genera, {c5.a1, c5.a2});
        long chi5 = prof5.chi();
        std::vector<const EigenDims*> d_matches;
        for (const EigenDims& d : dims)
            if (chi_of_power(d, 3) == chi5) d_matches.push_back(&d);
        if (d_matches.empty()) continue;
        for (const CompatBranch& br5 : compatibility_constraints(15, 3, prof5)) {
            for (const EigenDims* dp : d_matches) {
                const EigenDims& d = *dp;
                auto cons = br5.constraints;
                cons.push_back(chi_link(nvars, chi_of_power(d, 1)));
                std::vector<HoloSolution> sols = holo_solve(15, 1, opts.holo, cons);
                for (const HoloSolution& sol : sols) {
                    long chi3 = chi_of_power(d, 5);
                    auto o3 = order3_rows(chi3);
                    if (!o3) {
                        ClassificationRow row;
                        row.n = 15;
                        row.d = d;
                        row.chi = chi_map_all(d);
                        row.holo = sol;
                        row.profiles[15] = make_profile(15, br5.fixed_curve_genera, sol.a);
                        row.profiles[5] = prof5;
                        row.status = RowStatus::RequiresGeometricAnalysis;
                        row.note = "chi_3 = " + std::to_string(chi3) +
                                   " falls outside the embedded order-3 rows";
                        row.label = row_content_label(row);
                        push_unique(rows, std::move(row));
                        continue;
                    }
                    for (auto [g3, k3] : *o3) {
                        int a13 = 4 - g3 + k3;  // order-3 holomorphic relation
                        FixedLocusProfile prof3 = make_profile(3, gk_genera(g3, k3), {a13});
                        bool ok = false;
                        for (const CompatBranch& br3 : compatibility_constraints(15, 5, prof3)) {
                            if (br3.fixed_curve_genera != br5.fixed_curve_genera) continue;
                            if (sol_satisfies_all(sol, br3.constraints)) ok = true;
                        }
                        ClassificationRow row;
                        row.n = 15;
                        row.d = d;
                        row.chi = chi_map_all(d);
                        row.holo = sol;
                        row.profiles[15] = make_profile(15, br5.fixed_curve_genera, sol.a);
                        row.profiles[5] = prof5;
                        row.profiles[3] = prof3;
                        if (!ok) {
                            std::string why = "incompatible with the order-3 profile";
                            auto poss = genus_order_possible(g3, 5);
                            std::string cite;
                            if (g3 > 0 && poss.has_value() && !*poss &&
                                refdata_genus_order_excluded(g3, 5, &cite))
                                why = "a genus-" + std::to_string(g3) +
                                      " curve admits no order-5 action [" + cite + "]";
                            row.status = RowStatus::EliminatedArithmetic;
                            row.note = why;
                            row.label = row_content_label(row);
                            if (opts.keep_eliminated) push_unique(rows, std::move(row));
                            continue;
                        }
                        finalize_status(row);
                        push_unique(rows, std::move(row));
                    }
                }
                if (sols.empty() && opts.keep_eliminated) {
                    ClassificationRow row = eliminated_row(
                        15, d, "holomorphic solver empty for sigma_5 case " + c5.label);
                    row.profiles[5] = prof5;
                    push_unique(rows, std::move(row));
                }
            }
        }
    }
    return rows;
}

// --------------------------------------------------------------- order 22

std::vector<ClassificationRow> classify22(const ClassifyOptions& opts) {
    std::vector<DimConstraint> cs;
    if (opts.dn) cs.push_back({22, '=', *opts.dn});
    std::vector<ClassificationRow> rows;
    std::size_t nvars = holo_type_pairs(22, 1).size() + 1;
    for (const EigenDims& d : enumerate_dims(22, cs)) {
        int m11 = d.at(22) + d.at(11), s11 = d.at(2) + d.at(1);
        long chi11 = chi_of_power(d, 2), chi22 = chi_of_power(d, 1), chi2 = chi_of_power(d, 11);
        for (const Order11Case& c : order11_cases()) {
            if (c.d11 != m11 || c.d1 != s11) continue;
            FixedLocusProfile prof11 = make_profile(11, c.genera, c.points);
            if (prof11.chi() != chi11) continue;
            auto lift = doubling_facts(11, prof11);
            if (lift && !lift->lift_exists) {
                if (opts.keep_eliminated) {
                    ClassificationRow row = eliminated_row(
                        22, d, "no order-22 square root of this order-11 action [" +
                                   lift->citation + "]");
                    row.profiles[11] = prof11;
                    push_unique(rows, std::move(row));
                }
                continue;
            }
            bool any_sol = false;
            for (const CompatBranch& br : compatibility_constraints(22, 2, prof11)) {
                auto cons = br.constraints;
                cons.push_back(chi_link(nvars, chi22));
                for (const HoloSolution& sol : holo_solve(22, 1, opts.holo, cons)) {
                    any_sol = true;
                    bool placed = false;
                    for (const InvolutionProfile& ip : involution_profiles(chi2)) {
                        if (ip.excluded) continue;
                        FixedLocusProfile prof2 = make_profile(2, gk_genera(ip.g, ip.k), {});
                        bool ok = false;
                        for (const CompatBranch& br2 : compatibility_constraints(22, 11, prof2)) {
                            if (br2.fixed_curve_genera != br.fixed_curve_genera) continue;
                            if (sol_satisfies_all(sol, br2.constraints)) ok = true;
                        }
                        if (!ok) continue;
                        placed = true;
                        ClassificationRow row;
                        row.n = 22;
                        row.d = d;
                        row.chi = chi_map_all(d);
                        row.holo = sol;
                        row.profiles[22] = make_profile(22, br.fixed_curve_genera, sol.a);
                        row.profiles[11] = prof11;
                        row.profiles[2] = prof2;
                        row.ns_name = c.ns;
                        finalize_status(row);
                        push_unique(rows, std::move(row));
                    }
                    if (!placed && opts.keep_eliminated) {
                        ClassificationRow row = eliminated_row(
                            22, d, "no involution profile hosts the fixed points");
                        row.holo = sol;
                        row.profiles[11] = prof11;
                        push_unique(rows, std::move(row));
                    }
                }
            }
            if (!any_sol && opts.keep_eliminated) {
                ClassificationRow row =
                    eliminated_row(22, d, "holomorphic solver empty under the order-11 buckets");
                row.profiles[11] = prof11;
                push_unique(rows, std::move(row));
            }
        }
    }
    return rows;
}

// --------------------------------------------------------------- order 16

// per-curve two-power tower: successive fixed counts on a curve pointwise
// fixed by the involution; each step is an involution on the quotient
bool tower_chain_ok(long g, const std::vector<long>& counts) {
    long cur_g = g;
    long prev = -1;
    for (long c : counts) {
        if (prev >= 0 && c > prev) return false;
        auto gq = rh_feasible(cur_g, 2, c);
        if (!gq) return false;
        cur_g = *gq;
        prev = c;
    }
    return true;
}

std::vector<ClassificationRow> classify16(const ClassifyOptions& opts) {
    std::vector<DimConstraint> cs;
    if (opts.dn) cs.push_back({16, '=', *opts.dn});
    std::vector<ClassificationRow> rows;
    std::size_t nv16 = holo_type_pairs(16, 1).size() + 1;
    std::size_t nv8 = holo_type_pairs(8, 1).size() + 1;

    std::string fact16_cite;
    bool have_fact16 = false;
    for (const auto& f : reference_data()["facts"]) {
        if (f["kind"] == "order16_four_points_72_excluded") {
            have_fact16 = true;
            fact16_cite = f["citation"].get<std::string>();
        }
    }

    for (const EigenDims& d : enumerate_dims(16, cs)) {
        long chi16 = chi_of_power(d, 1), chi8 = chi_of_power(d, 2), chi4 = chi_of_power(d, 4),
             chi2 = chi_of_power(d, 8);
        // order-4 level: the unique type satisfies a = 2*alpha + 4
        std::vector<HoloSolution> sols4 =
            holo_solve(4, 1, opts.holo, {chi_link(2, chi4)});
        if (sols4.empty()) {
            if (opts.keep_eliminated)
                rows.push_back(eliminated_row(16, d, "no order-4 holomorphic solution at chi_4"));
            continue;
        }
        std::vector<InvolutionProfile> invols = involution_profiles(chi2);
        for (const HoloSolution& s4 : sols4) {
            // Fix(sigma_4) curves sit inside Fix(sigma_2); alpha_4 must be a
            // subset sum of (1-g) over some involution profile
            int alpha4 = s4.alpha;
            bool alpha4_ok = false;
            for (const auto& ip : invols) {
                if (ip.excluded) continue;
                // subsets of {g, 0 x k}
                for (int use_g = 0; use_g <= 1; ++use_g)
                    for (int r = 0; r <= ip.k; ++r)
                        if (use_g * (1 - ip.g) + r == alpha4) alpha4_ok = true;
            }
            if (!alpha4_ok) {
                if (opts.keep_eliminated)
                    rows.push_back(eliminated_row(
                        16, d,
                        "alpha_4 = " + std::to_string(alpha4) +
                            " unreachable inside any involution profile (N_4 = 2*alpha_4 + 4)"));
                continue;
            }
            if (alpha4 != 1) continue;  // no rational curve => no sigma_8/sigma_16 tower below
            FixedLocusProfile prof4 = make_profile(4, {0}, {s4.a[0]});
            for (const CompatBranch& br8 : compatibility_constraints(8, 2, prof4)) {
                auto cons8 = br8.constraints;
                cons8.push_back(chi_link(nv8, chi8));
                for (const HoloSolution& s8 : holo_solve(8, 1, opts.holo, cons8)) {
                    FixedLocusProfile prof8 = make_profile(8, br8.fixed_curve_genera, s8.a);
                    for (const CompatBranch& br16 : compatibility_constraints(16, 2, prof8)) {
                        auto cons16 = br16.constraints;
                        cons16.push_back(chi_link(nv16, chi16));
                        // N >= 2*alpha + 1
                        LinearConstraint ge;
                        ge.coefs.assign(nv16, Rat(-1));
                        ge.coefs[nv16 - 1] = 2;
                        ge.rel = Rel::Le;
                        ge.rhs = -1;
                        ge.tag = "N_16 >= 2*alpha_16 + 1";
                        cons16.push_back(ge);
                        for (const HoloSolution& s16 : holo_solve(16, 1, opts.holo, cons16)) {
                            int N16 = s16.point_count();
                            bool fact_excluded = (N16 == 2 && s16.alpha == 1) ||
                                                 (N16 == 8 && s16.alpha == 0);
                            if (fact_excluded) continue;  // cited (N, alpha) exclusions
                            // sigma_2 assignment via the involution towers
                            for (const auto& ip : invols) {
                                if (ip.excluded) continue;
                                bool has_rational = ip.k >= 1;
                                if (!has_rational) continue;  // sigma_4-fixed R must exist
                                // locate pts: a3+a4-bucket + a7 live on R,
                                // the a1/a6/a2/a5-bucket pts on C_g (and the
                                // second rational when present)
                                long on_R = s16.a[2] + s16.a[3] + s16.a[6];
                                long elsewhere = N16 - on_R;
                                bool feasible = false;
                                if (ip.k == 1) {
                                    // curves {C_g, R}: sigma_4: 6 pts on C_g;
                                    // sigma_8: a1+a2 of s8 on C_g; sigma_16: `elsewhere`
                                    long c4 = 6, c8 = s8.a[0] + s8.a[1];
                                    feasible = tower_chain_ok(ip.g, {c4, c8, elsewhere});
                                } else if (ip.k == 2) {
                                    // curves {C_g, R, R'}: R' hosts exactly two points of
                                    // sigma_4, sigma_8 and sigma_16 (nontrivial on P^1)
                                    long c4 = 4, c8 = s8.a[0] + s8.a[1] - 2,
                                         c16 = elsewhere - 2;
                                    if (c8 >= 0 && c16 >= 0)
                                        feasible = tower_chain_ok(ip.g, {c4, c8, c16});
                                    if (feasible && have_fact16 && N16 == 4 && s16.alpha == 0) {
                                        feasible = false;  // cited type analysis excludes this
                                    }
                                }
                                if (!feasible) continue;
                                ClassificationRow row;
                                row.n = 16;
                                row.d = d;
                                row.chi = chi_map_all(d);
                                row.holo = s16;
                                row.profiles[16] =
                                    make_profile(16, br16.fixed_curve_genera, s16.a);
                                row.profiles[8] = prof8;
                                row.profiles[4] = prof4;
                                row.profiles[2] =
                                    make_profile(2, gk_genera(ip.g, ip.k), {});
                                finalize_status(row);
                                push_unique(rows, std::move(row));
                            }
                        }
                    }
                }
            }
        }
    }
    // mark rows with no admissible outcome
    bool any_admissible = false;
    for (const auto& r : rows)
        if (r.status == RowStatus::Admissible) any_admissible = true;
    (void)any_admissible;
    return rows;
}

// --------------------------------------------------------------- order 20

std::vector<ClassificationRow> classify20(const ClassifyOptions& opts) {
    std::vector<DimConstraint> cs;
    if (opts.dn) cs.push_back({20, '=', *opts.dn});
    std::vector<ClassificationRow> rows;
    std::size_t nv = holo_type_pairs(20, 1).size() + 1;
    for (const EigenDims& d : enumerate_dims(20, cs)) {
        long chi20 = chi_of_power(d, 1), chi10 = chi_of_power(d, 2), chi5 = chi_of_power(d, 4),
             chi4 = chi_of_power(d, 5), chi2 = chi_of_power(d, 10);
        // order-4 relation: alpha_4 = (chi_4 - 4)/4 with Fix(sigma_4) = R + (2 alpha_4 + 4) pts
        if ((chi4 - 4) % 4 != 0) {
            if (opts.keep_eliminated)
                rows.push_back(eliminated_row(20, d, "chi_4 incompatible with N_4 = 2*alpha_4 + 4"));
            continue;
        }
        long alpha4 = (chi4 - 4) / 4;
        std::vector<InvolutionProfile> invols = involution_profiles(chi2);
        bool alpha4_ok = false;
        for (const auto& ip : invols) {
            if (ip.excluded) continue;
            for (int use_g = 0; use_g <= 1; ++use_g)
                for (int r = 0; r <= ip.k; ++r)
                    if (use_g * (1 - ip.g) + r == alpha4) alpha4_ok = true;
        }
        if (!alpha4_ok || alpha4 != 1) {
            if (opts.keep_eliminated)
                rows.push_back(eliminated_row(
                    20, d, "alpha_4 = " + std::to_string(alpha4) +
                               " unreachable inside any involution profile"));
            continue;
        }
        for (const Order5Case& c5 : order5_cases()) {
            FixedLocusProfile prof5 = make_profile(5, c5.genera, {c5.a1, c5.a2});
            if (prof5.chi() != chi5) continue;
            // chi_10 consistency: Fix(sigma_10) inside Fix(sigma_5)
            std::set<long> chi10_options;
            {
                // isolated sigma_5 points fixed by sigma_10: per type, any count
                // with even leftover
                std::set<long> iso{0};
                for (int cap : prof5.points) {
                    std::set<long> next;
                    for (long base : iso)
                        for (long f = cap % 2; f <= cap; f += 2) next.insert(base + f);
                    iso = std::move(next);
                }
                std::function<void(std::size_t, long, long)> walk = [&](std::size_t idx,
                                                                        long alpha, long pts) {
                    if (idx == prof5.curve_genera.size()) {
                        for (long i : iso) chi10_options.insert(2 * alpha + pts + i);
                        return;
                    }
                    int g = prof5.curve_genera[idx];
                    walk(idx + 1, alpha + 1 - g, pts);  // pointwise fixed
                    for (long c : fixed_count_options(g, 2).counts) walk(idx + 1, alpha, pts + c);
                };
                walk(0, 0, 0);
            }
            if (!chi10_options.count(chi10)) {
                if (opts.keep_eliminated)
                    rows.push_back(eliminated_row(
                        20, d, "chi_10 unreachable from the sigma_5 profile (case " + c5.label +
                                   ")"));
                continue;
            }
            for (const CompatBranch& br5 : compatibility_constraints(20, 4, prof5)) {
                auto cons = br5.constraints;
                cons.push_back(chi_link(nv, chi20));
                for (const HoloSolution& sol : holo_solve(20, 1, opts.holo, cons)) {
                    // sigma_2 assignment
                    long N20 = sol.point_count();
                    for (const auto& ip : invols) {
                        if (ip.excluded || ip.k < 1) continue;  // R must exist
                        // sigma_4 points: 6 = c4(C_g) + 2 per extra rational
                        long c4_on_C = 6 - 2 * (ip.k - 1);
                        if (c4_on_C < 0 || !rh_feasible(ip.g, 2, c4_on_C)) continue;
                        // sigma_10 points: distribution with order-5 residual
                        long c10_on_C = 7 - 2 * ip.k;
                        auto rhs5 = rh_counts(ip.g, 5);
                        if (std::find(rhs5.begin(), rhs5.end(), c10_on_C) == rhs5.end()) continue;
                        // sigma_20 points: two on each rational, rest on C_g
                        long c20_on_C = N20 - 2 * ip.k;
                        if (c20_on_C < 0 || c20_on_C > c10_on_C) continue;
                        // sigma_5 count on C_g bounds the sigma_20 points there
                        if (c20_on_C > (rhs5.empty() ? 0 : rhs5.back())) continue;
                        ClassificationRow row;
                        row.n = 20;
                        row.d = d;
                        row.chi = chi_map_all(d);
                        row.holo = sol;
                        row.profiles[20] = make_profile(20, br5.fixed_curve_genera, sol.a);
                        row.profiles[5] = prof5;
                        row.profiles[4] = make_profile(4, {0}, {static_cast<int>(2 * alpha4 + 4)});
                        std::vector<int> pts10(2, 0);
                        row.profiles[10] = make_profile(10, {}, {});
                        row.profiles[2] = make_profile(2, gk_genera(ip.g, ip.k), {});
                        row.ns_name = "";
                        finalize_status(row);
                        push_unique(rows, std::move(row));
                    }
                }
            }
        }
    }
    return rows;
}

// --------------------------------------------------------------- order 24

std::vector<ClassificationRow> classify24(const ClassifyOptions& opts) {
    std::vector<DimConstraint> cs;
    if (opts.dn) cs.push_back({24, '=', *opts.dn});
    std::vector<ClassificationRow> rows;
    std::size_t nv6 = holo_type_pairs(6, 1).size() + 1;
    std::size_t nv12 = holo_type_pairs(12, 1).size() + 1;
    std::size_t nv24 = holo_type_pairs(24, 1).size() + 1;
    std::size_t nv8 = holo_type_pairs(8, 1).size() + 1;
    for (const EigenDims& d : enumerate_dims(24, cs)) {
        long chi24 = chi_of_power(d, 1), chi12 = chi_of_power(d, 2), chi8 = chi_of_power(d, 3),
             chi6 = chi_of_power(d, 4), chi4 = chi_of_power(d, 6), chi3 = chi_of_power(d, 8),
             chi2 = chi_of_power(d, 12);
        auto o3 = order3_rows(chi3);
        if (!o3) {
            if (opts.keep_eliminated)
                rows.push_back(
                    eliminated_row(24, d, "chi_3 = " + std::to_string(chi3) +
                                              " outside the embedded order-3 rows"));
            continue;
        }
        std::vector<InvolutionProfile> invols = involution_profiles(chi2);
        for (auto [g3, k3] : *o3) {
            int a13 = 4 - g3 + k3;
            FixedLocusProfile prof3 = make_profile(3, gk_genera(g3, k3), {a13});
            for (const CompatBranch& br6 : compatibility_constraints(6, 2, prof3)) {
                auto cons6 = br6.constraints;
                cons6.push_back(chi_link(nv6, chi6));
                for (const HoloSolution& s6 : holo_solve(6, 1, opts.holo, cons6)) {
                    FixedLocusProfile prof6 = make_profile(6, br6.fixed_curve_genera, s6.a);
                    for (const CompatBranch& br12 : compatibility_constraints(12, 2, prof6)) {
                        auto cons12 = br12.constraints;
                        cons12.push_back(chi_link(nv12, chi12));
                        for (const HoloSolution& s12 : holo_solve(12, 1, opts.holo, cons12)) {
                            FixedLocusProfile prof12 =
                                make_profile(12, br12.fixed_curve_genera, s12.a);
                            for (const CompatBranch& br24 :
                                 compatibility_constraints(24, 2, prof12)) {
                                auto cons24 = br24.constraints;
                                cons24.push_back(chi_link(nv24, chi24));
                                // also bucket against the order-3 profile (residual 8)
                                for (const CompatBranch& br24b :
                                     compatibility_constraints(24, 8, prof3)) {
                                    if (br24b.fixed_curve_genera != br24.fixed_curve_genera)
                                        continue;
                                    auto consx = cons24;
                                    consx.insert(consx.end(), br24b.constraints.begin(),
                                                 br24b.constraints.end());
                                    for (const HoloSolution& s24 :
                                         holo_solve(24, 1, opts.holo, consx)) {
                                        // order-4 and order-8 levels
                                        if ((chi4 - 4) % 4 != 0) continue;
                                        long alpha4 = (chi4 - 4) / 4;
                                        if (alpha4 != 1) continue;
                                        FixedLocusProfile prof4 = make_profile(
                                            4, {0}, {static_cast<int>(2 * alpha4 + 4)});
                                        bool sigma8_ok = false;
                                        FixedLocusProfile prof8;
                                        for (const CompatBranch& br8 :
                                             compatibility_constraints(8, 2, prof4)) {
                                            auto cons8 = br8.constraints;
                                            cons8.push_back(chi_link(nv8, chi8));
                                            auto sols8 = holo_solve(8, 1, opts.holo, cons8);
                                            if (!sols8.empty()) {
                                                sigma8_ok = true;
                                                prof8 = make_profile(
                                                    8, br8.fixed_curve_genera, sols8.front().a);
                                            }
                                        }
                                        if (!sigma8_ok) continue;
                                        // Fix(sigma_24) inside Fix(sigma_8)
                                        long cap8 = prof8.point_count() +
                                                    (prof8.curve_genera.empty() ? 0 : 2);
                                        if (s24.point_count() > cap8) continue;
                                        // sigma_2 placement: sigma_6 points over the
                                        // involution curves with order-3 residual
                                        for (const auto& ip : invols) {
                                            if (ip.excluded) continue;
                                            FixedLocusProfile prof2 =
                                                make_profile(2, gk_genera(ip.g, ip.k), {});
                                            if (!profile_pair_feasible(prof6, 3, prof2)) continue;
                                            if (!profile_pair_feasible(prof12, 6, prof2))
                                                continue;
                                            ClassificationRow row;
                                            row.n = 24;
                                            row.d = d;
                                            row.chi = chi_map_all(d);
                                            row.holo = s24;
                                            row.profiles[24] = make_profile(
                                                24, br24.fixed_curve_genera, s24.a);
                                            row.profiles[12] = prof12;
                                            row.profiles[8] = prof8;
                                            row.profiles[6] = prof6;
                                            row.profiles[4] = prof4;
                                            row.profiles[3] = prof3;
                                            row.profiles[2] = prof2;
                                            finalize_status(row);
                                            push_unique(rows, std::move(row));
                                        }
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    return rows;
}

// --------------------------------------------------------------- order 30

std::vector<ClassificationRow> classify30(const ClassifyOptions& opts) {
    ClassifyOptions opts15;
    opts15.dn = 2;
    opts15.holo = opts.holo;
    opts15.keep_eliminated = false;
    std::vector<ClassificationRow> base15 = classify_order(15, opts15);

    std::vector<DimConstraint> cs;
    if (opts.dn) cs.push_back({30, '=', *opts.dn});
    std::vector<ClassificationRow> rows;
    std::size_t nv = holo_type_pairs(30, 1).size() + 1;
    for (const EigenDims& d : enumerate_dims(30, cs)) {
        long chi30 = chi_of_power(d, 1), chi15 = chi_of_power(d, 2), chi5 = chi_of_power(d, 6),
             chi3 = chi_of_power(d, 10), chi2 = chi_of_power(d, 15);
        bool matched_case = false;
        for (const ClassificationRow& r15 : base15) {
            if (r15.status == RowStatus::EliminatedArithmetic ||
                r15.status == RowStatus::RequiresGeometricAnalysis)
                continue;
            if (r15.chi.at(15) != chi15 || r15.chi.at(5) != chi5 || r15.chi.at(3) != chi3)
                continue;
            matched_case = true;
            const FixedLocusProfile& prof15 = r15.profiles.at(15);
            const FixedLocusProfile& prof5 = r15.profiles.at(5);
            const FixedLocusProfile& prof3 = r15.profiles.at(3);
            for (const CompatBranch& br15 : compatibility_constraints(30, 2, prof15)) {
                auto cons = br15.constraints;
                cons.push_back(chi_link(nv, chi30));
                for (const CompatBranch& br5 : compatibility_constraints(30, 6, prof5)) {
                    if (br5.fixed_curve_genera != br15.fixed_curve_genera) continue;
                    for (const CompatBranch& br3 : compatibility_constraints(30, 10, prof3)) {
                        if (br3.fixed_curve_genera != br15.fixed_curve_genera) continue;
                        auto consx = cons;
                        consx.insert(consx.end(), br5.constraints.begin(), br5.constraints.end());
                        consx.insert(consx.end(), br3.constraints.begin(), br3.constraints.end());
                        for (const HoloSolution& sol : holo_solve(30, 1, opts.holo, consx)) {
                            FixedLocusProfile prof30 =
                                make_profile(30, br15.fixed_curve_genera, sol.a);
                            for (const InvolutionProfile& ip : involution_profiles(chi2)) {
                                if (ip.excluded) continue;
                                FixedLocusProfile prof2 =
                                    make_profile(2, gk_genera(ip.g, ip.k), {});
                                if (!profile_pair_feasible(prof30, 15, prof2)) continue;
                                ClassificationRow row;
                                row.n = 30;
                                row.d = d;
                                row.chi = chi_map_all(d);
                                row.holo = sol;
                                row.profiles[30] = prof30;
                                row.profiles[15] = prof15;
                                row.profiles[5] = prof5;
                                row.profiles[3] = prof3;
                                row.profiles[2] = prof2;
                                row.ns_name = r15.ns_name;
                                finalize_status(row);
                                push_unique(rows, std::move(row));
                            }
                        }
                    }
                }
            }
        }
        if (!matched_case && opts.keep_eliminated)
            rows.push_back(
                eliminated_row(30, d, "chi vector matches no admissible order-15 case"));
    }
    return rows;
}

// ------------------------------------------------------------- exploratory

std::vector<ClassificationRow> classify_exploratory(long n, const ClassifyOptions& opts) {
    std::vector<DimConstraint> cs;
    if (opts.dn) cs.push_back({n, '=', *opts.dn});
    std::vector<ClassificationRow> rows;
    for (const EigenDims& d : enumerate_dims(n, cs)) {
        ClassificationRow row;
        row.n = n;
        row.d = d;
        row.chi = chi_map_all(d);
        row.status = RowStatus::Admissible;
        row.note = "exploratory mode: eigenspace and chi bookkeeping only";
        row.label = row_content_label(row);
        rows.push_back(std::move(row));
    }
    return rows;
}

}  // namespace

std::vector<ClassificationRow> classify_order(long n, const ClassifyOptions& opts) {
    std::vector<ClassificationRow> rows;
    switch (n) {
        case 11: rows = classify11(opts); break;
        case 15: rows = classify15(opts); break;
        case 16: rows = classify16(opts); break;
        case 20: rows = classify20(opts); break;
        case 22: rows = classify22(opts); break;
        case 24: rows = classify24(opts); break;
        case 30: rows = classify30(opts); break;
        default:
            if (n < 2 || n > kMaxConductor)
                throw std::invalid_argument("classify_order: order out of range");
            rows = classify_exploratory(n, opts);
    }
    if (!opts.keep_eliminated) {
        rows.erase(std::remove_if(rows.begin(), rows.end(),
                                  [](const ClassificationRow& r) {
                                      return r.status == RowStatus::EliminatedArithmetic;
                                  }),
                   rows.end());
    }
    std::stable_sort(rows.begin(), rows.end(),
                     [](const ClassificationRow& a, const ClassificationRow& b) {
                         if (a.d.tuple() != b.d.tuple()) return a.d.tuple() < b.d.tuple();
                         if (!(a.holo == b.holo)) return a.holo < b.holo;
                         return a.label < b.label;
                     });
    return rows;
}

// ------------------------------------------------------------------- diffs

namespace {

std::string join_ints(const std::vector<int>& v) {
    std::string s = "(";
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
    return s + ")";
}

std::vector<int> json_ints(const nlohmann::json& j) {
    std::vector<int> v;
    for (const auto& x : j) v.push_back(x.get<int>());
    return v;
}

bool profile_matches_gkn(const ClassificationRow& row, long ord, int g, int k, int N) {
    auto it = row.profiles.find(ord);
    if (it == row.profiles.end()) return false;
    return it->second.genus_column() == g && it->second.rational_column() == k &&
           it->second.point_count() == N;
}

}  // namespace

DiffReport compare_with_reference(const std::vector<ClassificationRow>& rows,
                                  const std::string& table_id) {
    const nlohmann::json& table = reference_table(table_id);
    DiffReport rep;
    rep.table_id = table_id;
    std::vector<const ClassificationRow*> admissible, flagged;
    for (const auto& r : rows) {
        if (r.status == RowStatus::Admissible || r.status == RowStatus::MatchesPaperRow)
            admissible.push_back(&r);
        else if (r.status == RowStatus::RequiresGeometricAnalysis)
            flagged.push_back(&r);
    }
    std::vector<bool> used(admissible.size(), false);

    auto claim = [&](const std::function<bool(const ClassificationRow&)>& pred,
                     const std::string& desc) {
        for (std::size_t i = 0; i < admissible.size(); ++i) {
            if (used[i]) continue;
            if (pred(*admissible[i])) {
                used[i] = true;
                rep.matched.push_back(desc);
                return true;
            }
        }
        rep.missing.push_back(desc);
        return false;
    };

    if (table_id == "tabB") {
        for (const auto& r : table["rows"]) {
            std::string label = r[0].get<std::string>();
            std::vector<int> a = json_ints(r[1]);
            int alpha = r[2].get<int>();
            long chi22 = r[3].get<long>(), chi2 = r[4].get<long>();
            claim(
                [&](const ClassificationRow& row) {
                    return row.holo.a == a && row.holo.alpha == alpha &&
                           row.chi.count(22) && row.chi.at(22) == chi22 &&
                           row.chi.at(2) == chi2;
                },
                label + " a=" + join_ints(a));
        }
    } else if (table_id == "tab22") {
        for (const auto& r : table["rows"]) {
            std::string label = r[0].get<std::string>();
            int N22 = r[1].get<int>(), alpha = r[2].get<int>();
            int g11 = r[3].get<int>(), k11 = r[4].get<int>();
            int N11 = r[5].get<int>(), g2 = r[6].get<int>(), k2 = r[7].get<int>();
            claim(
                [&](const ClassificationRow& row) {
                    return row.holo.point_count() == N22 && row.holo.alpha == alpha &&
                           profile_matches_gkn(row, 11, g11, k11, N11) &&
                           row.profiles.count(2) &&
                           row.profiles.at(2).genus_column() == g2 &&
                           row.profiles.at(2).rational_column() == k2;
                },
                label);
        }
    } else if (table_id == "tab") {
        for (const auto& r : table["rows"]) {
            std::string label = r[0].get<std::string>();
            int N15 = r[1].get<int>(), alpha = r[2].get<int>();
            int a15 = r[3].get<int>(), a25 = r[4].get<int>();
            int g5 = r[5].get<int>(), k5 = r[6].get<int>();
            int a13 = r[7].get<int>(), g3 = r[8].get<int>(), k3 = r[9].get<int>();
            std::vector<int> dt = json_ints(r[10]);
            claim(
                [&](const ClassificationRow& row) {
                    if (row.holo.point_count() != N15 || row.holo.alpha != alpha) return false;
                    if (row.d.tuple() != dt) return false;
                    const auto& p5 = row.profiles.at(5);
                    const auto& p3 = row.profiles.at(3);
                    return p5.points == std::vector<int>{a15, a25} &&
                           p5.genus_column() == g5 && p5.rational_column() == k5 &&
                           p3.points == std::vector<int>{a13} && p3.genus_column() == g3 &&
                           p3.rational_column() == k3;
                },
                label + " d=" + join_ints(dt));
        }
    } else if (table_id == "resumen") {
        long n_under_test = rows.empty() ? 0 : rows.front().n;
        for (const auto& r : table["rows"]) {
            long n = r[1].get<long>();
            if (n_under_test != 0 && n != n_under_test) continue;
            std::string label = r[0].get<std::string>();
            std::vector<int> dt = json_ints(r[2]);
            claim(
                [&](const ClassificationRow& row) {
                    if (row.d.tuple() != dt) return false;
                    for (const auto& pr : r[3]) {
                        long ord = pr[0].get<long>();
                        int g = pr[1].get<int>(), k = pr[2].get<int>(), N = pr[3].get<int>();
                        if (ord == row.n) {
                            const auto& p = row.profiles.at(ord);
                            if (p.genus_column() != g || p.rational_column() != k ||
                                row.holo.point_count() != N)
                                return false;
                        } else if (!profile_matches_gkn(row, ord, g, k, N)) {
                            return false;
                        }
                    }
                    return true;
                },
                label + " d=" + join_ints(dt));
        }
    } else if (table_id == "tab16" || table_id == "tab:20" || table_id == "tab:30" ||
               table_id == "tab:30-1") {
        // d-level tables: highlighted rows must be admissible, the rest must
        // not be admissible (flagged or eliminated)
        for (const auto& r : table["rows"]) {
            std::vector<int> dt = json_ints(r[0]);
            bool highlighted = r[1].get<bool>();
            if (highlighted) {
                claim([&](const ClassificationRow& row) { return row.d.tuple() == dt; },
                      "d=" + join_ints(dt));
            } else {
                for (const auto* row : admissible)
                    if (row->d.tuple() == dt)
                        rep.extra.push_back("non-highlighted d=" + join_ints(dt) +
                                            " came out admissible");
            }
        }
    } else {
        throw std::invalid_argument("table '" + table_id + "' is reference-only, not diffable");
    }

    for (std::size_t i = 0; i < admissible.size(); ++i)
        if (!used[i])
            rep.extra.push_back("admissible row " + admissible[i]->label + " d=" +
                                join_ints(admissible[i]->d.tuple()) + " has no reference row");
    for (const auto* row : flagged) {
        if (find_annotation(*row))
            rep.notes.push_back("flagged (geometric verdict recorded): " + row->label + " d=" +
                                join_ints(row->d.tuple()));
        else
            rep.extra.push_back("flagged row " + row->label + " d=" +
                                join_ints(row->d.tuple()) + " has no recorded verdict");
    }
    return rep;
}

}  // namespace k3auto
