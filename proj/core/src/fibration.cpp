#include "k3auto/fibration.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

#include "k3auto/io.hpp"
#include "k3auto/numtheory.hpp"
#include "k3auto/refdata.hpp"

namespace k3auto {

namespace {
constexpr int kInfiniteValuation = 1 << 20;  // valuation of the zero polynomial
}

WeierstrassModel make_model(RatPoly A, RatPoly B, int scale) {
    if (scale < 1) throw std::invalid_argument("model: scale must be positive");
    if (A.degree() > 4 * scale)
        throw std::invalid_argument("model: deg A exceeds 4N");
    if (B.degree() > 6 * scale)
        throw std::invalid_argument("model: deg B exceeds 6N");
    WeierstrassModel m{std::move(A), std::move(B), scale};
    if (discriminant(m).is_zero())
        throw std::invalid_argument("model: identically zero discriminant");
    return m;
}

RatPoly discriminant(const WeierstrassModel& m) {
    return m.A.pow(3) * Rat(4) + m.B.pow(2) * Rat(27);
}

std::string kodaira_name(KodairaType t, int subscript) {
    switch (t) {
        case KodairaType::In: return "I" + std::to_string(subscript);
        case KodairaType::II: return "II";
        case KodairaType::III: return "III";
        case KodairaType::IV: return "IV";
        case KodairaType::I0star: return "I0*";
        case KodairaType::Instar: return "I" + std::to_string(subscript) + "*";
        case KodairaType::IVstar: return "IV*";
        case KodairaType::IIIstar: return "III*";
        case KodairaType::IIstar: return "II*";
    }
    return "?";
}

int kodaira_euler(KodairaType t, int subscript) {
    switch (t) {
        case KodairaType::In: return subscript;
        case KodairaType::II: return 2;
        case KodairaType::III: return 3;
        case KodairaType::IV: return 4;
        case KodairaType::I0star: return 6;
        case KodairaType::Instar: return subscript + 6;
        case KodairaType::IVstar: return 8;
        case KodairaType::IIIstar: return 9;
        case KodairaType::IIstar: return 10;
    }
    return 0;
}

namespace {

// reduced-order Kodaira lookup; (vA, vB, vD) already minimal
std::pair<KodairaType, int> kodaira_from_orders(int vA, int vB, int vD) {
    if (vA == 0) return {KodairaType::In, vD};
    if (vB == 1) return {KodairaType::II, 0};
    if (vA == 1 && vB >= 2) return {KodairaType::III, 0};
    if (vA >= 2 && vB == 2) return {KodairaType::IV, 0};
    if (vA == 2 && vB == 3 && vD > 6) return {KodairaType::Instar, vD - 6};
    if (vA >= 2 && vB >= 3 && vD == 6) return {KodairaType::I0star, 0};
    if (vA >= 3 && vB == 4) return {KodairaType::IVstar, 0};
    if (vA == 3 && vB >= 5) return {KodairaType::IIIstar, 0};
    if (vA >= 4 && vB == 5) return {KodairaType::IIstar, 0};
    throw std::runtime_error("kodaira_from_orders: unclassifiable valuations (vA=" +
                             std::to_string(vA) + ", vB=" + std::to_string(vB) +
                             ", vD=" + std::to_string(vD) + ")");
}

FiberReport make_report(int vA, int vB, int vD) {
    FiberReport r;
    // non-minimal place: rescale (x,y) -> (u^2 x, u^3 y) until minimal
    while (vA >= 4 && vB >= 6 && vD >= 12) {
        vA -= 4;
        vB -= 6;
        vD -= 12;
    }
    r.vA = vA;
    r.vB = vB;
    r.vD = vD;
    auto [ty, sub] = kodaira_from_orders(std::min(vA, 12), std::min(vB, 12), vD);
    r.type = ty;
    r.subscript = sub;
    r.euler = kodaira_euler(ty, sub);
    return r;
}

}  // namespace

std::vector<FiberReport> fiber_analysis(const WeierstrassModel& m) {
    RatPoly D = discriminant(m);
    if (D.is_zero()) throw std::invalid_argument("fiber_analysis: identically zero discriminant");
    std::vector<FiberReport> out;
    Factorization fac = factor_rational(D);
    for (const auto& [place, mult] : fac.factors) {
        int vA = m.A.is_zero() ? kInfiniteValuation : m.A.valuation(place);
        int vB = m.B.is_zero() ? kInfiniteValuation : m.B.valuation(place);
        FiberReport r = make_report(vA, vB, mult);
        r.place = place;
        r.place_degree = place.degree();
        out.push_back(std::move(r));
    }
    // the place at infinity: degree deficits
    int vA = m.A.is_zero() ? kInfiniteValuation : 4 * m.scale - m.A.degree();
    int vB = m.B.is_zero() ? kInfiniteValuation : 6 * m.scale - m.B.degree();
    int vD = 12 * m.scale - D.degree();
    if (vD > 0) {
        FiberReport r = make_report(vA, vB, vD);
        r.at_infinity = true;
        r.place_degree = 1;
        out.push_back(std::move(r));
    }
    std::sort(out.begin(), out.end(), [](const FiberReport& a, const FiberReport& b) {
        if (a.at_infinity != b.at_infinity) return !a.at_infinity;
        if (a.place_degree != b.place_degree) return a.place_degree < b.place_degree;
        return a.place.coeffs() < b.place.coeffs();
    });
    return out;
}

long euler_sum(const std::vector<FiberReport>& reports) {
    long s = 0;
    for (const auto& r : reports) s += static_cast<long>(r.euler) * r.place_degree;
    return s;
}

bool euler_check(const std::vector<FiberReport>& reports, int scale) {
    return euler_sum(reports) == 12L * scale;
}

RootOfUnity canonical_root(long order, long exponent) {
    if (order < 1) throw std::invalid_argument("root of unity: order must be positive");
    long e = ((exponent % order) + order) % order;
    long g = (e == 0) ? order : igcd(e, order);
    return RootOfUnity{order / g, e / g};
}

AutomorphismReport check_automorphism(const WeierstrassModel& m, const DiagonalAction& act) {
    long L = std::lcm(std::lcm(act.lambda.order, act.mu.order), act.nu.order);
    auto expo = [&](const RootOfUnity& r) { return r.exponent * (L / r.order) % L; };
    long el = expo(act.lambda), em = expo(act.mu), en = expo(act.nu);
    if (((3 * em - 2 * en) % L + L) % L != 0)
        throw std::invalid_argument("check_automorphism: mu^3 != nu^2");
    AutomorphismReport rep;
    rep.equivariant = true;
    // A(lambda t) * mu = nu^2 A(t): lambda^k mu = nu^2 on every support degree k
    for (int k = 0; k <= m.A.degree(); ++k) {
        if (m.A.coeff(k) == 0) continue;
        if (((k * el + em - 2 * en) % L + L) % L != 0) rep.equivariant = false;
    }
    // B(lambda t) = nu^2 B(t)
    for (int k = 0; k <= m.B.degree(); ++k) {
        if (m.B.coeff(k) == 0) continue;
        if (((k * el - 2 * en) % L + L) % L != 0) rep.equivariant = false;
    }
    rep.omega_multiplier = canonical_root(L, em + el - en);
    rep.purely_nonsymplectic_order = rep.omega_multiplier.order;
    return rep;
}

namespace {

FamilyModel family_from_json(const nlohmann::json& f) {
    FamilyModel fam;
    fam.id = f["id"].get<std::string>();
    fam.weierstrass = f["weierstrass"].get<bool>();
    fam.equation = f.value("equation", "");
    if (fam.weierstrass) {
        fam.scale = f["scale"].get<int>();
        fam.A0 = parse_poly(f["A"][0].get<std::string>());
        fam.A1 = parse_poly(f["A"][1].get<std::string>());
        fam.B0 = parse_poly(f["B"][0].get<std::string>());
        fam.B1 = parse_poly(f["B"][1].get<std::string>());
        auto r = [&](const char* key) {
            return canonical_root(f["action"][key][0].get<long>(),
                                  f["action"][key][1].get<long>());
        };
        if (f.contains("action")) {
            fam.action.lambda = r("lambda");
            fam.action.mu = r("mu");
            fam.action.nu = r("nu");
        }
    }
    return fam;
}

}  // namespace

std::vector<std::string> family_ids(bool weierstrass_only) {
    std::vector<std::string> ids;
    for (const auto& f : reference_data()["families"])
        if (!weierstrass_only || f["weierstrass"].get<bool>())
            ids.push_back(f["id"].get<std::string>());
    return ids;
}

FamilyModel family(const std::string& id) {
    for (const auto& f : reference_data()["families"])
        if (f["id"] == id) return family_from_json(f);
    std::string known;
    for (const auto& i : family_ids(false)) known += " " + i;
    throw std::out_of_range("unknown family '" + id + "'; known ids:" + known);
}

namespace {

// multiplicity pattern of f relative to a forced divisor: multiset of
// (multiplicity -> total degree) of f/forced
std::map<int, int> squarefree_pattern(const RatPoly& f) {
    std::map<int, int> pat;
    for (const auto& sq : squarefree_decomposition(f)) pat[sq.multiplicity] += sq.part.degree();
    return pat;
}

}  // namespace

SpecializedModel specialize(const std::string& family_id, const Rat& a) {
    FamilyModel fam = family(family_id);
    if (!fam.weierstrass)
        throw std::invalid_argument("specialize: family '" + family_id +
                                    "' has no Weierstrass form (reference data only)");
    auto at = [&](const Rat& v) {
        return WeierstrassModel{fam.A0 + fam.A1 * v, fam.B0 + fam.B1 * v, fam.scale};
    };
    SpecializedModel out;
    out.model = at(a);
    RatPoly Da = discriminant(out.model);
    if (Da.is_zero()) throw std::invalid_argument("specialize: degenerate parameter");
    // forced factors: common to all parameter values (via fixed samples)
    const Rat samples[] = {Rat(17, 5), Rat(23, 7), Rat(31, 11)};
    RatPoly forced;
    for (const Rat& s : samples) {
        RatPoly Ds = discriminant(at(s));
        forced = forced.is_zero() ? Ds * (Rat(1) / Ds.leading()) : poly_gcd(forced, Ds);
    }
    RatPoly reduced = Da;
    if (forced.degree() > 0) reduced = Da / forced;
    RatPoly sample_reduced = discriminant(at(samples[0]));
    if (forced.degree() > 0) sample_reduced = sample_reduced / forced;
    out.generic = squarefree_pattern(reduced) == squarefree_pattern(sample_reduced) &&
                  (forced.degree() == 0 || poly_gcd(reduced, forced).degree() == 0) &&
                  Da.degree() == discriminant(at(samples[0])).degree();
    return out;
}

}  // namespace k3auto
