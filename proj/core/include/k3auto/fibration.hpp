#pragma once

#include <string>
#include <vector>

#include "k3auto/factor.hpp"
#include "k3auto/poly.hpp"

namespace k3auto {

// y^2 = x^3 + A(t) x + B(t) over P^1; A a section of degree 4N, B of 6N.
// N = 1 is a rational elliptic surface, N = 2 a K3.
struct WeierstrassModel {
    RatPoly A, B;
    int scale = 2;
};
WeierstrassModel make_model(RatPoly A, RatPoly B, int scale);

// 4A^3 + 27B^2; throws when identically zero. The -16 unit is dropped:
// only vanishing orders matter in characteristic 0.
RatPoly discriminant(const WeierstrassModel& m);

enum class KodairaType { In, II, III, IV, I0star, Instar, IVstar, IIIstar, IIstar };
std::string kodaira_name(KodairaType t, int subscript);
int kodaira_euler(KodairaType t, int subscript);

struct FiberReport {
    bool at_infinity = false;
    RatPoly place;    // monic irreducible factor of Delta (finite places)
    int place_degree = 1;
    int vA = 0, vB = 0, vD = 0;  // after minimalization
    KodairaType type = KodairaType::In;
    int subscript = 0;  // n for I_n / I_n*
    int euler = 0;      // per geometric place

    std::string type_name() const { return kodaira_name(type, subscript); }
};

// Squarefree+irreducible factorization of Delta over Q, vanishing orders per
// place (degree deficits at infinity), non-minimal places rescaled, Kodaira
// type from the reduced-order table. Deterministic place ordering.
std::vector<FiberReport> fiber_analysis(const WeierstrassModel& m);

// Sum of Euler numbers (weighted by place degree) equals 12N.
long euler_sum(const std::vector<FiberReport>& reports);
bool euler_check(const std::vector<FiberReport>& reports, int scale);

// Root of unity as (order, exponent); canonical form has gcd(exp, order) = 1.
struct RootOfUnity {
    long order = 1;
    long exponent = 0;
};
RootOfUnity canonical_root(long order, long exponent);

// (t, x, y) -> (lambda t, mu x, nu y)
struct DiagonalAction {
    RootOfUnity lambda, mu, nu;
};

struct AutomorphismReport {
    bool equivariant = false;
    RootOfUnity omega_multiplier;       // mu * lambda / nu
    long purely_nonsymplectic_order = 0;  // multiplicative order of the multiplier
};
AutomorphismReport check_automorphism(const WeierstrassModel& m, const DiagonalAction& act);

// Parameterized families from the reference data (affine in the parameter).
struct FamilyModel {
    std::string id;
    bool weierstrass = false;
    int scale = 2;
    RatPoly A0, A1, B0, B1;  // A = A0 + a*A1, B = B0 + a*B1
    DiagonalAction action;
    std::string equation;  // display form
};
std::vector<std::string> family_ids(bool weierstrass_only);
FamilyModel family(const std::string& id);

struct SpecializedModel {
    WeierstrassModel model;
    bool generic = false;
};
// Substitutes a rational parameter; the genericity flag compares the
// discriminant's squarefree pattern (away from the parameter-independent
// forced factors) against sample specializations.
SpecializedModel specialize(const std::string& family_id, const Rat& a);

}  // namespace k3auto
