#pragma once

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "k3auto/lefschetz.hpp"

namespace k3auto {

// Local linearization type of an isolated fixed point: unordered exponent
// pair (p, q) with p + q = e (mod n) and p, q != 0. For e = 1 the canonical
// index i has p = i + 1, q = n - i.
struct LocalType {
    long n;
    long e;
    long p, q;  // canonical: 1 <= p <= q <= n-1

    bool operator==(const LocalType& o) const {
        return n == o.n && e == o.e && p == o.p && q == o.q;
    }
};

LocalType make_local_type(long n, long e, long p, long q);
LocalType local_type_from_index(long n, long i);  // e = 1
long type_index(const LocalType& t);              // e = 1 canonical index
std::vector<LocalType> canonical_types(long n, long e = 1);

struct PushResult {
    bool on_fixed_curve = false;
    LocalType type{};  // valid when !on_fixed_curve
};

// Type of the same point viewed as a fixed point of sigma^m (order
// n' = n/gcd(n,m)); on a fixed curve of sigma^m iff an exponent dies mod n.
PushResult push_type(const LocalType& t, long m);

// Fixed locus shape: curve genera (with multiplicity) plus isolated points
// counted by canonical type.
struct FixedLocusProfile {
    long n = 1;
    std::vector<int> curve_genera;  // descending
    std::vector<int> points;        // size = number of canonical types for (n, e=1)

    int point_count() const;
    int alpha() const;  // sum(1 - g)
    long chi() const;   // sum(2 - 2g) + N
    int genus_column() const;   // genus of the distinguished curve, -1 if none
    int rational_column() const;  // count of remaining rational curves
    bool operator==(const FixedLocusProfile& o) const;
};

FixedLocusProfile make_profile(long n, std::vector<int> genera, std::vector<int> points);

// Riemann-Hurwitz for a prime-order cyclic action: feasible iff there is an
// integer quotient genus g' >= 0 with 2-2g = p(2-2g') - N(p-1).
std::optional<long> rh_feasible(long g, long p, long N);
std::vector<long> rh_counts(long g, long p);  // all feasible N

// Possible isolated-fixed-point counts on a genus-g curve under a cyclic
// action of order exactly r. Exact for r prime, r a power of two (involution
// towers through the quotients), and g = 0 (two fixed points always);
// otherwise a documented sound relaxation [0, cap].
struct FixedCountOptions {
    std::set<long> counts;
    bool exact = true;
};
FixedCountOptions fixed_count_options(long g, long r);

// Verdict on "a genus-g curve admits an automorphism of order ord":
// false when provably impossible (Riemann-Hurwitz, or an embedded cited
// fact); nullopt = not excluded ("unknown"), never a positive proof.
std::optional<bool> genus_order_possible(long g, long ord);

// chi-level involution profiles: all (g, k) with 2 - 2g + 2k = chi,
// 0 <= g <= 10, 0 <= k <= 19. `cited` marks rows present in the embedded
// order-2 table for this chi; when the table has an entry for chi, rows
// outside it are flagged excluded with the table's citation.
struct InvolutionProfile {
    int g, k;
    bool cited = false;
    bool excluded = false;
    std::string note;
};
std::vector<InvolutionProfile> involution_profiles(long chi);

// Numerical semigroup of orbit sizes: the sums realizable by orbits of
// length > 1 dividing r (orbit lengths divide the residual order).
std::set<long> orbit_leftover_sums(long r, long cap);

// One disjunctive branch of the compatibility constraints between the
// solution variables of sigma (order n) and a known profile of sigma^m:
// linear constraints over (a_1..a_k, alpha) plus the curve bookkeeping.
struct CompatBranch {
    std::vector<LinearConstraint> constraints;
    std::vector<int> fixed_curve_genera;  // sigma-pointwise-fixed curves, subset of the profile's
    int alpha = 0;                        // sum(1-g) over that subset
    bool exact = true;                    // false if a relaxed curve bucket was used
};

// All branches of the compatibility constraints for Fix(sigma^m) having the
// given profile. Branches enumerate which profile curves sigma fixes
// pointwise and how many sigma-fixed points sit on each remaining curve.
std::vector<CompatBranch> compatibility_constraints(long n, long m,
                                                    const FixedLocusProfile& profile);

}  // namespace k3auto
