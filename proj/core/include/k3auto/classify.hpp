#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "k3auto/fixedlocus.hpp"

namespace k3auto {

// floor(21/phi(n)) - 1: upper bound for the moduli dimension of pairs (X, sigma).
long gamma_bound(long n);

// All n >= 2 with phi(n) <= 20, excluding 60.
std::vector<long> tv_k3();

enum class RowStatus {
    Admissible,
    MatchesPaperRow,
    EliminatedArithmetic,
    RequiresGeometricAnalysis,
};
std::string to_string(RowStatus s);

struct ClassificationRow {
    long n = 0;
    EigenDims d;
    std::map<long, long> chi;                    // order of the power -> chi(Fix)
    std::map<long, FixedLocusProfile> profiles;  // order of the power -> profile
    HoloSolution holo;
    RowStatus status = RowStatus::Admissible;
    std::string label;    // table label when matched; content hash otherwise
    std::string note;     // elimination reason or annotation text
    std::string ns_name;  // Neron-Severi lattice name when pinned by reference data
};

struct ClassifyOptions {
    std::optional<int> dn;       // fix d_n (reference-diff mode uses d_n = 2)
    HoloOptions holo;
    bool keep_eliminated = true;  // include EliminatedArithmetic rows in the output
};

// Arithmetic classification pipeline for n in {11, 15, 16, 20, 22, 24, 30}:
// eigenspace enumeration, chi computation, embedded small-order profiles,
// holomorphic solving under pushforward compatibility, Riemann-Hurwitz and
// genus-order filters. Rows that survive the arithmetic but are settled by
// geometric arguments in the sources are flagged, never dropped.
std::vector<ClassificationRow> classify_order(long n, const ClassifyOptions& opts = {});

// Square-root lifts sigma -> tau with tau^2 = sigma (order doubling).
struct DoublingFact {
    bool lift_exists = false;
    std::string citation;
    std::string note;
};
std::optional<DoublingFact> doubling_facts(long n, const FixedLocusProfile& profile);

struct DiffReport {
    std::string table_id;
    std::vector<std::string> matched;
    std::vector<std::string> missing;  // reference rows not reproduced
    std::vector<std::string> extra;    // output rows with no reference counterpart
    std::vector<std::string> notes;
    bool clean() const { return missing.empty() && extra.empty(); }
};
DiffReport compare_with_reference(const std::vector<ClassificationRow>& rows,
                                  const std::string& table_id);

// Stable content label for rows without a table label.
std::string row_content_label(const ClassificationRow& row);

}  // namespace k3auto
