#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "k3auto/lefschetz.hpp"
#include "k3auto/poly.hpp"

namespace k3auto {

// Diagnostic carrying the byte offset of the offending token.
class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& what, std::size_t position)
        : std::runtime_error(what + " (at position " + std::to_string(position) + ")"),
          position_(position) {}
    std::size_t position() const { return position_; }

private:
    std::size_t position_;
};

// Sparse polynomial syntax: terms "c", "c*t^k", "t^k", "t" joined by +/-,
// rationals written "p/q". No floating literals.
RatPoly parse_poly(const std::string& text, const std::string& var = "t");

// Constraint mini-language over a1..ak and alpha:
//   "a1 + 2*a3 <= 5", "alpha = 0", "a1 + a4 + a7 = 2 mod 5"
LinearConstraint parse_constraint(const std::string& text, std::size_t num_point_vars);

// Root of unity written "order:exponent".
std::pair<long, long> parse_root_token(const std::string& text);

// Output emitters. The JSON form is canonical and machine readable; the
// other two are comma-separated and aligned human-readable renderings of
// the same cells.
enum class OutputFormat { Json, Csv, Table };
OutputFormat parse_format(const std::string& name);

std::string render_cells(const std::vector<std::string>& header,
                         const std::vector<std::vector<std::string>>& rows, OutputFormat fmt);

// Run report envelope: command echo, digest of the canonical input, results.
struct RunReport {
    std::string command;
    std::string input_digest;
    nlohmann::ordered_json results;
    long timing_ms = -1;  // negative = omitted

    nlohmann::ordered_json to_json() const;
};

std::string fnv1a_digest(const std::string& payload);

}  // namespace k3auto
