#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

namespace k3auto {

// Embedded reference tables: small-order fixed-locus classifications quoted
// from the literature, the classification tables this engine reproduces,
// Weierstrass family definitions, lattice data and cited facts. Shipped as
// data/reference_data.json and embedded at build time; schema-validated on
// first access.
const nlohmann::json& reference_data();

// Throws std::out_of_range with the list of known ids on an unknown id.
const nlohmann::json& reference_table(const std::string& id);
std::vector<std::string> reference_table_ids();

// Schema validation; returns a list of problems (empty = valid).
std::vector<std::string> validate_reference_data(const nlohmann::json& data);

// Cited facts -----------------------------------------------------------

// True when the embedded fact table excludes an order-`ord` automorphism on
// a genus-`g` curve; fills the citation when available.
bool refdata_genus_order_excluded(long g, long ord, std::string* citation);

struct InvolutionRows {
    std::vector<std::pair<int, int>> rows;  // (g, k)
    std::string citation;
};
std::optional<InvolutionRows> refdata_involution_rows(long chi);

}  // namespace k3auto
