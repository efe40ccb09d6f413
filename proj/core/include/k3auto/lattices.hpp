#pragma once

#include <string>
#include <vector>

#include "k3auto/rational.hpp"

namespace k3auto {

// Even lattice given by its Gram matrix. Isometry testing is out of scope:
// names are checked at the level of rank, determinant, parity and signature.
struct LatticeSpec {
    std::string name;
    std::vector<std::vector<Int>> gram;

    int rank() const { return static_cast<int>(gram.size()); }
    bool is_even() const;
    bool is_symmetric() const;
};

// U, U(m), A_n, D_n, E_6, E_7, E_8 and H_5 (the latter transcribed from the
// reference data file; absent data raises an "external data required" error).
LatticeSpec named_lattice(const std::string& name);

LatticeSpec direct_sum(const LatticeSpec& a, const LatticeSpec& b);

// Exact determinant by fraction-free (Bareiss) elimination.
Int lattice_det(const LatticeSpec& l);

struct Signature {
    int positive = 0;
    int negative = 0;
    int radical = 0;  // dimension of the kernel, 0 for nondegenerate lattices
};
// Sylvester's law via rational congruence diagonalization.
Signature lattice_signature(const LatticeSpec& l);

// Wraps user-supplied intersection matrices for det/signature checks.
LatticeSpec gram_of_curve_classes(const std::vector<std::vector<Int>>& gram,
                                  const std::string& name = "curve classes");

// Parses expressions like "U(2)+D4+A_2" into a direct sum.
LatticeSpec parse_lattice_expression(const std::string& expr);

}  // namespace k3auto
