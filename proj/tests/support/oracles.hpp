#pragma once

// Brute-force reference implementations used to cross-check the library.

#include <cstdint>
#include <vector>

#include "nilcomp/abelian.hpp"
#include "nilcomp/filtered.hpp"
#include "nilcomp/unipotent.hpp"

namespace oracle {

/// ||f||_{U^s} straight from the cube average over (x, h_1, ..., h_s).
double gowers_norm(const nilcomp::ComplexTable& f, unsigned s);

/// g^n by repeated multiplication (n may be negative).
nilcomp::UnipotentMatrix power(const nilcomp::UnipotentMatrix& g, long n);

/// Least q in [1, cap] with g^q in Gamma, found by stepping through powers;
/// 0 if none.
long rationality_order(const nilcomp::FilteredLattice& fl, const nilcomp::UnipotentMatrix& g, long cap);

/// Membership table for C^n(D_k(Z/m)): the subgroup of (Z/m)^{2^n} generated
/// by indicators of faces of codimension <= k, indexed by encode().
std::vector<bool> hk_cubes(std::int64_t m, unsigned n, unsigned k);
std::size_t encode(const std::vector<std::int64_t>& values, std::int64_t m);
std::vector<std::int64_t> decode(std::size_t index, std::int64_t m, std::size_t length);

}  // namespace oracle
