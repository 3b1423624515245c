#pragma once

// Cosets of the torus H = <M'(w)> in the standard copy, classified by how
// many of their elements have order 1, 2 and 4.

#include <compare>
#include <cstdint>
#include <map>
#include <string>

#include "suzuki/szstd.hpp"

namespace suzuki {

struct CosetVector {
  std::uint64_t v1 = 0, v2 = 0, v4 = 0;
  friend auto operator<=>(const CosetVector&, const CosetVector&) = default;
};

using CensusTable = std::map<CosetVector, std::uint64_t>;

/// Orders in {1, 2, 4} over the coset {M'(w^i) rep}, by the plain chain
/// x = I, x^2 = I, x^4 = I on every element.
CosetVector coset_vector_reference(const Mat4& rep, const FieldParams& field);

/// Single-threaded census over all q^2 (q^2+1) cosets using the reference
/// classification. Both censuses throw std::invalid_argument beyond q = 128.
CensusTable coset_census_serial(const FieldParams& field);

/// OpenMP census; elements of nonzero trace are skipped since every element
/// of order 1, 2 or 4 is unipotent. `threads` = 0 uses the OpenMP default.
CensusTable coset_census(const FieldParams& field, int threads = 0);

/// Conjectured counts for q = 2^(2m+1), all nine rows including zeros.
/// Throws std::invalid_argument unless q is an odd power of two in [8, 2^13].
CensusTable conjectured_counts(std::uint64_t q);

/// Conjectured fraction of cosets containing an order-4 element:
/// (5q^3 - 3q^2 + 14q - 16) / (8q(q^2+1)), as (numerator, denominator).
std::pair<std::uint64_t, std::uint64_t> conjectured_proportion(std::uint64_t q);

/// Cosets with v4 >= 1.
std::uint64_t cosets_with_order4(const CensusTable& table);

/// `v1,v2,v4,observed,conjectured,match` rows over the union of both keys.
std::string census_csv(const CensusTable& observed, const CensusTable& conjectured);

}  // namespace suzuki
