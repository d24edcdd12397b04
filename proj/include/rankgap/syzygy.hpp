#pragma once

#include <array>
#include <map>
#include <string>
#include <vector>

#include "rankgap/polynomial.hpp"

// Polynomials in the entries A_11, A_12, ..., A_33 of a generic 3x3 matrix
// (row-major variable order), used to show that C[x,y,z]/(x^2,y^2,z^2)
// is not a generalised null algebra: the relations forced by
// x_1 x_2 = x_1 x_3 = 0 put det(A) in their ideal.
namespace rankgap::syzygy {

inline constexpr std::size_t kArity = 9;

/// A_{row,col} with 1-based row and column.
Polynomial entry(unsigned row, unsigned col);
const std::vector<std::string>& variable_names();

Polynomial det3_generic();

/// (f1, f2, f3, g1, g2, g3).
using RelationPolys = std::array<Polynomial, 6>;

/// f1 = A11 A22 + A12 A21, f2 = A11 A23 + A13 A21, f3 = A12 A23 + A13 A22,
/// g1..g3 the same with row 3 in place of row 2.
RelationPolys relation_polys();

/// Element of C[A_ij][x,y,z]/(x^2,y^2,z^2) truncated above degree 2. Keys
/// are bitmasks over (x, y, z): bit 0 = x, bit 1 = y, bit 2 = z.
using TruncatedElement = std::map<unsigned, Polynomial>;

/// A_{row,1} x + A_{row,2} y + A_{row,3} z.
TruncatedElement linear_generator(unsigned row);
TruncatedElement multiply_truncated(const TruncatedElement& a,
                                    const TruncatedElement& b);

struct DerivedRelations {
  RelationPolys derived;  // coefficients of xy, xz, yz in x1 x2, then x1 x3
  bool matches = false;
};

/// Re-derives f_i, g_i by expanding x_1 x_2 and x_1 x_3 in the truncated
/// algebra, and compares them with relation_polys().
DerivedRelations derive_relations();

/// Multipliers of the identity
///   -A11 det(A) = (A13 A31 - A11 A33) f1 + (-3 A12 A31 - A11 A32) f2
///                 + 2 A11 A23 g1 + 2 A12 A21 g2.
RelationPolys det_syzygy_multipliers();

struct SyzygyCertificate {
  RelationPolys multipliers;
  Polynomial target{kArity};       // -A11 det(A)
  Polynomial combination{kArity};  // sum multipliers[i] * relations[i]
  Polynomial residual{kArity};     // combination - target

  bool valid() const { return residual.is_zero(); }
};

SyzygyCertificate verify_syzygy();
SyzygyCertificate verify_syzygy(const RelationPolys& multipliers);

/// Human-readable certificate ending in "RESIDUAL = 0" or the offending terms.
std::string certificate_report(const SyzygyCertificate& cert);

}  // namespace rankgap::syzygy
