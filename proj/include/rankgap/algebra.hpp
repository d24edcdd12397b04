#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "rankgap/numeric.hpp"
#include "rankgap/tensor.hpp"

namespace rankgap {

/// The algebra A_{d,n} = C[x_1..x_n]/(x_1^d, ..., x_n^d).
///
/// Basis: monomials x^a with a in {0..d-1}^n. The monomial x^a has index
/// sum_i a_i d^{n-1-i} (x_1 is the most significant digit), so index 0 is
/// the unit and A_{d,n} is literally the n-th tensor power of A_{d,1}.
class MonomialAlgebra {
 public:
  /// Requires d >= 2 and n >= 1; d^n must fit a machine index.
  MonomialAlgebra(unsigned d, unsigned n);

  unsigned d() const { return d_; }
  unsigned n() const { return n_; }
  std::size_t dim() const { return dim_; }

  std::vector<unsigned> exponents(std::size_t index) const;
  std::size_t index_of(const std::vector<unsigned>& exponents) const;

  /// Product of two basis monomials; std::nullopt when it vanishes.
  std::optional<std::size_t> multiply_basis(std::size_t i,
                                            std::size_t j) const;

 private:
  unsigned d_;
  unsigned n_;
  std::size_t dim_;
};

/// T[i][j][k] = 1 iff e_i e_j = e_k.
DenseTensor structure_tensor(const MonomialAlgebra& alg,
                             const SizeBudget& budget = {});

/// dim N^m for the nilradical N of A_{d,n}: d^n for m = 0, otherwise
/// d^n - sum_{b<m} ext_binom(n, b, d-1).
BigInt nilradical_power_dim(unsigned d, unsigned n, unsigned m);

/// dim N^m for m = 0 .. n(d-1)+1.
std::vector<BigInt> nilpotent_profile(unsigned d, unsigned n);

/// The 2x2 swap [[0,1],[1,0]].
ExactMatrix swap_matrix();

struct WStateEquivalence {
  DenseTensor transformed;  // structure_tensor(A_{2,n}) with S^{(x)n} on mode 3
  DenseTensor wstate_power;  // W_3^{(x)n}
  bool equal = false;
};

/// Checks that A_{2,n} becomes W_3^{(x)n} after the swap basis change on
/// the third leg.
WStateEquivalence wstate_basis_equivalence(unsigned n,
                                           const SizeBudget& budget = {});

}  // namespace rankgap
