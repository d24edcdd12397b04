#include "rankgap/algebra.hpp"

#include <limits>
#include <stdexcept>
#include <string>

#include "rankgap/combinatorics.hpp"

namespace rankgap {

MonomialAlgebra::MonomialAlgebra(unsigned d, unsigned n) : d_(d), n_(n) {
  if (d < 2) {
    throw std::invalid_argument("A_{d,n} requires d >= 2");
  }
  if (n < 1) {
    throw std::invalid_argument("A_{d,n} requires n >= 1");
  }
  std::size_t dim = 1;
  for (unsigned i = 0; i < n; ++i) {
    if (dim > std::numeric_limits<std::size_t>::max() / d) {
      throw BudgetExceeded("A_{" + std::to_string(d) + "," +
                           std::to_string(n) + "} has too many basis elements");
    }
    dim *= d;
  }
  dim_ = dim;
}

std::vector<unsigned> MonomialAlgebra::exponents(std::size_t index) const {
  if (index >= dim_) {
    throw std::out_of_range("basis index out of range");
  }
  std::vector<unsigned> a(n_);
  for (unsigned i = n_; i-- > 0;) {
    a[i] = static_cast<unsigned>(index % d_);
    index /= d_;
  }
  return a;
}

std::size_t MonomialAlgebra::index_of(
    const std::vector<unsigned>& exponents) const {
  if (exponents.size() != n_) {
    throw std::invalid_argument("exponent vector has wrong length");
  }
  std::size_t index = 0;
  for (const unsigned a : exponents) {
    if (a >= d_) throw std::out_of_range("exponent exceeds d - 1");
    index = index * d_ + a;
  }
  return index;
}

std::optional<std::size_t> MonomialAlgebra::multiply_basis(
    std::size_t i, std::size_t j) const {
  if (i >= dim_ || j >= dim_) {
    throw std::out_of_range("basis index out of range");
  }
  std::size_t product = 0;
  std::size_t place = 1;
  // Digit-wise addition without carry; any digit overflow kills the product.
  while (i != 0 || j != 0) {
    const std::size_t digit = i % d_ + j % d_;
    if (digit >= d_) return std::nullopt;
    product += digit * place;
    place *= d_;
    i /= d_;
    j /= d_;
  }
  return product;
}

DenseTensor structure_tensor(const MonomialAlgebra& alg,
                             const SizeBudget& budget) {
  const std::size_t dim = alg.dim();
  if (dim > budget.max_algebra_dim) {
    throw BudgetExceeded("structure tensor of dimension " +
                         std::to_string(dim) + " exceeds budget " +
                         std::to_string(budget.max_algebra_dim));
  }
  const std::vector<std::size_t> shape{dim, dim, dim};
  checked_volume(shape, budget.max_tensor_entries);
  DenseTensor out(shape);
  for (std::size_t i = 0; i < dim; ++i) {
    for (std::size_t j = 0; j < dim; ++j) {
      if (const auto k = alg.multiply_basis(i, j)) {
        out[(i * dim + j) * dim + *k] = 1;
      }
    }
  }
  return out;
}

BigInt nilradical_power_dim(unsigned d, unsigned n, unsigned m) {
  if (d < 2 || n < 1) {
    throw std::invalid_argument("A_{d,n} requires d >= 2 and n >= 1");
  }
  const BigInt dim = pow_ui(d, n);
  if (m == 0) return dim;
  if (static_cast<unsigned long>(m) >
      static_cast<unsigned long>(n) * (d - 1)) {
    return 0;
  }
  return dim - combinatorics::partial_sum_ext_binom(n, m - 1, d - 1);
}

std::vector<BigInt> nilpotent_profile(unsigned d, unsigned n) {
  std::vector<BigInt> dims;
  const unsigned top = n * (d - 1) + 1;
  for (unsigned m = 0; m <= top; ++m) {
    dims.push_back(nilradical_power_dim(d, n, m));
  }
  return dims;
}

ExactMatrix swap_matrix() { return ExactMatrix(2, 2, {0, 1, 1, 0}); }

WStateEquivalence wstate_basis_equivalence(unsigned n,
                                           const SizeBudget& budget) {
  const MonomialAlgebra alg(2, n);
  ExactMatrix swap_power = swap_matrix();
  for (unsigned i = 1; i < n; ++i) {
    swap_power = kronecker(swap_power, swap_matrix());
  }
  WStateEquivalence out{
      apply_mode_map(structure_tensor(alg, budget), 2, swap_power),
      kron_power(wstate(3), n, budget), false};
  out.equal = out.transformed == out.wstate_power;
  return out;
}

}  // namespace rankgap
