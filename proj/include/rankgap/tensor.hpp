#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "rankgap/numeric.hpp"

namespace rankgap {

/// Exact rational matrix, row-major.
class ExactMatrix {
 public:
  ExactMatrix(std::size_t rows, std::size_t cols);
  ExactMatrix(std::size_t rows, std::size_t cols, std::vector<Rational> entries);

  static ExactMatrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  const Rational& operator()(std::size_t r, std::size_t c) const {
    return entries_[r * cols_ + c];
  }
  Rational& operator()(std::size_t r, std::size_t c) {
    return entries_[r * cols_ + c];
  }
  const std::vector<Rational>& entries() const { return entries_; }

  friend bool operator==(const ExactMatrix&, const ExactMatrix&) = default;

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<Rational> entries_;
};

/// Kronecker product of matrices; the left factor indexes the high digit.
ExactMatrix kronecker(const ExactMatrix& a, const ExactMatrix& b);

/// Order-k tensor with exact rational entries. Entries are stored row-major
/// with the last index running fastest.
class DenseTensor {
 public:
  explicit DenseTensor(std::vector<std::size_t> shape);
  DenseTensor(std::vector<std::size_t> shape, std::vector<Rational> entries);

  std::size_t order() const { return shape_.size(); }
  const std::vector<std::size_t>& shape() const { return shape_; }
  std::size_t size() const { return entries_.size(); }
  const std::vector<Rational>& entries() const { return entries_; }

  std::size_t flat_index(std::span<const std::size_t> index) const;
  std::vector<std::size_t> multi_index(std::size_t flat) const;

  const Rational& at(std::span<const std::size_t> index) const {
    return entries_[flat_index(index)];
  }
  Rational& at(std::span<const std::size_t> index) {
    return entries_[flat_index(index)];
  }
  const Rational& operator[](std::size_t flat) const { return entries_[flat]; }
  Rational& operator[](std::size_t flat) { return entries_[flat]; }

  std::size_t nonzero_count() const;

  friend bool operator==(const DenseTensor&, const DenseTensor&) = default;

 private:
  std::vector<std::size_t> shape_;
  std::vector<Rational> entries_;
};

/// Product of the dimensions, throwing BudgetExceeded past `limit`.
std::size_t checked_volume(std::span<const std::size_t> shape,
                           std::size_t limit);

/// e_1 (x) e_0 (x) ... (x) e_0 + ... + e_0 (x) ... (x) e_0 (x) e_1 in (C^2)^{(x)k}.
DenseTensor wstate(std::size_t k);

/// Rank-one tensor e_{i_1} (x) ... (x) e_{i_k} of the given shape.
DenseTensor unit_tensor(std::vector<std::size_t> shape,
                        std::span<const std::size_t> index);

/// Mode-wise Kronecker product. Mode i pairs (a_i, b_i) to a_i * dim_i(t) + b_i.
DenseTensor kronecker(const DenseTensor& s, const DenseTensor& t,
                      const SizeBudget& budget = {});

/// n-fold Kronecker power; n = 1 returns t.
DenseTensor kron_power(const DenseTensor& t, std::size_t n,
                       const SizeBudget& budget = {});

/// Mode flattening (modes are 0-based). Rows are indexed by the chosen mode,
/// columns by the remaining modes fused in ascending order, last fastest.
ExactMatrix flattening(const DenseTensor& t, std::size_t mode);

/// Rank over Q by fraction-free elimination: rows are cleared to integers,
/// then eliminated as a_kk * row_i - a_ik * row_k with content division.
/// Pivots are the first nonzero entry in column order.
std::size_t exact_rank(const ExactMatrix& m);

struct ConcisenessReport {
  std::vector<std::size_t> flattening_ranks;
  std::vector<bool> mode_concise;
  bool concise = false;
};

ConcisenessReport is_concise(const DenseTensor& t);

/// Contracts `map` (rows x shape[mode]) against one leg of `t`.
DenseTensor apply_mode_map(const DenseTensor& t, std::size_t mode,
                           const ExactMatrix& map);

}  // namespace rankgap
