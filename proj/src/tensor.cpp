#include "rankgap/tensor.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>
#include <utility>

namespace rankgap {

ExactMatrix::ExactMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), entries_(rows * cols) {}

ExactMatrix::ExactMatrix(std::size_t rows, std::size_t cols,
                         std::vector<Rational> entries)
    : rows_(rows), cols_(cols), entries_(std::move(entries)) {
  if (entries_.size() != rows_ * cols_) {
    throw std::invalid_argument("ExactMatrix: entry count does not match " +
                                std::to_string(rows_) + "x" +
                                std::to_string(cols_));
  }
}

ExactMatrix ExactMatrix::identity(std::size_t n) {
  ExactMatrix out(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    out(i, i) = 1;
  }
  return out;
}

ExactMatrix kronecker(const ExactMatrix& a, const ExactMatrix& b) {
  ExactMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) {
      if (sgn(a(i, j)) == 0) continue;
      for (std::size_t k = 0; k < b.rows(); ++k) {
        for (std::size_t l = 0; l < b.cols(); ++l) {
          out(i * b.rows() + k, j * b.cols() + l) = a(i, j) * b(k, l);
        }
      }
    }
  }
  return out;
}

std::size_t checked_volume(std::span<const std::size_t> shape,
                           std::size_t limit) {
  std::size_t volume = 1;
  for (const std::size_t dim : shape) {
    if (dim == 0) {
      throw std::invalid_argument("tensor dimensions must be positive");
    }
    if (volume > limit / dim) {
      throw BudgetExceeded("tensor with more than " + std::to_string(limit) +
                           " entries requested");
    }
    volume *= dim;
  }
  return volume;
}

DenseTensor::DenseTensor(std::vector<std::size_t> shape)
    : shape_(std::move(shape)) {
  if (shape_.empty()) {
    throw std::invalid_argument("tensor order must be at least 1");
  }
  entries_.resize(
      checked_volume(shape_, std::numeric_limits<std::size_t>::max()));
}

DenseTensor::DenseTensor(std::vector<std::size_t> shape,
                         std::vector<Rational> entries)
    : shape_(std::move(shape)), entries_(std::move(entries)) {
  if (shape_.empty()) {
    throw std::invalid_argument("tensor order must be at least 1");
  }
  const std::size_t volume =
      checked_volume(shape_, std::numeric_limits<std::size_t>::max());
  if (volume != entries_.size()) {
    throw std::invalid_argument("tensor has " +
                                std::to_string(entries_.size()) +
                                " entries, shape requires " +
                                std::to_string(volume));
  }
}

std::size_t DenseTensor::flat_index(std::span<const std::size_t> index) const {
  if (index.size() != shape_.size()) {
    throw std::invalid_argument("index order does not match tensor order");
  }
  std::size_t flat = 0;
  for (std::size_t i = 0; i < shape_.size(); ++i) {
    if (index[i] >= shape_[i]) {
      throw std::out_of_range("tensor index out of range");
    }
    flat = flat * shape_[i] + index[i];
  }
  return flat;
}

std::vector<std::size_t> DenseTensor::multi_index(std::size_t flat) const {
  std::vector<std::size_t> index(shape_.size());
  for (std::size_t i = shape_.size(); i-- > 0;) {
    index[i] = flat % shape_[i];
    flat /= shape_[i];
  }
  return index;
}

std::size_t DenseTensor::nonzero_count() const {
  return static_cast<std::size_t>(std::count_if(
      entries_.begin(), entries_.end(),
      [](const Rational& q) { return sgn(q) != 0; }));
}

DenseTensor wstate(std::size_t k) {
  if (k < 2) {
    throw std::invalid_argument("wstate: order must be at least 2");
  }
  if (k >= std::numeric_limits<std::size_t>::digits - 1) {
    throw BudgetExceeded("wstate: order too large for dense storage");
  }
  DenseTensor out(std::vector<std::size_t>(k, 2));
  // The index with a single 1 in position i has flat value 2^(k-1-i).
  for (std::size_t i = 0; i < k; ++i) {
    out[std::size_t{1} << (k - 1 - i)] = 1;
  }
  return out;
}

DenseTensor unit_tensor(std::vector<std::size_t> shape,
                        std::span<const std::size_t> index) {
  DenseTensor out(std::move(shape));
  out.at(index) = 1;
  return out;
}

DenseTensor kronecker(const DenseTensor& s, const DenseTensor& t,
                      const SizeBudget& budget) {
  if (s.order() != t.order()) {
    throw std::invalid_argument("kronecker: tensor orders differ (" +
                                std::to_string(s.order()) + " vs " +
                                std::to_string(t.order()) + ")");
  }
  const std::size_t k = s.order();
  std::vector<std::size_t> shape(k);
  for (std::size_t i = 0; i < k; ++i) {
    shape[i] = s.shape()[i] * t.shape()[i];
  }
  checked_volume(shape, budget.max_tensor_entries);
  DenseTensor out(shape);

  std::vector<std::size_t> index(k);
  for (std::size_t a = 0; a < s.size(); ++a) {
    if (sgn(s[a]) == 0) continue;
    const auto sa = s.multi_index(a);
    for (std::size_t b = 0; b < t.size(); ++b) {
      if (sgn(t[b]) == 0) continue;
      const auto tb = t.multi_index(b);
      for (std::size_t i = 0; i < k; ++i) {
        index[i] = sa[i] * t.shape()[i] + tb[i];
      }
      out.at(index) = s[a] * t[b];
    }
  }
  return out;
}

DenseTensor kron_power(const DenseTensor& t, std::size_t n,
                       const SizeBudget& budget) {
  if (n == 0) {
    throw std::invalid_argument("kron_power: exponent must be positive");
  }
  DenseTensor out = t;
  for (std::size_t i = 1; i < n; ++i) {
    out = kronecker(out, t, budget);
  }
  return out;
}

ExactMatrix flattening(const DenseTensor& t, std::size_t mode) {
  if (mode >= t.order()) {
    throw std::invalid_argument("flattening: mode " + std::to_string(mode) +
                                " out of range for order " +
                                std::to_string(t.order()));
  }
  const auto& shape = t.shape();
  std::size_t outer = 1;
  for (std::size_t i = 0; i < mode; ++i) outer *= shape[i];
  std::size_t inner = 1;
  for (std::size_t i = mode + 1; i < shape.size(); ++i) inner *= shape[i];
  const std::size_t rows = shape[mode];

  // flat = (o * rows + r) * inner + c; column of the fused remaining modes is
  // o * inner + c.
  ExactMatrix out(rows, outer * inner);
  for (std::size_t o = 0; o < outer; ++o) {
    for (std::size_t r = 0; r < rows; ++r) {
      for (std::size_t c = 0; c < inner; ++c) {
        out(r, o * inner + c) = t[(o * rows + r) * inner + c];
      }
    }
  }
  return out;
}

namespace {

using IntRow = std::vector<BigInt>;

IntRow integer_row(const ExactMatrix& m, std::size_t r) {
  BigInt scale = 1;
  for (std::size_t c = 0; c < m.cols(); ++c) {
    mpz_lcm(scale.get_mpz_t(), scale.get_mpz_t(),
            m(r, c).get_den_mpz_t());
  }
  IntRow row(m.cols());
  for (std::size_t c = 0; c < m.cols(); ++c) {
    if (sgn(m(r, c)) == 0) continue;
    row[c] = m(r, c).get_num() * (scale / m(r, c).get_den());
  }
  return row;
}

void divide_content(IntRow& row, std::size_t from) {
  BigInt g = 0;
  for (std::size_t c = from; c < row.size(); ++c) {
    if (sgn(row[c]) != 0) {
      mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), row[c].get_mpz_t());
      if (g == 1) return;
    }
  }
  if (g > 1) {
    for (std::size_t c = from; c < row.size(); ++c) {
      if (sgn(row[c]) != 0) {
        mpz_divexact(row[c].get_mpz_t(), row[c].get_mpz_t(), g.get_mpz_t());
      }
    }
  }
}

}  // namespace

std::size_t exact_rank(const ExactMatrix& m) {
  std::vector<IntRow> rows;
  rows.reserve(m.rows());
  for (std::size_t r = 0; r < m.rows(); ++r) {
    rows.push_back(integer_row(m, r));
  }

  std::size_t rank = 0;
  std::vector<std::size_t> support;
  for (std::size_t col = 0; col < m.cols() && rank < rows.size(); ++col) {
    std::size_t pivot = rank;
    while (pivot < rows.size() && sgn(rows[pivot][col]) == 0) ++pivot;
    if (pivot == rows.size()) continue;
    std::swap(rows[rank], rows[pivot]);

    IntRow& prow = rows[rank];
    divide_content(prow, col);
    support.clear();
    for (std::size_t c = col; c < prow.size(); ++c) {
      if (sgn(prow[c]) != 0) support.push_back(c);
    }
    const BigInt lead = prow[col];
    const bool unit_lead = abs(lead) == 1;

    for (std::size_t i = rank + 1; i < rows.size(); ++i) {
      IntRow& row = rows[i];
      if (sgn(row[col]) == 0) continue;
      const BigInt factor = row[col];
      if (!unit_lead) {
        for (std::size_t c = col; c < row.size(); ++c) {
          if (sgn(row[c]) != 0) row[c] *= lead;
        }
      } else if (lead < 0) {
        for (std::size_t c = col; c < row.size(); ++c) {
          if (sgn(row[c]) != 0) row[c] = -row[c];
        }
      }
      for (const std::size_t c : support) {
        row[c] -= factor * prow[c];
      }
      if (!unit_lead) divide_content(row, col + 1);
    }
    ++rank;
  }
  return rank;
}

ConcisenessReport is_concise(const DenseTensor& t) {
  ConcisenessReport report;
  report.concise = true;
  for (std::size_t mode = 0; mode < t.order(); ++mode) {
    const std::size_t r = exact_rank(flattening(t, mode));
    report.flattening_ranks.push_back(r);
    const bool ok = r == t.shape()[mode];
    report.mode_concise.push_back(ok);
    report.concise = report.concise && ok;
  }
  return report;
}

DenseTensor apply_mode_map(const DenseTensor& t, std::size_t mode,
                           const ExactMatrix& map) {
  if (mode >= t.order()) {
    throw std::invalid_argument("apply_mode_map: mode out of range");
  }
  const auto& shape = t.shape();
  if (map.cols() != shape[mode]) {
    throw std::invalid_argument(
        "apply_mode_map: map has " + std::to_string(map.cols()) +
        " columns, mode dimension is " + std::to_string(shape[mode]));
  }
  std::size_t outer = 1;
  for (std::size_t i = 0; i < mode; ++i) outer *= shape[i];
  std::size_t inner = 1;
  for (std::size_t i = mode + 1; i < shape.size(); ++i) inner *= shape[i];

  std::vector<std::size_t> new_shape = shape;
  new_shape[mode] = map.rows();
  DenseTensor out(new_shape);
  const std::size_t in_dim = shape[mode];
  const std::size_t out_dim = map.rows();
  for (std::size_t o = 0; o < outer; ++o) {
    for (std::size_t c = 0; c < in_dim; ++c) {
      for (std::size_t x = 0; x < inner; ++x) {
        const Rational& v = t[(o * in_dim + c) * inner + x];
        if (sgn(v) == 0) continue;
        for (std::size_t r = 0; r < out_dim; ++r) {
          if (sgn(map(r, c)) == 0) continue;
          out[(o * out_dim + r) * inner + x] += map(r, c) * v;
        }
      }
    }
  }
  return out;
}

}  // namespace rankgap
