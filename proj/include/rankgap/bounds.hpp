#pragma once

#include <optional>
#include <string>
#include <vector>

#include "rankgap/numeric.hpp"

namespace rankgap::bounds {

/// dim A - dim N^{2m-1} + 2 dim N^m. Requires 0 <= dimN_2m_1 <= dimN_m <= dimA.
BigInt blaser_generic(const BigInt& dim_a, const BigInt& dim_n_2m_1,
                      const BigInt& dim_n_m);

struct BlaserBound {
  BigInt value;
  unsigned best_m = 1;  // smallest maximizer
};

/// max over m in [1, n(d-1)+1] of
///   2 d^n + sum_{b<=2m-2} ext_binom(n,b,d-1) - 2 sum_{b<=m-1} ext_binom(n,b,d-1).
BlaserBound blaser_bound(unsigned d, unsigned n);

/// 2 dim A - t for an algebra with t maximal two-sided ideals.
BigInt alder_strassen(const BigInt& dim_a, unsigned long t);

struct BorderRankCertificate {
  BigInt value;
  bool certified = false;
  std::vector<std::size_t> flattening_ranks;  // filled when certified
};

/// Border rank d^n of A_{d,n}. With `certify`, all three flattening ranks of
/// the structure tensor are computed exactly and must equal d^n; a mismatch
/// throws VerificationFailure.
BorderRankCertificate border_rank_algebra(unsigned d, unsigned n, bool certify,
                                          const SizeBudget& budget = {});

/// (n d + 1) d^n.
BigInt rank_upper(unsigned d, unsigned n);

/// lb3 + (k - 3)(2^n - 1): lifts a bound for W_3^{(x)n} to W_k^{(x)n}.
BigInt induction_combiner(const BigInt& lb3, unsigned k, unsigned n);

/// (k-1) 2^n + max_m [sum_{b<=2m-2} C(n,b) - 2 sum_{b<=m-1} C(n,b)] - (k-3),
/// evaluated straight from binomial coefficients.
BigInt wstate_bound_direct(unsigned k, unsigned n);

/// Lower bound on rank(W_k^{(x)n}); the direct formula cross-checked against
/// induction_combiner(blaser_bound(2, n)).
BigInt wstate_bound(unsigned k, unsigned n);

/// (n (k - 1) + 1) 2^n.
BigInt wstate_rank_upper(unsigned k, unsigned n);

/// 2 * 9^{(n-1) B} + 1. Throws BudgetExceeded when the result would have
/// more than `max_digits` decimal digits.
BigInt lehmkuhl_lickteig_upper(unsigned long n, const BigInt& border_rank,
                               unsigned long max_digits = 1'000'000);

enum class InstanceKind { kAlgebra, kWState };

struct BoundReport {
  InstanceKind kind = InstanceKind::kAlgebra;
  unsigned d_or_k = 0;
  unsigned n = 0;
  BigInt dim;  // local dimension of each leg
  BigInt blaser_lb;
  unsigned best_m = 1;
  BigInt alder_strassen_lb;
  BigInt border_rank;
  bool border_certified = false;
  std::vector<std::size_t> flattening_ranks;
  BigInt rank_ub;
  BigInt best_lb;
  Rational ratio_lb;
  std::optional<BigInt> known_exact_rank;

  std::string tag() const;
};

BoundReport algebra_report(unsigned d, unsigned n, bool certify_border = false,
                           const SizeBudget& budget = {});

/// Report for W_k^{(x)n}; ratio_lb = wstate_bound(k, n) / 2^n.
BoundReport ratio_report(unsigned k, unsigned n);

struct Table {
  std::string row_label;
  std::string col_label;
  std::vector<unsigned> row_keys;
  std::vector<unsigned> col_keys;
  std::vector<std::vector<BigInt>> values;  // [row][col]
  std::vector<std::vector<bool>> sharp;

  const BigInt& at(unsigned row_key, unsigned col_key) const;
};

/// Rows n = 1..6, columns d = 2..6: blaser_bound(d, n).
Table table1();
/// Rows k = 3..10, columns n = 1..10: wstate_bound(k, n).
Table table2();

std::string table_csv(const Table& t);
std::string table_text(const Table& t);
std::string table_structured(const Table& t);

}  // namespace rankgap::bounds
