#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

#include <gmpxx.h>

namespace rankgap {

using BigInt = mpz_class;
using Rational = mpq_class;

/// Raised when a computation would exceed a configured size budget.
class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised when a certificate that must hold turns out to be false.
class VerificationFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Limits guarding dense exact storage. Dimensions refer to one leg of a
/// 3-tensor, so entry counts grow with their cube.
struct SizeBudget {
  std::size_t max_algebra_dim = 128;
  std::size_t max_rank_check_dim = 64;
  std::size_t max_tensor_entries = std::size_t{1} << 22;
};

// "p/q" or an integer string; canonicalized.
Rational parse_rational(const std::string& text);
std::string to_string(const Rational& q);
std::string to_string(const BigInt& z);

BigInt pow_ui(unsigned long base, unsigned long exponent);

// Natural logarithm of a positive big integer, without overflowing a double.
double log_big(const BigInt& z);

}  // namespace rankgap
