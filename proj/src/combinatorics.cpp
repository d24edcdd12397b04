#include "rankgap/combinatorics.hpp"

#include <algorithm>
#include <cfenv>
#include <cmath>
#include <stdexcept>

namespace rankgap::combinatorics {

BigInt binomial(long a, long k) {
  if (a < 0 || k < 0 || k > a) {
    return 0;
  }
  BigInt out;
  mpz_bin_uiui(out.get_mpz_t(), static_cast<unsigned long>(a),
               static_cast<unsigned long>(k));
  return out;
}

BigInt ext_binom(long containers, long balls, long capacity) {
  if (containers < 1) {
    throw std::invalid_argument("ext_binom: container count must be positive");
  }
  if (balls < 0 || capacity < 0) {
    throw std::invalid_argument("ext_binom: negative ball count or capacity");
  }
  if (balls > containers * capacity) {
    return 0;
  }
  const long width = capacity + 1;
  const long terms = std::min(containers, balls / width);
  BigInt total = 0;
  for (long i = 0; i <= terms; ++i) {
    BigInt term = binomial(containers, i) *
                  binomial(balls + containers - 1 - i * width, containers - 1);
    if (i % 2 == 0) {
      total += term;
    } else {
      total -= term;
    }
  }
  return total;
}

BigInt partial_sum_ext_binom(long containers, long max_balls, long capacity) {
  if (containers < 1) {
    throw std::invalid_argument(
        "partial_sum_ext_binom: container count must be positive");
  }
  BigInt total = 0;
  const long top = std::min(max_balls, containers * capacity);
  for (long b = 0; b <= top; ++b) {
    total += ext_binom(containers, b, capacity);
  }
  return total;
}

double binary_entropy(double q) {
  if (!(q >= 0.0 && q <= 1.0)) {
    throw std::invalid_argument("binary_entropy: q must lie in [0, 1]");
  }
  if (q == 0.0 || q == 1.0) {
    return 0.0;
  }
  return -q * std::log2(q) - (1.0 - q) * std::log2(1.0 - q);
}

Rational ratio_tail(const Rational& q, long capacity, long containers) {
  if (sgn(q) < 0 || q >= Rational(1, 2)) {
    throw std::invalid_argument("ratio_tail: q must satisfy 0 <= q < 1/2");
  }
  if (capacity < 1 || containers < 1) {
    throw std::invalid_argument("ratio_tail: d and n must be positive");
  }
  const Rational scaled = q * containers * capacity;
  BigInt floor_value;
  mpz_fdiv_q(floor_value.get_mpz_t(), scaled.get_num_mpz_t(),
             scaled.get_den_mpz_t());
  const BigInt numerator =
      partial_sum_ext_binom(containers, floor_value.get_si(), capacity);
  Rational out(numerator, pow_ui(static_cast<unsigned long>(capacity + 1),
                                 static_cast<unsigned long>(containers)));
  out.canonicalize();
  return out;
}

double empirical_h(long containers, double rho, long capacity) {
  if (containers < 1 || capacity < 1) {
    throw std::invalid_argument("empirical_h: n and d must be positive");
  }
  if (!(rho >= 0.0 && rho <= static_cast<double>(capacity))) {
    throw std::invalid_argument("empirical_h: rho must lie in [0, d]");
  }
  const int saved = std::fegetround();
  std::fesetround(FE_TONEAREST);
  const auto balls = static_cast<long>(
      std::nearbyint(rho * static_cast<double>(containers)));
  std::fesetround(saved);
  return log_big(ext_binom(containers, balls, capacity)) /
         static_cast<double>(containers);
}

}  // namespace rankgap::combinatorics
