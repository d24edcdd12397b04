#include <doctest.h>

#include <cmath>
#include <numeric>
#include <vector>

#include "rankgap/combinatorics.hpp"

using namespace rankgap;
using namespace rankgap::combinatorics;

namespace {

// Counts tuples in [0, d]^n summing to b by walking all (d+1)^n tuples.
long brute_force_count(long n, long b, long d) {
  std::vector<long> digits(static_cast<std::size_t>(n), 0);
  long count = 0;
  while (true) {
    if (std::accumulate(digits.begin(), digits.end(), 0L) == b) ++count;
    std::size_t i = 0;
    while (i < digits.size() && digits[i] == d) digits[i++] = 0;
    if (i == digits.size()) break;
    ++digits[i];
  }
  return count;
}

// floor(log2(z)) plus the fractional part from the leading bits.
long double log2_exact(const BigInt& z) {
  long exp2 = 0;
  const double mantissa = mpz_get_d_2exp(&exp2, z.get_mpz_t());
  return std::log2(static_cast<long double>(mantissa)) + exp2;
}

}  // namespace

TEST_CASE("ext_binom examples") {
  CHECK(ext_binom(3, 3, 2) == 7);
  CHECK(brute_force_count(3, 3, 2) == 7);
  CHECK(ext_binom(5, 0, 3) == 1);
  CHECK(ext_binom(4, 2, 1) == 6);
}

TEST_CASE("ext_binom rejects zero containers and vanishes past n*d") {
  CHECK_THROWS_AS(ext_binom(0, 1, 1), std::invalid_argument);
  CHECK(ext_binom(3, 7, 2) == 0);
  CHECK(ext_binom(2, 1, 0) == 0);
  CHECK(ext_binom(2, 0, 0) == 1);
}

TEST_CASE("binomial convention outside the triangle") {
  CHECK(binomial(-1, 0) == 0);
  CHECK(binomial(3, -1) == 0);
  CHECK(binomial(3, 4) == 0);
  CHECK(binomial(0, 0) == 1);
  CHECK(binomial(10, 3) == 120);
}

TEST_CASE("ext_binom equals brute-force enumeration") {
  for (long n = 1; n <= 6; ++n) {
    for (long d = 0; d <= 4; ++d) {
      for (long b = 0; b <= n * d; ++b) {
        CAPTURE(n);
        CAPTURE(d);
        CAPTURE(b);
        CHECK(ext_binom(n, b, d) == brute_force_count(n, b, d));
      }
    }
  }
}

TEST_CASE("row sums, symmetry and the d=1 reduction") {
  for (long n = 1; n <= 12; ++n) {
    for (long d = 0; d <= 5; ++d) {
      BigInt row = 0;
      for (long b = 0; b <= n * d; ++b) {
        row += ext_binom(n, b, d);
        CHECK(ext_binom(n, b, d) == ext_binom(n, n * d - b, d));
      }
      CHECK(row == pow_ui(static_cast<unsigned long>(d + 1),
                          static_cast<unsigned long>(n)));
    }
  }
  for (long n = 1; n <= 30; ++n) {
    for (long b = 0; b <= n; ++b) {
      BigInt c;
      mpz_bin_uiui(c.get_mpz_t(), static_cast<unsigned long>(n),
                   static_cast<unsigned long>(b));
      CHECK(ext_binom(n, b, 1) == c);
    }
  }
}

TEST_CASE("partial sums") {
  CHECK(partial_sum_ext_binom(2, 4, 2) == 9);
  CHECK(partial_sum_ext_binom(2, 1, 1) == 3);
  CHECK(partial_sum_ext_binom(1, 0, 5) == 1);
  CHECK(partial_sum_ext_binom(3, 100, 2) == 27);
}

TEST_CASE("binary entropy") {
  CHECK(binary_entropy(0.5) == doctest::Approx(1.0));
  CHECK(binary_entropy(0.25) == doctest::Approx(0.811278).epsilon(1e-6));
  CHECK(binary_entropy(0.75) == doctest::Approx(binary_entropy(0.25)));
  CHECK(binary_entropy(0.0) == 0.0);
  CHECK(binary_entropy(1.0) == 0.0);
  CHECK_THROWS_AS(binary_entropy(-0.1), std::invalid_argument);
  CHECK_THROWS_AS(binary_entropy(1.5), std::invalid_argument);
  CHECK_THROWS_AS(binary_entropy(std::nan("")), std::invalid_argument);
}

TEST_CASE("binomial tail is bounded by 2^{H(q) n}") {
  // The smallest gap log2(rhs) - log2(lhs) over this range is about 0.75,
  // far above long double rounding.
  for (long n = 2; n <= 60; ++n) {
    BigInt lhs = 0;
    for (long m = 1; 2 * m < n; ++m) {
      if (m == 1) lhs = 1 + BigInt(n);
      else lhs += binomial(n, m);
      const long double q = static_cast<long double>(m) / n;
      const long double h = -q * std::log2(q) - (1 - q) * std::log2(1 - q);
      CAPTURE(n);
      CAPTURE(m);
      CHECK(log2_exact(lhs) < h * n);
      CHECK(std::abs(static_cast<long double>(binary_entropy(
                         static_cast<double>(q))) - h) < 1e-12L);
    }
  }
}

TEST_CASE("ratio_tail examples") {
  CHECK(ratio_tail(Rational(0), 2, 3) == Rational(1, 27));
  // floor(2/5 * 5) = 2, (1 + 5 + 10) / 32
  CHECK(ratio_tail(Rational(2, 5), 1, 5) == Rational(1, 2));
  CHECK(ratio_tail(Rational(2, 5), 1, 400) <
        ratio_tail(Rational(2, 5), 1, 100));
  CHECK_THROWS_AS(ratio_tail(Rational(1, 2), 1, 5), std::invalid_argument);
  CHECK_THROWS_AS(ratio_tail(Rational(-1, 5), 1, 5), std::invalid_argument);
}

TEST_CASE("ratio_tail floor is exact at the boundary") {
  // q n d = 1/3 * 3 * 1 = 1 exactly; a floating floor could give 0.
  CHECK(ratio_tail(Rational(1, 3), 1, 3) == Rational(1, 2));  // (1 + 3) / 8
}

TEST_CASE("ratio_tail decays as n grows") {
  for (const Rational q : {Rational(1, 4), Rational(2, 5)}) {
    for (long d = 1; d <= 3; ++d) {
      for (long n : {25L, 50L, 100L}) {
        CAPTURE(d);
        CAPTURE(n);
        CHECK(ratio_tail(q, d, 4 * n) < ratio_tail(q, d, n));
      }
    }
  }
}

TEST_CASE("empirical_h") {
  CHECK(empirical_h(100, 1.0, 2) < std::log(3.0));
  CHECK(std::abs(empirical_h(200, 1.0, 2) - std::log(3.0)) < 0.05);
  CHECK(empirical_h(50, 0.0, 3) == 0.0);
  CHECK_THROWS_AS(empirical_h(10, 2.5, 2), std::invalid_argument);
  // rho n = 2.5 rounds to the even neighbour 2.
  CHECK(empirical_h(5, 0.5, 1) == doctest::Approx(std::log(10.0) / 5));
}
