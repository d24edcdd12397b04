#pragma once

#include "rankgap/numeric.hpp"

namespace rankgap::combinatorics {

/// C(a, k), with the convention C(a, k) = 0 when a < 0, k < 0 or k > a.
BigInt binomial(long a, long k);

/// Number of ways to put `balls` balls into `containers` containers with at
/// most `capacity` balls per container, i.e. the number of monomials of
/// degree `balls` in C[x_1..x_n]/(x_1^{capacity+1}, ..., x_n^{capacity+1}).
///
/// Evaluated with the inclusion-exclusion sum
///   sum_i (-1)^i C(n, i) C(b + n - 1 - i (capacity + 1), n - 1).
/// Throws std::invalid_argument when containers == 0.
BigInt ext_binom(long containers, long balls, long capacity);

/// sum_{b=0}^{max_balls} ext_binom(containers, b, capacity).
BigInt partial_sum_ext_binom(long containers, long max_balls, long capacity);

/// -q log2 q - (1 - q) log2 (1 - q); 0 at the endpoints q = 0 and q = 1.
double binary_entropy(double q);

/// sum_{b=0}^{floor(q n d)} ext_binom(n, b, d) / (d + 1)^n, exactly.
/// Requires 0 <= q < 1/2.
Rational ratio_tail(const Rational& q, long capacity, long containers);

/// (1/n) ln ext_binom(n, round(rho n), d); a finite-n estimate of the
/// exponential growth rate of the extended binomial coefficients.
/// rho * n is rounded to nearest, ties to even.
double empirical_h(long containers, double rho, long capacity);

}  // namespace rankgap::combinatorics
