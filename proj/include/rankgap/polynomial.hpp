#pragma once

#include <array>
#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "rankgap/numeric.hpp"

namespace rankgap {

/// Sparse multivariate polynomial over Q. Zero coefficients are never
/// stored, so equality of term maps is equality of polynomials.
class Polynomial {
 public:
  using Exponents = std::vector<unsigned>;
  using Terms = std::map<Exponents, Rational>;

  explicit Polynomial(std::size_t arity) : arity_(arity) {}

  static Polynomial constant(std::size_t arity, const Rational& c);
  static Polynomial variable(std::size_t arity, std::size_t index);
  static Polynomial monomial(const Exponents& exponents, const Rational& c);

  std::size_t arity() const { return arity_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  unsigned total_degree() const;

  /// Coefficient of x^exponents (zero when absent).
  Rational coefficient(const Exponents& exponents) const;

  Rational evaluate(std::span<const Rational> point) const;

  Polynomial& operator+=(const Polynomial& rhs);
  Polynomial& operator-=(const Polynomial& rhs);
  Polynomial& operator*=(const Rational& c);

  friend Polynomial operator+(Polynomial lhs, const Polynomial& rhs) {
    return lhs += rhs;
  }
  friend Polynomial operator-(Polynomial lhs, const Polynomial& rhs) {
    return lhs -= rhs;
  }
  friend Polynomial operator-(Polynomial p) { return p *= Rational(-1); }
  friend Polynomial operator*(Polynomial p, const Rational& c) {
    return p *= c;
  }
  friend Polynomial operator*(const Rational& c, Polynomial p) {
    return p *= c;
  }
  friend Polynomial operator*(const Polynomial& lhs, const Polynomial& rhs);

  friend bool operator==(const Polynomial&, const Polynomial&) = default;

  /// Terms in descending lexicographic exponent order, e.g. "2*a*b - c^2".
  std::string to_string(std::span<const std::string> names) const;

 private:
  void add_term(const Exponents& exponents, const Rational& c);
  void check_arity(const Polynomial& other) const;

  std::size_t arity_;
  Terms terms_;
};

}  // namespace rankgap
