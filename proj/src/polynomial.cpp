#include "rankgap/polynomial.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace rankgap {

Polynomial Polynomial::constant(std::size_t arity, const Rational& c) {
  Polynomial p(arity);
  p.add_term(Exponents(arity, 0), c);
  return p;
}

Polynomial Polynomial::variable(std::size_t arity, std::size_t index) {
  if (index >= arity) {
    throw std::out_of_range("variable index exceeds polynomial arity");
  }
  Exponents e(arity, 0);
  e[index] = 1;
  Polynomial p(arity);
  p.add_term(e, 1);
  return p;
}

Polynomial Polynomial::monomial(const Exponents& exponents,
                                const Rational& c) {
  Polynomial p(exponents.size());
  p.add_term(exponents, c);
  return p;
}

unsigned Polynomial::total_degree() const {
  unsigned degree = 0;
  for (const auto& [e, c] : terms_) {
    unsigned sum = 0;
    for (const unsigned x : e) sum += x;
    degree = std::max(degree, sum);
  }
  return degree;
}

Rational Polynomial::coefficient(const Exponents& exponents) const {
  const auto it = terms_.find(exponents);
  return it == terms_.end() ? Rational(0) : it->second;
}

Rational Polynomial::evaluate(std::span<const Rational> point) const {
  if (point.size() != arity_) {
    throw std::invalid_argument("evaluation point has wrong arity");
  }
  Rational total = 0;
  for (const auto& [e, c] : terms_) {
    Rational term = c;
    for (std::size_t i = 0; i < arity_; ++i) {
      for (unsigned k = 0; k < e[i]; ++k) term *= point[i];
    }
    total += term;
  }
  return total;
}

void Polynomial::add_term(const Exponents& exponents, const Rational& c) {
  if (exponents.size() != arity_) {
    throw std::invalid_argument("monomial has wrong arity");
  }
  if (sgn(c) == 0) return;
  auto [it, inserted] = terms_.try_emplace(exponents, c);
  if (!inserted) {
    it->second += c;
    if (sgn(it->second) == 0) terms_.erase(it);
  }
}

void Polynomial::check_arity(const Polynomial& other) const {
  if (other.arity_ != arity_) {
    throw std::invalid_argument("polynomial arity mismatch (" +
                                std::to_string(arity_) + " vs " +
                                std::to_string(other.arity_) + ")");
  }
}

Polynomial& Polynomial::operator+=(const Polynomial& rhs) {
  check_arity(rhs);
  for (const auto& [e, c] : rhs.terms_) add_term(e, c);
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& rhs) {
  check_arity(rhs);
  for (const auto& [e, c] : rhs.terms_) add_term(e, -c);
  return *this;
}

Polynomial& Polynomial::operator*=(const Rational& c) {
  if (sgn(c) == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [e, coeff] : terms_) coeff *= c;
  return *this;
}

Polynomial operator*(const Polynomial& lhs, const Polynomial& rhs) {
  lhs.check_arity(rhs);
  Polynomial out(lhs.arity_);
  Polynomial::Exponents e(lhs.arity_);
  for (const auto& [ea, ca] : lhs.terms_) {
    for (const auto& [eb, cb] : rhs.terms_) {
      for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
      out.add_term(e, ca * cb);
    }
  }
  return out;
}

std::string Polynomial::to_string(std::span<const std::string> names) const {
  if (names.size() != arity_) {
    throw std::invalid_argument("need one name per variable");
  }
  if (terms_.empty()) return "0";
  std::ostringstream out;
  bool first = true;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const auto& [e, c] = *it;
    const bool negative = sgn(c) < 0;
    if (first) {
      if (negative) out << '-';
    } else {
      out << (negative ? " - " : " + ");
    }
    first = false;
    const Rational magnitude = abs(c);
    const bool has_vars =
        std::any_of(e.begin(), e.end(), [](unsigned x) { return x != 0; });
    bool need_star = false;
    if (magnitude != 1 || !has_vars) {
      out << magnitude.get_str();
      need_star = true;
    }
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      if (need_star) out << '*';
      out << names[i];
      if (e[i] > 1) out << '^' << e[i];
      need_star = true;
    }
  }
  return out.str();
}

}  // namespace rankgap
