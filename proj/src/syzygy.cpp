#include "rankgap/syzygy.hpp"

#include <bit>
#include <sstream>
#include <stdexcept>

namespace rankgap::syzygy {

Polynomial entry(unsigned row, unsigned col) {
  if (row < 1 || row > 3 || col < 1 || col > 3) {
    throw std::out_of_range("matrix entry index must be in 1..3");
  }
  return Polynomial::variable(kArity, (row - 1) * 3 + (col - 1));
}

const std::vector<std::string>& variable_names() {
  static const std::vector<std::string> names{
      "A11", "A12", "A13", "A21", "A22", "A23", "A31", "A32", "A33"};
  return names;
}

Polynomial det3_generic() {
  const auto a = [](unsigned r, unsigned c) { return entry(r, c); };
  return a(1, 1) * a(2, 2) * a(3, 3) + a(1, 2) * a(2, 3) * a(3, 1) +
         a(1, 3) * a(2, 1) * a(3, 2) - a(1, 3) * a(2, 2) * a(3, 1) -
         a(1, 2) * a(2, 1) * a(3, 3) - a(1, 1) * a(2, 3) * a(3, 2);
}

RelationPolys relation_polys() {
  const auto a = [](unsigned r, unsigned c) { return entry(r, c); };
  auto f = [&](unsigned row) -> std::array<Polynomial, 3> {
    return {a(1, 1) * a(row, 2) + a(1, 2) * a(row, 1),
            a(1, 1) * a(row, 3) + a(1, 3) * a(row, 1),
            a(1, 2) * a(row, 3) + a(1, 3) * a(row, 2)};
  };
  const auto f2 = f(2);
  const auto f3 = f(3);
  return {f2[0], f2[1], f2[2], f3[0], f3[1], f3[2]};
}

TruncatedElement linear_generator(unsigned row) {
  return {{0b001u, entry(row, 1)},
          {0b010u, entry(row, 2)},
          {0b100u, entry(row, 3)}};
}

TruncatedElement multiply_truncated(const TruncatedElement& a,
                                    const TruncatedElement& b) {
  TruncatedElement out;
  for (const auto& [ma, pa] : a) {
    for (const auto& [mb, pb] : b) {
      if ((ma & mb) != 0) continue;  // x^2 = y^2 = z^2 = 0
      const unsigned mask = ma | mb;
      if (std::popcount(mask) >= 3) continue;  // N^3 is discarded
      auto [it, inserted] = out.try_emplace(mask, pa * pb);
      if (!inserted) it->second += pa * pb;
    }
  }
  std::erase_if(out, [](const auto& kv) { return kv.second.is_zero(); });
  return out;
}

namespace {

Polynomial coefficient_of(const TruncatedElement& e, unsigned mask) {
  const auto it = e.find(mask);
  return it == e.end() ? Polynomial(kArity) : it->second;
}

}  // namespace

DerivedRelations derive_relations() {
  const auto x1 = linear_generator(1);
  const auto x12 = multiply_truncated(x1, linear_generator(2));
  const auto x13 = multiply_truncated(x1, linear_generator(3));
  constexpr unsigned kXY = 0b011u, kXZ = 0b101u, kYZ = 0b110u;
  DerivedRelations out{{coefficient_of(x12, kXY), coefficient_of(x12, kXZ),
                        coefficient_of(x12, kYZ), coefficient_of(x13, kXY),
                        coefficient_of(x13, kXZ), coefficient_of(x13, kYZ)},
                       false};
  out.matches = out.derived == relation_polys();
  return out;
}

RelationPolys det_syzygy_multipliers() {
  const auto a = [](unsigned r, unsigned c) { return entry(r, c); };
  const Polynomial zero(kArity);
  return {a(1, 3) * a(3, 1) - a(1, 1) * a(3, 3),
          Rational(-3) * (a(1, 2) * a(3, 1)) - a(1, 1) * a(3, 2),
          zero,
          Rational(2) * (a(1, 1) * a(2, 3)),
          Rational(2) * (a(1, 2) * a(2, 1)),
          zero};
}

SyzygyCertificate verify_syzygy() {
  return verify_syzygy(det_syzygy_multipliers());
}

SyzygyCertificate verify_syzygy(const RelationPolys& multipliers) {
  SyzygyCertificate cert{multipliers, -(entry(1, 1) * det3_generic()),
                         Polynomial(kArity), Polynomial(kArity)};
  const auto relations = relation_polys();
  for (std::size_t i = 0; i < relations.size(); ++i) {
    cert.combination += multipliers[i] * relations[i];
  }
  cert.residual = cert.combination - cert.target;
  return cert;
}

std::string certificate_report(const SyzygyCertificate& cert) {
  static const char* const kRelationNames[] = {"f1", "f2", "f3",
                                               "g1", "g2", "g3"};
  const auto& names = variable_names();
  std::ostringstream out;
  out << "target: -A11*det(A) = " << cert.target.to_string(names) << '\n';
  const auto relations = relation_polys();
  for (std::size_t i = 0; i < relations.size(); ++i) {
    out << kRelationNames[i] << " = " << relations[i].to_string(names)
        << "    multiplier: " << cert.multipliers[i].to_string(names) << '\n';
  }
  if (cert.valid()) {
    out << "RESIDUAL = 0\n";
  } else {
    out << "RESIDUAL = " << cert.residual.to_string(names) << '\n'
        << "nonzero terms: " << cert.residual.terms().size() << '\n';
  }
  return out.str();
}

}  // namespace rankgap::syzygy
