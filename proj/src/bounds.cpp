#include "rankgap/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "rankgap/algebra.hpp"
#include "rankgap/combinatorics.hpp"
#include "rankgap/tensor.hpp"

namespace rankgap::bounds {

using combinatorics::binomial;
using combinatorics::ext_binom;

BigInt blaser_generic(const BigInt& dim_a, const BigInt& dim_n_2m_1,
                      const BigInt& dim_n_m) {
  if (sgn(dim_n_2m_1) < 0 || dim_n_2m_1 > dim_n_m || dim_n_m > dim_a) {
    throw std::invalid_argument(
        "blaser_generic: need 0 <= dim N^{2m-1} <= dim N^m <= dim A");
  }
  return dim_a - dim_n_2m_1 + 2 * dim_n_m;
}

BlaserBound blaser_bound(unsigned d, unsigned n) {
  if (d < 2) throw std::invalid_argument("blaser_bound requires d >= 2");
  if (n < 1) throw std::invalid_argument("blaser_bound requires n >= 1");
  const unsigned top_m = n * (d - 1) + 1;
  // prefix[B] = sum_{b<=B} ext_binom(n, b, d-1) for B in [0, 2 top_m - 2].
  std::vector<BigInt> prefix(2 * top_m - 1);
  BigInt running = 0;
  for (unsigned b = 0; b < prefix.size(); ++b) {
    running += ext_binom(n, b, d - 1);
    prefix[b] = running;
  }
  const BigInt base = 2 * pow_ui(d, n);
  BlaserBound best{base + prefix[0] - 2 * prefix[0], 1};
  for (unsigned m = 2; m <= top_m; ++m) {
    BigInt value = base + prefix[2 * m - 2] - 2 * prefix[m - 1];
    if (value > best.value) best = {std::move(value), m};
  }
  return best;
}

BigInt alder_strassen(const BigInt& dim_a, unsigned long t) {
  if (sgn(dim_a) <= 0) {
    throw std::invalid_argument("alder_strassen: dim A must be positive");
  }
  if (t < 1) {
    throw std::invalid_argument(
        "alder_strassen: need at least one maximal ideal");
  }
  if (BigInt(t) > 2 * dim_a) {
    throw std::invalid_argument("alder_strassen: t exceeds 2 dim A");
  }
  return 2 * dim_a - t;
}

BorderRankCertificate border_rank_algebra(unsigned d, unsigned n,
                                          bool certify,
                                          const SizeBudget& budget) {
  if (d < 2) throw std::invalid_argument("A_{d,n} requires d >= 2");
  if (n < 1) throw std::invalid_argument("A_{d,n} requires n >= 1");
  BorderRankCertificate cert{pow_ui(d, n), false, {}};
  if (!certify) return cert;

  const MonomialAlgebra alg(d, n);
  if (alg.dim() > budget.max_rank_check_dim) {
    throw BudgetExceeded("conciseness check of dimension " +
                         std::to_string(alg.dim()) + " exceeds budget " +
                         std::to_string(budget.max_rank_check_dim));
  }
  const auto report = is_concise(structure_tensor(alg, budget));
  cert.flattening_ranks = report.flattening_ranks;
  if (!report.concise) {
    throw VerificationFailure("structure tensor of A_{" + std::to_string(d) +
                              "," + std::to_string(n) + "} is not concise");
  }
  cert.certified = true;
  return cert;
}

BigInt rank_upper(unsigned d, unsigned n) {
  if (d < 2) throw std::invalid_argument("rank_upper requires d >= 2");
  return (BigInt(n) * d + 1) * pow_ui(d, n);
}

BigInt induction_combiner(const BigInt& lb3, unsigned k, unsigned n) {
  if (k < 3) throw std::invalid_argument("induction_combiner requires k >= 3");
  return lb3 + BigInt(k - 3) * (pow_ui(2, n) - 1);
}

BigInt wstate_bound_direct(unsigned k, unsigned n) {
  if (k < 3) throw std::invalid_argument("wstate_bound requires k >= 3");
  if (n < 1) throw std::invalid_argument("wstate_bound requires n >= 1");
  auto binomial_prefix = [n](long top) {
    BigInt sum = 0;
    for (long b = 0; b <= top; ++b) sum += binomial(n, b);
    return sum;
  };
  BigInt best = binomial_prefix(0) - 2 * binomial_prefix(0);
  for (unsigned m = 2; m <= n + 1; ++m) {
    best = std::max(best, BigInt(binomial_prefix(2L * m - 2) -
                                 2 * binomial_prefix(m - 1L)));
  }
  return BigInt(k - 1) * pow_ui(2, n) + best - BigInt(k - 3);
}

BigInt wstate_bound(unsigned k, unsigned n) {
  BigInt direct = wstate_bound_direct(k, n);
  const BigInt combined = induction_combiner(blaser_bound(2, n).value, k, n);
  if (direct != combined) {
    throw VerificationFailure("wstate_bound: direct formula " +
                              to_string(direct) + " disagrees with combiner " +
                              to_string(combined));
  }
  return direct;
}

BigInt wstate_rank_upper(unsigned k, unsigned n) {
  if (k < 3) throw std::invalid_argument("wstate_rank_upper requires k >= 3");
  return (BigInt(n) * (k - 1) + 1) * pow_ui(2, n);
}

BigInt lehmkuhl_lickteig_upper(unsigned long n, const BigInt& border_rank,
                               unsigned long max_digits) {
  if (n < 1) throw std::invalid_argument("lehmkuhl_lickteig_upper: n >= 1");
  if (sgn(border_rank) <= 0) {
    throw std::invalid_argument(
        "lehmkuhl_lickteig_upper: border rank must be positive");
  }
  const BigInt exponent = BigInt(n - 1) * border_rank;
  // 9^e has floor(e log10 9) + 1 digits.
  const double digits = exponent.get_d() * std::log10(9.0) + 1.0;
  if (!exponent.fits_ulong_p() || digits > static_cast<double>(max_digits)) {
    throw BudgetExceeded("2*9^" + to_string(exponent) + "+1 exceeds " +
                         std::to_string(max_digits) + " digits");
  }
  return 2 * pow_ui(9, exponent.get_ui()) + 1;
}

std::string BoundReport::tag() const {
  return (kind == InstanceKind::kAlgebra ? "algebra(" : "wstate(") +
         std::to_string(d_or_k) + "," + std::to_string(n) + ")";
}

namespace {

void finish_report(BoundReport& r) {
  r.best_lb = std::max(r.blaser_lb, r.alder_strassen_lb);
  r.ratio_lb = Rational(r.best_lb, r.border_rank);
  r.ratio_lb.canonicalize();
  if (r.best_lb < r.border_rank || r.best_lb > r.rank_ub) {
    throw VerificationFailure("inconsistent bounds for " + r.tag());
  }
}

}  // namespace

BoundReport algebra_report(unsigned d, unsigned n, bool certify_border,
                           const SizeBudget& budget) {
  BoundReport r;
  r.kind = InstanceKind::kAlgebra;
  r.d_or_k = d;
  r.n = n;
  const auto blaser = blaser_bound(d, n);
  r.dim = pow_ui(d, n);
  r.blaser_lb = blaser.value;
  r.best_m = blaser.best_m;
  // A_{d,n} is local: its only maximal ideal is (x_1, ..., x_n).
  r.alder_strassen_lb = alder_strassen(r.dim, 1);
  const auto border = border_rank_algebra(d, n, certify_border, budget);
  r.border_rank = border.value;
  r.border_certified = border.certified;
  r.flattening_ranks = border.flattening_ranks;
  r.rank_ub = rank_upper(d, n);
  if (n == 1) {
    r.known_exact_rank = BigInt(2 * d - 1);
  } else if (d == 2 && n == 2) {
    r.known_exact_rank = BigInt(7);
  } else if (d == 2 && n == 3) {
    r.known_exact_rank = BigInt(16);
  }
  finish_report(r);
  return r;
}

BoundReport ratio_report(unsigned k, unsigned n) {
  BoundReport r;
  r.kind = InstanceKind::kWState;
  r.d_or_k = k;
  r.n = n;
  r.dim = pow_ui(2, n);
  r.blaser_lb = wstate_bound(k, n);
  r.best_m = blaser_bound(2, n).best_m;
  r.alder_strassen_lb = induction_combiner(alder_strassen(r.dim, 1), k, n);
  r.border_rank = r.dim;
  r.rank_ub = wstate_rank_upper(k, n);
  if (n == 1) {
    r.known_exact_rank = BigInt(k);
  } else if (n == 2) {
    r.known_exact_rank = r.blaser_lb;
  } else if (k == 3 && n == 3) {
    r.known_exact_rank = BigInt(16);
  }
  finish_report(r);
  return r;
}

const BigInt& Table::at(unsigned row_key, unsigned col_key) const {
  const auto r = std::find(row_keys.begin(), row_keys.end(), row_key);
  const auto c = std::find(col_keys.begin(), col_keys.end(), col_key);
  if (r == row_keys.end() || c == col_keys.end()) {
    throw std::out_of_range("table cell not present");
  }
  return values[static_cast<std::size_t>(r - row_keys.begin())]
               [static_cast<std::size_t>(c - col_keys.begin())];
}

Table table1() {
  Table t{"n", "d", {1, 2, 3, 4, 5, 6}, {2, 3, 4, 5, 6}, {}, {}};
  for (const unsigned n : t.row_keys) {
    auto& values = t.values.emplace_back();
    auto& sharp = t.sharp.emplace_back();
    for (const unsigned d : t.col_keys) {
      values.push_back(blaser_bound(d, n).value);
      sharp.push_back(n == 1 || (d == 2 && n == 2));
    }
  }
  return t;
}

Table table2() {
  Table t{"k", "n", {3, 4, 5, 6, 7, 8, 9, 10}, {1, 2, 3, 4, 5, 6, 7, 8, 9, 10},
          {}, {}};
  for (const unsigned k : t.row_keys) {
    auto& values = t.values.emplace_back();
    auto& sharp = t.sharp.emplace_back();
    for (const unsigned n : t.col_keys) {
      values.push_back(wstate_bound(k, n));
      sharp.push_back(n <= 2);
    }
  }
  return t;
}

std::string table_csv(const Table& t) {
  std::ostringstream out;
  out << t.row_label << '/' << t.col_label;
  for (const unsigned c : t.col_keys) out << ',' << c;
  out << '\n';
  for (std::size_t r = 0; r < t.row_keys.size(); ++r) {
    out << t.row_keys[r];
    for (const auto& v : t.values[r]) out << ',' << v.get_str();
    out << '\n';
  }
  return out.str();
}

std::string table_text(const Table& t) {
  std::size_t width = 4;
  for (const auto& row : t.values) {
    for (const auto& v : row) width = std::max(width, v.get_str().size() + 2);
  }
  std::ostringstream out;
  out << std::setw(5) << std::left << (t.row_label + "\\" + t.col_label)
      << std::right;
  for (const unsigned c : t.col_keys) {
    out << std::setw(static_cast<int>(width)) << c << ' ';
  }
  out << '\n';
  for (std::size_t r = 0; r < t.row_keys.size(); ++r) {
    out << std::setw(5) << std::left << t.row_keys[r] << std::right;
    for (std::size_t c = 0; c < t.col_keys.size(); ++c) {
      out << std::setw(static_cast<int>(width)) << t.values[r][c].get_str()
          << (t.sharp[r][c] ? '*' : ' ');
    }
    out << '\n';
  }
  out << "(* = known to be sharp)\n";
  return out.str();
}

std::string table_structured(const Table& t) {
  nlohmann::json doc;
  doc["row_label"] = t.row_label;
  doc["col_label"] = t.col_label;
  doc["rows"] = t.row_keys;
  doc["cols"] = t.col_keys;
  nlohmann::json values = nlohmann::json::array();
  for (const auto& row : t.values) {
    nlohmann::json out_row = nlohmann::json::array();
    for (const auto& v : row) out_row.push_back(v.get_str());
    values.push_back(std::move(out_row));
  }
  doc["values"] = std::move(values);
  doc["sharp"] = t.sharp;
  return doc.dump(2) + "\n";
}

}  // namespace rankgap::bounds
