#include <doctest.h>

#include <cmath>

#include "rankgap/cpd.hpp"

using namespace rankgap;
using namespace rankgap::cpd;

namespace {

DenseTensor rank_one_tensor() {
  return unit_tensor({2, 2, 2}, std::vector<std::size_t>{0, 0, 0});
}

CPDecomposition exact_rank_one() {
  CPDecomposition d;
  d.shape = {2, 2, 2};
  d.rank = 1;
  for (int i = 0; i < 3; ++i) {
    CMatrix a = CMatrix::Zero(2, 1);
    a(0, 0) = 1.0;
    d.factors.push_back(a);
  }
  return d;
}

AlsConfig quick(int restarts, std::uint64_t seed) {
  AlsConfig cfg;
  cfg.restarts = restarts;
  cfg.seed = seed;
  return cfg;
}

}  // namespace

TEST_CASE("residual") {
  const auto t = rank_one_tensor();
  auto d = exact_rank_one();
  CHECK(residual(t, d) == 0.0);

  auto zero = d;
  for (auto& a : zero.factors) a.setZero();
  CHECK(residual(t, zero) == doctest::Approx(1.0));

  const DenseTensor z({2, 2, 2});
  CHECK(residual(z, d) == doctest::Approx(1.0));

  auto wrong = d;
  wrong.factors[1] = CMatrix::Zero(3, 1);
  CHECK_THROWS(residual(t, wrong));
}

TEST_CASE("residual responds linearly to small perturbations") {
  const auto t = rank_one_tensor();
  std::vector<double> ratios;
  for (double delta : {1e-2, 1e-3, 1e-4}) {
    auto d = exact_rank_one();
    d.factors[2](1, 0) = delta;
    ratios.push_back(residual(t, d) / delta);
  }
  for (double r : ratios) CHECK(r == doctest::Approx(ratios.back()).epsilon(1e-3));
  CHECK(ratios.back() == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("factor norms") {
  std::vector<CMatrix> f(3, CMatrix::Zero(2, 2));
  f[0](0, 0) = 3.0;
  f[0](1, 0) = 4.0;
  f[1](0, 0) = 2.0;
  f[2](0, 0) = 1.0;
  f[2](1, 1) = Complex(0.0, 7.0);
  CHECK(max_factor_column_norm(f) == doctest::Approx(7.0));
  CHECK(max_term_norm(f) == doctest::Approx(10.0));
}

TEST_CASE("random_factors") {
  const std::vector<std::size_t> shape{2, 3, 4};
  const auto a = random_factors(shape, 5, 42);
  const auto b = random_factors(shape, 5, 42);
  const auto c = random_factors(shape, 5, 43);
  REQUIRE(a.size() == 3);
  for (std::size_t i = 0; i < 3; ++i) {
    CHECK(a[i].rows() == static_cast<Eigen::Index>(shape[i]));
    CHECK(a[i].cols() == 5);
    CHECK(a[i] == b[i]);
  }
  CHECK_FALSE(a[0] == c[0]);
}

TEST_CASE("ALS recovers small ranks") {
  const auto one = als_decompose(rank_one_tensor(), 1, quick(1, 0));
  CHECK(one.residual < 1e-12);

  AlsConfig cfg = quick(20, 0);
  cfg.max_iters = 500;
  const auto w = als_decompose(wstate(3), 3, cfg);
  CHECK(w.residual < 1e-10);
  CHECK(w.iterations <= 500);
  CHECK(w.factors.size() == 3);
  CHECK(w.rank == 3);

  const auto w2 = als_decompose(kron_power(wstate(3), 2), 7, quick(20, 0));
  CHECK(w2.residual < 1e-8);
}

TEST_CASE("ALS is deterministic") {
  const auto t = kron_power(wstate(3), 2);
  const auto a = als_decompose(t, 6, quick(2, 9));
  const auto b = als_decompose(t, 6, quick(2, 9));
  CHECK(a.trace == b.trace);
  CHECK(a.residual == b.residual);
  CHECK(a.restart_index == b.restart_index);
  CHECK(a.seed == b.seed);
  CHECK(a.seed == 9 + static_cast<std::uint64_t>(a.restart_index));
}

TEST_CASE("ALS sweeps never increase the residual") {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    for (const auto& [t, r] : {std::pair{wstate(3), std::size_t{2}},
                               std::pair{kron_power(wstate(3), 2), std::size_t{6}}}) {
      AlsConfig cfg = quick(1, seed);
      cfg.max_iters = 300;
      const auto d = als_decompose(t, r, cfg);
      for (std::size_t i = 1; i < d.trace.size(); ++i) {
        CHECK(d.trace[i] <= d.trace[i - 1] + 1e-12);
      }
    }
  }
}

TEST_CASE("reported residual matches reconstruction") {
  const auto t = kron_power(wstate(3), 2);
  const auto d = als_decompose(t, 5, quick(3, 1));
  CHECK(std::abs(residual(t, d) - d.residual) <= 1e-12);
  CHECK(d.max_column_norm == doctest::Approx(max_factor_column_norm(d.factors)));
}

TEST_CASE("decomposition documents round-trip") {
  const auto t = wstate(3);
  const auto d = als_decompose(t, 3, quick(2, 4));
  const std::string text = write_decomposition(d);
  const auto back = read_decomposition(text);
  CHECK(back.shape == d.shape);
  CHECK(back.rank == d.rank);
  CHECK(back.seed == d.seed);
  REQUIRE(back.factors.size() == d.factors.size());
  for (std::size_t i = 0; i < d.factors.size(); ++i) CHECK(back.factors[i] == d.factors[i]);
  CHECK(residual(t, back) == residual(t, d));
  CHECK(write_decomposition(back) == text);
  CHECK_THROWS(read_decomposition("{}"));
  CHECK_THROWS(read_decomposition("garbage"));
}

TEST_CASE("certify_upper") {
  const auto w = certify_upper(wstate(3), 3, 1e-8, quick(20, 0));
  CHECK(w.pass);
  CHECK(w.summary().find("numerical") != std::string::npos);
  CHECK(certify_upper(rank_one_tensor(), 1, 1e-10, quick(1, 0)).pass);
  const auto fail = certify_upper(wstate(3), 1, 1e-8, quick(2, 0));
  CHECK_FALSE(fail.pass);
}

TEST_CASE("degeneration family") {
  const auto d = degeneration_decomposition(3, 0.1);
  CHECK(d.rank == 2);
  const double r = residual(wstate(3), d);
  CHECK(r / 0.1 > 0.5);
  CHECK(r / 0.1 < 2.0);
  CHECK(residual(wstate(4), degeneration_decomposition(4, 1e-3)) < 1e-2);
  CHECK_THROWS(degeneration_decomposition(3, 0.0));
}

TEST_CASE("degeneration witness scales linearly") {
  const std::vector<double> eps{1e-1, 1e-2, 1e-3};
  const auto w = degeneration_witness(3, eps);
  REQUIRE(w.points.size() == 3);
  for (std::size_t i = 1; i < w.points.size(); ++i) {
    CHECK(w.points[i - 1].second / w.points[i].second ==
          doctest::Approx(10.0).epsilon(0.05));
  }
  for (std::size_t k = 3; k <= 5; ++k) {
    const std::vector<double> wide{1e-1, 1e-2, 1e-3, 1e-4};
    CHECK(std::abs(degeneration_witness(k, wide).loglog_slope() - 1.0) <= 0.1);
  }
  const std::vector<double> bad{1e-1, 0.0};
  CHECK_THROWS(degeneration_witness(3, bad));
}

TEST_CASE("divergence probe records per-sweep traces") {
  AlsConfig cfg;
  cfg.max_iters = 200;
  const auto p = divergence_probe(wstate(3), 2, cfg);
  CHECK(p.residuals.size() == 200);
  CHECK(p.max_column_norms.size() == 200);
  CHECK(p.max_term_norms.size() == 200);
  CHECK(p.residuals.back() < p.residuals.front());
  CHECK(p.final.residual == p.residuals.back());
}

TEST_CASE("divergence probe stays bounded when the rank is attained") {
  AlsConfig cfg;
  cfg.max_iters = 200;
  const auto one = divergence_probe(rank_one_tensor(), 1, cfg);
  CHECK(one.residuals.back() < 1e-12);
  CHECK(one.max_column_norms.back() < 10.0);

  cfg.max_iters = 2000;
  const auto w = divergence_probe(wstate(3), 3, cfg);
  CHECK(w.max_term_norms.back() < 1e2);
}
