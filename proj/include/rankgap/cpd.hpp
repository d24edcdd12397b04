#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "rankgap/tensor.hpp"

// Numerical CP decompositions over C. Everything here is floating point and
// only ever provides evidence for rank upper bounds, never a proof.
namespace rankgap::cpd {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;

struct AlsConfig {
  int max_iters = 2000;
  double tol = 1e-12;     // stop when 10-sweep improvement drops below this
  int stall_window = 10;
  int restarts = 1;
  std::uint64_t seed = 0;  // restart i draws from seed + i
  bool rebalance = true;
  double pivot_threshold = 1e-12;
  bool record_trace = true;
};

struct CPDecomposition {
  std::vector<std::size_t> shape;
  std::size_t rank = 0;
  std::vector<CMatrix> factors;  // factors[i] is shape[i] x rank
  double residual = 0.0;         // ||T - sum||_F / ||T||_F
  double max_column_norm = 0.0;  // largest factor column norm
  int iterations = 0;
  std::uint64_t seed = 0;
  int restart_index = 0;
  int failed_restarts = 0;
  std::vector<double> trace;  // residual after each sweep
};

/// Relative Frobenius distance between t and the sum of the rank-one terms.
/// When t is zero the absolute norm of the reconstruction is returned.
double residual(const DenseTensor& t, const CPDecomposition& d);

/// max_c ||A_i[:, c]|| over all factors.
double max_factor_column_norm(const std::vector<CMatrix>& factors);
/// max_c prod_i ||A_i[:, c]||, the norm of the largest rank-one term.
double max_term_norm(const std::vector<CMatrix>& factors);

/// Seeded random complex Gaussian factors (unit variance per entry).
std::vector<CMatrix> random_factors(std::span<const std::size_t> shape,
                                    std::size_t rank, std::uint64_t seed);

/// Runs ALS once from the given starting factors.
CPDecomposition als_run(const DenseTensor& t, std::vector<CMatrix> factors,
                        const AlsConfig& cfg);

/// Best of cfg.restarts seeded ALS runs, by (residual, restart index).
CPDecomposition als_decompose(const DenseTensor& t, std::size_t rank,
                              const AlsConfig& cfg);

struct UpperBoundEvidence {
  bool pass = false;
  std::size_t rank = 0;
  double threshold = 0.0;
  CPDecomposition best;

  std::string summary() const;
};

UpperBoundEvidence certify_upper(const DenseTensor& t, std::size_t rank,
                                 double threshold, const AlsConfig& cfg);

/// Exact rank-2 family (1/eps)((e0 + eps e1)^{(x)k} - e0^{(x)k}) -> W_k.
CPDecomposition degeneration_decomposition(std::size_t k, double eps);

struct DegenerationWitness {
  std::size_t k = 0;
  std::vector<std::pair<double, double>> points;  // (eps, residual to W_k)

  /// Least-squares slope of log(residual) against log(eps).
  double loglog_slope() const;
};

DegenerationWitness degeneration_witness(std::size_t k,
                                         std::span<const double> eps_list);

struct DivergenceTrace {
  std::vector<double> residuals;
  std::vector<double> max_column_norms;
  std::vector<double> max_term_norms;
  CPDecomposition final;
};

/// Single ALS run from cfg.seed with rebalancing and early stopping off,
/// recording residual and factor norms after every sweep.
DivergenceTrace divergence_probe(const DenseTensor& t, std::size_t rank,
                                 const AlsConfig& cfg);

/// Text document: shape, rank, seed, residual and the factor matrices with
/// entries written as "(re,im)" to 17 significant digits.
std::string write_decomposition(const CPDecomposition& d);
CPDecomposition read_decomposition(const std::string& text);

}  // namespace rankgap::cpd
