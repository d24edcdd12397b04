#include "rankgap/cpd.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <random>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace rankgap::cpd {

namespace {

struct Unfoldings {
  std::vector<std::size_t> shape;
  std::vector<CMatrix> modes;  // modes[m] is the mode-m flattening
  double norm = 0.0;
};

Unfoldings unfold(const DenseTensor& t) {
  Unfoldings u{t.shape(), {}, 0.0};
  double sq = 0.0;
  for (const auto& q : t.entries()) {
    const double v = q.get_d();
    sq += v * v;
  }
  u.norm = std::sqrt(sq);
  for (std::size_t m = 0; m < t.order(); ++m) {
    const ExactMatrix flat = flattening(t, m);
    CMatrix x(flat.rows(), flat.cols());
    for (std::size_t r = 0; r < flat.rows(); ++r) {
      for (std::size_t c = 0; c < flat.cols(); ++c) {
        x(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) =
            flat(r, c).get_d();
      }
    }
    u.modes.push_back(std::move(x));
  }
  return u;
}

// Khatri-Rao product of all factors except `skip`, in ascending mode order
// with the last mode fastest, matching the flattening column order.
CMatrix khatri_rao_except(const std::vector<CMatrix>& factors,
                          std::size_t skip) {
  const Eigen::Index rank = factors.front().cols();
  CMatrix kr = CMatrix::Ones(1, rank);
  for (std::size_t j = 0; j < factors.size(); ++j) {
    if (j == skip) continue;
    const CMatrix& a = factors[j];
    CMatrix next(kr.rows() * a.rows(), rank);
    for (Eigen::Index row = 0; row < kr.rows(); ++row) {
      for (Eigen::Index i = 0; i < a.rows(); ++i) {
        next.row(row * a.rows() + i) = kr.row(row).cwiseProduct(a.row(i));
      }
    }
    kr = std::move(next);
  }
  return kr;
}

double relative_residual(const Unfoldings& u,
                         const std::vector<CMatrix>& factors) {
  const CMatrix approx =
      factors.front() * khatri_rao_except(factors, 0).transpose();
  const double diff = (u.modes.front() - approx).norm();
  return u.norm > 0.0 ? diff / u.norm : diff;
}

void check_factors(std::span<const std::size_t> shape,
                   const std::vector<CMatrix>& factors) {
  if (factors.size() != shape.size() || factors.empty()) {
    throw std::invalid_argument("factor count does not match tensor order");
  }
  for (std::size_t i = 0; i < shape.size(); ++i) {
    if (factors[i].rows() != static_cast<Eigen::Index>(shape[i]) ||
        factors[i].cols() != factors.front().cols()) {
      throw std::invalid_argument("factor matrix " + std::to_string(i) +
                                  " has inconsistent shape");
    }
  }
}

void rebalance(std::vector<CMatrix>& factors) {
  const double k = static_cast<double>(factors.size());
  for (Eigen::Index c = 0; c < factors.front().cols(); ++c) {
    std::vector<double> norms;
    double log_mean = 0.0;
    for (const auto& a : factors) {
      norms.push_back(a.col(c).norm());
      if (norms.back() == 0.0) break;
      log_mean += std::log(norms.back()) / k;
    }
    if (norms.size() != factors.size() || norms.back() == 0.0) continue;
    const double target = std::exp(log_mean);
    for (std::size_t j = 0; j < factors.size(); ++j) {
      factors[j].col(c) *= target / norms[j];
    }
  }
}

}  // namespace

double max_factor_column_norm(const std::vector<CMatrix>& factors) {
  double best = 0.0;
  for (const auto& a : factors) {
    for (Eigen::Index c = 0; c < a.cols(); ++c) {
      best = std::max(best, a.col(c).norm());
    }
  }
  return best;
}

double max_term_norm(const std::vector<CMatrix>& factors) {
  double best = 0.0;
  if (factors.empty()) return best;
  for (Eigen::Index c = 0; c < factors.front().cols(); ++c) {
    double term = 1.0;
    for (const auto& a : factors) term *= a.col(c).norm();
    best = std::max(best, term);
  }
  return best;
}

double residual(const DenseTensor& t, const CPDecomposition& d) {
  if (d.shape != t.shape()) {
    throw std::invalid_argument("decomposition shape does not match tensor");
  }
  check_factors(t.shape(), d.factors);
  return relative_residual(unfold(t), d.factors);
}

std::vector<CMatrix> random_factors(std::span<const std::size_t> shape,
                                    std::size_t rank, std::uint64_t seed) {
  if (rank == 0) throw std::invalid_argument("CP rank must be positive");
  std::mt19937_64 gen(seed);
  std::normal_distribution<double> normal(0.0, std::sqrt(0.5));
  std::vector<CMatrix> factors;
  for (const std::size_t dim : shape) {
    CMatrix a(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(rank));
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
      for (Eigen::Index c = 0; c < a.cols(); ++c) {
        const double re = normal(gen);
        const double im = normal(gen);
        a(i, c) = Complex(re, im);
      }
    }
    factors.push_back(std::move(a));
  }
  return factors;
}

namespace {

struct RunOptions {
  bool early_stop = true;
  std::vector<double>* column_norms = nullptr;
  std::vector<double>* term_norms = nullptr;
};

CPDecomposition run_als(const Unfoldings& u, std::vector<CMatrix> factors,
                        const AlsConfig& cfg, const RunOptions& opts) {
  check_factors(u.shape, factors);
  CPDecomposition out;
  out.shape = u.shape;
  out.rank = static_cast<std::size_t>(factors.front().cols());

  double current = relative_residual(u, factors);
  std::vector<double> history{current};
  int sweep = 0;
  bool finite = std::isfinite(current);
  for (; finite && sweep < cfg.max_iters; ++sweep) {
    for (std::size_t m = 0; m < factors.size(); ++m) {
      const CMatrix kr = khatri_rao_except(factors, m);
      Eigen::CompleteOrthogonalDecomposition<CMatrix> cod;
      cod.setThreshold(cfg.pivot_threshold);
      cod.compute(kr);
      factors[m] = cod.solve(u.modes[m].transpose()).transpose();
      if (!factors[m].allFinite()) {
        finite = false;
        break;
      }
    }
    if (!finite) break;
    if (cfg.rebalance) rebalance(factors);
    current = relative_residual(u, factors);
    if (!std::isfinite(current)) {
      finite = false;
      break;
    }
    history.push_back(current);
    if (opts.column_norms) {
      opts.column_norms->push_back(max_factor_column_norm(factors));
    }
    if (opts.term_norms) opts.term_norms->push_back(max_term_norm(factors));
    const auto n = static_cast<int>(history.size()) - 1;
    if (opts.early_stop && n >= cfg.stall_window &&
        history[static_cast<std::size_t>(n - cfg.stall_window)] - current <
            cfg.tol) {
      ++sweep;
      break;
    }
  }

  out.factors = std::move(factors);
  out.iterations = sweep;
  if (!finite) {
    out.residual = std::numeric_limits<double>::infinity();
    out.failed_restarts = 1;
    return out;
  }
  out.residual = current;
  out.max_column_norm = max_factor_column_norm(out.factors);
  if (cfg.record_trace) {
    out.trace.assign(history.begin() + 1, history.end());
  }
  return out;
}

}  // namespace

CPDecomposition als_run(const DenseTensor& t, std::vector<CMatrix> factors,
                        const AlsConfig& cfg) {
  return run_als(unfold(t), std::move(factors), cfg, {});
}

CPDecomposition als_decompose(const DenseTensor& t, std::size_t rank,
                              const AlsConfig& cfg) {
  if (rank == 0) throw std::invalid_argument("CP rank must be positive");
  if (cfg.restarts < 1) throw std::invalid_argument("need at least 1 restart");
  const Unfoldings u = unfold(t);
  CPDecomposition best;
  best.residual = std::numeric_limits<double>::infinity();
  int failures = 0;
  for (int i = 0; i < cfg.restarts; ++i) {
    const std::uint64_t seed = cfg.seed + static_cast<std::uint64_t>(i);
    CPDecomposition run =
        run_als(u, random_factors(u.shape, rank, seed), cfg, {});
    run.seed = seed;
    run.restart_index = i;
    if (run.failed_restarts != 0) {
      ++failures;
      continue;
    }
    if (best.factors.empty() || run.residual < best.residual) {
      best = std::move(run);
    }
    if (best.residual == 0.0) break;
  }
  if (best.factors.empty()) {
    throw std::runtime_error("every ALS restart produced non-finite values");
  }
  best.failed_restarts = failures;
  return best;
}

std::string UpperBoundEvidence::summary() const {
  std::ostringstream out;
  out << (pass ? "PASS" : "FAIL") << ": rank " << rank
      << " best relative residual " << best.residual << " (threshold "
      << threshold << ", restart " << best.restart_index << ", seed "
      << best.seed << ", " << best.iterations << " sweeps)\n"
      << "note: numerical evidence for rank <= " << rank
      << ", not an exact certificate\n";
  return out.str();
}

UpperBoundEvidence certify_upper(const DenseTensor& t, std::size_t rank,
                                 double threshold, const AlsConfig& cfg) {
  UpperBoundEvidence ev;
  ev.rank = rank;
  ev.threshold = threshold;
  ev.best = als_decompose(t, rank, cfg);
  ev.pass = ev.best.residual < threshold;
  return ev;
}

CPDecomposition degeneration_decomposition(std::size_t k, double eps) {
  if (k < 2) throw std::invalid_argument("degeneration needs k >= 2");
  if (!(eps > 0.0) || !std::isfinite(eps)) {
    throw std::invalid_argument("degeneration parameter must be positive");
  }
  CPDecomposition d;
  d.shape.assign(k, 2);
  d.rank = 2;
  for (std::size_t i = 0; i < k; ++i) {
    CMatrix a(2, 2);
    // column 0: e0 + eps e1, column 1: e0
    a << 1.0, 1.0, eps, 0.0;
    d.factors.push_back(std::move(a));
  }
  d.factors.front().col(0) *= 1.0 / eps;
  d.factors.front().col(1) *= -1.0 / eps;
  d.residual = residual(wstate(k), d);
  d.max_column_norm = max_factor_column_norm(d.factors);
  return d;
}

double DegenerationWitness::loglog_slope() const {
  if (points.size() < 2) {
    throw std::invalid_argument("slope needs at least two points");
  }
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (const auto& [eps, res] : points) {
    const double x = std::log(eps);
    const double y = std::log(res);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double n = static_cast<double>(points.size());
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

DegenerationWitness degeneration_witness(std::size_t k,
                                         std::span<const double> eps_list) {
  DegenerationWitness w;
  w.k = k;
  for (const double eps : eps_list) {
    w.points.emplace_back(eps, degeneration_decomposition(k, eps).residual);
  }
  return w;
}

DivergenceTrace divergence_probe(const DenseTensor& t, std::size_t rank,
                                 const AlsConfig& cfg) {
  AlsConfig probe = cfg;
  probe.rebalance = false;
  probe.record_trace = true;
  const Unfoldings u = unfold(t);
  DivergenceTrace trace;
  RunOptions opts{false, &trace.max_column_norms, &trace.max_term_norms};
  trace.final = run_als(u, random_factors(u.shape, rank, cfg.seed), probe,
                        opts);
  trace.final.seed = cfg.seed;
  trace.residuals = trace.final.trace;
  return trace;
}

namespace {

std::string format_complex(const Complex& z) {
  char buf[96];
  std::snprintf(buf, sizeof(buf), "(%.17g,%.17g)", z.real(), z.imag());
  return buf;
}

Complex parse_complex(const std::string& text) {
  double re = 0, im = 0;
  char tail = 0;
  if (std::sscanf(text.c_str(), " (%lf ,%lf %c", &re, &im, &tail) != 3 ||
      tail != ')') {
    throw std::invalid_argument("malformed complex entry '" + text + "'");
  }
  return {re, im};
}

std::string format_real(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

}  // namespace

std::string write_decomposition(const CPDecomposition& d) {
  nlohmann::ordered_json doc;
  doc["shape"] = d.shape;
  doc["rank"] = d.rank;
  doc["seed"] = d.seed;
  doc["residual"] = format_real(d.residual);
  doc["iterations"] = d.iterations;
  nlohmann::ordered_json factors = nlohmann::ordered_json::array();
  for (const auto& a : d.factors) {
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
      nlohmann::ordered_json row = nlohmann::ordered_json::array();
      for (Eigen::Index c = 0; c < a.cols(); ++c) {
        row.push_back(format_complex(a(i, c)));
      }
      rows.push_back(std::move(row));
    }
    factors.push_back(std::move(rows));
  }
  doc["factors"] = std::move(factors);
  return doc.dump(1) + "\n";
}

CPDecomposition read_decomposition(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
    CPDecomposition d;
    d.shape = doc.at("shape").get<std::vector<std::size_t>>();
    d.rank = doc.at("rank").get<std::size_t>();
    d.seed = doc.value("seed", std::uint64_t{0});
    d.iterations = doc.value("iterations", 0);
    d.residual = std::stod(doc.at("residual").get<std::string>());
    for (const auto& rows : doc.at("factors")) {
      CMatrix a(static_cast<Eigen::Index>(rows.size()),
                static_cast<Eigen::Index>(d.rank));
      Eigen::Index i = 0;
      for (const auto& row : rows) {
        if (row.size() != d.rank) {
          throw std::invalid_argument("factor row length differs from rank");
        }
        Eigen::Index c = 0;
        for (const auto& z : row) a(i, c++) = parse_complex(z.get<std::string>());
        ++i;
      }
      d.factors.push_back(std::move(a));
    }
    check_factors(d.shape, d.factors);
    d.max_column_norm = max_factor_column_norm(d.factors);
    return d;
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("malformed decomposition: ") +
                                e.what());
  }
}

}  // namespace rankgap::cpd
