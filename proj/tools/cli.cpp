#include "cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include <CLI11.hpp>
#include <json.hpp>

#include "rankgap/algebra.hpp"
#include "rankgap/bounds.hpp"
#include "rankgap/combinatorics.hpp"
#include "rankgap/cpd.hpp"
#include "rankgap/syzygy.hpp"
#include "rankgap/tensor.hpp"
#include "rankgap/tensor_io.hpp"

namespace rankgap::cli {

namespace {

using nlohmann::ordered_json;

enum class Format { kDefault, kText, kCsv, kStructured };

struct RunConfig {
  Format format = Format::kDefault;
  std::string out_path;
  SizeBudget budget;
  bool color = false;
};

/// Output sink: a file when --out is given, otherwise the command stream.
class Sink {
 public:
  Sink(std::ostream& stream, std::string path)
      : stream_(stream), path_(std::move(path)) {}
  ~Sink() = default;

  std::ostream& os() { return path_.empty() ? stream_ : buffer_; }
  void flush() {
    if (!path_.empty()) io::write_file(path_, buffer_.str());
  }

 private:
  std::ostream& stream_;
  std::string path_;
  std::ostringstream buffer_;
};

std::string status_word(bool ok, bool color) {
  if (!color) return ok ? "PASS" : "FAIL";
  return ok ? "\033[32mPASS\033[0m" : "\033[31mFAIL\033[0m";
}

ordered_json report_json(const bounds::BoundReport& r) {
  ordered_json doc;
  doc["instance"] = r.tag();
  doc["dim"] = to_string(r.dim);
  doc["blaser_lb"] = to_string(r.blaser_lb);
  doc["best_m"] = r.best_m;
  doc["alder_strassen_lb"] = to_string(r.alder_strassen_lb);
  doc["border_rank"] = to_string(r.border_rank);
  doc["border_certified"] = r.border_certified;
  doc["flattening_ranks"] = r.flattening_ranks;
  doc["rank_ub"] = to_string(r.rank_ub);
  doc["best_lb"] = to_string(r.best_lb);
  doc["ratio_lb"] = to_string(r.ratio_lb);
  doc["known_exact_rank"] =
      r.known_exact_rank ? ordered_json(to_string(*r.known_exact_rank))
                         : ordered_json(nullptr);
  return doc;
}

void print_report(std::ostream& os, const bounds::BoundReport& r,
                  Format format) {
  if (format == Format::kStructured) {
    os << report_json(r).dump(2) << '\n';
    return;
  }
  if (format == Format::kCsv) {
    os << "instance,dim,blaser_lb,best_m,alder_strassen_lb,border_rank,"
          "rank_ub,best_lb,ratio_lb,known_exact_rank\n"
       << '"' << r.tag() << '"' << ',' << r.dim << ',' << r.blaser_lb << ','
       << r.best_m << ',' << r.alder_strassen_lb << ',' << r.border_rank
       << ',' << r.rank_ub << ',' << r.best_lb << ',' << to_string(r.ratio_lb)
       << ','
       << (r.known_exact_rank ? to_string(*r.known_exact_rank) : std::string())
       << '\n';
    return;
  }
  os << "instance: " << r.tag() << '\n'
     << "dim: " << r.dim << '\n'
     << "blaser_lb: " << r.blaser_lb << " (m = " << r.best_m << ")\n"
     << "alder_strassen_lb: " << r.alder_strassen_lb << '\n'
     << "border_rank: " << r.border_rank;
  if (r.border_certified) {
    os << " (certified; flattening ranks";
    for (const auto rank : r.flattening_ranks) os << ' ' << rank;
    os << ')';
  }
  os << '\n'
     << "rank_ub: " << r.rank_ub << '\n'
     << "best_lb: " << r.best_lb << '\n'
     << "ratio_lb: " << to_string(r.ratio_lb) << '\n';
  if (r.known_exact_rank) {
    os << "known exact: " << *r.known_exact_rank << '\n';
  }
}

std::vector<double> parse_eps_list(const std::string& text) {
  std::vector<double> eps;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    const double v = std::stod(item, &used);
    if (used != item.size()) {
      throw std::invalid_argument("malformed eps value '" + item + "'");
    }
    eps.push_back(v);
  }
  if (eps.empty()) throw std::invalid_argument("empty eps list");
  return eps;
}

std::string format_double(double x) {
  std::ostringstream os;
  os << std::setprecision(6) << std::scientific << x;
  return os.str();
}

void apply_env(RunConfig& cfg) {
  if (const char* v = std::getenv("RANKGAP_MAX_DIM")) {
    cfg.budget.max_algebra_dim = std::stoul(v);
  }
  if (const char* v = std::getenv("RANKGAP_COLOR")) {
    cfg.color = std::string(v) == "1";
  }
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
  RunConfig cfg;
  try {
    apply_env(cfg);
  } catch (const std::exception&) {
    err << "rankgap: error: RANKGAP_MAX_DIM must be a positive integer\n";
    return kUsageError;
  }

  CLI::App app{"Rank and border-rank bounds for A_{d,n} and W-state powers",
               "rankgap"};
  app.require_subcommand(1);
  app.fallthrough();
  std::string format_name;
  app.add_option("--format", format_name, "text | csv | structured")
      ->check(CLI::IsMember({"text", "csv", "structured"}));
  app.add_option("--max-dim", cfg.budget.max_algebra_dim,
                 "largest algebra dimension for dense structure tensors");
  app.add_option("--max-rank-dim", cfg.budget.max_rank_check_dim,
                 "largest dimension for exact flattening-rank checks");

  // extbinom
  long eb_n = 0, eb_b = 0, eb_d = 0;
  auto* extbinom = app.add_subcommand("extbinom", "count placements of b balls in n containers of capacity d");
  extbinom->add_option("n", eb_n)->required();
  extbinom->add_option("b", eb_b)->required();
  extbinom->add_option("d", eb_d)->required();

  // bound
  auto* bound = app.add_subcommand("bound", "rank bounds for one instance");
  bound->require_subcommand(1);
  unsigned ba_d = 0, ba_n = 0, bw_k = 0, bw_n = 0;
  bool certify = false;
  auto* bound_alg = bound->add_subcommand("algebra", "bounds for A_{d,n}");
  bound_alg->add_option("--d", ba_d)->required()->check(CLI::Range(2u, 1000u));
  bound_alg->add_option("--n", ba_n)->required()->check(CLI::Range(1u, 100000u));
  bound_alg->add_flag("--certify-border", certify,
                      "verify border rank via exact flattening ranks");
  auto* bound_w = bound->add_subcommand("wstate", "bounds for W_k^{(x)n}");
  bound_w->add_option("--k", bw_k)->required()->check(CLI::Range(3u, 100000u));
  bound_w->add_option("--n", bw_n)->required()->check(CLI::Range(1u, 100000u));

  // table
  int table_id = 0;
  auto* table = app.add_subcommand("table", "emit bound table 1 or 2");
  table->add_option("which", table_id)->required()->check(CLI::IsMember({1, 2}));

  // tensor
  auto* tensor = app.add_subcommand("tensor", "build or inspect exact tensors");
  tensor->require_subcommand(1);
  unsigned tw_k = 0, tw_power = 1, ta_d = 0, ta_n = 0;
  bool sparse = false;
  std::string tensor_in;
  auto* tensor_w = tensor->add_subcommand("wstate", "W_k or its Kronecker power");
  tensor_w->add_option("--k", tw_k)->required()->check(CLI::Range(2u, 60u));
  tensor_w->add_option("--power", tw_power)->check(CLI::Range(1u, 64u));
  tensor_w->add_option("--out", cfg.out_path);
  tensor_w->add_flag("--sparse", sparse);
  auto* tensor_a = tensor->add_subcommand("algebra", "structure tensor of A_{d,n}");
  tensor_a->add_option("--d", ta_d)->required()->check(CLI::Range(2u, 1000u));
  tensor_a->add_option("--n", ta_n)->required()->check(CLI::Range(1u, 64u));
  tensor_a->add_option("--out", cfg.out_path);
  tensor_a->add_flag("--sparse", sparse);
  auto* tensor_rank = tensor->add_subcommand("rank-flatten", "flattening ranks and conciseness");
  tensor_rank->add_option("--in", tensor_in)->required();

  // verify
  auto* verify = app.add_subcommand("verify", "run exact or numerical checks");
  verify->require_subcommand(1);
  unsigned vb_n = 0, vd_k = 0;
  std::string eps_text = "1e-1,1e-2,1e-3,1e-4";
  std::string vdec_tensor, vdec_in;
  double vdec_threshold = -1.0;
  auto* verify_syz = verify->add_subcommand("syzygy", "check the det(A) syzygy identity");
  auto* verify_basis = verify->add_subcommand("wstate-basis", "check A_{2,n} ~ W_3^{(x)n}");
  verify_basis->add_option("--n", vb_n)->required()->check(CLI::Range(1u, 6u));
  auto* verify_deg = verify->add_subcommand("degeneration", "rank-2 approximations of W_k");
  verify_deg->add_option("--k", vd_k)->required()->check(CLI::Range(3u, 20u));
  verify_deg->add_option("--eps", eps_text, "comma-separated list");
  auto* verify_dec = verify->add_subcommand("decomposition", "recompute a stored decomposition's residual");
  verify_dec->add_option("--tensor", vdec_tensor)->required();
  verify_dec->add_option("--in", vdec_in)->required();
  verify_dec->add_option("--threshold", vdec_threshold);

  // decompose
  std::string dec_in;
  std::size_t dec_rank = 0;
  cpd::AlsConfig als;
  bool probe = false;
  double dec_threshold = -1.0;
  auto* decompose = app.add_subcommand("decompose", "numerical CP decomposition by ALS");
  decompose->add_option("--in", dec_in)->required();
  decompose->add_option("--rank", dec_rank)
      ->required()
      ->check(CLI::Range(std::size_t{1}, std::size_t{4096}));
  decompose->add_option("--restarts", als.restarts)->check(CLI::Range(1, 100000));
  decompose->add_option("--seed", als.seed);
  decompose->add_option("--max-iters", als.max_iters)->check(CLI::Range(1, 100000000));
  decompose->add_option("--tol", als.tol);
  decompose->add_option("--threshold", dec_threshold,
                        "exit 1 unless the residual drops below this");
  decompose->add_option("--out", cfg.out_path);
  decompose->add_flag("--probe-divergence", probe,
                      "trace residual and factor norms without rebalancing");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "rankgap: error: " << e.what() << '\n';
    return kUsageError;
  }

  if (format_name == "text") cfg.format = Format::kText;
  if (format_name == "csv") cfg.format = Format::kCsv;
  if (format_name == "structured") cfg.format = Format::kStructured;
  const Format format =
      cfg.format == Format::kDefault ? Format::kText : cfg.format;

  try {
    if (*extbinom) {
      const BigInt v = combinatorics::ext_binom(eb_n, eb_b, eb_d);
      if (format == Format::kStructured) {
        ordered_json doc{{"n", eb_n}, {"b", eb_b}, {"d", eb_d},
                         {"value", to_string(v)}};
        out << doc.dump(2) << '\n';
      } else if (format == Format::kCsv) {
        out << "n,b,d,value\n"
            << eb_n << ',' << eb_b << ',' << eb_d << ',' << v << '\n';
      } else {
        out << v << '\n';
      }
      return kOk;
    }

    if (*bound) {
      const auto report =
          *bound_alg ? bounds::algebra_report(ba_d, ba_n, certify, cfg.budget)
                     : bounds::ratio_report(bw_k, bw_n);
      print_report(out, report, format);
      return kOk;
    }

    if (*table) {
      const auto t = table_id == 1 ? bounds::table1() : bounds::table2();
      switch (cfg.format) {
        case Format::kText:
          out << bounds::table_text(t);
          break;
        case Format::kStructured:
          out << bounds::table_structured(t);
          break;
        default:
          out << bounds::table_csv(t);
      }
      return kOk;
    }

    if (*tensor) {
      const auto layout =
          sparse ? io::TensorLayout::kSparse : io::TensorLayout::kDense;
      if (*tensor_w) {
        Sink sink(out, cfg.out_path);
        sink.os() << io::write_tensor(
            kron_power(wstate(tw_k), tw_power, cfg.budget), layout);
        sink.flush();
        return kOk;
      }
      if (*tensor_a) {
        Sink sink(out, cfg.out_path);
        sink.os() << io::write_tensor(
            structure_tensor(MonomialAlgebra(ta_d, ta_n), cfg.budget), layout);
        sink.flush();
        return kOk;
      }
      const DenseTensor t = io::load_tensor(tensor_in, cfg.budget);
      for (const auto dim : t.shape()) {
        if (dim > cfg.budget.max_rank_check_dim) {
          throw BudgetExceeded("mode dimension " + std::to_string(dim) +
                               " exceeds rank-check budget " +
                               std::to_string(cfg.budget.max_rank_check_dim));
        }
      }
      const auto report = is_concise(t);
      if (format == Format::kStructured) {
        ordered_json doc;
        doc["shape"] = t.shape();
        doc["flattening_ranks"] = report.flattening_ranks;
        doc["mode_concise"] = report.mode_concise;
        doc["concise"] = report.concise;
        out << doc.dump(2) << '\n';
      } else {
        for (std::size_t m = 0; m < t.order(); ++m) {
          out << "mode " << m + 1 << ": dim " << t.shape()[m] << ", rank "
              << report.flattening_ranks[m]
              << (report.mode_concise[m] ? " (concise)" : " (not concise)")
              << '\n';
        }
        out << "concise: " << (report.concise ? "yes" : "no") << '\n';
      }
      return kOk;
    }

    if (*verify) {
      if (*verify_syz) {
        const auto derived = syzygy::derive_relations();
        const auto cert = syzygy::verify_syzygy();
        const bool ok = cert.valid() && derived.matches;
        if (format == Format::kStructured) {
          ordered_json doc;
          doc["relations_rederived"] = derived.matches;
          doc["residual_zero"] = cert.valid();
          doc["residual"] =
              cert.residual.to_string(syzygy::variable_names());
          out << doc.dump(2) << '\n';
        } else {
          out << syzygy::certificate_report(cert)
              << "relations re-derived from x1*x2, x1*x3: "
              << (derived.matches ? "match" : "MISMATCH") << '\n'
              << status_word(ok, cfg.color) << '\n';
        }
        return ok ? kOk : kVerificationFailed;
      }
      if (*verify_basis) {
        const auto eq = wstate_basis_equivalence(vb_n, cfg.budget);
        if (format == Format::kStructured) {
          ordered_json doc{{"n", vb_n}, {"equal", eq.equal}};
          out << doc.dump(2) << '\n';
        } else {
          out << "A_{2," << vb_n << "} with swap^(x)" << vb_n
              << " on mode 3 vs W_3^(x)" << vb_n << ": "
              << status_word(eq.equal, cfg.color) << '\n';
        }
        return eq.equal ? kOk : kVerificationFailed;
      }
      if (*verify_deg) {
        const auto eps = parse_eps_list(eps_text);
        const auto w = cpd::degeneration_witness(vd_k, eps);
        const bool have_slope = w.points.size() >= 2;
        const double slope = have_slope ? w.loglog_slope() : 0.0;
        const bool ok = !have_slope || std::abs(slope - 1.0) <= 0.1;
        if (format == Format::kStructured) {
          ordered_json doc;
          doc["k"] = vd_k;
          doc["numerical"] = true;
          ordered_json pts = ordered_json::array();
          for (const auto& [e, res] : w.points) {
            pts.push_back({{"eps", e}, {"residual", res}});
          }
          doc["points"] = std::move(pts);
          if (have_slope) doc["loglog_slope"] = slope;
          out << doc.dump(2) << '\n';
        } else if (format == Format::kCsv) {
          out << "eps,residual\n";
          for (const auto& [e, res] : w.points) {
            out << format_double(e) << ',' << format_double(res) << '\n';
          }
        } else {
          out << "rank-2 witnesses for W_" << vd_k << " (numerical)\n";
          for (const auto& [e, res] : w.points) {
            out << "  eps " << format_double(e) << "  residual "
                << format_double(res) << '\n';
          }
          if (have_slope) {
            out << "log-log slope: " << std::fixed << std::setprecision(4)
                << slope << ' ' << status_word(ok, cfg.color) << '\n';
          }
        }
        return ok ? kOk : kVerificationFailed;
      }
      // decomposition
      const DenseTensor t = io::load_tensor(vdec_tensor, cfg.budget);
      const auto d = cpd::read_decomposition(io::read_file(vdec_in));
      const double res = cpd::residual(t, d);
      const bool ok = vdec_threshold < 0.0 || res < vdec_threshold;
      out << "recomputed relative residual (numerical): " << format_double(res)
          << '\n'
          << "stored residual: " << format_double(d.residual) << '\n';
      if (vdec_threshold >= 0.0) {
        out << "threshold " << format_double(vdec_threshold) << ": "
            << status_word(ok, cfg.color) << '\n';
      }
      return ok ? kOk : kVerificationFailed;
    }

    if (*decompose) {
      const DenseTensor t = io::load_tensor(dec_in, cfg.budget);
      if (probe) {
        const auto trace = cpd::divergence_probe(t, dec_rank, als);
        out << "divergence probe (numerical), rank " << dec_rank << ", seed "
            << als.seed << ", rebalancing off\n"
            << "sweep,residual,max_column_norm,max_term_norm\n";
        const std::size_t n = trace.residuals.size();
        for (std::size_t i = 0; i < n; ++i) {
          if ((i + 1) % 100 == 0 || i + 1 == n || i == 0) {
            out << i + 1 << ',' << format_double(trace.residuals[i]) << ','
                << format_double(trace.max_column_norms[i]) << ','
                << format_double(trace.max_term_norms[i]) << '\n';
          }
        }
        if (!cfg.out_path.empty()) {
          io::write_file(cfg.out_path, cpd::write_decomposition(trace.final));
        }
        return kOk;
      }
      const double threshold = dec_threshold < 0.0 ? 0.0 : dec_threshold;
      const auto ev = cpd::certify_upper(t, dec_rank, threshold, als);
      if (!cfg.out_path.empty()) {
        io::write_file(cfg.out_path, cpd::write_decomposition(ev.best));
      }
      if (dec_threshold >= 0.0) {
        out << ev.summary();
        return ev.pass ? kOk : kVerificationFailed;
      }
      out << "rank " << dec_rank << " best relative residual (numerical) "
          << format_double(ev.best.residual) << " at restart "
          << ev.best.restart_index << " (seed " << ev.best.seed << ", "
          << ev.best.iterations << " sweeps, " << ev.best.failed_restarts
          << " failed restarts)\n";
      return kOk;
    }
  } catch (const BudgetExceeded& e) {
    err << "rankgap: budget exceeded: " << e.what() << '\n';
    return kBudgetError;
  } catch (const VerificationFailure& e) {
    err << "rankgap: verification failed: " << e.what() << '\n';
    return kVerificationFailed;
  } catch (const std::exception& e) {
    err << "rankgap: error: " << e.what() << '\n';
    return kUsageError;
  }
  return kUsageError;
}

}  // namespace rankgap::cli
