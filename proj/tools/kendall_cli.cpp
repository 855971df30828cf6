// Command-line surface for the Kendall random-walk library: exact cdfs,
// finite-dimensional distributions, transition kernels, tail asymptotics,
// path sampling, and the self-validation suites.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "kendall/asymptotics.hpp"
#include "kendall/errors.hpp"
#include "kendall/fdd.hpp"
#include "kendall/io.hpp"
#include "kendall/kernel.hpp"
#include "kendall/simulate.hpp"
#include "kendall/validation.hpp"
#include "kendall/williamson.hpp"

namespace {

using kendall::StepDistribution;

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;  // domain / numeric / validation failure
constexpr int kExitUsage = 2;    // malformed flags or inputs

struct DistFlags {
  std::string family;
  std::string dist_file;
  std::string csv;
  double alpha = 1.0;
  double p = -1.0, m = -1.0, a = -1.0, b = -1.0;
  double quad_tol = 1e-10;

  void attach(CLI::App* cmd) {
    cmd->add_option("--dist", family,
                    "family: dirac1|pareto_mix|lack_of_memory|stable_limit|uniform01|"
                    "gamma|generic");
    cmd->add_option("--dist-file", dist_file, "JSON distribution spec file");
    cmd->add_option("--alpha", alpha, "convolution parameter alpha > 0");
    cmd->add_option("--p", p, "pareto_mix atom weight, p in (0,1]");
    cmd->add_option("--m", m, "stable_limit alpha-moment, m > 0");
    cmd->add_option("--a", a, "gamma shape");
    cmd->add_option("--b", b, "gamma rate");
    cmd->add_option("--cdf-csv", csv, "two-column (x, F) table for the generic family");
    cmd->add_option("--quad-tol", quad_tol, "generic-family quadrature tolerance");
  }

  StepDistribution build() const {
    if (!dist_file.empty()) return kendall::io::dist_from_file(dist_file);
    if (family.empty()) {
      throw std::invalid_argument("specify --dist <family> or --dist-file <path>");
    }
    nlohmann::json spec;
    spec["family"] = family;
    spec["alpha"] = alpha;
    if (p >= 0.0) spec["p"] = p;
    if (m >= 0.0) spec["m"] = m;
    if (a >= 0.0) spec["a"] = a;
    if (b >= 0.0) spec["b"] = b;
    if (!csv.empty()) spec["csv"] = csv;
    spec["quad_tol"] = quad_tol;
    return kendall::io::dist_from_json(spec);
  }
};

std::vector<double> parse_doubles(const std::string& csl) {
  std::vector<double> out;
  std::stringstream ss(csl);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    out.push_back(std::stod(item));
  }
  if (out.empty()) throw std::invalid_argument("empty list: " + csl);
  return out;
}

std::vector<std::uint64_t> parse_epochs(const std::string& csl) {
  std::vector<std::uint64_t> out;
  for (double v : parse_doubles(csl)) {
    if (v < 1.0 || v != std::floor(v)) {
      throw std::invalid_argument("epochs must be positive integers");
    }
    out.push_back(static_cast<std::uint64_t>(v));
  }
  return out;
}

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
  } else {
    std::ofstream of(out_path, std::ios::binary);
    if (!of) throw std::invalid_argument("cannot open output file: " + out_path);
    of << text;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Kendall random walks: exact distribution calculus, simulation, "
               "and validation"};
  app.require_subcommand(1);

  std::string out_path;
  bool as_json = false;
  bool as_csv = false;
  app.add_option("--out", out_path, "write the artifact to this path instead of stdout");
  app.add_flag("--json", as_json, "machine-readable JSON output");
  app.add_flag("--csv", as_csv, "CSV output where applicable");

  // ---- sample
  auto* sample = app.add_subcommand("sample", "simulate walk paths, emit CSV");
  DistFlags sample_dist;
  sample_dist.attach(sample);
  std::uint64_t s_horizon = 1, s_paths = 1, s_seed = 0;
  std::uint32_t s_streams = 1;
  bool s_full = false;
  double s_start = -1.0;
  sample->add_option("--n,--horizon", s_horizon, "epoch of the terminal value");
  sample->add_option("--paths", s_paths, "number of trajectories");
  sample->add_option("--seed", s_seed, "RNG seed (echoed in the header)");
  sample->add_option("--streams", s_streams, "independent substreams");
  sample->add_flag("--full-paths", s_full, "emit whole trajectories, one row per path");
  sample->add_option("--start", s_start, "start the walk at X_0 = start (kernel law)");

  // ---- cdf
  auto* cdf_cmd = app.add_subcommand("cdf", "n-step cdf F_n(t)");
  DistFlags cdf_dist;
  cdf_dist.attach(cdf_cmd);
  std::uint64_t c_n = 1;
  double c_t = 1.0;
  cdf_cmd->add_option("--n", c_n, "number of steps")->required();
  cdf_cmd->add_option("--t", c_t, "evaluation point")->required();

  // ---- tail
  auto* tail_cmd = app.add_subcommand("tail", "n-step tail 1 - F_n(t)");
  DistFlags tail_dist;
  tail_dist.attach(tail_cmd);
  std::uint64_t t_n = 1;
  double t_t = 1.0;
  bool t_expansion = false;
  tail_cmd->add_option("--n", t_n, "number of steps")->required();
  tail_cmd->add_option("--t", t_t, "evaluation point")->required();
  tail_cmd->add_flag("--expansion", t_expansion,
                     "emit the two-term tail approximation instead");

  // ---- fdd
  auto* fdd_cmd = app.add_subcommand("fdd", "joint cdf at several epochs");
  DistFlags fdd_dist;
  fdd_dist.attach(fdd_cmd);
  std::string f_epochs, f_thresholds;
  bool f_dp = false;
  fdd_cmd->add_option("--epochs", f_epochs, "comma-separated epochs, nondecreasing")
      ->required();
  fdd_cmd->add_option("--thresholds", f_thresholds,
                      "comma-separated thresholds, nondecreasing")
      ->required();
  fdd_cmd->add_flag("--dp", f_dp, "force the O(k^2) dynamic program");

  // ---- kernel
  auto* kernel_cmd = app.add_subcommand("kernel", "transition kernel P_n(x,(0,t])");
  DistFlags kernel_dist;
  kernel_dist.attach(kernel_cmd);
  double k_x = 0.0, k_t = 1.0;
  std::uint64_t k_n = 1;
  bool k_moment = false;
  kernel_cmd->add_option("--x", k_x, "start point")->required();
  kernel_cmd->add_option("--n", k_n, "number of steps")->required();
  kernel_cmd->add_option("--t", k_t, "threshold")->required();
  kernel_cmd->add_flag("--moment", k_moment,
                       "emit the truncated alpha-moment of the kernel instead");

  // ---- limit
  auto* limit_cmd = app.add_subcommand("limit", "stable limit law cdf/pdf");
  std::string l_kind = "finite_moment";
  double l_alpha = 1.0, l_m = 1.0, l_theta = 0.0, l_x = 1.0;
  bool l_pdf = false;
  limit_cmd->add_option("--kind", l_kind, "finite_moment | regvar");
  limit_cmd->add_option("--alpha", l_alpha, "convolution parameter");
  limit_cmd->add_option("--m", l_m, "alpha-moment (finite_moment kind)");
  limit_cmd->add_option("--theta", l_theta, "tail index (regvar kind)");
  limit_cmd->add_option("--x", l_x, "evaluation point")->required();
  limit_cmd->add_flag("--pdf", l_pdf, "emit the density instead of the cdf");

  // ---- norming
  auto* norming_cmd = app.add_subcommand("norming", "norming sequence a_n");
  DistFlags norming_dist;
  norming_dist.attach(norming_cmd);
  std::string n_method = "auto";
  std::string n_list;
  norming_cmd->add_option("--n", n_list, "comma-separated n values")->required();
  norming_cmd->add_option("--method", n_method, "auto | closed | numeric");

  // ---- validate
  auto* validate_cmd = app.add_subcommand("validate", "run oracle cross-check suites");
  std::string v_suite = "all";
  std::uint64_t v_samples = kendall::validation::constants::kMcSamples;
  std::uint64_t v_seed = 0;
  std::uint32_t v_streams = 8;
  std::uint32_t v_workers = 1;
  bool v_quick = false;
  validate_cmd->add_option("--suite", v_suite,
                           "transforms|kernels|fdd|simulator|asymptotics|all");
  validate_cmd->add_option("--mc-samples", v_samples, "Monte Carlo sample budget");
  validate_cmd->add_option("--seed", v_seed, "base seed for every stochastic case");
  validate_cmd->add_option("--streams", v_streams, "simulator substreams");
  validate_cmd->add_option("--workers", v_workers, "worker threads for ensembles");
  validate_cmd->add_flag("--quick", v_quick, "reduced sample budget (1e5)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*sample) {
      kendall::SimConfig cfg{sample_dist.build(), s_horizon, s_paths,
                             s_seed,              s_streams, s_full,
                             std::nullopt};
      if (s_start >= 0.0) cfg.start = s_start;
      const auto ensemble = kendall::sample_ensemble(cfg);
      std::ostringstream os;
      kendall::io::write_ensemble_csv(os, ensemble);
      emit(os.str(), out_path);
    } else if (*cdf_cmd) {
      const auto d = cdf_dist.build();
      const double v = kendall::cdf_n(d, c_n, c_t);
      if (as_json) {
        nlohmann::ordered_json j{{"value", v}, {"n", c_n}, {"t", c_t}};
        emit(j.dump() + "\n", out_path);
      } else {
        emit(kendall::io::format_double(v) + "\n", out_path);
      }
    } else if (*tail_cmd) {
      const auto d = tail_dist.build();
      const double v = t_expansion ? kendall::tail_expansion(d, t_n, t_t)
                                   : kendall::tail_n(d, t_n, t_t);
      if (as_json) {
        nlohmann::ordered_json j{
            {"value", v}, {"n", t_n}, {"t", t_t}, {"expansion", t_expansion}};
        emit(j.dump() + "\n", out_path);
      } else {
        emit(kendall::io::format_double(v) + "\n", out_path);
      }
    } else if (*fdd_cmd) {
      const auto d = fdd_dist.build();
      const kendall::FddQuery q(parse_epochs(f_epochs), parse_doubles(f_thresholds));
      const bool use_dp = f_dp;
      const double v = use_dp ? kendall::fdd_cdf_dp(d, q) : kendall::fdd_cdf_enum(d, q);
      const std::uint64_t terms = use_dp
                                      ? q.size() * (q.size() + 1) / 2
                                      : (std::uint64_t(1) << q.size());
      if (as_json) {
        nlohmann::ordered_json j{
            {"value", v}, {"k", q.size()}, {"terms_evaluated", terms}};
        emit(j.dump() + "\n", out_path);
      } else {
        emit(kendall::io::format_double(v) + "\n", out_path);
      }
    } else if (*kernel_cmd) {
      const auto d = kernel_dist.build();
      const kendall::KernelQuery q(k_x, k_n, k_t);
      const double v =
          k_moment ? kendall::kernel_trunc_moment(d, q) : kendall::kernel_cdf(d, q);
      emit(kendall::io::format_double(v) + "\n", out_path);
    } else if (*limit_cmd) {
      const kendall::KendallIndex alpha(l_alpha);
      const auto law = (l_kind == "regvar" || l_kind == "reg_var")
                           ? kendall::LimitLaw::reg_var(alpha, l_theta)
                           : kendall::LimitLaw::finite_moment(alpha, l_m);
      const double v = l_pdf ? kendall::limit_pdf(law, l_x) : kendall::limit_cdf(law, l_x);
      emit(kendall::io::format_double(v) + "\n", out_path);
    } else if (*norming_cmd) {
      const auto d = norming_dist.build();
      kendall::NormingMethod method = kendall::NormingMethod::Auto;
      if (n_method == "closed") method = kendall::NormingMethod::ClosedForm;
      else if (n_method == "numeric") method = kendall::NormingMethod::NumericInverse;
      else if (n_method != "auto") throw std::invalid_argument("unknown --method");
      std::ostringstream os;
      os << "n,a_n\n";
      for (double nv : parse_doubles(n_list)) {
        const auto n = static_cast<std::uint64_t>(nv);
        os << n << "," << kendall::io::format_double(kendall::norming_sequence(d, n, method))
           << "\n";
      }
      emit(os.str(), out_path);
    } else if (*validate_cmd) {
      kendall::validation::Budget budget;
      budget.mc_samples =
          v_quick ? kendall::validation::constants::kQuickMcSamples : v_samples;
      budget.seed = v_seed;
      budget.streams = v_streams;
      budget.workers = v_workers;
      const auto report = kendall::validation::run_suite(v_suite, budget);
      std::ostringstream os;
      if (as_json) {
        os << kendall::io::report_to_json(report).dump(2) << "\n";
      } else {
        kendall::io::write_report_text(os, report);
      }
      emit(os.str(), out_path);
      return report.overall_pass ? kExitOk : kExitFailure;
    }
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::length_error& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::domain_error& e) {
    std::cerr << "domain error: " << e.what() << "\n";
    return kExitFailure;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitFailure;
  }
  return kExitOk;
}
