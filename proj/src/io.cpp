#include "kendall/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace kendall::io {

namespace {

std::string canonical_family(std::string name) {
  for (char& c : name) c = static_cast<char>(std::tolower(c));
  if (name == "dirac" || name == "dirac1" || name == "delta1") return "dirac1";
  if (name == "pareto" || name == "pareto_mix" || name == "paretomix") return "pareto_mix";
  if (name == "lom" || name == "lack_of_memory" || name == "lackofmemory") {
    return "lack_of_memory";
  }
  if (name == "stable" || name == "stable_limit" || name == "stablelimit") {
    return "stable_limit";
  }
  if (name == "uniform" || name == "uniform01" || name == "u01") return "uniform01";
  if (name == "gamma") return "gamma";
  if (name == "generic" || name == "generic_cdf" || name == "csv") return "generic";
  throw std::invalid_argument("unknown distribution family: " + name);
}

double require_number(const nlohmann::json& spec, const char* key) {
  if (!spec.contains(key) || !spec[key].is_number()) {
    throw std::invalid_argument(std::string("distribution spec needs numeric \"") + key +
                                "\"");
  }
  return spec[key].get<double>();
}

std::pair<std::vector<double>, std::vector<double>> read_cdf_table(std::istream& in,
                                                                   const std::string& what) {
  std::vector<double> xs, fs;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    for (char& ch : line) {
      if (ch == ',' || ch == ';' || ch == '\t') ch = ' ';
    }
    std::istringstream row(line);
    double x, f;
    if (!(row >> x >> f)) {
      throw std::invalid_argument(what + ": malformed row \"" + line + "\"");
    }
    xs.push_back(x);
    fs.push_back(f);
  }
  if (xs.size() < 2) throw std::invalid_argument(what + ": need at least two rows");
  return {std::move(xs), std::move(fs)};
}

}  // namespace

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

StepDistribution dist_from_json(const nlohmann::json& spec) {
  if (!spec.is_object() || !spec.contains("family")) {
    throw std::invalid_argument("distribution spec must be an object with \"family\"");
  }
  const std::string fam = canonical_family(spec["family"].get<std::string>());
  const KendallIndex alpha(require_number(spec, "alpha"));
  if (fam == "dirac1") return StepDistribution::dirac1(alpha);
  if (fam == "pareto_mix") {
    return StepDistribution::pareto_mix(alpha, require_number(spec, "p"));
  }
  if (fam == "lack_of_memory") return StepDistribution::lack_of_memory(alpha);
  if (fam == "stable_limit") {
    return StepDistribution::stable_limit(alpha, require_number(spec, "m"));
  }
  if (fam == "uniform01") return StepDistribution::uniform01(alpha);
  if (fam == "gamma") {
    return StepDistribution::gamma(alpha, require_number(spec, "a"),
                                   require_number(spec, "b"));
  }
  // generic
  const double quad_tol = spec.contains("quad_tol") ? require_number(spec, "quad_tol")
                                                    : 1e-10;
  if (spec.contains("csv")) {
    return dist_from_cdf_table_csv(alpha, spec["csv"].get<std::string>(), quad_tol);
  }
  if (spec.contains("table")) {
    std::vector<double> xs, fs;
    for (const auto& row : spec["table"]) {
      if (!row.is_array() || row.size() != 2) {
        throw std::invalid_argument("generic table rows must be [x, F(x)] pairs");
      }
      xs.push_back(row[0].get<double>());
      fs.push_back(row[1].get<double>());
    }
    return StepDistribution::from_table(alpha, std::move(xs), std::move(fs), quad_tol);
  }
  throw std::invalid_argument("generic spec needs \"csv\" or \"table\"");
}

StepDistribution dist_from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open distribution spec: " + path);
  nlohmann::json spec;
  in >> spec;
  return dist_from_json(spec);
}

StepDistribution dist_from_cdf_table_csv(KendallIndex alpha, const std::string& path,
                                         double quad_tol) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open cdf table: " + path);
  auto [xs, fs] = read_cdf_table(in, path);
  return StepDistribution::from_table(alpha, std::move(xs), std::move(fs), quad_tol);
}

nlohmann::ordered_json dist_to_json(const StepDistribution& d) {
  nlohmann::ordered_json j;
  std::visit(
      [&](const auto& fam) {
        using T = std::decay_t<decltype(fam)>;
        if constexpr (std::is_same_v<T, family::Dirac1>) {
          j["family"] = "dirac1";
        } else if constexpr (std::is_same_v<T, family::ParetoMix>) {
          j["family"] = "pareto_mix";
          j["p"] = fam.p;
        } else if constexpr (std::is_same_v<T, family::LackOfMemory>) {
          j["family"] = "lack_of_memory";
        } else if constexpr (std::is_same_v<T, family::StableLimit>) {
          j["family"] = "stable_limit";
          j["m"] = fam.m;
        } else if constexpr (std::is_same_v<T, family::Uniform01>) {
          j["family"] = "uniform01";
        } else if constexpr (std::is_same_v<T, family::Gamma>) {
          j["family"] = "gamma";
          j["a"] = fam.a;
          j["b"] = fam.b;
        } else {
          j["family"] = "generic";
          j["quad_tol"] = fam->quad_tol;
        }
      },
      d.spec());
  j["alpha"] = d.alpha();
  return j;
}

void write_ensemble_csv(std::ostream& os, const WalkEnsemble& e) {
  const SimConfig& cfg = e.config();
  nlohmann::ordered_json echo;
  echo["dist"] = dist_to_json(cfg.dist);
  echo["horizon"] = cfg.horizon;
  echo["paths"] = cfg.paths;
  echo["seed"] = cfg.seed;
  echo["streams"] = cfg.streams;
  if (cfg.start) echo["start"] = *cfg.start;
  os << "# " << echo.dump() << "\n";
  if (e.has_paths()) {
    for (std::uint64_t i = 0; i < cfg.paths; ++i) {
      const auto path = e.path(i);
      for (std::size_t j = 0; j < path.size(); ++j) {
        os << (j ? "," : "") << format_double(path[j]);
      }
      os << "\n";
    }
  } else {
    for (double v : e.terminal()) os << format_double(v) << "\n";
  }
}

nlohmann::ordered_json report_to_json(const validation::Report& report) {
  nlohmann::ordered_json j;
  j["suite"] = report.suite;
  j["seed"] = report.seed;
  j["mc_samples"] = report.mc_samples;
  j["overall_pass"] = report.overall_pass;
  j["cases"] = nlohmann::ordered_json::array();
  for (const auto& c : report.cases) {
    nlohmann::ordered_json jc;
    jc["name"] = c.name;
    jc["statistic"] = c.statistic;
    jc["threshold"] = c.threshold;
    jc["pass"] = c.pass;
    jc["samples"] = c.samples;
    jc["seed"] = c.seed;
    j["cases"].push_back(std::move(jc));
  }
  return j;
}

void write_report_text(std::ostream& os, const validation::Report& report) {
  os << "suite: " << report.suite << "  (seed " << report.seed << ", mc_samples "
     << report.mc_samples << ")\n";
  for (const auto& c : report.cases) {
    os << (c.pass ? "  [PASS] " : "  [FAIL] ") << c.name
       << "  statistic=" << format_double(c.statistic)
       << "  threshold=" << format_double(c.threshold);
    if (c.samples > 0) os << "  N=" << c.samples << "  seed=" << c.seed;
    os << "\n";
  }
  os << (report.overall_pass ? "overall: PASS" : "overall: FAIL") << "\n";
}

}  // namespace kendall::io
