#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "kendall/simulate.hpp"

namespace kendall::validation {

// Frozen thresholds for every validation case. These mirror the library's
// published accuracy contract; they are versioned constants, not knobs.
namespace constants {
inline constexpr std::uint64_t kMcSamples = 1'000'000;
inline constexpr std::uint64_t kQuickMcSamples = 100'000;
inline constexpr double kKsThreshold = 0.005;
inline constexpr double kSimJointBandSigma = 3.0;
inline constexpr double kFddJointBandSigma = 4.0;
inline constexpr double kEnumDpTol = 1e-12;
inline constexpr double kMarginalizationTol = 1e-8;
inline constexpr double kChainOracleTol = 1e-5;
inline constexpr double kChapmanKolmogorovTol = 1e-6;
inline constexpr double kMultiplicativityTol = 1e-8;
inline constexpr double kRoundTripTol = 1e-6;
inline constexpr double kStableFixedPointTol = 1e-12;
inline constexpr double kKernelMatchesCdfNTol = 1e-12;
inline constexpr double kNormingResidualTol = 1e-6;
inline constexpr double kGenericHToleranceFactor = 10.0;
inline constexpr double kGenericQuadTol = 1e-10;
inline constexpr double kMomentLimitRelTol = 1e-6;
inline constexpr double kMonotoneScanTol = 1e-10;
inline constexpr double kLimitGridTol = 1e-12;
inline constexpr double kDiagnosticSlack = 1.10;  // nonincreasing up to 10%
}  // namespace constants

struct CaseResult {
  std::string name;
  double statistic = 0.0;
  double threshold = 0.0;
  bool pass = false;
  std::uint64_t samples = 0;  // 0 for purely deterministic cases
  std::uint64_t seed = 0;
};

struct Report {
  std::string suite;
  std::uint64_t seed = 0;
  std::uint64_t mc_samples = 0;
  std::vector<CaseResult> cases;
  bool overall_pass = false;
};

struct Budget {
  std::uint64_t mc_samples = constants::kMcSamples;
  std::uint64_t seed = 0;
  std::uint32_t streams = 8;
  std::uint32_t workers = 1;
};

// Two-sided KS statistic of the ensemble's terminal values against an exact
// cdf. `cdf_left` supplies left limits when the target law carries atoms;
// omit it for continuous laws. Requires at least 100 samples.
double ks_statistic(const WalkEnsemble& e, const std::function<double(double)>& cdf,
                    const std::function<double(double)>& cdf_left = nullptr);

// Registered suites (in run order). "all" is accepted by run_suite and
// executes every suite's cases into one report.
std::vector<std::string> suite_names();

// Expected case names per suite; the registry is checked against this
// manifest before anything runs.
const std::map<std::string, std::vector<std::string>>& suite_manifest();

Report run_suite(const std::string& suite, const Budget& budget);

}  // namespace kendall::validation
