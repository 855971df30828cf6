#include "kendall/fdd.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "kendall/williamson.hpp"

namespace kendall {

namespace {

// Per-epoch factors shared by the enumeration, the DP, and the chain form.
struct EpochFactors {
  std::vector<double> x;       // thresholds
  std::vector<double> g_pow0;  // G(x_j)^{dn_j}
  std::vector<double> g_pow1;  // G(x_j)^{dn_j - 1}, zeroed when dn_j = 0
  std::vector<double> h_term;  // dn_j H(x_j) / x_j^alpha
  double alpha = 0.0;
};

EpochFactors make_factors(const StepDistribution& d, const FddQuery& q) {
  const std::size_t k = q.size();
  EpochFactors f;
  f.alpha = d.alpha();
  f.x.assign(q.thresholds().begin(), q.thresholds().end());
  f.g_pow0.resize(k);
  f.g_pow1.resize(k);
  f.h_term.resize(k);
  std::uint64_t prev = 0;
  for (std::size_t j = 0; j < k; ++j) {
    const double dn = static_cast<double>(q.epochs()[j] - prev);
    prev = q.epochs()[j];
    const double g = d.transform(f.x[j]);
    const double h = d.trunc_moment(f.x[j]);
    f.g_pow0[j] = std::pow(g, dn);
    // An epsilon_j = 1 at a coincident epoch contributes zero through the
    // (dn)^{epsilon_j} factor; zeroing g_pow1 here avoids 0 * inf.
    f.g_pow1[j] = dn >= 1.0 ? std::pow(g, dn - 1.0) : 0.0;
    f.h_term[j] = dn * h * std::pow(f.x[j], -f.alpha);
  }
  return f;
}

// Weight of one epsilon vector (bits of `mask`), including the Psi chain
// between consecutive ones. `y0` and `x_next` extend the chain for the
// weighted integral form; pass y0 = 0, x_next = +inf for the plain fdd.
double term_weight(const EpochFactors& f, std::uint64_t mask, double y0, double x_next) {
  double w = 1.0;
  int last_one = -1;
  for (std::size_t j = 0; j < f.x.size(); ++j) {
    if (mask & (std::uint64_t(1) << j)) {
      if (f.h_term[j] == 0.0) return 0.0;
      w *= f.h_term[j] * f.g_pow1[j];
      if (last_one < 0) {
        if (y0 > 0.0) w *= psi(f.alpha, y0, f.x[j]);
      } else {
        w *= psi(f.alpha, f.x[last_one], f.x[j]);
      }
      last_one = static_cast<int>(j);
    } else {
      w *= f.g_pow0[j];
    }
    if (w == 0.0) return 0.0;
  }
  if (std::isfinite(x_next)) {
    const double tail_x = last_one >= 0 ? f.x[last_one] : y0;
    if (tail_x > 0.0) w *= psi(f.alpha, tail_x, x_next);
  }
  return w;
}

// Pairwise sum of term weights over masks [lo, hi); the reduction tree is a
// function of k alone.
double pairwise_sum(const EpochFactors& f, std::uint64_t lo, std::uint64_t hi, double y0,
                    double x_next) {
  if (hi - lo <= 32) {
    double s = 0.0;
    for (std::uint64_t m = lo; m < hi; ++m) s += term_weight(f, m, y0, x_next);
    return s;
  }
  const std::uint64_t mid = lo + (hi - lo) / 2;
  return pairwise_sum(f, lo, mid, y0, x_next) + pairwise_sum(f, mid, hi, y0, x_next);
}

}  // namespace

FddQuery::FddQuery(std::vector<std::uint64_t> epochs, std::vector<double> thresholds)
    : epochs_(std::move(epochs)), thresholds_(std::move(thresholds)) {
  if (epochs_.empty() || epochs_.size() != thresholds_.size()) {
    throw std::invalid_argument("FddQuery: need k >= 1 epochs with matching thresholds");
  }
  for (std::size_t j = 0; j < epochs_.size(); ++j) {
    if (epochs_[j] < 1) throw std::invalid_argument("FddQuery: epochs must be >= 1");
    if (!(thresholds_[j] > 0.0)) {
      throw std::invalid_argument("FddQuery: thresholds must be positive");
    }
    if (j > 0 && epochs_[j] < epochs_[j - 1]) {
      throw std::invalid_argument("FddQuery: epochs must be nondecreasing");
    }
    if (j > 0 && thresholds_[j] < thresholds_[j - 1]) {
      throw std::invalid_argument("FddQuery: thresholds must be nondecreasing");
    }
  }
}

double fdd_cdf_enum(const StepDistribution& d, const FddQuery& q) {
  if (q.size() > kFddEnumMaxDims) {
    throw std::length_error("fdd_cdf_enum: k exceeds the 2^k enumeration guard; "
                            "use fdd_cdf_dp");
  }
  // A single coordinate is the one-dimensional law; delegating keeps the
  // k = 1 collapse an identity rather than a reassociation of the same sum.
  if (q.size() == 1) return cdf_n(d, q.epochs()[0], q.thresholds()[0]);
  const EpochFactors f = make_factors(d, q);
  const std::uint64_t total = std::uint64_t(1) << q.size();
  return pairwise_sum(f, 0, total, 0.0, std::numeric_limits<double>::infinity());
}

double fdd_cdf_dp(const StepDistribution& d, const FddQuery& q) {
  const std::size_t k = q.size();
  const EpochFactors f = make_factors(d, q);
  // state[i] = total weight of prefixes whose last epsilon = 1 sits at
  // position i (state[0]: none yet).
  std::vector<double> state(k + 1, 0.0);
  state[0] = 1.0;
  for (std::size_t j = 0; j < k; ++j) {
    double new_one = 0.0;
    if (f.h_term[j] > 0.0) {
      const double factor = f.h_term[j] * f.g_pow1[j];
      new_one += state[0] * factor;
      for (std::size_t i = 1; i <= j; ++i) {
        if (state[i] != 0.0) {
          new_one += state[i] * psi(f.alpha, f.x[i - 1], f.x[j]) * factor;
        }
      }
    }
    for (std::size_t i = 0; i <= j; ++i) state[i] *= f.g_pow0[j];
    state[j + 1] = new_one;
  }
  double total = 0.0;
  for (double s : state) total += s;
  return total;
}

double weighted_chain(const StepDistribution& d, const FddQuery& q, double y0,
                      double x_next) {
  if (y0 < 0.0 || y0 > q.thresholds().front()) {
    throw std::domain_error("weighted_chain: need 0 <= y0 <= x_1");
  }
  if (!(x_next >= q.thresholds().back())) {
    throw std::domain_error("weighted_chain: need x_next >= x_k");
  }
  const EpochFactors f = make_factors(d, q);
  const std::uint64_t total = std::uint64_t(1) << q.size();
  if (q.size() > kFddEnumMaxDims) {
    throw std::length_error("weighted_chain: k exceeds the enumeration guard");
  }
  return pairwise_sum(f, 0, total, y0, x_next);
}

double fdd_zn(const StepDistribution& d, const ScaledFddQuery& sq) {
  if (sq.times.size() != sq.levels.size() || sq.times.empty()) {
    throw std::invalid_argument("fdd_zn: times and levels must match and be nonempty");
  }
  if (sq.scale < 1 || !(sq.norming > 0.0)) {
    throw std::invalid_argument("fdd_zn: need scale >= 1 and positive norming");
  }
  std::vector<std::uint64_t> epochs;
  std::vector<double> thresholds;
  for (std::size_t j = 0; j < sq.times.size(); ++j) {
    if (sq.times[j] < 0.0 || (j > 0 && sq.times[j] < sq.times[j - 1])) {
      throw std::invalid_argument("fdd_zn: times must be nonnegative and nondecreasing");
    }
    if (j > 0 && sq.levels[j] < sq.levels[j - 1]) {
      throw std::invalid_argument("fdd_zn: levels must be nondecreasing");
    }
    const auto epoch =
        static_cast<std::uint64_t>(std::floor(static_cast<double>(sq.scale) * sq.times[j]));
    if (epoch == 0) continue;  // trivially satisfied coordinate
    epochs.push_back(epoch);
    thresholds.push_back(sq.norming * sq.levels[j]);
  }
  if (epochs.empty()) return 1.0;
  return fdd_cdf_dp(d, FddQuery(std::move(epochs), std::move(thresholds)));
}

namespace {

// Shared shape of the two limiting fdds: sum over epsilon vectors of
// Psi-chain weights times prod (rate_j)^{epsilon_j}, with a common
// exponential factor exp(-sum rate_j).
double limit_fdd_sum(std::span<const double> times, std::span<const double> levels,
                     std::span<const double> rates, double alpha) {
  const std::size_t k = times.size();
  if (k > kFddEnumMaxDims) {
    throw std::length_error("limit fdd: k exceeds the enumeration guard");
  }
  double rate_sum = 0.0;
  for (double r : rates) rate_sum += r;
  const double envelope = std::exp(-rate_sum);

  double total = 0.0;
  for (std::uint64_t mask = 0; mask < (std::uint64_t(1) << k); ++mask) {
    double w = 1.0;
    int last_one = -1;
    for (std::size_t j = 0; j < k && w != 0.0; ++j) {
      if (mask & (std::uint64_t(1) << j)) {
        w *= rates[j];
        if (last_one >= 0) w *= psi(alpha, levels[last_one], levels[j]);
        last_one = static_cast<int>(j);
      }
    }
    total += w;
  }
  return envelope * total;
}

void check_limit_inputs(std::span<const double> times, std::span<const double> levels) {
  if (times.size() != levels.size() || times.empty()) {
    throw std::invalid_argument("limit fdd: times and levels must match and be nonempty");
  }
  for (std::size_t j = 0; j < times.size(); ++j) {
    if (times[j] < 0.0 || (j > 0 && times[j] < times[j - 1])) {
      throw std::invalid_argument("limit fdd: times must be nonnegative and nondecreasing");
    }
    if (!(levels[j] > 0.0) || (j > 0 && levels[j] < levels[j - 1])) {
      throw std::invalid_argument("limit fdd: levels must be positive and nondecreasing");
    }
  }
}

}  // namespace

double fdd_limit_finite_moment(std::span<const double> times, std::span<const double> levels,
                               double m, double alpha) {
  check_limit_inputs(times, levels);
  if (!(m > 0.0)) throw std::invalid_argument("fdd_limit_finite_moment: m must be positive");
  std::vector<double> rates(times.size());
  double prev = 0.0;
  for (std::size_t j = 0; j < times.size(); ++j) {
    rates[j] = m * (times[j] - prev) * std::pow(levels[j], -alpha);
    prev = times[j];
  }
  return limit_fdd_sum(times, levels, rates, alpha);
}

double fdd_limit_regvar(std::span<const double> times, std::span<const double> levels,
                        double alpha, double theta) {
  check_limit_inputs(times, levels);
  if (!(theta >= 0.0 && theta < alpha)) {
    throw std::domain_error("fdd_limit_regvar: theta must lie in [0, alpha)");
  }
  std::vector<double> rates(times.size());
  double prev = 0.0;
  for (std::size_t j = 0; j < times.size(); ++j) {
    rates[j] = (times[j] - prev) * std::pow(levels[j], theta - alpha);
    prev = times[j];
  }
  return limit_fdd_sum(times, levels, rates, alpha);
}

}  // namespace kendall
