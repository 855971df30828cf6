#include "kendall/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <stdexcept>
#include <vector>

#include "kendall/kernel.hpp"
#include "kendall/williamson.hpp"

namespace kendall::oracle {

namespace {

// Known point masses of P_n(start, .): the start itself keeps G(start)^n,
// and a one-step kernel inherits an atom of the step law at 1 (weighted by
// Psi(start/1)) when the start sits below it.
struct KernelAtoms {
  double at_start = 0.0;
  double at_one = 0.0;
};

KernelAtoms kernel_atoms(const StepDistribution& d, double start, std::uint64_t n) {
  KernelAtoms atoms;
  if (start > 0.0) {
    atoms.at_start = std::pow(d.transform(start), static_cast<double>(n));
  }
  if (n == 1 && start < 1.0) {
    const double mass = d.atom_mass(1.0);
    if (mass > 0.0) atoms.at_one = mass * psi(d.alpha(), start, 1.0);
  }
  return atoms;
}

// Continuous remainder of the kernel cdf once the known atoms are removed.
double kernel_cont_cdf(const StepDistribution& d, double start, std::uint64_t n,
                       const KernelAtoms& atoms, double t) {
  if (t <= start) return 0.0;
  double value = kernel_cdf(d, KernelQuery(start, n, t)) - atoms.at_start;
  if (t >= 1.0) value -= atoms.at_one;
  return value;
}

}  // namespace

double kernel_stieltjes(const StepDistribution& d, double start, std::uint64_t n,
                        double upper, const std::function<double(double)>& f, int cells) {
  if (n < 1) throw std::invalid_argument("kernel_stieltjes: n must be >= 1");
  if (cells < 2) throw std::invalid_argument("kernel_stieltjes: need cells >= 2");
  if (upper < start) return 0.0;

  const KernelAtoms atoms = kernel_atoms(d, start, n);
  double total = atoms.at_start > 0.0 ? atoms.at_start * f(start) : 0.0;
  if (atoms.at_one > 0.0 && 1.0 <= upper) total += atoms.at_one * f(1.0);

  const double lo = start;
  const double h = (upper - lo) / cells;
  if (h <= 0.0) return total;
  double c_prev = 0.0;
  for (int i = 0; i < cells; ++i) {
    const double right = (i == cells - 1) ? upper : lo + (i + 1) * h;
    const double c_right = kernel_cont_cdf(d, start, n, atoms, right);
    const double mass = c_right - c_prev;
    if (mass != 0.0) total += f(lo + (i + 0.5) * h) * mass;
    c_prev = c_right;
  }
  return total;
}

double chain_integral(const StepDistribution& d, const FddQuery& q, double y0,
                      double x_next, int cells, int grid) {
  const std::size_t k = q.size();
  if (y0 < 0.0 || y0 > q.thresholds().front()) {
    throw std::domain_error("chain_integral: need 0 <= y0 <= x_1");
  }
  const double alpha = d.alpha();

  // Continuation tabulated on [0, span_j]; linear interpolation between nodes.
  struct Table {
    double span = 0.0;
    std::vector<double> values;

    double operator()(double y) const {
      if (y <= 0.0) return values.front();
      if (y >= span) return values.back();
      const double pos = y / span * (values.size() - 1);
      const std::size_t i = std::min<std::size_t>(static_cast<std::size_t>(pos),
                                                  values.size() - 2);
      const double frac = pos - static_cast<double>(i);
      return values[i] * (1.0 - frac) + values[i + 1] * frac;
    }
  };

  // Innermost continuation: the Psi factor pointing past the last threshold.
  std::function<double(double)> continuation = [&, x_next](double w) {
    return std::isfinite(x_next) ? psi(alpha, w, x_next) : 1.0;
  };

  // One level: integrate continuation over (0, x_level] against
  // P_dn(y, .); dn = 0 collapses the kernel to the identity.
  auto integrate_level = [&](double y, std::uint64_t dn, double x_level,
                             const std::function<double(double)>& next) -> double {
    if (dn == 0) return next(y);
    const KernelAtoms atoms = kernel_atoms(d, y, dn);
    double total = atoms.at_start > 0.0 ? atoms.at_start * next(y) : 0.0;
    if (atoms.at_one > 0.0 && 1.0 <= x_level) total += atoms.at_one * next(1.0);
    const double h = (x_level - y) / cells;
    if (h > 0.0) {
      double c_prev = 0.0;
      for (int i = 0; i < cells; ++i) {
        const double right = (i == cells - 1) ? x_level : y + (i + 1) * h;
        const double c_right = kernel_cont_cdf(d, y, dn, atoms, right);
        const double mass = c_right - c_prev;
        if (mass != 0.0) total += next(y + (i + 0.5) * h) * mass;
        c_prev = c_right;
      }
    }
    return total;
  };

  std::uint64_t prev_epoch = 0;
  std::vector<std::uint64_t> deltas(k);
  for (std::size_t j = 0; j < k; ++j) {
    deltas[j] = q.epochs()[j] - prev_epoch;
    prev_epoch = q.epochs()[j];
  }

  // Peel levels k, k-1, ..., 2, tabulating each continuation on the range of
  // start values the next level can feed it.
  for (std::size_t j = k; j >= 2; --j) {
    auto table = std::make_shared<Table>();
    table->span = q.thresholds()[j - 2];
    table->values.resize(grid + 1);
    for (int i = 0; i <= grid; ++i) {
      const double y = table->span * i / grid;
      table->values[i] =
          integrate_level(y, deltas[j - 1], q.thresholds()[j - 1], continuation);
    }
    continuation = [table](double y) { return (*table)(y); };
  }
  return integrate_level(y0, deltas[0], q.thresholds()[0], continuation);
}

}  // namespace kendall::oracle
