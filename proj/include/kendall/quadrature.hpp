#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <queue>
#include <span>
#include <vector>

#include "kendall/errors.hpp"

namespace kendall {

namespace detail {

// 15-point Kronrod rule with the embedded 7-point Gauss rule (QUADPACK dqk15).
inline constexpr double kGk15Nodes[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144838258730, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
inline constexpr double kGk15KronrodW[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
inline constexpr double kGk15GaussW[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

template <class F>
void gk15(const F& f, double a, double b, double& value, double& err) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const double fc = f(center);
  double kronrod = kGk15KronrodW[7] * fc;
  double gauss = kGk15GaussW[3] * fc;
  for (int i = 0; i < 7; ++i) {
    const double dx = half * kGk15Nodes[i];
    const double fsum = f(center - dx) + f(center + dx);
    kronrod += kGk15KronrodW[i] * fsum;
    if (i % 2 == 1) gauss += kGk15GaussW[i / 2] * fsum;
  }
  value = kronrod * half;
  err = std::fabs((kronrod - gauss) * half);
}

}  // namespace detail

// Adaptive Gauss-Kronrod integration of f over [a,b] to an absolute
// tolerance; always bisects the piece with the largest error estimate.
// Jumps or kinks of f must sit at piece edges to be integrated reliably (a
// feature strictly inside a piece but beyond the outermost Kronrod node is
// invisible to the rule), so callers pass known feature locations as
// breakpoints. Throws NumericError (carrying the achieved tolerance) if
// max_pieces subdivisions are not enough.
template <class F>
double integrate_adaptive(F&& f, double a, double b, double abs_tol,
                          std::size_t max_pieces = 100000,
                          std::span<const double> breakpoints = {}) {
  if (!(b > a)) return 0.0;
  struct Piece {
    double err, a, b, val;
    bool operator<(const Piece& o) const { return err < o.err; }
  };
  // Initial cuts: the caller's breakpoints plus a geometric ladder toward
  // both endpoints (a single 15-point pass over a wide interval cannot see
  // an integrand confined to a sliver near an edge).
  std::vector<double> cuts;
  cuts.push_back(a);
  const double width = b - a;
  for (int k = 40; k >= 1; --k) {
    cuts.push_back(a + width * std::ldexp(1.0, -k));
  }
  for (int k = 2; k <= 40; ++k) {
    cuts.push_back(b - width * std::ldexp(1.0, -k));
  }
  for (double bp : breakpoints) {
    if (bp > a && bp < b) cuts.push_back(bp);
  }
  cuts.push_back(b);
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
  cuts.erase(std::remove_if(cuts.begin(), cuts.end(),
                            [&](double c) { return c < a || c > b; }),
             cuts.end());

  std::priority_queue<Piece> pieces;
  double total_val = 0.0;
  double total_err = 0.0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    double v, e;
    detail::gk15(f, cuts[i], cuts[i + 1], v, e);
    pieces.push({e, cuts[i], cuts[i + 1], v});
    total_val += v;
    total_err += e;
  }
  while (total_err > abs_tol && pieces.size() < max_pieces) {
    const Piece worst = pieces.top();
    pieces.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    if (mid <= worst.a || mid >= worst.b) {
      // Interval is at floating-point resolution; keep its estimate.
      total_err -= worst.err;
      continue;
    }
    double v1, e1, v2, e2;
    detail::gk15(f, worst.a, mid, v1, e1);
    detail::gk15(f, mid, worst.b, v2, e2);
    total_val += v1 + v2 - worst.val;
    total_err += e1 + e2 - worst.err;
    pieces.push({e1, worst.a, mid, v1});
    pieces.push({e2, mid, worst.b, v2});
  }
  if (total_err > abs_tol) {
    throw NumericError("integrate_adaptive: tolerance not reached", total_err);
  }
  return total_val;
}

}  // namespace kendall
