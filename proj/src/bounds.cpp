#include "orbivol/bounds.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

#include "orbivol/errors.hpp"

namespace orbivol {

namespace {

constexpr double kLog2 = 0.6931471805599453094172321;

// Neumaier-compensated sum: keeps the inner softplus argument accurate to a
// few ulps regardless of term count, which the formula-equivalence tests at
// 1e-12 absolute rely on.
double compensated_sum(const std::vector<double>& terms) {
  double sum = 0.0, comp = 0.0;
  for (const double t : terms) {
    const double next = sum + t;
    if (std::abs(sum) >= std::abs(t))
      comp += (sum - next) + t;
    else
      comp += (t - next) + sum;
    sum = next;
  }
  return sum + comp;
}

}  // namespace

double log_sinh(double r) {
  if (!(r > 0.0)) throw UsageError("log_sinh: r > 0");
  if (r < 1.0) return std::log(std::sinh(r));
  return r - kLog2 + std::log1p(-std::exp(-2.0 * r));
}

double log_cosh(double x) {
  const double a = std::abs(x);
  return a + std::log1p(std::exp(-2.0 * a)) - kLog2;
}

double log1p_cosh(double r) {
  if (!(r >= 0.0)) throw UsageError("log1p_cosh: r >= 0");
  if (r < 350.0) return std::log1p(std::cosh(r));
  return r - kLog2 + 2.0 * std::log1p(std::exp(-r));
}

double log_kappa(double r) {
  if (!(r > 0.0)) throw UsageError("log_kappa: r > 0");
  return log1p_cosh(r) - log_sinh(r) + 0.5 * log_cosh(6.0 * r);
}

namespace {

// Decomposed terms of log(2 kappa(r)^2 (n+1)^2 / c_k): every term is either
// exact or a single accurately rounded library call, so the compensated sum
// is good to a few ulps of the largest magnitude.
std::vector<double> packing_log_terms(int n, int k, double r) {
  std::vector<double> terms;
  terms.reserve(12);
  terms.push_back(kLog2);
  // 2 log kappa(r) = 2 log1p(cosh r) - 2 log sinh r + log cosh 6r
  if (r < 350.0)
    terms.push_back(2.0 * std::log1p(std::cosh(r)));
  else {
    terms.push_back(2.0 * r);
    terms.push_back(-2.0 * kLog2);
    terms.push_back(4.0 * std::log1p(std::exp(-r)));
  }
  if (r < 1.0)
    terms.push_back(-2.0 * std::log(std::sinh(r)));
  else {
    terms.push_back(-2.0 * r);
    terms.push_back(2.0 * kLog2);
    terms.push_back(-2.0 * std::log1p(-std::exp(-2.0 * r)));
  }
  terms.push_back(6.0 * r);
  terms.push_back(-kLog2);
  terms.push_back(std::log1p(std::exp(-12.0 * r)));
  terms.push_back(2.0 * std::log(static_cast<double>(n) + 1.0));
  // -log c_k = 2 - log 2 - 2 log sin(pi/k)
  terms.push_back(2.0);
  terms.push_back(-kLog2);
  terms.push_back(-2.0 * std::log(std::sin(std::numbers::pi / static_cast<double>(k))));
  return terms;
}

}  // namespace

double log_packing_count(int n, int k, double r) {
  if (n < 2) throw UsageError("log_packing_count: n >= 2");
  if (k < 2) throw UsageError("log_packing_count: k >= 2");
  if (!(r > 0.0)) throw UsageError("log_packing_count: r > 0");
  const double x = compensated_sum(packing_log_terms(n, k, r));
  // softplus(x) = log(1 + e^x); x is always well above 0 here.
  const double softplus = x > 0.0 ? x + std::log1p(std::exp(-x)) : std::log1p(std::exp(x));
  const double dim = static_cast<double>(n) + 1.0;
  return dim * dim * softplus;
}

double log_sphere_area(int n) {
  if (n < 2) throw UsageError("sphere_area: n >= 2");
  const double half = 0.5 * static_cast<double>(n);
  return std::log(static_cast<double>(n)) + half * std::log(std::numbers::pi) -
         std::lgamma(half + 1.0);
}

double sphere_area(int n) { return std::exp(log_sphere_area(n)); }

namespace {

// 15-point Gauss-Legendre nodes and weights on [-1, 1].
constexpr std::array<double, 8> kGlNodes = {
    0.0,
    0.2011940939974345223006283,
    0.3941513470775633698972074,
    0.5709721726085388475372267,
    0.7244177313601700474161861,
    0.8482065834104272162006483,
    0.9372733924007059043077589,
    0.9879925180204854284895657,
};
constexpr std::array<double, 8> kGlWeights = {
    0.2025782419255612728806202,
    0.1984314853271115764561183,
    0.1861610000155622110268006,
    0.1662692058169939335532009,
    0.1395706779261543144478048,
    0.1071592204671719350118695,
    0.0703660474881081247092674,
    0.0307532419961172683546284,
};

template <typename F>
double gauss15(const F& f, double a, double b) {
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  double acc = kGlWeights[0] * f(mid);
  for (std::size_t i = 1; i < kGlNodes.size(); ++i) {
    const double dx = half * kGlNodes[i];
    acc += kGlWeights[i] * (f(mid - dx) + f(mid + dx));
  }
  return acc * half;
}

template <typename F>
double adaptive_panel(const F& f, double a, double b, double whole, double tol,
                      int depth) {
  const double mid = 0.5 * (a + b);
  const double left = gauss15(f, a, mid);
  const double right = gauss15(f, mid, b);
  const double refined = left + right;
  if (depth <= 0 || std::abs(refined - whole) <= tol) return refined;
  return adaptive_panel(f, a, mid, left, 0.5 * tol, depth - 1) +
         adaptive_panel(f, mid, b, right, 0.5 * tol, depth - 1);
}

template <typename F>
double adaptive_integral(const F& f, double a, double b, double rel_tol) {
  const double rough = gauss15(f, a, b);
  const double tol = rel_tol * std::max(std::abs(rough), 1e-300);
  return adaptive_panel(f, a, b, rough, tol, 48);
}

}  // namespace

double log_ball_volume(int n, double r) {
  if (n < 2) throw UsageError("ball_volume: n >= 2");
  if (!(r >= 0.0)) throw UsageError("ball_volume: r >= 0");
  if (r == 0.0) return -std::numeric_limits<double>::infinity();
  // Shift the integrand by its maximum so the quadrature only ever sees
  // values in (0, 1]; the shift returns as an exact additive log term.
  const double p = static_cast<double>(n) - 1.0;
  const double shift = p * log_sinh(r);
  const auto integrand = [p, shift](double u) {
    if (u <= 0.0) return 0.0;
    return std::exp(p * log_sinh(u) - shift);
  };
  const double scaled = adaptive_integral(integrand, 0.0, r, 1e-12);
  return log_sphere_area(n) + shift + std::log(scaled);
}

double ball_volume(int n, double r) {
  if (n < 2) throw UsageError("ball_volume: n >= 2");
  if (!(r >= 0.0)) throw UsageError("ball_volume: r >= 0");
  if (r == 0.0) return 0.0;
  return std::exp(log_ball_volume(n, r));
}

double log_objective(int n, int k, double r) {
  if (!(r > 0.0)) throw UsageError("log_objective: r > 0");
  return log_ball_volume(n, r) - log_packing_count(n, k, r);
}

namespace {

// Search window for the supremum. Below 1e-4 the ball volume term falls off
// like n log r while the packing term is flat, so the objective only sinks;
// above, the packing term grows like 6r(n+1)^2 against volume growth
// (n-1)r, so the objective is strictly decreasing long before r = 60.
constexpr double kSearchLo = 1e-4;
constexpr double kSearchHi = 60.0;
constexpr int kCoarsePoints = 512;

}  // namespace

BoundResult compute_bound(const BoundQuery& query) {
  if (query.n < 2) throw UsageError("compute_bound: n >= 2");
  if (query.k < 2) throw UsageError("compute_bound: k >= 2");
  const int n = query.n;
  const int k = query.k;

  long evals = 0;
  const auto objective = [&](double r) {
    ++evals;
    return log_objective(n, k, r);
  };

  // Coarse pass: geometric grid, global maximum (no unimodality assumed).
  const double ratio = std::log(kSearchHi / kSearchLo) / (kCoarsePoints - 1);
  std::vector<double> grid(kCoarsePoints);
  int best = 0;
  double best_value = -std::numeric_limits<double>::infinity();
  for (int i = 0; i < kCoarsePoints; ++i) {
    grid[i] = kSearchLo * std::exp(ratio * i);
    const double value = objective(grid[i]);
    if (value > best_value) {
      best_value = value;
      best = i;
    }
  }

  // Golden-section refinement on the bracketing interval.
  double lo = grid[std::max(best - 1, 0)];
  double hi = grid[std::min(best + 1, kCoarsePoints - 1)];
  const double invphi = 0.6180339887498948482045868;
  double c = hi - invphi * (hi - lo);
  double d = lo + invphi * (hi - lo);
  double fc = objective(c);
  double fd = objective(d);
  while (hi - lo > 1e-10) {
    if (fc > fd) {
      hi = d;
      d = c;
      fd = fc;
      c = hi - invphi * (hi - lo);
      fc = objective(c);
    } else {
      lo = c;
      c = d;
      fc = fd;
      d = lo + invphi * (hi - lo);
      fd = objective(d);
    }
  }

  BoundResult out;
  out.n = n;
  out.k = k;
  out.r_star = 0.5 * (lo + hi);
  out.log_ball_volume = log_ball_volume(n, out.r_star);
  out.log_packing_count = log_packing_count(n, k, out.r_star);
  out.log_A = out.log_ball_volume - out.log_packing_count;
  out.optimizer_evals = evals;
  return out;
}

std::optional<std::uint64_t> hurwitz_from_log(double volume, double log_a,
                                              double factor) {
  if (!(volume > 0.0) || !std::isfinite(volume))
    throw UsageError("hurwitz bound: volume must be positive and finite");
  const double log_ratio = std::log(factor) + std::log(volume) - log_a;
  // 2^63 in natural log is about 43.67.
  if (log_ratio > 43.7) return std::nullopt;
  // The tiny relative nudge absorbs the log/exp round trip when the ratio is
  // an exact integer (volume equal to the bound must give exactly 1).
  const double ratio = std::exp(log_ratio) * (1.0 + 1e-12);
  if (ratio >= 9223372036854775808.0) return std::nullopt;
  return static_cast<std::uint64_t>(std::floor(ratio));
}

std::optional<std::uint64_t> hurwitz_bound(double volume, int n, int k) {
  return hurwitz_from_log(volume, compute_bound({n, k}).log_A, 1.0);
}

std::optional<std::uint64_t> hurwitz_out_bound(double volume, int n, int k) {
  return hurwitz_from_log(volume, compute_bound({n, k}).log_A, 2.0);
}

}  // namespace orbivol
