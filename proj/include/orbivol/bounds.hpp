#pragma once

#include <cstdint>
#include <optional>

namespace orbivol {

// All bound arithmetic runs in natural-log space: the packing count is
// raised to the (n+1)^2 power, so the bound value itself underflows doubles
// for most interesting (n, k) and is only ever reported as a log.

// Stable pieces. log_cosh works for every finite x; log_sinh and
// log1p_cosh switch to exact exp expansions where cosh would overflow.
double log_sinh(double r);
double log_cosh(double x);
double log1p_cosh(double r);

// log of kappa(r) = ((1 + cosh r)/sinh r) * sqrt(cosh 6r), the entry bound
// for isometries that fail to move B(e1, r) off itself. r > 0.
double log_kappa(double r);

// (n+1)^2 * log(2 kappa(r)^2 (n+1)^2 / c_k + 1), evaluated as a softplus of
// compensated log terms so no intermediate overflows.
double log_packing_count(int n, int k, double r);

// Surface measure of the unit (n-1)-sphere: n pi^{n/2} / Gamma(n/2 + 1).
double sphere_area(int n);
double log_sphere_area(int n);

// Volume of the hyperbolic r-ball: sphere_area(n) * integral_0^r sinh^{n-1}.
// The integral uses adaptive Gauss-Legendre quadrature on the exponent-shifted
// integrand, to relative 1e-12.
double ball_volume(int n, double r);
double log_ball_volume(int n, double r);

// log_ball_volume - log_packing_count: the quantity whose supremum over r is
// the bound.
double log_objective(int n, int k, double r);

struct BoundQuery {
  int n = 2;  // dimension, >= 2
  int k = 2;  // maximal torsion order, >= 2
};

struct BoundResult {
  int n = 0;
  int k = 0;
  double r_star = 0.0;            // maximizing radius
  double log_A = 0.0;             // natural log of the volume bound
  double log_ball_volume = 0.0;   // factor at r_star
  double log_packing_count = 0.0; // factor at r_star
  long optimizer_evals = 0;
};

// Maximizes log_objective over r: a 512-point geometric coarse grid on
// [1e-4, 60] picks the global grid maximum (no unimodality assumed), then
// golden-section refinement narrows the bracket to r-tolerance 1e-10.
BoundResult compute_bound(const BoundQuery& query);

// floor(volume / A(n,k)) and floor(2 volume / A(n,k)), computed in log
// space. Ratios at or above 2^63 saturate to nullopt. The isometry-group
// variant uses the plain ratio; the outer-automorphism variant carries the
// orientation factor 2.
std::optional<std::uint64_t> hurwitz_bound(double volume, int n, int k);
std::optional<std::uint64_t> hurwitz_out_bound(double volume, int n, int k);
std::optional<std::uint64_t> hurwitz_from_log(double volume, double log_a,
                                              double factor);

}  // namespace orbivol
