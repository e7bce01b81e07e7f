#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "orbivol/lorentz.hpp"

namespace orbivol {

// Canonical data of a basepoint-fixing finite-order isometry: rotation angles
// theta_i strictly inside (0, pi), `flips` eigenvalues -1 and `fixed` extra
// eigenvalues +1 on the spatial block, with 2*angles + flips + fixed = n.
struct EllipticSpec {
  int n = 0;
  std::vector<double> angles;
  int flips = 0;
  int fixed = 0;
};

// Block-diagonal realization of the spec: leading 1, the rotation blocks
// [[cos t, -sin t], [sin t, cos t]], then -I_flips, then I_fixed.
LorentzMatrix block_form(const EllipticSpec& spec);

// Smallest m <= k_max with A^m = I within 1e-8 max-entry, or nullopt. Powers
// accumulate by repeated multiplication and are re-orthonormalized every 16
// products to hold rounding drift below the identity tolerance.
std::optional<int> order_of(const LorentzMatrix& a, int k_max);

// Hyperbolic distance from e1 to Fix(A), the intersection of the
// eigenvalue-1 eigenspace with the hyperboloid. The eigenspace comes from the
// numerical null space of A - I (singular values below 1e-8); e1 is projected
// onto it in the Minkowski form and normalized back to the sheet. Inputs
// whose fixed space misses the hyperboloid (non-elliptic isometries) raise
// InvariantError.
double fixed_set_distance(const LorentzMatrix& a);

// Finite-order isometry with its exact order and distance from e1 to its
// fixed set.
class EllipticElement {
 public:
  static EllipticElement checked(LorentzMatrix matrix, int order, double delta);

  const LorentzMatrix& matrix() const noexcept { return matrix_; }
  int order() const noexcept { return order_; }
  double delta() const noexcept { return delta_; }

 private:
  EllipticElement(LorentzMatrix m, int order, double delta)
      : matrix_(std::move(m)), order_(order), delta_(delta) {}
  friend EllipticElement sample_elliptic(int n, int k, double delta,
                                         std::uint64_t seed);

  LorentzMatrix matrix_;
  int order_;
  double delta_;
};

// Random elliptic element of exact order k whose fixed set sits at distance
// `delta` from e1 when the canonical part fixes only e1; otherwise the stored
// delta is recomputed from the fixed set. Construction: draw block angles
// 2*pi*m_i/k, conjugate the block form by (random stabilizer element) *
// boost(delta). Deterministic per seed.
EllipticElement sample_elliptic(int n, int k, double delta, std::uint64_t seed);

// 2 sin^2(pi/k) e^{-2}: the uniform norm lower bound constant for elliptic
// elements of order at most k. Defined for k >= 2.
double c_k(int k);

// Distance-dependent lower bound on |A - I| for elliptic A of order at most
// k whose fixed set is at distance delta from e1: 2 sin(pi/k) when delta = 0,
// otherwise max(2 sinh^2(delta) sin^2(pi/k), 2 sin(pi/k) e^{-2 delta}).
double norm_lower_bound(int k, double delta);

// Unique positive root of 2 tau (1 + tau)^2 = 1, by bisection on
// [0.25, 0.35] to absolute 1e-14.
double jorgensen_tau();

}  // namespace orbivol
