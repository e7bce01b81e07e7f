#pragma once

#include <cstdint>
#include <vector>

#include "orbivol/matrix.hpp"
#include "orbivol/rng.hpp"

namespace orbivol {

// Hyperbolic n-space lives on the upper sheet of <x,x> = -1 in R^{n+1} with
// the signature-(1,n) form <x,y> = -x1*y1 + sum_{i>=2} xi*yi. Coordinate 1 is
// the timelike one; e1 = (1,0,...,0) is the distinguished basepoint. With
// this convention cosh d(x,y) = -<x,y> on the sheet.

// Vector in R^{n+1}, n >= 2, all entries finite.
class MinkowskiVector {
 public:
  explicit MinkowskiVector(std::vector<double> coords);

  static MinkowskiVector basis(int n, std::size_t index);  // e_{index+1}, 0-based

  int dim() const noexcept { return static_cast<int>(coords_.size()) - 1; }  // n
  std::size_t size() const noexcept { return coords_.size(); }
  double operator[](std::size_t i) const { return coords_[i]; }
  double& operator[](std::size_t i) { return coords_[i]; }
  const std::vector<double>& coords() const noexcept { return coords_; }

 private:
  std::vector<double> coords_;
};

double minkowski_inner(const MinkowskiVector& x, const MinkowskiVector& y);

// Point on the upper hyperboloid sheet: <x,x> = -1 within 1e-9, x1 >= 1.
class HyperbolicPoint {
 public:
  explicit HyperbolicPoint(MinkowskiVector v);

  static HyperbolicPoint basepoint(int n);  // e1

  const MinkowskiVector& vector() const noexcept { return vector_; }
  int dim() const noexcept { return vector_.dim(); }
  double operator[](std::size_t i) const { return vector_[i]; }

 private:
  MinkowskiVector vector_;
};

// Rescales a strictly timelike vector onto the upper sheet.
HyperbolicPoint normalize_to_hyperboloid(const MinkowskiVector& v);

// arccosh with the argument clamped to [1, inf). Arguments below 1 - 1e-6
// signal data that cannot come from two genuine sheet points and raise an
// InvariantError instead of being clamped silently.
double acosh_clamped(double minus_inner);

double distance(const HyperbolicPoint& x, const HyperbolicPoint& y);

// Isometry of H^n in the hyperboloid model: A^T J A = J with
// J = diag(-1,1,...,1), upper sheet preserved (a11 >= 1), det = +-1.
class LorentzMatrix {
 public:
  // Validates the group invariants and throws InvariantError on failure.
  // Structural tolerances are 1e-9 at unit scale and degrade quadratically
  // with the largest entry, which is the attainable double-precision defect
  // for large translations.
  static LorentzMatrix checked(Matrix m);

  const Matrix& matrix() const noexcept { return mat_; }
  int dim() const noexcept { return static_cast<int>(mat_.rows()) - 1; }  // n
  double operator()(std::size_t i, std::size_t j) const { return mat_(i, j); }

  // Group composition. Members stay in the group up to rounding drift, so the
  // product skips re-validation.
  LorentzMatrix operator*(const LorentzMatrix& rhs) const;

  MinkowskiVector apply(const MinkowskiVector& x) const;
  HyperbolicPoint apply(const HyperbolicPoint& x) const;

 private:
  explicit LorentzMatrix(Matrix m) : mat_(std::move(m)) {}
  friend LorentzMatrix boost(int n, double delta);
  friend LorentzMatrix embed_rotation(const Matrix& q);
  friend LorentzMatrix inverse(const LorentzMatrix& a);
  friend LorentzMatrix reorthonormalized(const LorentzMatrix& a);

  Matrix mat_;
};

// max |A^T J A - J|: the structural defect used by validation and tests.
double lorentz_defect(const Matrix& m);

// Largest singular value, sqrt of the dominant eigenvalue of A^T A. Power
// iteration from the normalized all-ones vector, relative tolerance 1e-12,
// capped at 10^4 iterations, with a seeded random restart guarding against a
// start vector that is (near-)orthogonal to the dominant eigenspace.
double operator_norm(const Matrix& a);
double operator_norm(const LorentzMatrix& a);

// Translation by delta along the geodesic through e1 in the e2 direction:
// block [[cosh delta, sinh delta], [sinh delta, cosh delta]] + identity on
// the remaining n-1 spatial coordinates. |delta| > 700 overflows cosh in
// doubles and is rejected.
LorentzMatrix boost(int n, double delta);

// diag(1, Q) for orthogonal Q; fixes e1 exactly.
LorentzMatrix embed_rotation(const Matrix& q);

// Closed form A^{-1} = J A^T J.
LorentzMatrix inverse(const LorentzMatrix& a);

// Restores A^T J A = J by Gram-Schmidt in the Minkowski form (first column
// timelike, the rest spacelike). Used to keep long power chains on the group.
LorentzMatrix reorthonormalized(const LorentzMatrix& a);

// Haar-distributed orthogonal matrix: Gram-Schmidt of an iid Gaussian matrix
// with positive normalization coefficients, which is exactly the Haar QR
// convention.
Matrix haar_orthogonal(int n, SplitMix64& rng);

// embed_rotation(Q1) * boost(s) * embed_rotation(Q2) with Haar Q1, Q2 and s
// uniform in [0, max_translation]; deterministic in the seed, and
// d(e1, A e1) = s by construction.
LorentzMatrix random_isometry(int n, double max_translation, std::uint64_t seed);

}  // namespace orbivol
