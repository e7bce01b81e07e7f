#include "orbivol/lorentz.hpp"

#include <cmath>
#include <optional>
#include <utility>

#include "orbivol/errors.hpp"

namespace orbivol {

namespace {

constexpr double kStructuralTol = 1e-9;

double minkowski_inner_raw(std::span<const double> x, std::span<const double> y) {
  double acc = -x[0] * y[0];
  for (std::size_t i = 1; i < x.size(); ++i) acc += x[i] * y[i];
  return acc;
}

}  // namespace

MinkowskiVector::MinkowskiVector(std::vector<double> coords) : coords_(std::move(coords)) {
  if (coords_.size() < 3) throw UsageError("MinkowskiVector: need n >= 2, i.e. length >= 3");
  for (const double v : coords_)
    if (!std::isfinite(v)) throw UsageError("MinkowskiVector: non-finite entry");
}

MinkowskiVector MinkowskiVector::basis(int n, std::size_t index) {
  std::vector<double> c(static_cast<std::size_t>(n) + 1, 0.0);
  c.at(index) = 1.0;
  return MinkowskiVector(std::move(c));
}

double minkowski_inner(const MinkowskiVector& x, const MinkowskiVector& y) {
  if (x.size() != y.size()) throw UsageError("minkowski_inner: dimension mismatch");
  return minkowski_inner_raw(x.coords(), y.coords());
}

HyperbolicPoint::HyperbolicPoint(MinkowskiVector v) : vector_(std::move(v)) {
  const double q = minkowski_inner(vector_, vector_);
  if (std::abs(q + 1.0) > kStructuralTol)
    throw InvariantError("HyperbolicPoint: <x,x> != -1");
  if (vector_[0] < 1.0 - 1e-12)
    throw InvariantError("HyperbolicPoint: not on the upper sheet (x1 < 1)");
}

HyperbolicPoint HyperbolicPoint::basepoint(int n) {
  return HyperbolicPoint(MinkowskiVector::basis(n, 0));
}

HyperbolicPoint normalize_to_hyperboloid(const MinkowskiVector& v) {
  const double q = minkowski_inner(v, v);
  if (!(q < 0.0)) throw InvariantError("normalize_to_hyperboloid: vector not timelike");
  const double scale = 1.0 / std::sqrt(-q);
  std::vector<double> c(v.coords());
  const double sign = c[0] < 0.0 ? -1.0 : 1.0;
  for (double& x : c) x *= sign * scale;
  return HyperbolicPoint(MinkowskiVector(std::move(c)));
}

double acosh_clamped(double minus_inner) {
  if (minus_inner < 1.0 - 1e-6)
    throw InvariantError("distance: cosh argument below 1 beyond tolerance");
  return std::acosh(std::max(minus_inner, 1.0));
}

double distance(const HyperbolicPoint& x, const HyperbolicPoint& y) {
  return acosh_clamped(-minkowski_inner(x.vector(), y.vector()));
}

double lorentz_defect(const Matrix& m) {
  const std::size_t d = m.rows();
  double defect = 0.0;
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = i; j < d; ++j) {
      // (A^T J A)_{ij} = -a_{1i} a_{1j} + sum_{k>=2} a_{ki} a_{kj}
      double acc = -m(0, i) * m(0, j);
      for (std::size_t k = 1; k < d; ++k) acc += m(k, i) * m(k, j);
      const double target = (i != j) ? 0.0 : (i == 0 ? -1.0 : 1.0);
      defect = std::max(defect, std::abs(acc - target));
    }
  }
  return defect;
}

LorentzMatrix LorentzMatrix::checked(Matrix m) {
  if (m.rows() != m.cols() || m.rows() < 3)
    throw InvariantError("LorentzMatrix: need a square matrix of dimension n+1, n >= 2");
  if (!m.all_finite()) throw InvariantError("LorentzMatrix: non-finite entry");
  const double scale = std::max(1.0, m.max_abs() * m.max_abs());
  if (lorentz_defect(m) > kStructuralTol * scale)
    throw InvariantError("LorentzMatrix: A^T J A != J");
  if (m(0, 0) < 1.0 - kStructuralTol)
    throw InvariantError("LorentzMatrix: a11 < 1, upper sheet not preserved");
  if (std::abs(std::abs(m.determinant()) - 1.0) > 1e-6 * scale)
    throw InvariantError("LorentzMatrix: |det| != 1");
  return LorentzMatrix(std::move(m));
}

LorentzMatrix LorentzMatrix::operator*(const LorentzMatrix& rhs) const {
  return LorentzMatrix(mat_ * rhs.mat_);
}

MinkowskiVector LorentzMatrix::apply(const MinkowskiVector& x) const {
  if (x.size() != mat_.rows()) throw UsageError("LorentzMatrix apply: dimension mismatch");
  return MinkowskiVector(mat_.apply(x.coords()));
}

HyperbolicPoint LorentzMatrix::apply(const HyperbolicPoint& x) const {
  return HyperbolicPoint(apply(x.vector()));
}

namespace {

// Power iteration on the PSD matrix M from a given unit start vector.
// Returns the Rayleigh quotient once its relative change stays below tol,
// or nothing when the budget runs out (clustered top eigenvalues).
std::optional<double> power_iteration(const Matrix& m, std::vector<double> v,
                                      double tol, int max_iter) {
  const std::size_t d = m.rows();
  double lambda = 0.0;
  bool have_lambda = false;
  for (int it = 0; it < max_iter; ++it) {
    std::vector<double> w = m.apply(v);
    double rq = 0.0;
    for (std::size_t i = 0; i < d; ++i) rq += v[i] * w[i];
    double norm = 0.0;
    for (const double x : w) norm += x * x;
    norm = std::sqrt(norm);
    if (norm == 0.0) return rq;  // v became an exact kernel vector
    for (std::size_t i = 0; i < d; ++i) v[i] = w[i] / norm;
    if (have_lambda && std::abs(rq - lambda) <= tol * std::max(std::abs(rq), 1e-300)) {
      return rq;
    }
    lambda = rq;
    have_lambda = true;
  }
  return std::nullopt;
}

// Stagnation rescue: repeated squaring of M/|M| drives the matrix to (a
// multiple of) the projector onto the dominant eigenspace, with the
// eigenvalue RATIOS squaring every step, so convergence does not depend on
// the spectral gap. The largest column of the limit lies in the dominant
// eigenspace; its Rayleigh quotient is the eigenvalue.
std::optional<double> squared_subspace_eigenvalue(const Matrix& m) {
  const std::size_t d = m.rows();
  Matrix q = m;
  {
    const double scale = q.max_abs();
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j) q(i, j) /= scale;
  }
  bool stable = false;
  for (int it = 0; it < 64 && !stable; ++it) {
    Matrix next = q * q;
    const double scale = next.max_abs();
    if (scale == 0.0) return std::nullopt;
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j) next(i, j) /= scale;
    stable = max_abs_diff(next, q) < 1e-15;
    q = std::move(next);
  }
  if (!stable) return std::nullopt;

  std::size_t best_col = 0;
  double best_norm = -1.0;
  for (std::size_t j = 0; j < d; ++j) {
    double acc = 0.0;
    for (std::size_t i = 0; i < d; ++i) acc += q(i, j) * q(i, j);
    if (acc > best_norm) {
      best_norm = acc;
      best_col = j;
    }
  }
  std::vector<double> v(d);
  for (std::size_t i = 0; i < d; ++i) v[i] = q(i, best_col) / std::sqrt(best_norm);
  const std::vector<double> w = m.apply(v);
  double rq = 0.0;
  for (std::size_t i = 0; i < d; ++i) rq += v[i] * w[i];
  return rq;
}

}  // namespace

double operator_norm(const Matrix& a) {
  if (a.rows() != a.cols()) throw UsageError("operator_norm: matrix not square");
  if (!a.all_finite()) throw UsageError("operator_norm: non-finite entry");
  const std::size_t d = a.rows();
  if (a.max_abs() == 0.0) return 0.0;

  // M = A^T A, symmetric positive semidefinite. Both passes below produce
  // Rayleigh quotients of M, which never exceed the dominant eigenvalue, so
  // the max of the two is always a faithful estimate from below.
  const Matrix m = a.transposed() * a;

  const std::vector<double> ones(d, 1.0 / std::sqrt(static_cast<double>(d)));
  const std::optional<double> from_power = power_iteration(m, ones, 1e-12, 1500);
  const std::optional<double> from_squaring = squared_subspace_eigenvalue(m);

  if (!from_power && !from_squaring)
    throw NumericalError("operator_norm: power iteration did not converge", 0.0);
  double lambda = from_power.value_or(0.0);
  if (from_squaring) lambda = std::max(lambda, *from_squaring);
  return std::sqrt(std::max(lambda, 0.0));
}

double operator_norm(const LorentzMatrix& a) { return operator_norm(a.matrix()); }

LorentzMatrix boost(int n, double delta) {
  if (n < 2) throw UsageError("boost: n >= 2");
  if (!std::isfinite(delta)) throw UsageError("boost: delta must be finite");
  if (std::abs(delta) > 700.0)
    throw UsageError("boost: |delta| > 700 overflows cosh in double precision");
  Matrix m = Matrix::identity(static_cast<std::size_t>(n) + 1);
  m(0, 0) = std::cosh(delta);
  m(0, 1) = std::sinh(delta);
  m(1, 0) = m(0, 1);
  m(1, 1) = m(0, 0);
  return LorentzMatrix(std::move(m));
}

LorentzMatrix embed_rotation(const Matrix& q) {
  const std::size_t n = q.rows();
  if (q.cols() != n || n < 2) throw UsageError("embed_rotation: need square Q, n >= 2");
  // Q^T Q = I within 1e-9.
  double defect = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      double acc = 0.0;
      for (std::size_t k = 0; k < n; ++k) acc += q(k, i) * q(k, j);
      defect = std::max(defect, std::abs(acc - (i == j ? 1.0 : 0.0)));
    }
  }
  if (defect > kStructuralTol) throw UsageError("embed_rotation: Q not orthogonal");
  Matrix m = Matrix::identity(n + 1);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m(i + 1, j + 1) = q(i, j);
  return LorentzMatrix(std::move(m));
}

LorentzMatrix inverse(const LorentzMatrix& a) {
  // A^{-1} = J A^T J: transpose and flip the sign of the first row and column
  // off-diagonal blocks.
  const Matrix& src = a.matrix();
  const std::size_t d = src.rows();
  Matrix m(d, d);
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j < d; ++j) {
      const double sign = ((i == 0) != (j == 0)) ? -1.0 : 1.0;
      m(i, j) = sign * src(j, i);
    }
  }
  return LorentzMatrix(std::move(m));
}

LorentzMatrix reorthonormalized(const LorentzMatrix& a) {
  Matrix m = a.matrix();
  const std::size_t d = m.rows();
  // Gram-Schmidt over columns in the Minkowski form; column 0 is timelike.
  for (std::size_t j = 0; j < d; ++j) {
    std::vector<double> col(d);
    for (std::size_t i = 0; i < d; ++i) col[i] = m(i, j);
    for (std::size_t prev = 0; prev < j; ++prev) {
      std::vector<double> p(d);
      for (std::size_t i = 0; i < d; ++i) p[i] = m(i, prev);
      const double sign = prev == 0 ? -1.0 : 1.0;  // <p,p> = sign
      const double coeff = minkowski_inner_raw(col, p) / sign;
      for (std::size_t i = 0; i < d; ++i) col[i] -= coeff * p[i];
    }
    const double q = minkowski_inner_raw(col, col);
    const double target = j == 0 ? -1.0 : 1.0;
    if (!(q * target > 0.0))
      throw InvariantError("reorthonormalized: column signature lost");
    const double scale = 1.0 / std::sqrt(q * target);
    for (std::size_t i = 0; i < d; ++i) m(i, j) = col[i] * scale;
  }
  return LorentzMatrix(std::move(m));
}

Matrix haar_orthogonal(int n, SplitMix64& rng) {
  if (n < 1) throw UsageError("haar_orthogonal: n >= 1");
  const auto d = static_cast<std::size_t>(n);
  Matrix g(d, d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) g(i, j) = rng.next_gaussian();

  // Modified Gram-Schmidt with a second orthogonalization pass; positive
  // normalization coefficients make the result Haar-distributed.
  for (std::size_t j = 0; j < d; ++j) {
    std::vector<double> v(d);
    for (std::size_t i = 0; i < d; ++i) v[i] = g(i, j);
    for (int pass = 0; pass < 2; ++pass) {
      for (std::size_t prev = 0; prev < j; ++prev) {
        double dot = 0.0;
        for (std::size_t i = 0; i < d; ++i) dot += g(i, prev) * v[i];
        for (std::size_t i = 0; i < d; ++i) v[i] -= dot * g(i, prev);
      }
    }
    double norm = 0.0;
    for (const double x : v) norm += x * x;
    norm = std::sqrt(norm);
    if (norm < 1e-12) throw NumericalError("haar_orthogonal: degenerate draw", norm);
    for (std::size_t i = 0; i < d; ++i) g(i, j) = v[i] / norm;
  }
  return g;
}

LorentzMatrix random_isometry(int n, double max_translation, std::uint64_t seed) {
  if (n < 2) throw UsageError("random_isometry: n >= 2");
  if (!(max_translation >= 0.0))
    throw UsageError("random_isometry: max_translation >= 0");
  SplitMix64 rng(seed);
  const Matrix q1 = haar_orthogonal(n, rng);
  const double s = rng.uniform(0.0, max_translation);
  const Matrix q2 = haar_orthogonal(n, rng);
  return embed_rotation(q1) * boost(n, s) * embed_rotation(q2);
}

}  // namespace orbivol
