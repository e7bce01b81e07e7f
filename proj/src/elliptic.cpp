#include "orbivol/elliptic.hpp"

#include <cmath>
#include <numbers>
#include <numeric>
#include <utility>

#include "orbivol/errors.hpp"
#include "orbivol/svd.hpp"

namespace orbivol {

namespace {

constexpr double kIdentityTol = 1e-8;

void validate_spec(const EllipticSpec& spec) {
  if (spec.n < 2) throw UsageError("EllipticSpec: n >= 2");
  if (spec.flips < 0 || spec.fixed < 0)
    throw UsageError("EllipticSpec: negative block count");
  if (2 * static_cast<int>(spec.angles.size()) + spec.flips + spec.fixed != spec.n)
    throw UsageError("EllipticSpec: 2*angles + flips + fixed must equal n");
  for (const double theta : spec.angles)
    if (!(theta > 0.0) || !(theta < std::numbers::pi))
      throw UsageError("EllipticSpec: angle outside (0, pi)");
}

}  // namespace

LorentzMatrix block_form(const EllipticSpec& spec) {
  validate_spec(spec);
  Matrix q(static_cast<std::size_t>(spec.n), static_cast<std::size_t>(spec.n));
  std::size_t pos = 0;
  for (const double theta : spec.angles) {
    const double c = std::cos(theta), s = std::sin(theta);
    q(pos, pos) = c;
    q(pos, pos + 1) = -s;
    q(pos + 1, pos) = s;
    q(pos + 1, pos + 1) = c;
    pos += 2;
  }
  for (int i = 0; i < spec.flips; ++i, ++pos) q(pos, pos) = -1.0;
  for (int i = 0; i < spec.fixed; ++i, ++pos) q(pos, pos) = 1.0;
  return embed_rotation(q);
}

std::optional<int> order_of(const LorentzMatrix& a, int k_max) {
  if (k_max < 1) throw UsageError("order_of: k_max >= 1");
  const Matrix identity = Matrix::identity(a.matrix().rows());
  LorentzMatrix power = a;
  for (int m = 1; m <= k_max; ++m) {
    if (max_abs_diff(power.matrix(), identity) < kIdentityTol) return m;
    if (m == k_max) break;
    power = power * a;
    if (m % 16 == 0) power = reorthonormalized(power);
  }
  return std::nullopt;
}

double fixed_set_distance(const LorentzMatrix& a) {
  const std::size_t d = a.matrix().rows();
  const Matrix diff = a.matrix() - Matrix::identity(d);
  const auto basis = null_space(diff, kIdentityTol);
  if (basis.empty())
    throw InvariantError("fixed_set_distance: no eigenvalue-1 eigenspace");

  // Minkowski projection of e1 onto span(basis): solve the small Gram system
  // G c = <v_i, e1>. The form is nondegenerate on the fixed space of an
  // elliptic element, so G is invertible.
  const std::size_t r = basis.size();
  Matrix gram(r, r);
  std::vector<double> rhs(r);
  for (std::size_t i = 0; i < r; ++i) {
    for (std::size_t j = 0; j < r; ++j) {
      double acc = -basis[i][0] * basis[j][0];
      for (std::size_t k = 1; k < d; ++k) acc += basis[i][k] * basis[j][k];
      gram(i, j) = acc;
    }
    rhs[i] = -basis[i][0];  // <v_i, e1>
  }
  std::vector<double> coeff;
  try {
    coeff = solve_linear(gram, rhs);
  } catch (const InvariantError&) {
    throw InvariantError("fixed_set_distance: degenerate form on fixed space");
  }

  std::vector<double> p(d, 0.0);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t k = 0; k < d; ++k) p[k] += coeff[i] * basis[i][k];
  double q = -p[0] * p[0];
  for (std::size_t k = 1; k < d; ++k) q += p[k] * p[k];

  // Elliptic inputs give <p,p> <= -1 (the spacelike complement only pushes it
  // further down); anything near or above 0 means the fixed space misses the
  // hyperboloid.
  if (q > -0.5)
    throw InvariantError("fixed_set_distance: fixed set misses the hyperboloid");
  const double first = p[0] / std::sqrt(-q);
  return acosh_clamped(first);
}

EllipticElement EllipticElement::checked(LorentzMatrix matrix, int order, double delta) {
  if (order < 1) throw UsageError("EllipticElement: order >= 1");
  if (!(delta >= 0.0) || !std::isfinite(delta))
    throw UsageError("EllipticElement: delta must be finite and >= 0");
  const auto detected = order_of(matrix, order);
  if (!detected || *detected != order)
    throw InvariantError("EllipticElement: claimed order is not the exact order");
  return EllipticElement(std::move(matrix), order, delta);
}

namespace {

struct SpecDraw {
  EllipticSpec spec;
  std::vector<int> numerators;  // m_i of the angles 2*pi*m_i/k
};

SpecDraw draw_spec(int n, int k, SplitMix64& rng, bool force_unit_angle) {
  SpecDraw draw;
  EllipticSpec& spec = draw.spec;
  spec.n = n;
  if (k == 2) {
    // Order 2 with no angle blocks: at least one -1 eigenvalue.
    spec.flips = rng.uniform_int(1, n);
    spec.fixed = n - spec.flips;
    return draw;
  }
  const int max_m = (k - 1) / 2;  // keeps 2*pi*m/k strictly below pi
  const int blocks = rng.uniform_int(1, n / 2);
  spec.angles.resize(static_cast<std::size_t>(blocks));
  draw.numerators.resize(static_cast<std::size_t>(blocks));
  for (int i = 0; i < blocks; ++i) {
    const int m = (force_unit_angle && i == 0) ? 1 : rng.uniform_int(1, max_m);
    draw.numerators[static_cast<std::size_t>(i)] = m;
    spec.angles[static_cast<std::size_t>(i)] =
        2.0 * std::numbers::pi * static_cast<double>(m) / static_cast<double>(k);
  }
  // A -1 eigenvalue forces an even order, so flips are allowed only then.
  spec.flips = (k % 2 == 0) ? rng.uniform_int(0, n - 2 * blocks) : 0;
  spec.fixed = n - 2 * blocks - spec.flips;
  return draw;
}

// Exact element order of the canonical form in integer arithmetic: the lcm of
// the block rotation orders k/gcd(m_i, k), and 2 when -1 eigenvalues exist.
long canonical_order(const SpecDraw& draw, int k) {
  long order = draw.spec.flips > 0 ? 2 : 1;
  for (const int m : draw.numerators)
    order = std::lcm(order, static_cast<long>(k) / std::gcd(static_cast<long>(m),
                                                            static_cast<long>(k)));
  if (draw.numerators.empty() && draw.spec.flips == 0) order = 1;
  return order;
}

}  // namespace

EllipticElement sample_elliptic(int n, int k, double delta, std::uint64_t seed) {
  if (n < 2) throw UsageError("sample_elliptic: n >= 2");
  if (k < 2) throw UsageError("sample_elliptic: torsion order k must be >= 2");
  if (!(delta >= 0.0) || !std::isfinite(delta))
    throw UsageError("sample_elliptic: delta must be finite and >= 0");

  SplitMix64 rng(seed);
  const int max_attempts = 8;
  for (int attempt = 0; attempt < max_attempts; ++attempt) {
    // A random block-angle draw can land on a proper divisor of k; forcing
    // one block to angle 2*pi/k from the second attempt on guarantees order k.
    const SpecDraw draw = draw_spec(n, k, rng, attempt > 0);
    if (canonical_order(draw, k) != k) continue;
    const LorentzMatrix canonical = block_form(draw.spec);
    // The order check runs on the canonical form, where power drift is tiny;
    // conjugation preserves the order exactly, while re-detecting it on the
    // conjugate would push the 1e-8 identity tolerance once e^{4 delta}
    // rounding noise enters.
    if (order_of(canonical, k) != std::optional<int>(k)) continue;
    const LorentzMatrix stabilizer = embed_rotation(haar_orthogonal(n, rng));
    const LorentzMatrix conjugator = stabilizer * boost(n, delta);
    LorentzMatrix result = conjugator * canonical * inverse(conjugator);
    // With no +1 spatial eigenvalue the canonical part fixes only e1, so the
    // conjugated fixed set is the single point conjugator(e1) at distance
    // delta. Larger fixed sets can pass closer; recompute in that case.
    // (At delta = 0 the conjugator stays in the stabilizer and the distance
    // is exactly 0; recomputation would only add arccosh noise near 1.)
    const double stored =
        (draw.spec.fixed == 0 || delta == 0.0) ? delta : fixed_set_distance(result);
    return EllipticElement(std::move(result), k, stored);
  }
  throw NumericalError("sample_elliptic: exact order not reached after retries",
                       static_cast<double>(k));
}

double c_k(int k) {
  if (k < 2) throw UsageError("c_k: k >= 2");
  const double s = std::sin(std::numbers::pi / static_cast<double>(k));
  return 2.0 * s * s * std::exp(-2.0);
}

double norm_lower_bound(int k, double delta) {
  if (k < 2) throw UsageError("norm_lower_bound: k >= 2");
  if (!(delta >= 0.0)) throw UsageError("norm_lower_bound: delta >= 0");
  const double s = std::sin(std::numbers::pi / static_cast<double>(k));
  if (delta == 0.0) return 2.0 * s;
  const double sh = std::sinh(delta);
  const double far = 2.0 * sh * sh * s * s;
  const double near = 2.0 * s * std::exp(-2.0 * delta);
  return std::max(far, near);
}

double jorgensen_tau() {
  auto f = [](double t) { return 2.0 * t * (1.0 + t) * (1.0 + t) - 1.0; };
  double lo = 0.25, hi = 0.35;
  while (hi - lo > 1e-14) {
    const double mid = 0.5 * (lo + hi);
    (f(mid) < 0.0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace orbivol
