#include <doctest.h>

#include <cmath>

#include "orbivol/elliptic.hpp"
#include "orbivol/errors.hpp"
#include "orbivol/lorentz.hpp"
#include "orbivol/rng.hpp"

using namespace orbivol;

namespace {

MinkowskiVector e1(int n) { return MinkowskiVector::basis(n, 0); }

}  // namespace

TEST_CASE("minkowski inner product") {
  CHECK(minkowski_inner(e1(3), e1(3)) == -1.0);

  const double d = 0.7;
  const MinkowskiVector y({std::cosh(d), std::sinh(d), 0.0, 0.0});
  CHECK(minkowski_inner(e1(3), y) == doctest::Approx(-std::cosh(d)).epsilon(1e-15));

  SplitMix64 rng(11);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<double> a(4), b(4);
    for (auto& v : a) v = rng.uniform(-3.0, 3.0);
    for (auto& v : b) v = rng.uniform(-3.0, 3.0);
    const MinkowskiVector x(a), y2(b);
    CHECK(minkowski_inner(x, y2) == minkowski_inner(y2, x));
  }

  CHECK_THROWS_AS(minkowski_inner(e1(2), e1(3)), UsageError);
}

TEST_CASE("hyperbolic distance") {
  const auto base2 = HyperbolicPoint::basepoint(2);
  CHECK(distance(base2, base2) == 0.0);

  for (const double t : {0.25, 1.0, 3.0, 10.0}) {
    const auto moved = boost(2, t).apply(base2);
    CHECK(distance(base2, moved) == doctest::Approx(t).epsilon(1e-12));
  }

  const auto plus = boost(2, 1.0).apply(base2);
  const auto minus = boost(2, -1.0).apply(base2);
  CHECK(distance(plus, minus) == doctest::Approx(2.0).epsilon(1e-12));

  // Clamp: slightly-below-1 arguments inside tolerance round to distance 0;
  // beyond tolerance they are an invariant violation, not a silent clamp.
  CHECK(acosh_clamped(1.0 - 1e-9) == 0.0);
  CHECK_THROWS_AS(acosh_clamped(1.0 - 1e-5), InvariantError);
}

TEST_CASE("hyperbolic point validation") {
  CHECK_THROWS_AS(HyperbolicPoint(MinkowskiVector({1.0, 1.0, 0.0})), InvariantError);
  CHECK_THROWS_AS(HyperbolicPoint(MinkowskiVector({-1.0, 0.0, 0.0})), InvariantError);
  CHECK_THROWS_AS(normalize_to_hyperboloid(MinkowskiVector({0.1, 1.0, 0.0})),
                  InvariantError);
  const auto p = normalize_to_hyperboloid(MinkowskiVector({2.0, 0.5, 0.5}));
  CHECK(minkowski_inner(p.vector(), p.vector()) == doctest::Approx(-1.0).epsilon(1e-14));
}

TEST_CASE("operator norm basics") {
  CHECK(operator_norm(Matrix::identity(4)) == doctest::Approx(1.0).epsilon(1e-14));

  for (const double d : {0.1, 0.5, 1.0, 2.0, 5.0}) {
    CHECK(operator_norm(boost(3, d)) ==
          doctest::Approx(std::exp(d)).epsilon(1e-11));
  }

  SplitMix64 rng(5);
  for (int n : {2, 3, 5}) {
    const Matrix q = haar_orthogonal(n, rng);
    CHECK(operator_norm(embed_rotation(q)) == doctest::Approx(1.0).epsilon(1e-12));
  }

  CHECK(operator_norm(Matrix(3, 3, 0.0)) == 0.0);
  CHECK_THROWS_AS(operator_norm(Matrix(2, 3, 1.0)), UsageError);
}

TEST_CASE("operator norm is submultiplicative and conjugation invariant") {
  SplitMix64 rng(77);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = rng.uniform_int(2, 5);
    const std::size_t d = static_cast<std::size_t>(n) + 1;
    Matrix a(d, d), b(d, d);
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j) {
        a(i, j) = rng.uniform(-2.0, 2.0);
        b(i, j) = rng.uniform(-2.0, 2.0);
      }
    const double na = operator_norm(a);
    const double nb = operator_norm(b);
    CHECK(operator_norm(a * b) <= na * nb + 1e-9);

    const Matrix q = haar_orthogonal(n, rng);
    const LorentzMatrix rot = embed_rotation(q);
    const Matrix conj = rot.matrix() * a * inverse(rot).matrix();
    CHECK(operator_norm(conj) == doctest::Approx(na).epsilon(1e-9));
  }
}

TEST_CASE("boost") {
  CHECK(max_abs_diff(boost(4, 0.0).matrix(), Matrix::identity(5)) == 0.0);

  const double d = 1.3;
  const auto moved = boost(3, d).apply(e1(3));
  CHECK(moved[0] == doctest::Approx(std::cosh(d)).epsilon(1e-15));
  CHECK(moved[1] == doctest::Approx(std::sinh(d)).epsilon(1e-15));
  CHECK(moved[2] == 0.0);
  CHECK(moved[3] == 0.0);

  const Matrix composed = (boost(2, 0.4) * boost(2, 0.9)).matrix();
  CHECK(max_abs_diff(composed, boost(2, 1.3).matrix()) < 1e-12);

  CHECK_THROWS_AS(boost(2, 701.0), UsageError);
  CHECK_THROWS_AS(boost(2, -701.0), UsageError);
  CHECK_THROWS_AS(boost(1, 0.5), UsageError);
}

TEST_CASE("embed rotation") {
  CHECK(max_abs_diff(embed_rotation(Matrix::identity(3)).matrix(),
                     Matrix::identity(4)) == 0.0);

  SplitMix64 rng(21);
  for (int n : {2, 3, 4, 6}) {
    const Matrix q = haar_orthogonal(n, rng);
    const LorentzMatrix a = embed_rotation(q);

    const auto image = a.apply(e1(n));
    CHECK(image[0] == 1.0);
    for (int i = 1; i <= n; ++i) CHECK(image[static_cast<std::size_t>(i)] == 0.0);

    // A in the stabilizer has A^{-1} = A^T.
    CHECK(max_abs_diff(inverse(a).matrix(), a.matrix().transposed()) < 1e-14);
  }

  Matrix skew(2, 2);
  skew(0, 0) = 1.0;
  skew(0, 1) = 0.5;
  skew(1, 1) = 1.0;
  CHECK_THROWS_AS(embed_rotation(skew), UsageError);
}

TEST_CASE("inverse") {
  CHECK(max_abs_diff(inverse(boost(3, 0.8)).matrix(), boost(3, -0.8).matrix()) <
        1e-15);
  const LorentzMatrix id = LorentzMatrix::checked(Matrix::identity(4));
  CHECK(max_abs_diff(inverse(id).matrix(), Matrix::identity(4)) == 0.0);

  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const LorentzMatrix a = random_isometry(3, 2.0, seed);
    CHECK(max_abs_diff((a * inverse(a)).matrix(), Matrix::identity(4)) < 1e-9);
    CHECK(operator_norm(inverse(a)) == doctest::Approx(operator_norm(a)).epsilon(1e-9));
  }
}

TEST_CASE("random isometry determinism and invariants") {
  const LorentzMatrix a = random_isometry(3, 2.5, 424242);
  const LorentzMatrix b = random_isometry(3, 2.5, 424242);
  CHECK(max_abs_diff(a.matrix(), b.matrix()) == 0.0);

  const auto base = HyperbolicPoint::basepoint(4);
  for (std::uint64_t seed = 0; seed < 10000; ++seed) {
    const LorentzMatrix m = random_isometry(4, 5.0, seed);
    CHECK(lorentz_defect(m.matrix()) <= 1e-9);
    CHECK(distance(base, m.apply(base)) <= 5.0 * (1.0 + 1e-12) + 1e-12);
  }

  CHECK_THROWS_AS(random_isometry(1, 1.0, 0), UsageError);
  CHECK_THROWS_AS(random_isometry(3, -1.0, 0), UsageError);
}

TEST_CASE("lorentz matrix validation") {
  CHECK_NOTHROW(LorentzMatrix::checked(boost(2, 3.0).matrix()));

  // Lower-sheet map: satisfies A^T J A = J but a11 = -1.
  Matrix lower = Matrix::identity(3);
  lower(0, 0) = -1.0;
  lower(1, 1) = -1.0;
  CHECK_THROWS_AS(LorentzMatrix::checked(lower), InvariantError);

  Matrix scaled = Matrix::identity(3);
  scaled(0, 0) = 2.0;
  CHECK_THROWS_AS(LorentzMatrix::checked(scaled), InvariantError);

  // Structural defect scales with the square of the largest entry, so far
  // translations still validate.
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const LorentzMatrix far = random_isometry(3, 60.0, seed);
    CHECK_NOTHROW(LorentzMatrix::checked(far.matrix()));
    const double scale = far.matrix().max_abs();
    CHECK(lorentz_defect(far.matrix()) <= 1e-9 * std::max(1.0, scale * scale));
  }
}

TEST_CASE("transformed points never trip the arccosh clamp") {
  SplitMix64 rng(99);
  for (int trial = 0; trial < 1000; ++trial) {
    const int n = rng.uniform_int(2, 5);
    const auto x = random_isometry(n, 3.0, rng.next_u64())
                       .apply(HyperbolicPoint::basepoint(n));
    const auto y = random_isometry(n, 3.0, rng.next_u64())
                       .apply(HyperbolicPoint::basepoint(n));
    CHECK_NOTHROW(distance(x, y));
  }
}
