#include <doctest.h>

#include <cmath>

#include "orbivol/errors.hpp"
#include "orbivol/lorentz.hpp"
#include "orbivol/matrix.hpp"
#include "orbivol/rng.hpp"
#include "orbivol/svd.hpp"

using namespace orbivol;

TEST_CASE("determinant and linear solve") {
  CHECK(Matrix::identity(4).determinant() == 1.0);

  Matrix m(2, 2);
  m(0, 0) = 2.0;
  m(0, 1) = 1.0;
  m(1, 0) = 1.0;
  m(1, 1) = 3.0;
  CHECK(m.determinant() == doctest::Approx(5.0).epsilon(1e-15));

  const auto x = solve_linear(m, {3.0, 4.0});
  CHECK(x[0] == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(x[1] == doctest::Approx(1.0).epsilon(1e-14));

  CHECK_THROWS_AS(solve_linear(Matrix(2, 2, 0.0), {1.0, 1.0}), InvariantError);
  CHECK_THROWS_AS(Matrix(2, 3, 0.0).determinant(), UsageError);
}

TEST_CASE("jacobi svd matches the operator norm and reveals null spaces") {
  SplitMix64 rng(3);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t d = static_cast<std::size_t>(rng.uniform_int(2, 7));
    Matrix a(d, d);
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j) a(i, j) = rng.uniform(-1.0, 1.0);

    const auto svd = jacobi_svd(a);
    double top = 0.0;
    for (const double s : svd.values) top = std::max(top, s);
    CHECK(top == doctest::Approx(operator_norm(a)).epsilon(1e-10));

    // A v_j has length sigma_j.
    for (std::size_t j = 0; j < d; ++j) {
      std::vector<double> v(d);
      for (std::size_t i = 0; i < d; ++i) v[i] = svd.right_vectors(i, j);
      const auto image = a.apply(v);
      double len = 0.0;
      for (const double x : image) len += x * x;
      CHECK(std::sqrt(len) == doctest::Approx(svd.values[j]).epsilon(1e-9));
    }
  }

  // Exact rank deficiency: a projector onto the first coordinate.
  Matrix proj(3, 3, 0.0);
  proj(0, 0) = 1.0;
  const auto basis = null_space(proj, 1e-8);
  CHECK(basis.size() == 2);
  for (const auto& v : basis) CHECK(std::abs(v[0]) < 1e-12);
}
