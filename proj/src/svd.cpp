#include "orbivol/svd.hpp"

#include <cmath>

#include "orbivol/errors.hpp"

namespace orbivol {

SingularDecomposition jacobi_svd(Matrix a) {
  const std::size_t m = a.rows();
  if (a.cols() != m) throw UsageError("jacobi_svd: matrix not square");
  Matrix v = Matrix::identity(m);

  const int max_sweeps = 64;
  const double tol = 1e-15;
  for (int sweep = 0; sweep < max_sweeps; ++sweep) {
    bool rotated = false;
    for (std::size_t p = 0; p + 1 < m; ++p) {
      for (std::size_t q = p + 1; q < m; ++q) {
        double app = 0.0, aqq = 0.0, apq = 0.0;
        for (std::size_t i = 0; i < m; ++i) {
          app += a(i, p) * a(i, p);
          aqq += a(i, q) * a(i, q);
          apq += a(i, p) * a(i, q);
        }
        if (std::abs(apq) <= tol * std::sqrt(app * aqq) || apq == 0.0) continue;
        rotated = true;
        const double zeta = (aqq - app) / (2.0 * apq);
        const double t = (zeta >= 0.0 ? 1.0 : -1.0) /
                         (std::abs(zeta) + std::sqrt(1.0 + zeta * zeta));
        const double cs = 1.0 / std::sqrt(1.0 + t * t);
        const double sn = cs * t;
        for (std::size_t i = 0; i < m; ++i) {
          const double ap = a(i, p), aq = a(i, q);
          a(i, p) = cs * ap - sn * aq;
          a(i, q) = sn * ap + cs * aq;
          const double vp = v(i, p), vq = v(i, q);
          v(i, p) = cs * vp - sn * vq;
          v(i, q) = sn * vp + cs * vq;
        }
      }
    }
    if (!rotated) break;
  }

  SingularDecomposition out;
  out.values.resize(m);
  for (std::size_t j = 0; j < m; ++j) {
    double s = 0.0;
    for (std::size_t i = 0; i < m; ++i) s += a(i, j) * a(i, j);
    out.values[j] = std::sqrt(s);
  }
  out.right_vectors = std::move(v);
  return out;
}

std::vector<std::vector<double>> null_space(const Matrix& a, double threshold) {
  const auto svd = jacobi_svd(a);
  std::vector<std::vector<double>> basis;
  const std::size_t m = a.rows();
  for (std::size_t j = 0; j < m; ++j) {
    if (svd.values[j] > threshold) continue;
    std::vector<double> col(m);
    for (std::size_t i = 0; i < m; ++i) col[i] = svd.right_vectors(i, j);
    basis.push_back(std::move(col));
  }
  return basis;
}

}  // namespace orbivol
