#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <vector>

#include "orbivol/bounds.hpp"
#include "orbivol/elliptic.hpp"
#include "orbivol/errors.hpp"
#include "orbivol/lorentz.hpp"
#include "orbivol/verify.hpp"

namespace py = pybind11;

namespace {

using orbivol::Matrix;

Matrix matrix_from_rows(const std::vector<std::vector<double>>& rows) {
  if (rows.empty()) throw orbivol::UsageError("matrix: empty");
  const std::size_t cols = rows.front().size();
  Matrix m(rows.size(), cols);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != cols) throw orbivol::UsageError("matrix: ragged rows");
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = rows[i][j];
  }
  return m;
}

std::vector<std::vector<double>> rows_from_matrix(const Matrix& m) {
  std::vector<std::vector<double>> rows(m.rows(), std::vector<double>(m.cols()));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) rows[i][j] = m(i, j);
  return rows;
}

}  // namespace

PYBIND11_MODULE(orbivol, m) {
  m.doc() = "Explicit volume lower bounds for hyperbolic n-orbifolds with "
            "bounded torsion, plus the randomized inequality verification "
            "suite of the underlying C++ library.";

  py::register_exception<orbivol::UsageError>(m, "UsageError", PyExc_ValueError);
  py::register_exception<orbivol::InvariantError>(m, "InvariantError",
                                                  PyExc_RuntimeError);
  py::register_exception<orbivol::NumericalError>(m, "NumericalError",
                                                  PyExc_RuntimeError);

  py::class_<orbivol::BoundResult>(m, "BoundResult")
      .def_readonly("n", &orbivol::BoundResult::n)
      .def_readonly("k", &orbivol::BoundResult::k)
      .def_readonly("r_star", &orbivol::BoundResult::r_star)
      .def_readonly("log_A", &orbivol::BoundResult::log_A)
      .def_readonly("log_ball_volume", &orbivol::BoundResult::log_ball_volume)
      .def_readonly("log_packing_count", &orbivol::BoundResult::log_packing_count)
      .def_readonly("optimizer_evals", &orbivol::BoundResult::optimizer_evals)
      .def("__repr__", [](const orbivol::BoundResult& r) {
        return "BoundResult(n=" + std::to_string(r.n) + ", k=" +
               std::to_string(r.k) + ", log_A=" + std::to_string(r.log_A) + ")";
      });

  py::class_<orbivol::verify::TrialReport>(m, "TrialReport")
      .def_readonly("lemma_id", &orbivol::verify::TrialReport::lemma_id)
      .def_readonly("trials", &orbivol::verify::TrialReport::trials)
      .def_readonly("violations", &orbivol::verify::TrialReport::violations)
      .def_readonly("min_slack", &orbivol::verify::TrialReport::min_slack)
      .def_readonly("worst_seed", &orbivol::verify::TrialReport::worst_seed)
      .def_readonly("elapsed_seconds", &orbivol::verify::TrialReport::elapsed_seconds)
      .def("__repr__", [](const orbivol::verify::TrialReport& r) {
        return "TrialReport(" + r.lemma_id + ", trials=" +
               std::to_string(r.trials) + ", violations=" +
               std::to_string(r.violations) + ")";
      });

  m.def(
      "compute_bound",
      [](int n, int k) { return orbivol::compute_bound({n, k}); },
      py::arg("n"), py::arg("k"),
      "Maximize the log objective over the radius; returns a BoundResult.");
  m.def("log_kappa", &orbivol::log_kappa, py::arg("r"));
  m.def("log_packing_count", &orbivol::log_packing_count, py::arg("n"),
        py::arg("k"), py::arg("r"));
  m.def("log_objective", &orbivol::log_objective, py::arg("n"), py::arg("k"),
        py::arg("r"));
  m.def("sphere_area", &orbivol::sphere_area, py::arg("n"));
  m.def("ball_volume", &orbivol::ball_volume, py::arg("n"), py::arg("r"));
  m.def("log_ball_volume", &orbivol::log_ball_volume, py::arg("n"), py::arg("r"));
  m.def(
      "hurwitz_bound",
      [](double volume, int n, int k) { return orbivol::hurwitz_bound(volume, n, k); },
      py::arg("volume"), py::arg("n"), py::arg("k"),
      "floor(volume / A(n,k)); None when the ratio exceeds 2^63.");
  m.def(
      "hurwitz_out_bound",
      [](double volume, int n, int k) {
        return orbivol::hurwitz_out_bound(volume, n, k);
      },
      py::arg("volume"), py::arg("n"), py::arg("k"));

  m.def("c_k", &orbivol::c_k, py::arg("k"));
  m.def("jorgensen_tau", &orbivol::jorgensen_tau);
  m.def("norm_lower_bound", &orbivol::norm_lower_bound, py::arg("k"),
        py::arg("delta"));

  m.def(
      "operator_norm",
      [](const std::vector<std::vector<double>>& rows) {
        return orbivol::operator_norm(matrix_from_rows(rows));
      },
      py::arg("matrix"), "Largest singular value of a square matrix.");
  m.def(
      "boost",
      [](int n, double delta) {
        return rows_from_matrix(orbivol::boost(n, delta).matrix());
      },
      py::arg("n"), py::arg("delta"));
  m.def(
      "random_isometry",
      [](int n, double max_translation, std::uint64_t seed) {
        return rows_from_matrix(
            orbivol::random_isometry(n, max_translation, seed).matrix());
      },
      py::arg("n"), py::arg("max_translation"), py::arg("seed"));
  m.def(
      "fixed_set_distance",
      [](const std::vector<std::vector<double>>& rows) {
        return orbivol::fixed_set_distance(
            orbivol::LorentzMatrix::checked(matrix_from_rows(rows)));
      },
      py::arg("matrix"));
  m.def(
      "order_of",
      [](const std::vector<std::vector<double>>& rows, int k_max) {
        return orbivol::order_of(
            orbivol::LorentzMatrix::checked(matrix_from_rows(rows)), k_max);
      },
      py::arg("matrix"), py::arg("k_max"));
  m.def(
      "sample_elliptic_matrix",
      [](int n, int k, double delta, std::uint64_t seed) {
        const auto element = orbivol::sample_elliptic(n, k, delta, seed);
        return py::make_tuple(rows_from_matrix(element.matrix().matrix()),
                              element.order(), element.delta());
      },
      py::arg("n"), py::arg("k"), py::arg("delta"), py::arg("seed"),
      "Returns (matrix, order, delta) of a random exact-order-k element.");

  m.def(
      "run_all",
      [](long trials, std::uint64_t seed) {
        return orbivol::verify::run_all({trials, seed});
      },
      py::arg("trials") = 10000, py::arg("seed") = 0,
      "Run every randomized inequality suite; returns the TrialReport list.");
  m.def("check_elliptic_bounds", &orbivol::verify::check_elliptic_bounds,
        py::arg("n"), py::arg("k"), py::arg("trials"), py::arg("seed"));
  m.def("check_entry_bound", &orbivol::verify::check_entry_bound, py::arg("n"),
        py::arg("r"), py::arg("trials"), py::arg("seed"));
  m.def("check_norm_from_entries", &orbivol::verify::check_norm_from_entries,
        py::arg("n"), py::arg("d"), py::arg("trials"), py::arg("seed"));
  m.def("check_product_perturbation", &orbivol::verify::check_product_perturbation,
        py::arg("n"), py::arg("K"), py::arg("L"), py::arg("trials"), py::arg("seed"));
  m.def("check_separated_count", &orbivol::verify::check_separated_count,
        py::arg("p"), py::arg("q"), py::arg("s"), py::arg("trials"), py::arg("seed"));

  m.attr("__version__") = "0.1.0";
}
