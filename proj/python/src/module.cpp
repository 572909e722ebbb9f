#include <pybind11/functional.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>

#include "gpfast/baseline.hpp"
#include "gpfast/demo.hpp"
#include "gpfast/errors.hpp"
#include "gpfast/ess.hpp"
#include "gpfast/kernels.hpp"
#include "gpfast/linalg.hpp"
#include "gpfast/mvn.hpp"
#include "gpfast/toeplitz.hpp"

namespace py = pybind11;
using namespace gpfast;

namespace {

using Array = py::array_t<double, py::array::c_style | py::array::forcecast>;

Vector to_vector(const Array& a) {
  if (a.ndim() != 1) throw py::value_error("expected a 1-d array");
  return Vector(a.data(), a.data() + a.size());
}

Matrix to_matrix(const Array& a) {
  if (a.ndim() != 2) throw py::value_error("expected a 2-d array");
  Matrix m(static_cast<std::size_t>(a.shape(0)), static_cast<std::size_t>(a.shape(1)));
  std::copy(a.data(), a.data() + a.size(), m.data().begin());
  return m;
}

Array to_array(const Matrix& m) {
  Array out({m.rows(), m.cols()});
  std::copy(m.data().begin(), m.data().end(), out.mutable_data());
  return out;
}

Array to_array(std::span<const double> v) {
  Array out(static_cast<py::ssize_t>(v.size()));
  std::copy(v.begin(), v.end(), out.mutable_data());
  return out;
}

// Exactly one of `sigma` (dense) and `toeplitz_row` must be given.
Covariance covariance(const std::optional<Array>& sigma, const std::optional<Array>& toeplitz_row) {
  if (sigma.has_value() == toeplitz_row.has_value())
    throw py::value_error("pass exactly one of sigma and toeplitz_row");
  if (sigma) return SymPdMatrix(to_matrix(*sigma));
  return SymToeplitz(to_vector(*toeplitz_row));
}

MvnParams params(const Array& mu, const std::optional<Array>& sigma, const std::optional<Array>& toeplitz_row) {
  MvnParams p{to_vector(mu), covariance(sigma, toeplitz_row)};
  p.validate();
  return p;
}

LogLikelihood wrap(const py::function& fn) {
  return [fn](std::span<const double> f) {
    py::gil_scoped_acquire gil;
    return fn(to_array(f)).cast<double>();
  };
}

py::dict chain_dict(const EssChain& c) {
  py::dict d;
  d["samples"] = to_array(c.samples);
  d["loglik_trace"] = to_array(c.loglik_trace);
  d["shrink_counts"] = py::array_t<std::size_t>(static_cast<py::ssize_t>(c.shrink_counts.size()),
                                                c.shrink_counts.data());
  d["seed"] = c.seed;
  return d;
}

EssConfig ess_config(const MvnParams& prior, std::size_t n_iter, std::size_t burn_in, std::uint64_t seed,
                     const std::optional<Array>& initial) {
  EssConfig c;
  c.prior = prior;
  c.n_iter = n_iter;
  c.burn_in = burn_in;
  c.seed = seed;
  if (initial) c.initial = to_vector(*initial);
  return c;
}

}  // namespace

PYBIND11_MODULE(_gpfast, m) {
  m.doc() = "Fast multivariate-normal, Toeplitz and elliptical slice sampling routines";

  const auto error = py::register_exception<Error>(m, "GpfastError", PyExc_RuntimeError);
  py::register_exception<NotPositiveDefinite>(m, "NotPositiveDefinite", error);
  py::register_exception<SingularMatrix>(m, "SingularMatrix", error);
  py::register_exception<DimensionMismatch>(m, "DimensionMismatch", error);
  py::register_exception<NotEvenlySpaced>(m, "NotEvenlySpaced", error);
  py::register_exception<InvalidState>(m, "InvalidState", error);
  py::register_exception<NonFiniteLikelihood>(m, "NonFiniteLikelihood", error);
  py::register_exception<ShrinkLimitExceeded>(m, "ShrinkLimitExceeded", error);
  py::register_exception<IoError>(m, "IoError", error);

  m.def("cholesky", [](const Array& a) { return to_array(cholesky(SymPdMatrix(to_matrix(a))).lower()); },
        py::arg("a"), "Lower Cholesky factor of a symmetric positive-definite matrix.");
  m.def("invert", [](const Array& a) { return to_array(invert(SymPdMatrix(to_matrix(a))).dense()); }, py::arg("a"));
  m.def("log_det", [](const Array& a) { return log_det(SymPdMatrix(to_matrix(a))); }, py::arg("a"));
  m.def("baseline_invert", [](const Array& a) { return to_array(baseline_invert(SymPdMatrix(to_matrix(a))).dense()); },
        py::arg("a"));
  m.def("baseline_log_det", [](const Array& a) { return baseline_log_det(SymPdMatrix(to_matrix(a))); },
        py::arg("a"));

  m.def("durbin", [](const Array& row) {
    const DurbinSolution d = durbin(SymToeplitz(to_vector(row)));
    return py::make_tuple(to_array(d.y), to_array(d.betas));
  }, py::arg("first_row"), "Returns (y, betas) of the Durbin recursion.");
  m.def("trench_invert", [](const Array& row) { return to_array(trench_invert(SymToeplitz(to_vector(row))).dense()); },
        py::arg("first_row"));
  m.def("toeplitz_log_det", [](const Array& row) { return toeplitz_log_det(SymToeplitz(to_vector(row))); },
        py::arg("first_row"));
  m.def("materialize", [](const Array& row) { return to_array(materialize(SymToeplitz(to_vector(row))).dense()); },
        py::arg("first_row"));

  m.def("se_covariance", [](const Array& points, double sigma, double phi, double jitter) {
    return to_array(se_covariance(TimeGrid(to_vector(points)), SeKernelParams{sigma, phi, jitter}).dense());
  }, py::arg("points"), py::arg("sigma") = 1.0, py::arg("phi") = 1.0, py::arg("jitter") = 0.0);
  m.def("se_toeplitz_row", [](const Array& points, double sigma, double phi, double jitter) {
    return to_array(se_covariance_toeplitz(TimeGrid(to_vector(points)), SeKernelParams{sigma, phi, jitter}).first_row());
  }, py::arg("points"), py::arg("sigma") = 1.0, py::arg("phi") = 1.0, py::arg("jitter") = 0.0);

  m.def("log_dmvnorm", [](const Array& x, const Array& mu, std::optional<Array> sigma, std::optional<Array> row) {
    const MvnParams p = params(mu, sigma, row);
    const Vector xv = to_vector(x);
    if (xv.size() != p.dim()) throw DimensionMismatch(p.dim(), xv.size());
    return log_dmvnorm(xv, p);
  }, py::arg("x"), py::arg("mu"), py::arg("sigma") = py::none(), py::arg("toeplitz_row") = py::none());
  m.def("baseline_log_dmvnorm", [](const Array& x, const Array& mu, std::optional<Array> sigma, std::optional<Array> row) {
    const MvnParams p = params(mu, sigma, row);
    const Vector xv = to_vector(x);
    if (xv.size() != p.dim()) throw DimensionMismatch(p.dim(), xv.size());
    return baseline_log_dmvnorm(xv, p);
  }, py::arg("x"), py::arg("mu"), py::arg("sigma") = py::none(), py::arg("toeplitz_row") = py::none());
  m.def("rmvnorm", [](std::size_t count, const Array& mu, std::optional<Array> sigma, std::optional<Array> row,
                      std::uint64_t seed) {
    RngState rng(seed);
    return to_array(rmvnorm(params(mu, sigma, row), count, rng));
  }, py::arg("count"), py::arg("mu"), py::arg("sigma") = py::none(), py::arg("toeplitz_row") = py::none(),
     py::arg("seed") = 0);

  m.def("ess_run", [](const py::function& loglik, const Array& mu, std::optional<Array> sigma,
                      std::optional<Array> row, std::size_t n_iter, std::size_t burn_in, std::uint64_t seed,
                      std::optional<Array> initial) {
    return chain_dict(ess_run(wrap(loglik), ess_config(params(mu, sigma, row), n_iter, burn_in, seed, initial)));
  }, py::arg("loglik"), py::arg("mu"), py::arg("sigma") = py::none(), py::arg("toeplitz_row") = py::none(),
     py::arg("n_iter") = 1000, py::arg("burn_in") = 0, py::arg("seed") = 0, py::arg("initial") = py::none(),
     "Elliptical slice sampling chain. Returns samples, loglik_trace, shrink_counts and seed.");
  m.def("baseline_ess_run", [](const py::function& loglik, const Array& mu, std::optional<Array> sigma,
                               std::optional<Array> row, std::size_t n_iter, std::size_t burn_in,
                               std::uint64_t seed, std::optional<Array> initial) {
    return chain_dict(
        baseline_ess_run(wrap(loglik), ess_config(params(mu, sigma, row), n_iter, burn_in, seed, initial)));
  }, py::arg("loglik"), py::arg("mu"), py::arg("sigma") = py::none(), py::arg("toeplitz_row") = py::none(),
     py::arg("n_iter") = 1000, py::arg("burn_in") = 0, py::arg("seed") = 0, py::arg("initial") = py::none());

  m.def("run_demo", [](std::size_t n, std::size_t iters, std::uint64_t seed, double amplitude, double period,
                       double noise_sd, double sigma, double phi) {
    DemoOptions o;
    o.n = n;
    o.iters = iters;
    o.seed = seed;
    o.amplitude = amplitude;
    o.period = period;
    o.noise_sd = noise_sd;
    o.sigma = sigma;
    o.phi = phi;
    const DemoOutput out = run_demo(o);
    py::dict d;
    d["t"] = to_array(out.t);
    d["truth"] = to_array(out.truth);
    d["observed"] = to_array(out.observed);
    d["posterior_mean"] = to_array(out.posterior_mean);
    d["posterior_sd"] = to_array(out.posterior_sd);
    d["snapshots"] = to_array(out.snapshots);
    d["snapshot_iterations"] = std::vector<std::size_t>(kSnapshotIterations.begin(), kSnapshotIterations.end());
    d["chain"] = chain_dict(out.chain);
    return d;
  }, py::arg("n") = 100, py::arg("iters") = 1000, py::arg("seed") = 42, py::arg("amplitude") = 1.0,
     py::arg("period") = 1.0, py::arg("noise_sd") = 0.001, py::arg("sigma") = 1.0, py::arg("phi") = 1.0);
}
