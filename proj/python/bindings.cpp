#include <pybind11/eigen.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "fraclap/acceptance.hpp"
#include "fraclap/cli.hpp"
#include "fraclap/errors.hpp"
#include "fraclap/forms.hpp"
#include "fraclap/hardy.hpp"
#include "fraclap/kernel.hpp"
#include "fraclap/operator.hpp"
#include "fraclap/spectral.hpp"
#include "fraclap/specfun.hpp"

namespace py = pybind11;
using namespace fraclap;

namespace {

QuadratureSpec quad_with(double rel_tol) {
  QuadratureSpec q = QuadratureSpec::from_environment();
  if (rel_tol > 0.0) q.rel_tol = rel_tol;
  q.validate();
  return q;
}

py::dict estimate_dict(const Estimate& e) {
  py::dict d;
  d["value"] = e.value;
  d["err_bound"] = e.err_bound;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Fractional Laplacian kernels and Hardy inequalities on the integer lattice";

  py::register_exception<CertificationError>(m, "CertificationError", PyExc_ValueError);
  py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
  py::register_exception<ConvergenceError>(m, "ConvergenceError", PyExc_ArithmeticError);

  m.def("log_gamma", &specfun::log_gamma, py::arg("x"));
  m.def("gamma_ratio", &specfun::gamma_ratio, py::arg("a"), py::arg("b"));
  m.def("heat_kernel", &specfun::heat_kernel, py::arg("t"), py::arg("x"));

  m.def(
      "kappa",
      [](double alpha, long x, const std::string& backend, double rel_tol) {
        const KernelOrder order(alpha);
        const Backend b = backend.empty() ? default_backend(order) : parse_backend(backend);
        return KernelEvaluator(order, b, quad_with(rel_tol))(x);
      },
      py::arg("alpha"), py::arg("x"), py::arg("backend") = "", py::arg("rel_tol") = 0.0,
      "kappa_alpha(x); backend is closed, heat or fourier (default depends on the sign of alpha).");
  m.def(
      "kappa_table",
      [](double alpha, long max_abs, const std::string& backend) {
        const KernelOrder order(alpha);
        const Backend b = backend.empty() ? default_backend(order) : parse_backend(backend);
        return KernelEvaluator(order, b).table(max_abs);
      },
      py::arg("alpha"), py::arg("max_abs"), py::arg("backend") = "");
  m.def(
      "kappa_regularized",
      [](double beta, double eps, long x) { return kappa_regularized(beta, eps, x, quad_with(0.0)); },
      py::arg("beta"), py::arg("eps"), py::arg("x"));
  m.def("asymptotic_constant", [](double alpha) { return asymptotic_constant(KernelOrder(alpha)); },
        py::arg("alpha"));
  m.def("total_mass", [](double sigma) { return estimate_dict(total_mass_estimate(sigma)); }, py::arg("sigma"));

  m.def("c_sigma", &c_sigma, py::arg("sigma"));
  m.def("critical_alpha", &critical_alpha, py::arg("sigma"));
  m.def("weight_cr", &weight_cr, py::arg("sigma"), py::arg("x"));
  m.def(
      "weight_family", [](double sigma, double alpha, long x) { return weight_family(sigma, alpha, x); },
      py::arg("sigma"), py::arg("alpha"), py::arg("x"));
  m.def("leading_constant", &leading_constant, py::arg("sigma"), py::arg("alpha"));
  m.def(
      "constant_scan",
      [](double sigma, double step) {
        const ConstantScan s = constant_scan(sigma, alpha_grid(sigma, step));
        py::dict d;
        d["argmax"] = s.argmax;
        d["maximum"] = s.maximum;
        d["alphas"] = s.alphas;
        d["constants"] = s.constants;
        return d;
      },
      py::arg("sigma"), py::arg("step") = 1e-3);

  m.def(
      "apply_fractional",
      [](double sigma, const std::vector<long>& support, const std::vector<double>& values, long x, long radius) {
        return estimate_dict(apply_fractional(sigma, LatticeFunction(support, values), x, radius));
      },
      py::arg("sigma"), py::arg("support"), py::arg("values"), py::arg("x"), py::arg("radius") = 1000);
  m.def(
      "verify_kappa_identity",
      [](double sigma, double alpha, long x, long radius) {
        const IdentityCheck c = verify_kappa_identity(sigma, alpha, x, radius);
        py::dict d;
        d["value"] = c.value;
        d["target"] = c.target;
        d["residual"] = c.residual;
        d["err_bound"] = c.err_bound;
        d["passed"] = c.passed();
        return d;
      },
      py::arg("sigma"), py::arg("alpha"), py::arg("x"), py::arg("radius") = 100000);

  m.def(
      "q_form",
      [](double sigma, const std::vector<long>& support, const std::vector<double>& values) {
        return estimate_dict(q_form(sigma, LatticeFunction(support, values)));
      },
      py::arg("sigma"), py::arg("support"), py::arg("values"));
  m.def(
      "gst_identity_residual",
      [](double sigma, double alpha, const std::vector<long>& support, const std::vector<double>& values) {
        const GstCheck c = gst_identity_residual(sigma, alpha, LatticeFunction(support, values));
        py::dict d;
        d["lhs"] = c.lhs;
        d["rhs"] = c.rhs;
        d["residual"] = c.residual;
        d["err_bound"] = c.err_bound;
        d["passed"] = c.passed();
        return d;
      },
      py::arg("sigma"), py::arg("alpha"), py::arg("support"), py::arg("values"));
  m.def("random_function",
        [](std::uint64_t seed, long lo, long hi) {
          const LatticeFunction f = LatticeFunction::random(seed, lo, hi);
          return py::make_tuple(f.support(), f.values());
        },
        py::arg("seed"), py::arg("lo"), py::arg("hi"));
  m.def("null_sequence", &null_sequence, py::arg("n"), py::arg("x"));
  m.def(
      "null_sequence_energy",
      [](double sigma, double alpha, long n) { return estimate_dict(null_sequence_energy(sigma, alpha, n)); },
      py::arg("sigma"), py::arg("alpha"), py::arg("n"));
  m.def(
      "null_criticality_sums",
      [](double sigma, double alpha, const std::vector<long>& grid) {
        return null_criticality_sums(sigma, alpha, grid);
      },
      py::arg("sigma"), py::arg("alpha"), py::arg("grid"));

  m.def("min_eigenvalue", &min_eigenvalue, py::arg("matrix"));
  m.def(
      "form_matrix",
      [](double sigma, long n, long annulus) {
        const Window w = annulus >= 0 ? Window::annulus(annulus, n) : Window::symmetric(n);
        FormMatrix fm = build_form_matrix(sigma, w);
        return py::make_tuple(fm.window.indices(), fm.entries);
      },
      py::arg("sigma"), py::arg("n"), py::arg("annulus") = -1);
  m.def(
      "hardy_matrix_check",
      [](double sigma, long n, double scale) {
        return hardy_matrix_check(sigma, HardyWeight::cr(sigma).scaled(scale), n);
      },
      py::arg("sigma"), py::arg("n"), py::arg("scale") = 1.0);
  m.def(
      "optimality_probe",
      [](double sigma, double lambda, long k, long n) {
        return optimality_probe(sigma, HardyWeight::cr(sigma), lambda, k, n);
      },
      py::arg("sigma"), py::arg("lambda_"), py::arg("k"), py::arg("n"));

  m.def(
      "run_criterion",
      [](int id, std::optional<double> sigma) {
        AcceptanceOptions opts;
        opts.sigma = sigma;
        const CriterionResult r = run_criterion(id, opts);
        py::dict d;
        d["id"] = r.id;
        d["name"] = r.name;
        d["passed"] = r.passed;
        d["detail"] = r.detail;
        return d;
      },
      py::arg("id"), py::arg("sigma") = py::none(), py::call_guard<py::gil_scoped_release>());
  m.def(
      "run_cli",
      [](const std::vector<std::string>& args) {
        std::ostringstream out;
        std::ostringstream err;
        const int code = cli::run(args, out, err);
        return py::make_tuple(code, out.str(), err.str());
      },
      py::arg("args"), "Runs a CLI command; returns (exit_code, stdout, stderr).");
}
