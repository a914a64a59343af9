#include "fraclap/cli.hpp"

#include <chrono>
#include <cmath>
#include <fstream>
#include <iostream>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "fraclap/acceptance.hpp"
#include "fraclap/errors.hpp"
#include "fraclap/forms.hpp"
#include "fraclap/hardy.hpp"
#include "fraclap/kernel.hpp"
#include "fraclap/operator.hpp"
#include "fraclap/report.hpp"
#include "fraclap/spectral.hpp"

namespace fraclap::cli {
namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

std::string real_text(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

std::vector<long> parse_long_list(const std::string& text, const char* what) {
  std::vector<long> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    long v = 0;
    try {
      v = std::stol(item, &used);
    } catch (const std::exception&) {
      throw DomainError(std::string(what) + ": cannot parse '" + item + "'");
    }
    if (used != item.size()) throw DomainError(std::string(what) + ": cannot parse '" + item + "'");
    out.push_back(v);
  }
  if (out.empty()) throw DomainError(std::string(what) + ": empty list");
  return out;
}

std::pair<long, long> parse_range(const std::string& text) {
  const auto dots = text.find("..");
  if (dots == std::string::npos) throw DomainError("--x-range must look like LO..HI");
  const long lo = parse_long_list(text.substr(0, dots), "--x-range").front();
  const long hi = parse_long_list(text.substr(dots + 2), "--x-range").front();
  if (hi < lo) throw DomainError("--x-range: HI must be >= LO");
  return {lo, hi};
}

struct Common {
  std::string format = "csv";
  std::string out_file;
  bool parallel = false;
  bool timing = false;
};

struct Args {
  double alpha = 0.0;
  double sigma = 0.0;
  std::string x_range;
  std::string backend = "closed";
  std::string points = "0,1,-1,5,-5,20,-20";
  long radius = 100000;
  long trials = 20;
  std::uint64_t seed = 1;
  long support = 10;
  std::string n_list = "100,1000,10000";
  std::string n_grid = "100,1000,10000,100000";
  std::string weight = "cr";
  double scale = 1.0;
  long n = 200;
  long annulus = -1;
  double lambda = 0.0;
  bool search = false;
  double step = 1e-3;
  bool has_alpha = false;
  bool has_sigma = false;
};

RunReport kernel_command(const Args& a) {
  const KernelOrder order(a.alpha);
  const auto [lo, hi] = parse_range(a.x_range);
  const QuadratureSpec quad = QuadratureSpec::from_environment();
  RunReport r;
  r.command = "kernel";
  r.parameters = {{"alpha", real_text(a.alpha)}, {"x_range", a.x_range}, {"backend", a.backend},
                  {"rel_tol", real_text(quad.rel_tol)}};
  if (a.backend == "all") {
    std::vector<Backend> backends = {Backend::heat_integral, Backend::fourier};
    if (order.is_positive()) backends.insert(backends.begin(), Backend::closed_form);
    r.columns = {"x"};
    std::vector<KernelEvaluator> evals;
    for (Backend b : backends) {
      r.columns.push_back(to_string(b));
      evals.emplace_back(order, b, quad);
    }
    r.columns.push_back("max_rel_gap");
    for (long x = lo; x <= hi; ++x) {
      std::vector<Cell> row = {x};
      std::vector<double> vals;
      for (const auto& e : evals) vals.push_back(e(x));
      double gap = 0.0;
      double worst_acc = 0.0;
      for (std::size_t i = 0; i < vals.size(); ++i) {
        row.push_back(vals[i]);
        worst_acc = std::max(worst_acc, evals[i].relative_accuracy());
        for (std::size_t j = i + 1; j < vals.size(); ++j) {
          const double scale = std::max(std::abs(vals[i]), std::abs(vals[j]));
          if (scale > 0.0) gap = std::max(gap, std::abs(vals[i] - vals[j]) / scale);
        }
      }
      row.push_back(gap);
      const double mag = std::abs(vals.front());
      r.add_row(std::move(row), mag == 0.0 ? Cell(kExact) : Cell(worst_acc * mag));
    }
    return r;
  }
  const Backend backend = order.is_zero() ? Backend::fourier : parse_backend(a.backend);
  const KernelEvaluator eval(order, backend, quad);
  r.columns = {"x", "kappa"};
  for (long x = lo; x <= hi; ++x) {
    const double v = eval(x);
    const bool exact = order.is_zero() || (x == 0 && order.is_positive());
    r.add_row({x, v}, exact ? Cell(kExact) : Cell(eval.relative_accuracy() * std::abs(v)));
  }
  return r;
}

RunReport weight_command(const Args& a) {
  const auto [lo, hi] = parse_range(a.x_range);
  const QuadratureSpec quad = QuadratureSpec::from_environment();
  const HardyWeight w = a.has_alpha ? HardyWeight::family(a.sigma, a.alpha, quad) : HardyWeight::cr(a.sigma);
  RunReport r;
  r.command = "weight";
  r.parameters = {{"sigma", real_text(a.sigma)}, {"x_range", a.x_range}, {"weight", w.label()}};
  r.summary["leading_constant"] = w.leading_constant();
  r.columns = {"x", "w", "x^{2sigma}*w"};
  for (long x = lo; x <= hi; ++x) {
    const double v = w(x);
    const double scaled = std::pow(std::abs(static_cast<double>(x)), 2.0 * a.sigma) * v;
    r.add_row({x, v, scaled}, w.relative_accuracy() * std::abs(v));
  }
  return r;
}

RunReport identity_command(const Args& a) {
  const QuadratureSpec quad = QuadratureSpec::from_environment();
  RunReport r;
  r.command = "verify-identity";
  r.parameters = {{"sigma", real_text(a.sigma)}, {"alpha", real_text(a.alpha)}, {"points", a.points},
                  {"radius", std::to_string(a.radius)}};
  r.columns = {"x", "lhs", "target", "residual"};
  bool ok = true;
  for (long x : parse_long_list(a.points, "--points")) {
    const IdentityCheck c = verify_kappa_identity(a.sigma, a.alpha, x, a.radius, quad);
    ok = ok && c.passed();
    r.add_row({x, c.value, c.target, c.residual}, c.err_bound);
  }
  r.verdict = ok ? "pass" : "fail";
  return r;
}

RunReport gst_command(const Args& a, const Common& common) {
  FormConfig cfg;
  cfg.parallel = common.parallel;
  RunReport r;
  r.command = "gst";
  r.parameters = {{"sigma", real_text(a.sigma)}, {"alpha", real_text(a.alpha)}, {"trials", std::to_string(a.trials)},
                  {"seed", std::to_string(a.seed)}, {"support", std::to_string(a.support)},
                  {"generator", "mt19937_64, trial t uses seed+t, v=-1+2*(draw>>11)*2^-53"}};
  r.columns = {"trial", "lhs", "rhs", "residual"};
  if (a.trials < 1) throw DomainError("--trials must be >= 1");
  if (a.support < 0) throw DomainError("--support must be >= 0");
  bool ok = true;
  for (long t = 0; t < a.trials; ++t) {
    const LatticeFunction phi = LatticeFunction::random(a.seed + static_cast<std::uint64_t>(t), -a.support, a.support);
    const GstCheck c = gst_identity_residual(a.sigma, a.alpha, phi, cfg);
    ok = ok && c.passed();
    r.add_row({t, c.lhs, c.rhs, c.residual}, c.err_bound);
  }
  r.verdict = ok ? "pass" : "fail";
  return r;
}

RunReport nullseq_command(const Args& a, const Common& common) {
  FormConfig cfg;
  cfg.parallel = common.parallel;
  RunReport r;
  r.command = "nullseq";
  r.parameters = {{"sigma", real_text(a.sigma)}, {"alpha", real_text(a.alpha)}, {"n_list", a.n_list}};
  r.columns = {"n", "energy"};
  std::vector<double> energies;
  for (long n : parse_long_list(a.n_list, "--n-list")) {
    const Estimate e = null_sequence_energy(a.sigma, a.alpha, n, cfg);
    energies.push_back(e.value);
    r.add_row({n, e.value}, e.err_bound);
  }
  const double hi = *std::max_element(energies.begin(), energies.end());
  const double lo = *std::min_element(energies.begin(), energies.end());
  r.summary["max_over_min"] = hi / lo;
  const bool finite = std::isfinite(hi) && lo > 0.0;
  const bool critical = std::abs(a.alpha - critical_alpha(a.sigma)) < 1e-12;
  if (critical) {
    r.summary["bounded_within_factor_2"] = hi / lo < 2.0;
    r.verdict = finite && hi / lo < 2.0 ? "pass" : "fail";
  } else {
    r.verdict = finite ? "info" : "fail";
  }
  return r;
}

RunReport criticality_command(const Args& a) {
  const QuadratureSpec quad = QuadratureSpec::from_environment();
  const std::vector<long> grid = parse_long_list(a.n_grid, "--n-grid");
  const std::vector<double> sums = null_criticality_sums(a.sigma, a.alpha, grid, quad);
  RunReport r;
  r.command = "criticality-sum";
  r.parameters = {{"sigma", real_text(a.sigma)}, {"alpha", real_text(a.alpha)}, {"n_grid", a.n_grid}};
  r.columns = {"N", "partial_sum"};
  const double rel = shared_evaluator(-a.alpha, quad).relative_accuracy() * 2.0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    r.add_row({grid[i], sums[i]}, rel * sums[i] + static_cast<double>(grid[i] + 1) * kEps * sums[i]);
  }
  if (grid.size() >= 3) {
    const LogFit fit = log_fit(grid, sums);
    r.summary["slope"] = fit.slope;
    r.summary["slope_stderr"] = fit.slope_stderr;
    r.summary["intercept"] = fit.intercept;
    r.summary["r_squared"] = fit.r_squared;
    r.summary["increment_spread"] = fit.increment_spread;
    r.summary["diagnosis"] = fit.diagnosis;
  }
  if (grid.size() >= 2) {
    r.summary["last_relative_increment"] = (sums.back() - sums[sums.size() - 2]) / sums.back();
  }
  return r;
}

HardyWeight parse_weight(const std::string& spec, double sigma, double scale) {
  HardyWeight w = HardyWeight::cr(sigma);
  if (spec.rfind("family:", 0) == 0) {
    const std::string value = spec.substr(7);
    std::size_t used = 0;
    double alpha = 0.0;
    try {
      alpha = std::stod(value, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != value.size()) throw DomainError("--weight family:A needs a number A");
    w = HardyWeight::family(sigma, alpha);
  } else if (spec != "cr") {
    throw DomainError("--weight must be 'cr' or 'family:A'");
  }
  return scale == 1.0 ? w : w.scaled(scale);
}

RunReport spectrum_command(const Args& a, const Common& common) {
  const QuadratureSpec quad = QuadratureSpec::from_environment();
  const HardyWeight w = parse_weight(a.weight, a.sigma, a.scale);
  RunReport r;
  r.command = "spectrum";
  r.parameters = {{"sigma", real_text(a.sigma)}, {"weight", w.label()}, {"N", std::to_string(a.n)},
                  {"lambda", real_text(a.lambda)}};
  const bool annulus = a.annulus >= 0;
  if (annulus) r.parameters["annulus"] = std::to_string(a.annulus);
  r.columns = {"N", "min_eigenvalue"};
  const double mass = total_mass_estimate(a.sigma, quad).value;
  auto bound = [&](long n) {
    const double size = annulus ? 2.0 * static_cast<double>(n - a.annulus) : 2.0 * static_cast<double>(n) + 1.0;
    // Backward-stable eigensolver: |error| <= c·size·eps·||A||, ||A|| <= 2 S_σ + max w.
    return 10.0 * size * kEps * (2.0 * mass + (1.0 + std::abs(a.lambda)) * w(0)) +
           (1.0 + std::abs(a.lambda)) * w.relative_accuracy() * w(0);
  };
  if (!annulus) {
    if (a.lambda != 0.0 || a.search) throw DomainError("--lambda and --search need --annulus K");
    const double e = hardy_matrix_check(a.sigma, w, a.n, quad, common.parallel);
    r.add_row({a.n, e}, bound(a.n));
    r.summary["hardy_inequality_holds"] = e >= -1e-9;
    r.verdict = e >= -1e-9 ? "pass" : "fail";
    return r;
  }
  if (a.search) {
    const ProbeRun run = optimality_search(a.sigma, w, a.lambda, a.annulus, a.n, quad, common.parallel);
    for (std::size_t i = 0; i < run.sizes.size(); ++i) r.add_row({run.sizes[i], run.min_eigenvalues[i]}, bound(run.sizes[i]));
    r.summary["threshold_N"] = run.threshold ? Cell(*run.threshold) : Cell(std::string("none"));
    r.summary["negative"] = run.threshold.has_value();
  } else {
    const double e = optimality_probe(a.sigma, w, a.lambda, a.annulus, a.n, quad, common.parallel);
    r.add_row({a.n, e}, bound(a.n));
    r.summary["negative"] = e < 0.0;
  }
  return r;
}

RunReport scan_command(const Args& a) {
  const ConstantScan scan = constant_scan(a.sigma, alpha_grid(a.sigma, a.step));
  RunReport r;
  r.command = "scan";
  r.parameters = {{"sigma", real_text(a.sigma)}, {"step", real_text(a.step)}};
  r.columns = {"alpha", "leading_constant"};
  for (std::size_t i = 0; i < scan.alphas.size(); ++i) {
    r.add_row({scan.alphas[i], scan.constants[i]}, 1e-13 * scan.constants[i]);
  }
  const double target = critical_alpha(a.sigma);
  const double distance = std::abs(scan.argmax - target);
  const double c = c_sigma(a.sigma);
  r.summary["argmax"] = scan.argmax;
  r.summary["maximum"] = scan.maximum;
  r.summary["critical_alpha"] = target;
  r.summary["distance"] = distance;
  r.summary["c_sigma"] = c;
  r.summary["max_relative_gap_to_c_sigma"] = std::abs(scan.maximum - c) / c;
  r.verdict = distance <= a.step + 1e-12 && std::abs(scan.maximum - c) / c <= 1e-6 ? "pass" : "fail";
  return r;
}

RunReport verify_all_command(const Args& a, const Common& common, std::ostream& err) {
  AcceptanceOptions opts;
  if (a.has_sigma) opts.sigma = a.sigma;
  opts.parallel = common.parallel;
  RunReport r;
  r.command = "verify-all";
  r.parameters["sigma"] = a.has_sigma ? real_text(a.sigma) : "default grids";
  r.columns = {"criterion", "name", "passed", "detail"};
  if (common.timing) r.columns.push_back("seconds");
  bool ok = true;
  run_acceptance(opts, [&](const CriterionResult& c) {
    err << (c.passed ? "[PASS] " : "[FAIL] ") << c.id << " " << c.name << "\n";
    ok = ok && c.passed;
    std::vector<Cell> row = {static_cast<long>(c.id), c.name, c.passed, c.detail};
    if (common.timing) row.push_back(c.seconds);
    r.add_row(std::move(row), kExact);
  });
  r.verdict = ok ? "pass" : "fail";
  return r;
}

void add_common(CLI::App& app, Common& common) {
  app.add_option("--format", common.format, "Output format")->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--out", common.out_file, "Write the report to this file instead of standard output");
  app.add_flag("--parallel", common.parallel, "Parallelize sums (results reproducible to tolerance only)");
  app.add_flag("--timing", common.timing, "Record wall time in the report");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Fractional Laplacian kernels and Hardy inequalities on the integer lattice", "fraclap"};
  app.require_subcommand(1);
  Common common;
  Args a;

  auto* kernel = app.add_subcommand("kernel", "Tabulate kappa_alpha");
  kernel->add_option("--alpha", a.alpha)->required();
  kernel->add_option("--x-range", a.x_range, "LO..HI")->required();
  kernel->add_option("--backend", a.backend)->check(CLI::IsMember({"closed", "heat", "fourier", "all"}));

  auto* weight = app.add_subcommand("weight", "Tabulate w_sigma or w_{sigma,alpha}");
  weight->add_option("--sigma", a.sigma)->required();
  weight->add_option("--alpha", a.alpha);
  weight->add_option("--x-range", a.x_range, "LO..HI")->required();

  auto* identity = app.add_subcommand("verify-identity", "Check Delta^sigma kappa_{-alpha} = kappa_{sigma-alpha}");
  identity->add_option("--sigma", a.sigma)->required();
  identity->add_option("--alpha", a.alpha)->required();
  identity->add_option("--points", a.points, "Comma separated x values");
  identity->add_option("--radius", a.radius);

  auto* gst = app.add_subcommand("gst", "Ground state transform residuals on random functions");
  gst->add_option("--sigma", a.sigma)->required();
  gst->add_option("--alpha", a.alpha)->required();
  gst->add_option("--trials", a.trials);
  gst->add_option("--seed", a.seed);
  gst->add_option("--support", a.support, "Functions live on [-W, W]");

  auto* nullseq = app.add_subcommand("nullseq", "Energies of the null sequence e_n");
  nullseq->add_option("--sigma", a.sigma)->required();
  nullseq->add_option("--alpha", a.alpha)->required();
  nullseq->add_option("--n-list", a.n_list);

  auto* crit = app.add_subcommand("criticality-sum", "Partial sums of kappa_{-alpha} kappa_{sigma-alpha}");
  crit->add_option("--sigma", a.sigma)->required();
  crit->add_option("--alpha", a.alpha)->required();
  crit->add_option("--n-grid", a.n_grid);

  auto* spectrum = app.add_subcommand("spectrum", "Smallest eigenvalue of the windowed Hardy form");
  spectrum->add_option("--sigma", a.sigma)->required();
  spectrum->add_option("--weight", a.weight, "cr or family:A");
  spectrum->add_option("--scale", a.scale, "Multiply the weight by this factor");
  spectrum->add_option("--N", a.n)->required();
  spectrum->add_option("--annulus", a.annulus, "Use the window K < |x| <= N");
  spectrum->add_option("--lambda", a.lambda);
  spectrum->add_flag("--search", a.search, "Probe N = 2K, 4K, ... up to N and stop at the first negative value");

  auto* scan = app.add_subcommand("scan", "Leading constants of w_{sigma,alpha} over alpha");
  scan->add_option("--sigma", a.sigma)->required();
  scan->add_option("--step", a.step);

  auto* all = app.add_subcommand("verify-all", "Run the acceptance suite");
  all->add_option("--sigma", a.sigma, "Restrict every sigma grid to this value");

  for (auto* sub : app.get_subcommands({})) add_common(*sub, common);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kPass;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kPass;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kUsageError;
  }
  a.has_alpha = weight->count("--alpha") > 0;
  a.has_sigma = all->count("--sigma") > 0;

  try {
    const auto start = std::chrono::steady_clock::now();
    RunReport report;
    if (*kernel) report = kernel_command(a);
    else if (*weight) report = weight_command(a);
    else if (*identity) report = identity_command(a);
    else if (*gst) report = gst_command(a, common);
    else if (*nullseq) report = nullseq_command(a, common);
    else if (*crit) report = criticality_command(a);
    else if (*spectrum) report = spectrum_command(a, common);
    else if (*scan) report = scan_command(a);
    else report = verify_all_command(a, common, err);
    report.mode = common.parallel ? "parallel" : "serial";
    if (common.timing) {
      report.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    }
    const std::string text = common.format == "json" ? report.to_json() : report.to_csv();
    if (common.out_file.empty()) {
      out << text;
    } else {
      std::ofstream file(common.out_file, std::ios::binary);
      if (!file) throw DomainError("cannot open output file " + common.out_file);
      file << text;
    }
    return report.verdict == "fail" ? kAssertionFailure : kPass;
  } catch (const ConvergenceError& e) {
    err << "numerical failure: " << e.what() << "\n";
    return kNumericalFailure;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << "\n";
    return kUsageError;
  }
}

}  // namespace fraclap::cli
