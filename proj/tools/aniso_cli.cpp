// Command-line frontend: parse operator specs, run cancellation checks and
// embedding experiments, emit text or JSON reports.
//
// Exit codes: 0 = check passed / experiment completed with no flags,
// 1 = check failed, 2 = usage or parse error, 3 = numerical flag
// (ill-conditioning, unresolved windows, failed extension solve).

#include "aniso/experiments.hpp"
#include "aniso/opspec.hpp"
#include "aniso/report.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

namespace {

using namespace aniso;

struct CommonOpts {
  std::string builtin;
  std::string spec_path;
  std::string functional;
  std::string format = "text";
  std::string output;
  long seed = 12345;
  double tol = 1e-8;
  int nodes = 0;  // 0 = module default
};

void add_spec_options(CLI::App* cmd, CommonOpts& o) {
  cmd->add_option("--builtin", o.builtin, "builtin spec name (gn3, kms, gradient, constant)");
  cmd->add_option("--spec", o.spec_path, "operator-spec file");
  cmd->add_option("--functional", o.functional,
                  "functional name: first-coord, coord:<j>, zeta:<i>:coord:<j>");
}

void add_report_options(CLI::App* cmd, CommonOpts& o) {
  cmd->add_option("--format", o.format, "text|json")->check(CLI::IsMember({"text", "json"}));
  cmd->add_option("--output", o.output, "write the report to a file instead of stdout");
  cmd->add_option("--seed", o.seed, "seed for any random sampling (recorded in the report)");
  cmd->add_option("--tol", o.tol, "decision tolerance")->check(CLI::PositiveNumber);
  cmd->add_option("--nodes", o.nodes, "sphere quadrature size (d=2) / polar count (d=3)");
}

OperatorSpec load_spec(const CommonOpts& o) {
  if (!o.builtin.empty() && !o.spec_path.empty())
    throw CLI::ValidationError("--builtin and --spec are mutually exclusive");
  if (!o.builtin.empty()) {
    OperatorSpec s;
    s.variant = OperatorSpec::Variant::Builtin;
    std::istringstream in(o.builtin);
    std::string name, kv;
    in >> name;
    s.builtin_name = name;
    while (in >> kv) {
      const auto eq = kv.find('=');
      if (eq == std::string::npos)
        throw CLI::ValidationError("builtin parameter '" + kv + "' is not key=value");
      s.builtin_params[kv.substr(0, eq)] = std::stod(kv.substr(eq + 1));
    }
    return s;
  }
  if (o.spec_path.empty())
    throw CLI::ValidationError("one of --builtin or --spec is required");
  std::ifstream in(o.spec_path);
  if (!in) throw CLI::ValidationError("cannot open spec file '" + o.spec_path + "'");
  std::ostringstream text;
  text << in.rdbuf();
  return parse_spec(text.str());
}

SphereQuadrature make_quadrature(int dim, int nodes) {
  if (nodes <= 0) return SphereQuadrature::standard(dim);
  return dim == 2 ? SphereQuadrature::circle(nodes)
                  : SphereQuadrature::sphere(nodes, 2 * nodes);
}

std::vector<TruncationWindow> parse_windows(const std::string& text) {
  std::vector<TruncationWindow> out;
  for (const auto& part : [&] {
         std::vector<std::string> parts;
         std::string cur;
         for (char c : text) {
           if (c == ',') {
             parts.push_back(cur);
             cur.clear();
           } else {
             cur += c;
           }
         }
         if (!cur.empty()) parts.push_back(cur);
         return parts;
       }()) {
    const auto colon = part.find(':');
    if (colon == std::string::npos)
      throw CLI::ValidationError("window '" + part + "' is not eps:R");
    out.emplace_back(std::stod(part.substr(0, colon)), std::stod(part.substr(colon + 1)));
  }
  return out;
}

std::vector<TruncationWindow> default_windows(const SpectralGeometry& geom, int count) {
  const double eps = 4.0 * geom.eta_min();
  const double r_top = 0.25 * geom.eta_max();
  std::vector<TruncationWindow> out;
  for (int i = 0; i < count; ++i) {
    const double r = eps * std::pow(r_top / (2.0 * eps), i / double(count - 1)) * 2.0;
    out.emplace_back(eps, r);
  }
  return out;
}

int emit(const Report& report, const CommonOpts& o) {
  std::string rendered =
      (o.format == "json") ? report.to_json().dump(2) + "\n" : report.to_text();
  if (!o.output.empty()) {
    std::ofstream out(o.output, std::ios::binary);
    if (!out) {
      std::cerr << "error: cannot write '" << o.output << "'\n";
      return 2;
    }
    out << rendered;
  } else {
    std::cout << rendered;
  }
  if (report.status == "ill-conditioned") return 3;
  if (report.status == "failed") return 1;
  return 0;
}

SphereKernel named_kernel(const std::string& name) {
  if (name == "one") return [](const RealVector&) { return Complex(1.0, 0.0); };
  if (name == "zeta1") return [](const RealVector& z) { return Complex(z[0], 0.0); };
  if (name == "zeta2") return [](const RealVector& z) { return Complex(z[1], 0.0); };
  if (name == "zeta1zeta2")
    return [](const RealVector& z) { return Complex(z[0] * z[1], 0.0); };
  throw CLI::ValidationError("unknown kernel '" + name +
                             "' (use one, zeta1, zeta2, zeta1zeta2)");
}

HomogeneityPattern parse_pattern(const std::string& text) {
  std::vector<double> vals;
  std::string cur;
  auto flush = [&] {
    if (cur.empty()) return;
    const auto slash = cur.find('/');
    vals.push_back(slash == std::string::npos
                       ? std::stod(cur)
                       : std::stod(cur.substr(0, slash)) / std::stod(cur.substr(slash + 1)));
    cur.clear();
  };
  for (char c : text) {
    if (c == ',') {
      flush();
    } else {
      cur += c;
    }
  }
  flush();
  RealVector a(static_cast<int>(vals.size()));
  for (size_t i = 0; i < vals.size(); ++i) a[static_cast<int>(i)] = vals[i];
  return HomogeneityPattern(a);
}

int run_check(const CommonOpts& o) {
  const OperatorSpec spec = load_spec(o);
  const RealizedSpec realized = realize(spec, o.tol);
  const SphereQuadrature quad = make_quadrature(realized.pattern.dim(), o.nodes);

  Report report;
  report.command = "check";
  report.seed = o.seed;
  report.params = Json{{"spec", serialize(spec)},
                       {"functional", o.functional},
                       {"tol", o.tol},
                       {"quad_nodes", quad.size()}};

  CancellationReport result;
  bool passed;
  if (!o.functional.empty() || realized.B) {
    const FunctionalField B = realized.B && o.functional.empty()
                                  ? *realized.B
                                  : named_functional(o.functional, realized.omega);
    result = weak_cancellation_check(B, realized.omega, realized.pattern, quad, o.tol);
    passed = result.weakly_canceling;
  } else {
    result = canceling_check(realized.omega, quad, o.tol);
    passed = result.is_canceling;
  }
  report.results = to_json(result);
  if (result.ill_conditioned) report.flags.push_back("ill-conditioned-intersection");
  if (!result.refinement_stable) report.flags.push_back("refinement-unstable");
  report.status = !report.flags.empty() ? "ill-conditioned" : (passed ? "ok" : "failed");
  if (!passed && report.status == "ok") report.status = "failed";
  return emit(report, o);
}

int run_extend(const CommonOpts& o, int basis_size) {
  const OperatorSpec spec = load_spec(o);
  const RealizedSpec realized = realize(spec, o.tol);
  const SphereQuadrature quad = make_quadrature(realized.pattern.dim(), o.nodes);
  if (o.functional.empty() && !realized.B)
    throw CLI::ValidationError("extend requires --functional (or a spec with pterm lines)");
  const FunctionalField B = realized.B && o.functional.empty()
                                ? *realized.B
                                : named_functional(o.functional, realized.omega);

  Report report;
  report.command = "extend";
  report.seed = o.seed;
  report.params = Json{{"spec", serialize(spec)},
                       {"functional", o.functional},
                       {"basis_size", basis_size},
                       {"quad_nodes", quad.size()}};

  const FunctionalField ext =
      extend_functional(B, realized.omega, realized.pattern, quad, basis_size);

  // validate the total cancellation on a 2x finer rule
  const SphereQuadrature fine = quad.refined();
  const int l = realized.omega.ambient_dim;
  double worst = 0.0;
  for (int j = 0; j < l; ++j) {
    CompensatedSum<Complex> integral;
    CompensatedSum<double> size;
    for (int i = 0; i < fine.size(); ++i) {
      const RealVector z = fine.node(i);
      const Complex val = ext.row(z)(j);
      const double jw = fine.weights[i] * jacobian(z, realized.pattern);
      integral.add(jw * val);
      size.add(jw * std::abs(val));
    }
    worst = std::max(worst,
                     std::abs(integral.value()) / std::max(size.value(), 1e-300));
  }
  const auto holder = holder_estimate_map(
      realized.pattern.dim(),
      [&](const RealVector& z1, const RealVector& z2) {
        return (ext.row(z1) - ext.row(z2)).norm();
      },
      200, static_cast<unsigned long>(o.seed));

  report.results = Json{{"cancellation_residual_fine", worst},
                        {"holder", to_json(holder)}};
  report.status = "ok";
  return emit(report, o);
}

int run_mikhlin(const CommonOpts& o, const std::string& kernel_name,
                const std::string& pattern_text, const std::string& windows_text,
                int grid_n) {
  const HomogeneityPattern pattern = parse_pattern(pattern_text);
  const SphereKernel K = named_kernel(kernel_name);
  const SphereQuadrature quad = make_quadrature(pattern.dim(), o.nodes);

  Report report;
  report.command = "mikhlin";
  report.seed = o.seed;

  GridShape shape;
  shape.dim = pattern.dim();
  shape.n = grid_n > 0 ? grid_n : (pattern.dim() == 2 ? 1024 : 128);

  std::vector<TruncationWindow> windows;
  if (!windows_text.empty()) {
    windows = parse_windows(windows_text);
  } else {
    const double h = shape.spacing();
    for (double q : {2.0, 6.0, 18.0, 54.0, 160.0}) windows.emplace_back(3.0 * h, 3.0 * h * q);
  }

  report.params = Json{{"kernel", kernel_name},
                       {"pattern", pattern_text},
                       {"grid_n", shape.n},
                       {"quad_nodes", quad.size()}};

  const auto kernel_report = kernel_ft_sup_experiment(K, pattern, windows, shape);
  const std::vector<double> scales{0.5, 0.25, 0.125, 0.0625, 0.03125};
  const auto dini =
      dini_modulus(K, pattern.dim(), scales, 400, static_cast<unsigned long>(o.seed));
  report.results = Json{{"experiment", to_json(kernel_report)}, {"dini", to_json(dini)}};
  for (const auto& row : kernel_report.rows)
    if (!row.resolved) report.flags.push_back("unresolved-window");
  report.status = !report.flags.empty()
                      ? "ill-conditioned"
                      : (kernel_report.mikhlin.passes ? "ok" : "failed");
  return emit(report, o);
}

int run_embed(const CommonOpts& o, const std::string& windows_text, int grid_n,
              int family_count, bool linf) {
  const OperatorSpec spec = load_spec(o);
  const RealizedSpec realized = realize(spec, o.tol);
  const int d = realized.pattern.dim();

  GridShape shape;
  shape.dim = d;
  shape.n = grid_n > 0 ? grid_n : (d == 2 ? 1024 : 128);
  SpectralGeometry geom(shape, realized.pattern);

  std::vector<TruncationWindow> windows = windows_text.empty()
                                              ? default_windows(geom, 5)
                                              : parse_windows(windows_text);

  Report report;
  report.command = linf ? "embed-linf" : "embed-l2";
  report.seed = o.seed;
  report.params = Json{{"spec", serialize(spec)},
                       {"functional", o.functional},
                       {"grid_n", shape.n},
                       {"family_count", family_count}};

  const auto family = make_test_family(realized.omega, geom, family_count,
                                       static_cast<unsigned long>(o.seed));
  EmbeddingReport result;
  if (linf) {
    const FunctionalField B = realized.B && o.functional.empty()
                                  ? *realized.B
                                  : named_functional(
                                        o.functional.empty() ? "coord:1" : o.functional,
                                        realized.omega);
    result = linfty_embedding_experiment(B, geom, family, windows);
  } else {
    result = l2_embedding_experiment(geom, family, windows);
  }
  report.results = to_json(result);
  for (const auto& row : result.rows)
    if (!row.resolved) report.flags.push_back("unresolved-window");
  report.status = report.flags.empty() ? "ok" : "ill-conditioned";
  return emit(report, o);
}

int run_bilinear(const CommonOpts& o, const BilinearFamily& fam, double cutoff, int nodes) {
  Report report;
  report.command = "bilinear";
  report.seed = o.seed;
  report.params = Json{{"kappa", fam.kappa},       {"lambda", fam.lambda},
                       {"alpha", fam.alpha},       {"beta", fam.beta},
                       {"tau1", complex_json(fam.tau1)},
                       {"sigma1", complex_json(fam.sigma1)},
                       {"cutoff", cutoff},         {"nodes", nodes}};
  const Complex sphere = bilinear_family_sphere_integral(fam, nodes);
  const Complex reduced = bilinear_reduced_integral(fam, cutoff);
  const Complex combined = bilinear_reduced_combined(fam, cutoff);
  report.results = Json{{"sphere_integral", complex_json(sphere)},
                        {"reduced_integral", complex_json(reduced)},
                        {"reduced_combined", complex_json(combined)},
                        {"predicted_zero", bilinear_predicted_zero(fam)}};
  report.status = "ok";
  return emit(report, o);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"anisotropic multiplier cancellation toolkit"};
  app.require_subcommand(1);

  CommonOpts opts;

  auto* check = app.add_subcommand("check", "canceling / weak-cancellation decision");
  add_spec_options(check, opts);
  add_report_options(check, opts);

  auto* extend = app.add_subcommand("extend", "construct the cancelling extension B-tilde");
  int basis_size = 25;
  add_spec_options(extend, opts);
  add_report_options(extend, opts);
  extend->add_option("--basis-size", basis_size, "sphere basis functions per coordinate");

  auto* mikhlin = app.add_subcommand("mikhlin", "kernel cancellation + truncated-FT experiment");
  std::string kernel_name = "one", pattern_text = "1,1", windows_text;
  int grid_n = 0, family_count = 20;
  mikhlin->add_option("--kernel", kernel_name, "one|zeta1|zeta2|zeta1zeta2");
  mikhlin->add_option("--pattern", pattern_text, "comma-separated exponents, e.g. 3/2,3/4,3/4");
  mikhlin->add_option("--windows", windows_text, "eps:R[,eps:R...]");
  mikhlin->add_option("--grid-n", grid_n, "lattice points per dimension");
  add_report_options(mikhlin, opts);

  auto* embl = app.add_subcommand("embed-linf", "L1 -> Linf embedding experiment");
  add_spec_options(embl, opts);
  add_report_options(embl, opts);
  embl->add_option("--windows", windows_text, "eps:R[,eps:R...]");
  embl->add_option("--grid-n", grid_n, "lattice points per dimension");
  embl->add_option("--family-count", family_count, "test functions in the family");

  auto* emb2 = app.add_subcommand("embed-l2", "L1 -> L2 embedding experiment");
  add_spec_options(emb2, opts);
  add_report_options(emb2, opts);
  emb2->add_option("--windows", windows_text, "eps:R[,eps:R...]");
  emb2->add_option("--grid-n", grid_n, "lattice points per dimension");
  emb2->add_option("--family-count", family_count, "test functions in the family");

  auto* bil = app.add_subcommand("bilinear", "bilinear obstruction integrals");
  BilinearFamily fam;
  std::string tau_text = "0+1i", sigma_text = "0+1i";
  double cutoff = 50.0;
  int bil_nodes = 8192;
  bil->add_option("--kappa", fam.kappa)->check(CLI::PositiveNumber);
  bil->add_option("--lambda", fam.lambda)->check(CLI::PositiveNumber);
  bil->add_option("--alpha", fam.alpha);
  bil->add_option("--beta", fam.beta);
  bil->add_option("--tau1", tau_text, "complex, e.g. 0+1i");
  bil->add_option("--sigma1", sigma_text, "complex, e.g. 0-1i");
  bil->add_option("--cutoff", cutoff);
  bil->add_option("--nodes", bil_nodes, "circle quadrature nodes");
  add_report_options(bil, opts);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    app.exit(e);
    return 2;
  }

  try {
    if (check->parsed()) return run_check(opts);
    if (extend->parsed()) return run_extend(opts, basis_size);
    if (mikhlin->parsed())
      return run_mikhlin(opts, kernel_name, pattern_text, windows_text, grid_n);
    if (embl->parsed()) return run_embed(opts, windows_text, grid_n, family_count, true);
    if (emb2->parsed()) return run_embed(opts, windows_text, grid_n, family_count, false);
    if (bil->parsed()) {
      fam.tau1 = parse_complex(tau_text);
      fam.sigma1 = parse_complex(sigma_text);
      return run_bilinear(opts, fam, cutoff, bil_nodes);
    }
  } catch (const CLI::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const aniso::ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 2;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::runtime_error& e) {
    std::cerr << "numerical error: " << e.what() << "\n";
    return 3;
  }
  return 2;
}
