#include "aniso/opspec.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <sstream>

namespace aniso {

namespace {

std::string trim(const std::string& s) {
  size_t b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  size_t e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split_ws(const std::string& s) {
  std::istringstream is(s);
  std::vector<std::string> out;
  std::string tok;
  while (is >> tok) out.push_back(tok);
  return out;
}

std::vector<std::string> split_on(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(trim(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(trim(cur));
  return out;
}

double parse_number(const std::string& tok, int line) {
  // plain decimal or rational p/q
  const size_t slash = tok.find('/');
  try {
    size_t used = 0;
    if (slash != std::string::npos) {
      const double p = std::stod(tok.substr(0, slash), &used);
      if (used != slash) throw std::invalid_argument(tok);
      const double q = std::stod(tok.substr(slash + 1), &used);
      if (used != tok.size() - slash - 1) throw std::invalid_argument(tok);
      if (q == 0.0) throw ParseError(line, "division by zero in '" + tok + "'");
      return p / q;
    }
    const double v = std::stod(tok, &used);
    if (used != tok.size()) throw std::invalid_argument(tok);
    return v;
  } catch (const ParseError&) {
    throw;
  } catch (const std::exception&) {
    throw ParseError(line, "malformed number '" + tok + "'");
  }
}

int parse_int(const std::string& tok, int line) {
  try {
    size_t used = 0;
    const int v = std::stoi(tok, &used);
    if (used != tok.size()) throw std::invalid_argument(tok);
    return v;
  } catch (const std::exception&) {
    throw ParseError(line, "malformed integer '" + tok + "'");
  }
}

double term_order(const MatrixPolynomial::Term& t, const std::vector<double>& pattern) {
  double m = 0.0;
  for (int j = 0; j < t.exponents.size(); ++j) m += pattern[j] * t.exponents[j];
  return m;
}

ComplexMatrix parse_matrix(const std::string& body, int rows, int cols, int line) {
  const auto row_tokens = split_on(body, ';');
  if (static_cast<int>(row_tokens.size()) != rows)
    throw ParseError(line, "expected " + std::to_string(rows) + " matrix rows, got " +
                               std::to_string(row_tokens.size()));
  ComplexMatrix m(rows, cols);
  for (int r = 0; r < rows; ++r) {
    const auto entries = split_on(row_tokens[r], ',');
    if (static_cast<int>(entries.size()) != cols)
      throw ParseError(line, "expected " + std::to_string(cols) + " entries in matrix row " +
                                 std::to_string(r + 1) + ", got " +
                                 std::to_string(entries.size()));
    for (int c = 0; c < cols; ++c) {
      try {
        m(r, c) = parse_complex(entries[c]);
      } catch (const std::exception& e) {
        throw ParseError(line, std::string(e.what()) + " in matrix entry");
      }
    }
  }
  return m;
}

}  // namespace

Complex parse_complex(const std::string& token) {
  std::string s;
  for (char c : token)
    if (!std::isspace(static_cast<unsigned char>(c))) s += c;
  if (s.empty()) throw std::invalid_argument("empty complex literal");

  auto parse_part = [](const std::string& p) -> double {
    if (p.empty() || p == "+") return 1.0;
    if (p == "-") return -1.0;
    size_t used = 0;
    const double v = std::stod(p, &used);
    if (used != p.size()) throw std::invalid_argument("malformed complex '" + p + "'");
    return v;
  };

  const bool imag_tail = (s.back() == 'i' || s.back() == 'I');
  // find the split between real and imaginary parts: a '+'/'-' that is not
  // the leading sign and not an exponent sign
  size_t split = std::string::npos;
  for (size_t i = 1; i + 1 < s.size() || (i + 1 == s.size() && !imag_tail); ++i) {
    if (i >= s.size()) break;
    if ((s[i] == '+' || s[i] == '-') && s[i - 1] != 'e' && s[i - 1] != 'E') split = i;
  }
  if (imag_tail && split != std::string::npos) {
    const double re = parse_part(s.substr(0, split));
    const double im = parse_part(s.substr(split, s.size() - split - 1));
    return {re, im};
  }
  if (imag_tail) return {0.0, parse_part(s.substr(0, s.size() - 1))};
  if (split != std::string::npos)
    throw std::invalid_argument("malformed complex '" + token + "' (missing trailing i)");
  return {parse_part(s), 0.0};
}

std::string format_complex(Complex z) {
  char buf[80];
  std::snprintf(buf, sizeof(buf), "%.17g%+.17gi", z.real(), z.imag());
  return buf;
}

bool OperatorSpec::operator==(const OperatorSpec& other) const {
  auto terms_equal = [](const std::vector<MatrixPolynomial::Term>& a,
                        const std::vector<MatrixPolynomial::Term>& b) {
    if (a.size() != b.size()) return false;
    for (size_t i = 0; i < a.size(); ++i)
      if (a[i].exponents != b[i].exponents || a[i].coeff != b[i].coeff) return false;
    return true;
  };
  return variant == other.variant && builtin_name == other.builtin_name &&
         builtin_params == other.builtin_params && dim == other.dim &&
         pattern == other.pattern && ell == other.ell && k == other.k &&
         terms_equal(a_terms, other.a_terms) && terms_equal(p_terms, other.p_terms) &&
         samples == other.samples;
}

OperatorSpec parse_spec(const std::string& text) {
  OperatorSpec spec;
  bool saw_builtin = false, saw_dim = false, saw_pattern = false, saw_spaces = false;
  bool saw_body = false;

  std::istringstream stream(text);
  std::string raw;
  int line_no = 0;
  int pattern_line = 0;
  while (std::getline(stream, raw)) {
    ++line_no;
    std::string line = raw;
    const size_t hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;

    const size_t sp = line.find_first_of(" \t");
    const std::string key = (sp == std::string::npos) ? line : line.substr(0, sp);
    const std::string rest = (sp == std::string::npos) ? "" : trim(line.substr(sp + 1));

    if (key == "builtin") {
      if (saw_builtin) throw ParseError(line_no, "duplicate builtin line");
      if (saw_dim || saw_pattern || saw_spaces || saw_body)
        throw ParseError(line_no, "builtin cannot be mixed with explicit spec lines");
      const auto toks = split_ws(rest);
      if (toks.empty()) throw ParseError(line_no, "builtin requires a name");
      spec.variant = OperatorSpec::Variant::Builtin;
      spec.builtin_name = toks[0];
      for (size_t i = 1; i < toks.size(); ++i) {
        const size_t eq = toks[i].find('=');
        if (eq == std::string::npos)
          throw ParseError(line_no, "builtin parameter '" + toks[i] + "' is not key=value");
        std::string pname = toks[i].substr(0, eq);
        if (pname == "κ") pname = "kappa";  // Greek aliases
        if (pname == "λ") pname = "lambda";
        spec.builtin_params[pname] = parse_number(toks[i].substr(eq + 1), line_no);
      }
      saw_builtin = true;
    } else if (key == "dim") {
      if (saw_builtin) throw ParseError(line_no, "dim after builtin");
      if (saw_dim) throw ParseError(line_no, "duplicate dim");
      if (saw_body) throw ParseError(line_no, "header line after term/sample lines");
      spec.dim = parse_int(rest, line_no);
      if (spec.dim < 2) throw ParseError(line_no, "dim must be >= 2");
      saw_dim = true;
    } else if (key == "pattern") {
      if (saw_builtin) throw ParseError(line_no, "pattern after builtin");
      if (saw_pattern) throw ParseError(line_no, "duplicate pattern");
      if (saw_body) throw ParseError(line_no, "header line after term/sample lines");
      for (const auto& t : split_ws(rest)) spec.pattern.push_back(parse_number(t, line_no));
      pattern_line = line_no;
      saw_pattern = true;
    } else if (key == "spaces") {
      if (saw_builtin) throw ParseError(line_no, "spaces after builtin");
      if (saw_spaces) throw ParseError(line_no, "duplicate spaces");
      if (saw_body) throw ParseError(line_no, "header line after term/sample lines");
      const auto toks = split_ws(rest);
      if (toks.size() != 2) throw ParseError(line_no, "spaces expects 'spaces <l> <k>'");
      spec.ell = parse_int(toks[0], line_no);
      spec.k = parse_int(toks[1], line_no);
      if (spec.ell < 1 || spec.k < 1 || spec.k > spec.ell)
        throw ParseError(line_no, "spaces requires 1 <= k <= l");
      saw_spaces = true;
    } else if (key == "term" || key == "pterm") {
      if (saw_builtin) throw ParseError(line_no, "term after builtin");
      if (!saw_dim || !saw_pattern || !saw_spaces)
        throw ParseError(line_no, "term lines require dim, pattern and spaces first");
      if (!spec.samples.empty())
        throw ParseError(line_no, "cannot mix term and sample lines");
      const size_t colon = rest.find(':');
      if (colon == std::string::npos) throw ParseError(line_no, "term is missing ':'");
      const auto exp_toks = split_ws(rest.substr(0, colon));
      if (static_cast<int>(exp_toks.size()) != spec.dim)
        throw ParseError(line_no, "expected " + std::to_string(spec.dim) +
                                      " exponents, got " + std::to_string(exp_toks.size()));
      MatrixPolynomial::Term term;
      term.exponents.resize(spec.dim);
      for (int j = 0; j < spec.dim; ++j) {
        term.exponents[j] = parse_int(exp_toks[j], line_no);
        if (term.exponents[j] < 0) throw ParseError(line_no, "negative exponent");
      }
      const int rows = (key == "term") ? spec.ell : 1;
      term.coeff = parse_matrix(rest.substr(colon + 1), rows, spec.k, line_no);
      auto& dest = (key == "term") ? spec.a_terms : spec.p_terms;
      if (!dest.empty() &&
          std::abs(term_order(term, spec.pattern) - term_order(dest.front(), spec.pattern)) >
              1e-9 * (1.0 + std::abs(term_order(dest.front(), spec.pattern))))
        throw ParseError(line_no, std::string(key) + " breaks a-homogeneity of the symbol");
      dest.push_back(std::move(term));
      spec.variant = OperatorSpec::Variant::Symbol;
      saw_body = true;
    } else if (key == "sample") {
      if (saw_builtin) throw ParseError(line_no, "sample after builtin");
      if (!saw_dim || !saw_pattern || !saw_spaces)
        throw ParseError(line_no, "sample lines require dim, pattern and spaces first");
      if (!spec.a_terms.empty() || !spec.p_terms.empty())
        throw ParseError(line_no, "cannot mix term and sample lines");
      const size_t colon = rest.find(':');
      if (colon == std::string::npos) throw ParseError(line_no, "sample is missing ':'");
      const auto coord_toks = split_ws(rest.substr(0, colon));
      if (static_cast<int>(coord_toks.size()) != spec.dim)
        throw ParseError(line_no, "expected " + std::to_string(spec.dim) + " coordinates");
      OperatorSpec::Sample s;
      s.node.resize(spec.dim);
      for (int j = 0; j < spec.dim; ++j) s.node[j] = parse_number(coord_toks[j], line_no);
      if (std::abs(s.node.norm() - 1.0) > 1e-6)
        throw ParseError(line_no, "sample node is not on the unit sphere");
      s.node.normalize();
      s.frame = parse_matrix(rest.substr(colon + 1), spec.ell, spec.k, line_no);
      const ComplexMatrix gram = s.frame.adjoint() * s.frame;
      if ((gram - ComplexMatrix::Identity(spec.k, spec.k)).norm() > 1e-6)
        throw ParseError(line_no, "sample frame columns are not orthonormal");
      spec.samples.push_back(std::move(s));
      spec.variant = OperatorSpec::Variant::Samples;
      saw_body = true;
    } else {
      throw ParseError(line_no, "unrecognized directive '" + key + "'");
    }
  }

  if (saw_builtin) return spec;
  if (!saw_dim) throw ParseError(line_no, "missing dim");
  if (!saw_pattern) throw ParseError(line_no, "missing pattern");
  if (!saw_spaces) throw ParseError(line_no, "missing spaces");
  if (static_cast<int>(spec.pattern.size()) != spec.dim)
    throw ParseError(pattern_line, "pattern arity does not match dim");
  for (double a : spec.pattern)
    if (!(a > 0.0)) throw ParseError(pattern_line, "pattern exponents must be positive");
  if (spec.a_terms.empty() && spec.samples.empty())
    throw ParseError(line_no, "spec has neither term nor sample lines");
  if (spec.variant == OperatorSpec::Variant::Samples && spec.samples.size() < 2)
    throw ParseError(line_no, "sampled bundles need at least 2 samples");
  return spec;
}

std::string serialize(const OperatorSpec& spec) {
  std::ostringstream out;
  auto num = [](double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return std::string(buf);
  };
  auto matrix = [&](const ComplexMatrix& m) {
    std::string s;
    for (int r = 0; r < m.rows(); ++r) {
      if (r) s += " ; ";
      for (int c = 0; c < m.cols(); ++c) {
        if (c) s += " , ";
        s += format_complex(m(r, c));
      }
    }
    return s;
  };

  if (spec.variant == OperatorSpec::Variant::Builtin) {
    out << "builtin " << spec.builtin_name;
    for (const auto& [k, v] : spec.builtin_params) out << ' ' << k << '=' << num(v);
    out << '\n';
    return out.str();
  }
  out << "dim " << spec.dim << '\n';
  out << "pattern";
  for (double a : spec.pattern) out << ' ' << num(a);
  out << '\n';
  out << "spaces " << spec.ell << ' ' << spec.k << '\n';
  for (const auto& t : spec.a_terms) {
    out << "term";
    for (int j = 0; j < t.exponents.size(); ++j) out << ' ' << t.exponents[j];
    out << " : " << matrix(t.coeff) << '\n';
  }
  for (const auto& t : spec.p_terms) {
    out << "pterm";
    for (int j = 0; j < t.exponents.size(); ++j) out << ' ' << t.exponents[j];
    out << " : " << matrix(t.coeff) << '\n';
  }
  for (const auto& s : spec.samples) {
    out << "sample";
    for (int j = 0; j < s.node.size(); ++j) out << ' ' << num(s.node[j]);
    out << " : " << matrix(s.frame) << '\n';
  }
  return out.str();
}

namespace {

double builtin_param(const OperatorSpec& spec, const std::string& name, double fallback,
                     bool required = false) {
  auto it = spec.builtin_params.find(name);
  if (it == spec.builtin_params.end()) {
    if (required)
      throw std::domain_error("builtin '" + spec.builtin_name + "' requires parameter " + name);
    return fallback;
  }
  return it->second;
}

BundleMap sampled_bundle(const OperatorSpec& spec) {
  std::vector<OperatorSpec::Sample> samples = spec.samples;
  BundleMap b;
  b.sphere_dim = spec.dim;
  b.ambient_dim = spec.ell;
  b.fiber_dim = spec.k;
  b.kind = BundleKind::Sampled;
  b.holder_exponent = 1.0;

  if (spec.dim == 2) {
    // sort by angle; interpolate projectors linearly between neighbors and
    // re-compress to the Grassmannian by eigendecomposition
    std::sort(samples.begin(), samples.end(),
              [](const OperatorSpec::Sample& a, const OperatorSpec::Sample& b) {
                return std::atan2(a.node[1], a.node[0]) < std::atan2(b.node[1], b.node[0]);
              });
    const int k = spec.k;
    b.fiber = [samples, k](const RealVector& zeta) {
      const double theta = std::atan2(zeta[1], zeta[0]);
      auto angle = [](const OperatorSpec::Sample& s) {
        return std::atan2(s.node[1], s.node[0]);
      };
      const int n = static_cast<int>(samples.size());
      int hi = 0;
      while (hi < n && angle(samples[hi]) < theta) ++hi;
      const int i1 = (hi == n) ? 0 : hi;
      const int i0 = (i1 + n - 1) % n;
      double t0 = angle(samples[i0]), t1 = angle(samples[i1]);
      double span = t1 - t0, offs = theta - t0;
      if (span <= 0) span += 2 * std::numbers::pi;
      if (offs < 0) offs += 2 * std::numbers::pi;
      const double t = (span < 1e-14) ? 0.0 : std::clamp(offs / span, 0.0, 1.0);
      const ComplexMatrix pi0 = samples[i0].frame * samples[i0].frame.adjoint();
      const ComplexMatrix pi1 = samples[i1].frame * samples[i1].frame.adjoint();
      const ComplexMatrix blend = (1.0 - t) * pi0 + t * pi1;
      Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(blend);
      return Subspace::from_frame(es.eigenvectors().rightCols(k));
    };
  } else {
    // nearest sample node
    b.fiber = [samples](const RealVector& zeta) {
      double best = std::numeric_limits<double>::infinity();
      const OperatorSpec::Sample* pick = nullptr;
      for (const auto& s : samples) {
        const double d = (s.node - zeta).norm();
        if (d < best) {
          best = d;
          pick = &s;
        }
      }
      return Subspace::from_frame(pick->frame, 1e-5);
    };
  }
  return b;
}

}  // namespace

RealizedSpec realize(const OperatorSpec& spec, double tol) {
  RealizedSpec out;
  if (spec.variant == OperatorSpec::Variant::Builtin) {
    if (spec.builtin_name == "gn3") {
      out.pattern = gn_pattern();
      out.A = gn_symbol();
      out.omega = image_bundle(*out.A, tol);
    } else if (spec.builtin_name == "kms") {
      const int kappa = static_cast<int>(builtin_param(spec, "kappa", 0, true));
      const int lambda = static_cast<int>(builtin_param(spec, "lambda", 0, true));
      const int big_n = static_cast<int>(builtin_param(spec, "N", 1));
      auto [bundle, pat] = kms_bundle(kappa, lambda, big_n);
      out.pattern = pat;
      out.omega = std::move(bundle);
    } else if (spec.builtin_name == "gradient") {
      const int d = static_cast<int>(builtin_param(spec, "d", 2));
      out.pattern = HomogeneityPattern::isotropic(d);
      out.A = gradient_symbol(d);
      out.omega = image_bundle(*out.A, tol);
    } else if (spec.builtin_name == "constant") {
      const int d = static_cast<int>(builtin_param(spec, "d", 2));
      const int ell = static_cast<int>(builtin_param(spec, "l", 1));
      const int k = static_cast<int>(builtin_param(spec, "k", 1));
      out.pattern = HomogeneityPattern::isotropic(d);
      out.omega = constant_coordinate_bundle(d, ell, k);
    } else {
      throw std::domain_error("unknown builtin identifier '" + spec.builtin_name + "'");
    }
    return out;
  }

  RealVector a(spec.dim);
  for (int j = 0; j < spec.dim; ++j) a[j] = spec.pattern[j];
  out.pattern = HomogeneityPattern(a);

  if (spec.variant == OperatorSpec::Variant::Samples) {
    out.omega = sampled_bundle(spec);
    return out;
  }

  out.A = MatrixPolynomial::from_terms(spec.ell, spec.k, out.pattern, spec.a_terms);
  out.omega = image_bundle(*out.A, tol);
  if (!spec.p_terms.empty()) {
    out.P = MatrixPolynomial::from_terms(1, spec.k, out.pattern, spec.p_terms);
    out.B = functional_from_operator(*out.A, *out.P, tol);
  }
  return out;
}

FunctionalField named_functional(const std::string& name, const BundleMap& omega) {
  if (name == "first-coord") return coordinate_functional(omega, 0);
  auto starts = [&](const std::string& p) { return name.rfind(p, 0) == 0; };
  if (starts("coord:")) {
    const int j = std::stoi(name.substr(6));
    return coordinate_functional(omega, j - 1);
  }
  if (starts("zeta:")) {
    // zeta:<i>:coord:<j>
    const size_t c = name.find(":coord:");
    if (c == std::string::npos)
      throw std::domain_error("named_functional: expected zeta:<i>:coord:<j>");
    const int zi = std::stoi(name.substr(5, c - 5)) - 1;
    const int vj = std::stoi(name.substr(c + 7)) - 1;
    if (zi < 0 || zi >= omega.sphere_dim || vj < 0 || vj >= omega.ambient_dim)
      throw std::domain_error("named_functional: index out of range");
    FunctionalField f;
    f.bundle = omega;
    f.row = [omega, zi, vj](const RealVector& zeta) -> ComplexRowVector {
      return zeta[zi] * omega.projector(zeta).row(vj);
    };
    f.extended = false;
    f.order = 0.0;
    f.order_admissible = true;
    return f;
  }
  throw std::domain_error("unknown functional '" + name + "'");
}

}  // namespace aniso
