#pragma once

#include "aniso/builtins.hpp"
#include "aniso/symbols.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace aniso {

class ParseError : public std::runtime_error {
 public:
  ParseError(int line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

/// "re+imi" with full-precision %.17g parts; parse accepts that form plus
/// pure-real ("1.5"), pure-imaginary ("2i", "-i") and "i" shorthands.
Complex parse_complex(const std::string& token);
std::string format_complex(Complex z);

/// Parsed (not yet realized) operator description. Three variants:
/// a builtin reference, a matrix-polynomial symbol (with optional row
/// symbol P), or explicitly sampled bundle data.
struct OperatorSpec {
  enum class Variant { Builtin, Symbol, Samples };

  Variant variant = Variant::Builtin;

  // builtin
  std::string builtin_name;
  std::map<std::string, double> builtin_params;

  // symbol / samples
  int dim = 0;
  std::vector<double> pattern;  // as written; normalized at realization
  int ell = 0;                  // dim E
  int k = 0;                    // dim V / fiber dimension
  std::vector<MatrixPolynomial::Term> a_terms;
  std::vector<MatrixPolynomial::Term> p_terms;  // optional, 1 x k rows

  struct Sample {
    RealVector node;      // unit vector in R^dim
    ComplexMatrix frame;  // ell x k orthonormal columns
    bool operator==(const Sample& o) const {
      return node == o.node && frame == o.frame;
    }
  };
  std::vector<Sample> samples;

  bool operator==(const OperatorSpec& other) const;
};

/// Parses the operator-spec text format (grammar in the README). Throws
/// ParseError carrying the offending line on any syntax or structural
/// problem; trailing garbage is rejected.
OperatorSpec parse_spec(const std::string& text);

/// Canonical text form; parse_spec(serialize(s)) == s.
std::string serialize(const OperatorSpec& spec);

/// A spec made concrete: pattern + bundle (+ symbols / functional when
/// the spec provides them).
struct RealizedSpec {
  HomogeneityPattern pattern{RealVector::Ones(2)};
  BundleMap omega;
  std::optional<MatrixPolynomial> A;
  std::optional<MatrixPolynomial> P;
  std::optional<FunctionalField> B;  // present when P is given
};

RealizedSpec realize(const OperatorSpec& spec, double tol = 1e-8);

/// Named functionals for the CLI: "first-coord", "coord:<j>" (1-based),
/// "zeta:<i>:coord:<j>" (row = zeta_i e_j^H pi_Omega).
FunctionalField named_functional(const std::string& name, const BundleMap& omega);

}  // namespace aniso
