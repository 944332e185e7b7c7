#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "aniso/opspec.hpp"
#include "oracles.hpp"

#include <random>

using namespace aniso;

TEST_CASE("complex literal round trip") {
  for (Complex z : {Complex(1, 0), Complex(0, -1), Complex(-2.5, 3.75),
                    Complex(1e-17, -2e8), Complex(0, 0)}) {
    CHECK(parse_complex(format_complex(z)) == z);
  }
  CHECK(parse_complex("i") == Complex(0, 1));
  CHECK(parse_complex("-i") == Complex(0, -1));
  CHECK(parse_complex("2i") == Complex(0, 2));
  CHECK(parse_complex("1.5e-3+2e2i") == Complex(1.5e-3, 2e2));
  CHECK(parse_complex(" 1 + 2i ") == Complex(1, 2));
  CHECK_THROWS(parse_complex("1+2"));
  CHECK_THROWS(parse_complex("abc"));
}

TEST_CASE("builtin lines parse with plain and Greek keys") {
  const auto gn = parse_spec("builtin gn3\n");
  CHECK(gn.variant == OperatorSpec::Variant::Builtin);
  CHECK(gn.builtin_name == "gn3");

  const auto kms = parse_spec("builtin kms κ=2 λ=3 N=1\n");
  CHECK(kms.builtin_params.at("kappa") == 2.0);
  CHECK(kms.builtin_params.at("lambda") == 3.0);
  CHECK(kms.builtin_params.at("N") == 1.0);
  const auto kms2 = parse_spec("builtin kms kappa=2 lambda=3 N=1\n");
  CHECK(kms2.builtin_params == kms.builtin_params);
}

TEST_CASE("gn3 realization matches the paper configuration") {
  const auto realized = realize(parse_spec("builtin gn3\n"));
  CHECK(realized.pattern.dim() == 3);
  CHECK(realized.pattern[0] == doctest::Approx(1.5));
  CHECK(realized.pattern[1] == doctest::Approx(0.75));
  CHECK(realized.omega.ambient_dim == 2);
  CHECK(realized.A.has_value());
  std::mt19937_64 rng(41);
  const RealVector z = random_sphere_point(3, rng);
  ComplexVector dir(2);
  dir << z[0], z[1] * z[1] + z[2] * z[2];
  CHECK(realized.omega(z).contains(dir, 1e-10));
}

TEST_CASE("kms realization and unknown builtins") {
  const auto realized = realize(parse_spec("builtin kms kappa=1 lambda=1 N=1\n"));
  CHECK(realized.omega.ambient_dim == 2);
  CHECK(realized.pattern[0] == doctest::Approx(1.0));
  CHECK_THROWS_AS(realize(parse_spec("builtin nonsense\n")), std::domain_error);
  CHECK_THROWS_AS(realize(parse_spec("builtin kms N=1\n")), std::domain_error);
}

namespace {
const char* kGnByTerms =
    "# GN system written out as explicit terms\n"
    "dim 3\n"
    "pattern 3/2 3/4 3/4\n"
    "spaces 2 1\n"
    "term 1 0 0 : 1+0i ; 0+0i\n"
    "term 0 2 0 : 0+0i ; 1+0i\n"
    "term 0 0 2 : 0+0i ; 1+0i\n";
}

TEST_CASE("term-based spec equals the builtin bundle") {
  const auto spec = parse_spec(kGnByTerms);
  CHECK(spec.variant == OperatorSpec::Variant::Symbol);
  CHECK(spec.dim == 3);
  CHECK(spec.ell == 2);
  CHECK(spec.k == 1);
  const auto realized = realize(spec);
  const auto builtin = realize(parse_spec("builtin gn3\n"));
  std::mt19937_64 rng(42);
  for (int rep = 0; rep < 10; ++rep) {
    const RealVector z = random_sphere_point(3, rng);
    CHECK(distance(realized.omega(z), builtin.omega(z)) <= 1e-10);
  }
}

TEST_CASE("parse errors carry the offending line") {
  // malformed exponent row
  try {
    parse_spec("dim 2\npattern 1 1\nspaces 2 1\nterm 1 x : 1+0i ; 0+0i\n");
    CHECK(false);
  } catch (const ParseError& e) {
    CHECK(e.line() == 4);
    CHECK(std::string(e.what()).find("line 4") != std::string::npos);
  }
  // wrong exponent arity
  CHECK_THROWS_AS(parse_spec("dim 2\npattern 1 1\nspaces 2 1\nterm 1 : 1+0i ; 0+0i\n"),
                  ParseError);
  // matrix shape mismatch
  CHECK_THROWS_AS(parse_spec("dim 2\npattern 1 1\nspaces 2 1\nterm 1 0 : 1+0i\n"),
                  ParseError);
  // pattern arity mismatch
  CHECK_THROWS_AS(parse_spec("dim 3\npattern 1 1\nspaces 2 1\nterm 1 0 0 : 1+0i ; 0+0i\n"),
                  ParseError);
  // inhomogeneous term set
  CHECK_THROWS_AS(
      parse_spec("dim 2\npattern 1 1\nspaces 1 1\nterm 1 0 : 1+0i\nterm 0 2 : 1+0i\n"),
      ParseError);
  // trailing garbage
  CHECK_THROWS_AS(parse_spec(std::string(kGnByTerms) + "wibble 3\n"), ParseError);
  // missing header
  CHECK_THROWS_AS(parse_spec("term 1 0 : 1+0i\n"), ParseError);
  // builtin mixed with explicit lines
  CHECK_THROWS_AS(parse_spec("builtin gn3\ndim 2\n"), ParseError);
}

TEST_CASE("serialize/parse is the identity on canonical forms") {
  std::vector<std::string> sources{
      "builtin gn3\n",
      "builtin kms kappa=2 lambda=3 N=1\n",
      kGnByTerms,
      "dim 2\npattern 1 1\nspaces 2 1\n"
      "term 1 0 : 1+0i ; 0+0i\nterm 0 1 : 0+0i ; 1+0i\n"
      "pterm 1 0 : 0.5-0.25i\n",
  };
  for (const auto& src : sources) {
    const auto spec = parse_spec(src);
    const auto canonical = serialize(spec);
    const auto reparsed = parse_spec(canonical);
    CHECK(reparsed == spec);
    CHECK(serialize(reparsed) == canonical);
  }
}

TEST_CASE("sampled bundle: interpolation through the samples") {
  std::ostringstream src;
  src << "dim 2\npattern 1 1\nspaces 2 1\n";
  const int n = 32;
  for (int i = 0; i < n; ++i) {
    const double t = 2.0 * std::numbers::pi * i / n;
    // line bundle spanned by (cos t/2? ...) use smooth field (cos t, sin t)
    src << "sample " << std::cos(t) << ' ' << std::sin(t) << " : " << std::cos(t)
        << "+0i ; " << std::sin(t) << "+0i\n";
  }
  const auto spec = parse_spec(src.str());
  CHECK(spec.variant == OperatorSpec::Variant::Samples);
  const auto realized = realize(spec);
  CHECK(realized.omega.kind == BundleKind::Sampled);
  // at the sample nodes the fiber reproduces the sampled line
  for (int i = 0; i < n; i += 5) {
    const double t = 2.0 * std::numbers::pi * i / n;
    RealVector z(2);
    z << std::cos(t), std::sin(t);
    ComplexVector dir(2);
    dir << std::cos(t), std::sin(t);
    CHECK(realized.omega(z).contains(dir, 1e-8));
  }
  // between nodes it stays a 1-dimensional subspace close to the field
  for (int i = 0; i < n; i += 3) {
    const double t = 2.0 * std::numbers::pi * (i + 0.4) / n;
    RealVector z(2);
    z << std::cos(t), std::sin(t);
    ComplexVector dir(2);
    dir << std::cos(t), std::sin(t);
    const auto fiber = realized.omega(z);
    CHECK(fiber.dim() == 1);
    CHECK((fiber.project(dir) - dir).norm() <= 0.05);
  }
  // off-sphere sample nodes are rejected
  CHECK_THROWS_AS(
      parse_spec("dim 2\npattern 1 1\nspaces 2 1\nsample 1 1 : 1+0i ; 0+0i\n"),
      ParseError);
}

TEST_CASE("named functionals") {
  const auto omega = realize(parse_spec("builtin constant d=2 l=2 k=1\n")).omega;
  const auto first = named_functional("first-coord", omega);
  const auto coord1 = named_functional("coord:1", omega);
  RealVector z(2);
  z << 1.0, 0.0;
  CHECK((first.row(z) - coord1.row(z)).norm() == 0.0);
  const auto weighted = named_functional("zeta:1:coord:1", omega);
  CHECK(std::abs(weighted.row(z)(0) - Complex(1.0, 0.0)) <= 1e-14);
  CHECK_THROWS_AS(named_functional("coord:7", omega), std::domain_error);
  CHECK_THROWS_AS(named_functional("wat", omega), std::domain_error);
}
