// quatsuper: command-line front end for the H^{a,b} solvers.
//
// Exit codes: 0 success (or "yes" for check commands), 1 check failed,
// 2 invalid input or configuration, 3 ring is not a field, 4 internal error.

#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "quatsuper/json_io.hpp"
#include "quatsuper/verify.hpp"

namespace {

using namespace quatsuper;

enum ExitCode { kOk = 0, kCheckFailed = 1, kInvalid = 2, kUnsupported = 3, kInternal = 4 };

struct Config {
  std::string ring = "q";
  std::int64_t p = 0;
  std::int64_t n = 0;
  std::string a = "1";
  std::string b = "1";
  int degree = 0;
  std::string symmetry = "any";
  std::string input = "-";
  std::string output = "-";
  int trials = 500;
};

RingDescriptor make_ring(const Config& cfg) {
  if (cfg.ring == "q") return RingDescriptor::rationals();
  if (cfg.ring == "fp") {
    if (cfg.p == 0) throw DomainError("--ring fp needs --p");
    return RingDescriptor::prime_field(cfg.p);
  }
  if (cfg.n == 0) throw DomainError("--ring zn needs --n");
  return RingDescriptor::residue_ring(cfg.n);
}

Parity degree_of(const Config& cfg) { return cfg.degree == 0 ? Parity::Even : Parity::Odd; }

Symmetry symmetry_of(const Config& cfg) {
  if (cfg.symmetry == "skew") return Symmetry::SuperSkew;
  if (cfg.symmetry == "sym") return Symmetry::SuperSymmetric;
  return Symmetry::Any;
}

std::string read_input(const std::string& path) {
  if (path == "-") return std::string(std::istreambuf_iterator<char>(std::cin), {});
  std::ifstream in(path);
  if (!in) throw DomainError("cannot open input file '" + path + "'");
  return std::string(std::istreambuf_iterator<char>(in), {});
}

Json parse_input(const std::string& path) {
  // nlohmann's parse_error message carries the line/column of the failure.
  return Json::parse(read_input(path));
}

class Output {
 public:
  explicit Output(const std::string& path) {
    if (path != "-") {
      file_.open(path);
      if (!file_) throw DomainError("cannot open output file '" + path + "'");
    }
  }
  std::ostream& stream() { return file_.is_open() ? static_cast<std::ostream&>(file_) : std::cout; }
  void json(const Json& j) { stream() << j.dump(2) << '\n'; }

 private:
  std::ofstream file_;
};

template <ExactScalar Scalar>
AlgebraPtr<Scalar> make_algebra(const Config& cfg) {
  const RingDescriptor ring = make_ring(cfg);
  return QuaternionAlgebra<Scalar>::create(ring, parse_element<Scalar>(ring, cfg.a), parse_element<Scalar>(ring, cfg.b));
}

template <ExactScalar Scalar>
int cmd_derivations(const Config& cfg) {
  auto algebra = make_algebra<Scalar>(cfg);
  const Parity degree = degree_of(cfg);
  Output(cfg.output).json(derivation_space_to_json(algebra, solve_superderivations(algebra, degree), degree));
  return kOk;
}

template <ExactScalar Scalar>
int cmd_check_derivation(const Config& cfg) {
  auto algebra = make_algebra<Scalar>(cfg);
  LinMap<Scalar> d = linmap_from_json(algebra, parse_input(cfg.input));
  DerivationCheck check = is_superderivation(d, degree_of(cfg));
  Json out{{"superderivation", static_cast<bool>(check)}};
  if (check) {
    out["params"] = params_to_json(recover_params(d, degree_of(cfg)));
  } else {
    out["violation"] = check.violation->describe();
  }
  Output(cfg.output).json(out);
  return check ? kOk : kCheckFailed;
}

template <ExactScalar Scalar>
int cmd_check_local(const Config& cfg) {
  auto algebra = make_algebra<Scalar>(cfg);
  LinMap<Scalar> delta = linmap_from_json(algebra, parse_input(cfg.input));
  LocalVerdict<Scalar> verdict = classify_local(delta, degree_of(cfg));
  Output(cfg.output).json(verdict_to_json(verdict));
  return verdict.is_derivation() ? kOk : kCheckFailed;
}

template <ExactScalar Scalar>
int cmd_biderivations(const Config& cfg) {
  auto algebra = make_algebra<Scalar>(cfg);
  const BiderivationSpec spec{degree_of(cfg), symmetry_of(cfg)};
  Output(cfg.output).json(biderivation_space_to_json(algebra, solve_biderivations(algebra, spec)));
  return kOk;
}

template <ExactScalar Scalar>
int cmd_check_biderivation(const Config& cfg) {
  auto algebra = make_algebra<Scalar>(cfg);
  BilinMap<Scalar> b = bilinmap_from_json(algebra, parse_input(cfg.input));
  BiderivationCheck check = is_super_biderivation(b, degree_of(cfg));
  std::optional<std::string> failure;
  if (!check) failure = check.violation->describe();

  const Symmetry symmetry = symmetry_of(cfg);
  if (!failure && symmetry != Symmetry::Any) {
    auto [skew, sym] = symmetry_split(b);
    if (symmetry == Symmetry::SuperSkew && !sym.is_zero()) failure = "map is not super-skew";
    if (symmetry == Symmetry::SuperSymmetric && !skew.is_zero()) failure = "map is not super-symmetric";
  }

  Json out{{"biderivation", !failure}};
  if (failure) {
    out["violation"] = *failure;
  } else {
    const Scalar lambda = canonical_lambda(b);
    out["params"] = canonical_family(algebra, lambda) == b ? Json{{"lambda", element_to_json(lambda)}} : Json();
  }
  Output(cfg.output).json(out);
  return failure ? kCheckFailed : kOk;
}

template <ExactScalar Scalar>
int cmd_inner(const Config& cfg) {
  auto algebra = make_algebra<Scalar>(cfg);
  Json maps = Json::object();
  for (int p = 0; p < 4; ++p) {
    maps[basis_name(p)] = linmap_to_json(inner_superderivation(Quaternion<Scalar>::basis(algebra, p)));
  }
  InnerSummary s = inner_summary(algebra);
  Output(cfg.output).json(Json{{"inner", maps},
                               {"derivation_dim", s.derivation_dim},
                               {"inner_dim", s.inner_dim},
                               {"inner_in_derivations", s.inner_in_derivations},
                               {"outer_dim", s.outer_dim()}});
  return kOk;
}

template <ExactScalar Scalar>
int cmd_verify_theorems(const Config& cfg) {
  auto algebra = make_algebra<Scalar>(cfg);
  VerifyOptions options;
  options.random_local_trials = cfg.trials;
  TheoremReport report = verify_theorems(algebra, options);
  Output out(cfg.output);
  out.stream() << "algebra: H^{" << format_element(algebra->a()) << "," << format_element(algebra->b()) << "} over "
               << algebra->ring().name() << '\n'
               << report.to_text();
  return report.all_passed() ? kOk : kCheckFailed;
}

template <ExactScalar Scalar>
int dispatch(const std::string& command, const Config& cfg) {
  if (command == "derivations") return cmd_derivations<Scalar>(cfg);
  if (command == "check-derivation") return cmd_check_derivation<Scalar>(cfg);
  if (command == "check-local") return cmd_check_local<Scalar>(cfg);
  if (command == "biderivations") return cmd_biderivations<Scalar>(cfg);
  if (command == "check-biderivation") return cmd_check_biderivation<Scalar>(cfg);
  if (command == "inner") return cmd_inner<Scalar>(cfg);
  return cmd_verify_theorems<Scalar>(cfg);
}

int run(const std::string& command, const Config& cfg) {
  try {
    return cfg.ring == "q" ? dispatch<Rational>(command, cfg) : dispatch<ModInt>(command, cfg);
  } catch (const Json::parse_error& e) {
    std::cerr << "error: malformed JSON input: " << e.what() << '\n';
    return kInvalid;
  } catch (const Json::exception& e) {
    std::cerr << "error: unexpected JSON layout: " << e.what() << '\n';
    return kInvalid;
  } catch (const UnsupportedRing& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUnsupported;
  } catch (const InternalContradiction& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return kInternal;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInvalid;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Superderivations and super-biderivations of generalized quaternion algebras H^{a,b}"};
  app.require_subcommand(1);
  Config cfg;

  auto add_algebra = [&cfg](CLI::App* sub) {
    sub->add_option("--ring", cfg.ring, "coefficient ring")->check(CLI::IsMember({"q", "fp", "zn"}));
    sub->add_option("--p", cfg.p, "prime for --ring fp");
    sub->add_option("--n", cfg.n, "modulus for --ring zn");
    sub->add_option("--a", cfg.a, "parameter a (e.g. \"3\", \"-1/2\")");
    sub->add_option("--b", cfg.b, "parameter b");
    sub->add_option("--output", cfg.output, "output file, '-' for stdout");
  };
  auto add_degree = [&cfg](CLI::App* sub) {
    sub->add_option("--degree", cfg.degree, "degree 0 or 1")->check(CLI::IsMember({0, 1}));
  };
  auto add_input = [&cfg](CLI::App* sub) {
    sub->add_option("--input", cfg.input, "JSON input file, '-' for stdin");
  };
  auto add_symmetry = [&cfg](CLI::App* sub) {
    sub->add_option("--symmetry", cfg.symmetry, "any, skew or sym")->check(CLI::IsMember({"any", "skew", "sym"}));
  };

  CLI::App* derivations = app.add_subcommand("derivations", "basis of the superderivations of one degree");
  add_algebra(derivations);
  add_degree(derivations);

  CLI::App* check_derivation = app.add_subcommand("check-derivation", "test a LinMap against the Leibniz rule");
  add_algebra(check_derivation);
  add_degree(check_derivation);
  add_input(check_derivation);

  CLI::App* check_local = app.add_subcommand("check-local", "classify a LinMap as a local superderivation");
  add_algebra(check_local);
  add_degree(check_local);
  add_input(check_local);

  CLI::App* biderivations = app.add_subcommand("biderivations", "basis of the super-biderivations of one class");
  add_algebra(biderivations);
  add_degree(biderivations);
  add_symmetry(biderivations);

  CLI::App* check_biderivation = app.add_subcommand("check-biderivation", "test a BilinMap against L1/L2");
  add_algebra(check_biderivation);
  add_degree(check_biderivation);
  add_symmetry(check_biderivation);
  add_input(check_biderivation);

  CLI::App* inner = app.add_subcommand("inner", "inner superderivations and the outer dimension");
  add_algebra(inner);

  CLI::App* verify = app.add_subcommand("verify-theorems", "run every structural check for one algebra");
  add_algebra(verify);
  verify->add_option("--trials", cfg.trials, "random maps per degree in the local sweep")->check(CLI::NonNegativeNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kInvalid;
  }
  return run(app.get_subcommands().front()->get_name(), cfg);
}
