// Acceptance suite: one PASS/FAIL line per criterion, exit status 0 iff all pass.

#include <chrono>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "quatsuper/verify.hpp"

using namespace quatsuper;

namespace {

struct Outcome {
  bool passed = true;
  std::ostringstream detail;

  void require(bool condition, const std::string& what) {
    if (!condition) {
      if (passed) detail << "first failure: ";
      else detail << "; ";
      detail << what;
      passed = false;
    }
  }
};

int failures = 0;

void criterion(int number, const std::string& name, const std::function<void(Outcome&)>& body) {
  const auto start = std::chrono::steady_clock::now();
  Outcome out;
  try {
    body(out);
  } catch (const std::exception& e) {
    out.require(false, std::string("exception: ") + e.what());
  }
  const auto ms =
      std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start).count();
  std::cout << (out.passed ? "PASS" : "FAIL") << " [" << number << "] " << name << " (" << ms << " ms): "
            << out.detail.str() << std::endl;
  if (!out.passed) ++failures;
}

template <class S>
std::string label(const AlgebraPtr<S>& alg) {
  return alg->ring().name() + "(a=" + format_element(alg->a()) + ",b=" + format_element(alg->b()) + ")";
}

/// Exactly the degree-0 shape: only (3,4) and (4,3) nonzero, (3,4) = -a (4,3).
template <class S>
bool even_shape(const QuaternionAlgebra<S>& alg, const Mat4<S>& m) {
  for (int r = 0; r < 4; ++r) {
    for (int c = 0; c < 4; ++c) {
      if ((r == 2 && c == 3) || (r == 3 && c == 2)) continue;
      if (!is_zero(m(r, c))) return false;
    }
  }
  return !is_zero(m(3, 2)) && m(2, 3) == -(alg.a() * m(3, 2));
}

/// Exactly the degree-1 shape: (1,3) = mu, (1,4) = nu, (3,2) = -nu/b, (4,2) = mu/b.
template <class S>
bool odd_shape(const QuaternionAlgebra<S>& alg, const Mat4<S>& m) {
  for (int r = 0; r < 4; ++r) {
    for (int c = 0; c < 4; ++c) {
      if ((r == 0 && (c == 2 || c == 3)) || ((r == 2 || r == 3) && c == 1)) continue;
      if (!is_zero(m(r, c))) return false;
    }
  }
  const S b_inv = *try_invert(alg.b());
  return m(2, 1) == -(b_inv * m(0, 3)) && m(3, 1) == b_inv * m(0, 2);
}

template <class S>
void derivation_dimensions(Outcome& out, const AlgebraPtr<S>& alg) {
  const auto even = superderivation_space(alg, Parity::Even);
  const auto odd = superderivation_space(alg, Parity::Odd);
  out.require(even.dim() == 1, label(alg) + ": dim Der_0 = " + std::to_string(even.dim()));
  out.require(odd.dim() == 2, label(alg) + ": dim Der_1 = " + std::to_string(odd.dim()));
  for (const auto& v : even.basis) {
    const Mat4<S> m = linmap_from_flat(alg, v).matrix();
    out.require(even_shape(*alg, m), label(alg) + ": degree-0 basis vector has the wrong shape");
    out.require(oracle::leibniz_holds(alg->a(), alg->b(), m, 0), label(alg) + ": degree-0 basis fails Leibniz");
  }
  for (const auto& v : odd.basis) {
    const Mat4<S> m = linmap_from_flat(alg, v).matrix();
    out.require(odd_shape(*alg, m), label(alg) + ": degree-1 basis vector has the wrong shape");
    out.require(oracle::leibniz_holds(alg->a(), alg->b(), m, 1), label(alg) + ": degree-1 basis fails Leibniz");
  }
  if (odd.dim() == 2) out.require(rank(odd.as_matrix(alg->ring()), alg->ring()) == 2, label(alg) + ": degree-1 basis dependent");
}

struct LocalTally {
  int maps = 0;
  int derivations = 0;
  int disagreements = 0;
};

void local_trial(LocalTally& tally, const LinMap<ModInt>& delta, Parity degree) {
  ++tally.maps;
  const LocalVerdict<ModInt> verdict = classify_local(delta, degree);
  const bool local = static_cast<bool>(exhaustive_local_check(delta, degree));
  bool ok = verdict.is_derivation() == local;
  if (verdict.is_derivation()) {
    ++tally.derivations;
    ok = ok && static_cast<bool>(is_superderivation(delta, degree)) &&
         oracle::leibniz_holds(delta.algebra()->a(), delta.algebra()->b(), delta.matrix(), bit(degree));
  } else {
    ok = ok && !pointwise_solvable(delta, degree, *verdict.witness);
  }
  if (!ok) ++tally.disagreements;
}

void local_sweep_acceptance(Outcome& out, const AlgebraPtr<ModInt>& alg, std::mt19937_64& rng) {
  const RingDescriptor& ring = alg->ring();
  for (Parity degree : {Parity::Even, Parity::Odd}) {
    LocalTally tally;
    for (int t = 0; t < 10000; ++t) local_trial(tally, random_linmap(alg, rng), degree);
    // Uniform maps are almost never local, so add closed forms with at most
    // one entry changed.
    for (int t = 0; t < 600; ++t) {
      Mat4<ModInt> m = (degree == Parity::Even
                            ? DerivationParams<ModInt>::even(random_element<ModInt>(ring, rng))
                            : DerivationParams<ModInt>::odd(random_element<ModInt>(ring, rng), random_element<ModInt>(ring, rng)))
                           .to_matrix(*alg);
      if (t % 2) m(static_cast<int>(rng() % 4), static_cast<int>(rng() % 4)) += random_element<ModInt>(ring, rng);
      local_trial(tally, LinMap<ModInt>(alg, m), degree);
    }
    for (const auto& delta : structured_local_candidates(alg, degree)) local_trial(tally, delta, degree);
    out.detail << label(alg) << " degree " << to_string(degree) << ": " << tally.maps << " maps, " << tally.derivations
               << " derivations, " << tally.disagreements << " disagreements; ";
    out.require(tally.disagreements == 0, label(alg) + " degree " + to_string(degree) + " has disagreements");
    out.require(tally.derivations > 0, label(alg) + " degree " + to_string(degree) + " produced no derivations");
  }
}

template <class S>
void inner_outer(Outcome& out, const AlgebraPtr<S>& alg) {
  const InnerSummary s = inner_summary(alg);
  MatrixX<S> rows(4, kLinMapUnknowns);
  for (int p = 0; p < 4; ++p) {
    const LinMap<S> inner = inner_superderivation(Quaternion<S>::basis(alg, p));
    rows.row(p) = flatten(inner).transpose();
    auto [even, odd] = degree_split(inner);
    out.require(oracle::leibniz_holds(alg->a(), alg->b(), even.matrix(), 0) &&
                    oracle::leibniz_holds(alg->a(), alg->b(), odd.matrix(), 1),
                label(alg) + ": I_" + basis_name(p) + " fails the Leibniz oracle");
  }
  const Eigen::Index span = rank(rows, alg->ring());
  out.require(span == 3, label(alg) + ": inner span has dimension " + std::to_string(span));
  out.require(s.inner_in_derivations, label(alg) + ": an inner map lies outside Der_s");
  out.require(s.derivation_dim == 3, label(alg) + ": dim Der_s = " + std::to_string(s.derivation_dim));
  out.require(outer_dimension(alg) == 0, label(alg) + ": outer dimension nonzero");
  out.detail << label(alg) << ": Inn " << span << ", Der " << s.derivation_dim << ", Out " << s.outer_dim() << "; ";
}

template <class S>
oracle::Table<S> table_of(const BilinMap<S>& b) {
  oracle::Table<S> t(4, std::vector<Vec4<S>>(4));
  for (int p = 0; p < 4; ++p) {
    for (int q = 0; q < 4; ++q) t[p][q] = b.value(p, q);
  }
  return t;
}

template <class S>
void degree_zero_biderivations(Outcome& out, const AlgebraPtr<S>& alg) {
  for (Symmetry sym : {Symmetry::SuperSkew, Symmetry::Any}) {
    const auto space = biderivation_space(alg, {Parity::Even, sym});
    const std::string tag = label(alg) + " (0," + to_string(sym) + ")";
    out.require(space.dim() == 1, tag + ": dim " + std::to_string(space.dim()));
    for (const auto& v : space.basis) {
      const BilinMap<S> b = bilinmap_from_flat(alg, v);
      const S lambda = canonical_lambda(b);
      out.require(!is_zero(lambda) && canonical_family(alg, lambda) == b, tag + ": basis not proportional to the family");
      out.require(oracle::biderivation_holds(alg->a(), alg->b(), table_of(b), 0), tag + ": basis fails the identity oracle");
    }
  }
  const BilinMap<S> family = canonical_family(alg, alg->one());
  // 64 basis triples, two identities each.
  out.require(static_cast<bool>(is_super_biderivation(family, Parity::Even)), label(alg) + ": family fails the checker");
  out.require(oracle::biderivation_holds(alg->a(), alg->b(), table_of(family), 0), label(alg) + ": family fails the oracle");

  const RealPartAdjudication<S> adj = adjudicate_real_part(alg);
  const auto space = biderivation_space(alg, {Parity::Even, Symmetry::SuperSkew});
  const BilinMap<S> basis = bilinmap_from_flat(alg, space.basis.front());
  const S normalised = basis.value(2, 2)(0) * *try_invert(canonical_lambda(basis));
  const auto j = Quaternion<S>::basis(alg, 2);
  out.require(adj.consistent_with_eval && normalised == canonical_eval(alg->one(), j, j)[0],
              label(alg) + ": solver and canonical_eval disagree on x3y3");
  out.require(adj.certified == -alg->b(), label(alg) + ": x3y3 coefficient is not -b");
  out.detail << label(alg) << ": x3y3 coefficient " << format_element(adj.certified) << " (-b), displayed -ab = "
             << format_element(adj.displayed) << (adj.displayed_certified ? " agrees" : " refuted") << "; ";
}

template <class S>
void vanishing_biderivations(Outcome& out, const AlgebraPtr<S>& alg) {
  const std::vector<BiderivationSpec> specs{{Parity::Even, Symmetry::SuperSymmetric},
                                            {Parity::Odd, Symmetry::SuperSkew},
                                            {Parity::Odd, Symmetry::SuperSymmetric},
                                            {Parity::Odd, Symmetry::Any}};
  out.detail << label(alg) << ":";
  for (const auto& spec : specs) {
    const auto dim = biderivation_space(alg, spec).dim();
    out.detail << " (" << to_string(spec.degree) << "," << to_string(spec.symmetry) << ")=" << dim;
    out.require(dim == 0, label(alg) + " (" + to_string(spec.degree) + "," + to_string(spec.symmetry) + ") has dim " +
                              std::to_string(dim));
  }
  out.detail << "; ";
}

template <class S>
void algebra_laws(Outcome& out, const AlgebraPtr<S>& alg) {
  out.require(associative_on_basis(*alg), label(alg) + ": associativity");
  out.require(super_anticommutative_on_basis(*alg), label(alg) + ": super-anticommutativity");
  out.require(grading_multiplicative_on_basis(alg), label(alg) + ": grading");
  const BilinMap<S> family = canonical_family(alg, alg->scalar(3));
  for (int p = 0; p < 4; ++p) {
    const LinMap<S> slice = left_slice(family, p);
    const Parity deg = basis_parity(p);
    out.require(static_cast<bool>(is_superderivation(slice, deg)) &&
                    oracle::leibniz_holds(alg->a(), alg->b(), slice.matrix(), bit(deg)),
                label(alg) + ": left slice at " + basis_name(p) + " is not a superderivation");
  }
  // Product table against the hand-expanded formula.
  for (int p = 0; p < 4; ++p) {
    for (int q = 0; q < 4; ++q) {
      const Vec4<S> ep = alg->unit_vector(p), eq = alg->unit_vector(q);
      out.require(coeff_equal(alg->multiply(ep, eq), oracle::product(alg->a(), alg->b(), ep, eq)),
                  label(alg) + ": product table entry differs from the formula");
    }
  }
  out.detail << label(alg) << " ok; ";
}

const RingDescriptor kQ = RingDescriptor::rationals();
const RingDescriptor kF5 = RingDescriptor::prime_field(5);
const RingDescriptor kF7 = RingDescriptor::prime_field(7);

AlgebraPtr<Rational> qalg(const char* a, const char* b) {
  return QuaternionAlgebra<Rational>::create(kQ, parse_element<Rational>(kQ, a), parse_element<Rational>(kQ, b));
}

}  // namespace

int main() {
  const std::vector<AlgebraPtr<Rational>> rationals{qalg("1", "1"), qalg("2", "3"), qalg("-1/2", "5/3")};
  const std::vector<AlgebraPtr<ModInt>> f5{oracle::algebra<ModInt>(kF5, 1, 1), oracle::algebra<ModInt>(kF5, 2, 3),
                                           oracle::algebra<ModInt>(kF5, 4, 2)};
  const std::vector<AlgebraPtr<ModInt>> f7{oracle::algebra<ModInt>(kF7, 1, 1), oracle::algebra<ModInt>(kF7, 3, 5),
                                           oracle::algebra<ModInt>(kF7, 6, 2)};

  criterion(1, "derivation-space dimensions and closed-form shapes", [&](Outcome& out) {
    for (const auto& alg : rationals) derivation_dimensions(out, alg);
    for (const auto& alg : f5) derivation_dimensions(out, alg);
    for (const auto& alg : f7) derivation_dimensions(out, alg);
    if (out.passed) out.detail << "dim Der_0 = 1 and dim Der_1 = 2 with exact shapes over 9 algebras (Q, F_5, F_7)";
  });

  criterion(2, "local superderivations are superderivations (classifier vs exhaustive sweep)", [&](Outcome& out) {
    std::mt19937_64 rng(20240601);
    local_sweep_acceptance(out, oracle::algebra<ModInt>(RingDescriptor::prime_field(3), 1, 2), rng);
    local_sweep_acceptance(out, oracle::algebra<ModInt>(kF5, 2, 3), rng);
  });

  criterion(3, "inner superderivations span Der_s, outer dimension 0", [&](Outcome& out) {
    inner_outer(out, rationals[1]);
    inner_outer(out, f5[1]);
    inner_outer(out, f7[1]);
  });

  criterion(4, "degree-0 super-biderivations are the canonical family", [&](Outcome& out) {
    degree_zero_biderivations(out, rationals[1]);
    degree_zero_biderivations(out, rationals[2]);
    degree_zero_biderivations(out, f5[2]);
    degree_zero_biderivations(out, f7[1]);
  });

  criterion(5, "remaining super-biderivation classes vanish", [&](Outcome& out) {
    vanishing_biderivations(out, rationals[1]);
    vanishing_biderivations(out, f5[1]);
    vanishing_biderivations(out, f7[1]);
  });

  criterion(6, "algebraic laws and unary slices", [&](Outcome& out) {
    for (const auto& alg : rationals) algebra_laws(out, alg);
    for (const auto& alg : f5) algebra_laws(out, alg);
    for (const auto& alg : f7) algebra_laws(out, alg);
  });

  std::cout << (failures == 0 ? "all acceptance criteria passed" : std::to_string(failures) + " criteria failed")
            << std::endl;
  return failures == 0 ? 0 : 1;
}
