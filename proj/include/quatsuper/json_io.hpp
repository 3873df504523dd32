#pragma once

// JSON encodings. Ring elements are strings ("3", "-1/2"); readers also accept
// JSON integers. Descriptors are {"kind":"Q"} | {"kind":"Fp","p":5} |
// {"kind":"Zn","n":9}; an algebra is {"ring":..., "a":..., "b":...}.

#include <string>
#include <vector>

#include <json.hpp>

#include "quatsuper/biderivations.hpp"
#include "quatsuper/local.hpp"

namespace quatsuper {

using Json = nlohmann::json;

Json descriptor_to_json(const RingDescriptor& ring);
RingDescriptor descriptor_from_json(const Json& j);

template <ExactScalar Scalar>
Json element_to_json(const Scalar& x) {
  return format_element(x);
}

template <ExactScalar Scalar>
Scalar element_from_json(const RingDescriptor& ring, const Json& j) {
  if (j.is_string()) return parse_element<Scalar>(ring, j.get<std::string>());
  if (j.is_number_integer()) return parse_element<Scalar>(ring, j.dump());
  throw DomainError("ring element must be a string or an integer, got " + j.dump());
}

template <ExactScalar Scalar>
Json algebra_to_json(const QuaternionAlgebra<Scalar>& algebra) {
  return Json{{"ring", descriptor_to_json(algebra.ring())},
              {"a", element_to_json(algebra.a())},
              {"b", element_to_json(algebra.b())}};
}

template <ExactScalar Scalar>
AlgebraPtr<Scalar> algebra_from_json(const Json& j) {
  RingDescriptor ring = descriptor_from_json(j.at("ring"));
  return QuaternionAlgebra<Scalar>::create(ring, element_from_json<Scalar>(ring, j.at("a")),
                                           element_from_json<Scalar>(ring, j.at("b")));
}

namespace detail {

inline const Json& array_of(const Json& j, std::size_t n, const char* what) {
  if (!j.is_array() || j.size() != n) {
    throw DomainError(std::string(what) + " must be an array of " + std::to_string(n) + " entries");
  }
  return j;
}

template <ExactScalar Scalar>
Json vec_to_json(const Vec4<Scalar>& v) {
  Json out = Json::array();
  for (int p = 0; p < 4; ++p) out.push_back(element_to_json(v(p)));
  return out;
}

template <ExactScalar Scalar>
Vec4<Scalar> vec_from_json(const RingDescriptor& ring, const Json& j) {
  array_of(j, 4, "quaternion coefficients");
  Vec4<Scalar> v;
  for (int p = 0; p < 4; ++p) v(p) = element_from_json<Scalar>(ring, j[static_cast<std::size_t>(p)]);
  return v;
}

}  // namespace detail

template <ExactScalar Scalar>
Json quaternion_to_json(const Quaternion<Scalar>& x) {
  return Json{{"coeffs", detail::vec_to_json(x.coeffs())}};
}

template <ExactScalar Scalar>
Quaternion<Scalar> quaternion_from_json(const AlgebraPtr<Scalar>& algebra, const Json& j) {
  return Quaternion<Scalar>(algebra, detail::vec_from_json<Scalar>(algebra->ring(), j.at("coeffs")));
}

template <ExactScalar Scalar>
Json linmap_to_json(const LinMap<Scalar>& m) {
  Json rows = Json::array();
  for (int r = 0; r < 4; ++r) rows.push_back(detail::vec_to_json<Scalar>(m.matrix().row(r).transpose()));
  return Json{{"matrix", rows}};
}

template <ExactScalar Scalar>
LinMap<Scalar> linmap_from_json(const AlgebraPtr<Scalar>& algebra, const Json& j) {
  const Json& rows = detail::array_of(j.at("matrix"), 4, "matrix");
  Mat4<Scalar> m;
  for (int r = 0; r < 4; ++r) m.row(r) = detail::vec_from_json<Scalar>(algebra->ring(), rows[static_cast<std::size_t>(r)]).transpose();
  return LinMap<Scalar>(algebra, m);
}

template <ExactScalar Scalar>
Json bilinmap_to_json(const BilinMap<Scalar>& b) {
  Json rows = Json::array();
  for (int p = 0; p < 4; ++p) {
    Json row = Json::array();
    for (int q = 0; q < 4; ++q) row.push_back(Json{{"coeffs", detail::vec_to_json<Scalar>(b.value(p, q))}});
    rows.push_back(row);
  }
  return Json{{"values", rows}};
}

template <ExactScalar Scalar>
BilinMap<Scalar> bilinmap_from_json(const AlgebraPtr<Scalar>& algebra, const Json& j) {
  const Json& rows = detail::array_of(j.at("values"), 4, "values");
  BilinMap<Scalar> out = BilinMap<Scalar>::zero(algebra);
  for (int p = 0; p < 4; ++p) {
    const Json& row = detail::array_of(rows[static_cast<std::size_t>(p)], 4, "values row");
    for (int q = 0; q < 4; ++q) {
      out.set_value(p, q, detail::vec_from_json<Scalar>(algebra->ring(), row[static_cast<std::size_t>(q)].at("coeffs")));
    }
  }
  return out;
}

template <ExactScalar Scalar>
Json params_to_json(const DerivationParams<Scalar>& params) {
  if (params.degree == Parity::Even) return Json{{"lambda", element_to_json(params.lambda)}};
  return Json{{"mu", element_to_json(params.mu)}, {"nu", element_to_json(params.nu)}};
}

template <ExactScalar Scalar>
DerivationParams<Scalar> params_from_json(const RingDescriptor& ring, const Json& j) {
  if (j.contains("lambda")) return DerivationParams<Scalar>::even(element_from_json<Scalar>(ring, j.at("lambda")));
  return DerivationParams<Scalar>::odd(element_from_json<Scalar>(ring, j.at("mu")),
                                       element_from_json<Scalar>(ring, j.at("nu")));
}

/// {"dim", "basis": [LinMap...], "params_form": [...]}
template <ExactScalar Scalar>
Json derivation_space_to_json(const AlgebraPtr<Scalar>& algebra, const SolutionSpace<Scalar>& space, Parity degree) {
  Json basis = Json::array();
  Json forms = Json::array();
  for (const auto& v : space.basis) {
    LinMap<Scalar> d = linmap_from_flat(algebra, v);
    basis.push_back(linmap_to_json(d));
    forms.push_back(params_to_json(recover_params(d, degree)));
  }
  return Json{{"dim", space.dim()}, {"basis", basis}, {"params_form", forms}};
}

/// {"dim", "basis": [BilinMap...], "params_form": [{"lambda"} | null]}
template <ExactScalar Scalar>
Json biderivation_space_to_json(const AlgebraPtr<Scalar>& algebra, const SolutionSpace<Scalar>& space) {
  Json basis = Json::array();
  Json forms = Json::array();
  for (const auto& v : space.basis) {
    BilinMap<Scalar> b = bilinmap_from_flat(algebra, v);
    basis.push_back(bilinmap_to_json(b));
    const Scalar lambda = canonical_lambda(b);
    forms.push_back(canonical_family(algebra, lambda) == b ? Json{{"lambda", element_to_json(lambda)}} : Json());
  }
  return Json{{"dim", space.dim()}, {"basis", basis}, {"params_form", forms}};
}

/// Basis vectors of a solution-space document; `unknowns` selects 16 (LinMap)
/// or 64 (BilinMap).
template <ExactScalar Scalar>
SolutionSpace<Scalar> solution_space_from_json(const AlgebraPtr<Scalar>& algebra, const Json& j, Eigen::Index unknowns) {
  SolutionSpace<Scalar> space{unknowns, {}};
  for (const Json& item : j.at("basis")) {
    space.basis.push_back(unknowns == kLinMapUnknowns ? flatten(linmap_from_json(algebra, item))
                                                      : flatten(bilinmap_from_json(algebra, item)));
  }
  if (j.at("dim").get<Eigen::Index>() != space.dim()) throw DomainError("dim does not match the basis length");
  return space;
}

template <ExactScalar Scalar>
Json verdict_to_json(const LocalVerdict<Scalar>& verdict) {
  if (verdict.is_derivation()) return Json{{"verdict", "derivation"}, {"params", params_to_json(*verdict.derivation)}};
  return Json{{"verdict", "not_local"},
              {"witness", detail::vec_to_json(verdict.witness->coeffs())},
              {"reason", verdict.reason}};
}

template <ExactScalar Scalar>
LocalVerdict<Scalar> verdict_from_json(const AlgebraPtr<Scalar>& algebra, const Json& j) {
  const std::string kind = j.at("verdict").get<std::string>();
  if (kind == "derivation") return {params_from_json<Scalar>(algebra->ring(), j.at("params")), std::nullopt, {}};
  if (kind == "not_local") {
    Quaternion<Scalar> w(algebra, detail::vec_from_json<Scalar>(algebra->ring(), j.at("witness")));
    return {std::nullopt, w, j.value("reason", std::string())};
  }
  throw DomainError("unknown verdict '" + kind + "'");
}

}  // namespace quatsuper
