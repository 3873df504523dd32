#include "quatsuper/json_io.hpp"

namespace quatsuper {

Json descriptor_to_json(const RingDescriptor& ring) {
  switch (ring.kind()) {
    case RingKind::Rationals:
      return Json{{"kind", "Q"}};
    case RingKind::PrimeField:
      return Json{{"kind", "Fp"}, {"p", ring.modulus()}};
    case RingKind::ResidueRing:
      return Json{{"kind", "Zn"}, {"n", ring.modulus()}};
  }
  return Json();
}

RingDescriptor descriptor_from_json(const Json& j) {
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "Q") return RingDescriptor::rationals();
  if (kind == "Fp") return RingDescriptor::prime_field(j.at("p").get<std::int64_t>());
  if (kind == "Zn") return RingDescriptor::residue_ring(j.at("n").get<std::int64_t>());
  throw DomainError("unknown ring kind '" + kind + "'");
}

}  // namespace quatsuper
