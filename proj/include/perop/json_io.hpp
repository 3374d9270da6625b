#pragma once

#include "perop/classification.hpp"
#include "perop/permutation.hpp"
#include "perop/spectrum.hpp"
#include "perop/vectors.hpp"

#include "json.hpp"

#include <optional>
#include <variant>
#include <vector>

namespace perop {

using Json = nlohmann::json;

// Serialization is strict both ways: unknown keys, duplicate indices, float
// coefficients and mismatched formulas raise SchemaError instead of being
// guessed around.  parse(to_json(x)) == x structurally for every type here.

Json to_json(const UnitScalar& v);
UnitScalar unit_scalar_from_json(const Json& j);

Json to_json(const SpectrumSpec& s);
SpectrumSpec spectrum_from_json(const Json& j);

Json to_json(const PermutationSpec& s);
PermutationSpec permutation_from_json(const Json& j);

using AnyVector = std::variant<ExactVector, GroupedVector>;
Json to_json(const ExactVector& x);
Json to_json(const GroupedVector& x);
Json to_json(const AnyVector& x);
AnyVector vector_from_json(const Json& j);

Json to_json(const PeriodicClassification& c);

// Integers that may exceed 64 bits travel as decimal strings; anything that
// fits is emitted as a JSON number.  Parsing accepts both forms.
Json bigint_to_json(const BigInt& v);
BigInt bigint_from_json(const Json& j, const char* context);

struct OracleParams {
  std::int64_t d = 128;
  BigInt max_m = 16384;
  double tol = 1e-9;
  bool operator==(const OracleParams&) const = default;
};

struct SpecFile {
  std::variant<SpectrumSpec, PermutationSpec> op;
  std::vector<AnyVector> vectors;
  std::optional<OracleParams> oracle;
};
SpecFile spec_file_from_json(const Json& j);
Json to_json(const SpecFile& f);

}  // namespace perop
