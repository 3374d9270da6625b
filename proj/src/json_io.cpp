#include "perop/json_io.hpp"

#include <cmath>
#include <regex>
#include <set>
#include <string>

namespace perop {

namespace {

void check_object(const Json& j, std::initializer_list<const char*> allowed,
                  const char* context) {
  if (!j.is_object())
    throw SchemaError(std::string(context) + ": expected an object");
  for (const auto& [key, value] : j.items()) {
    bool ok = false;
    for (const char* a : allowed)
      if (key == a) {
        ok = true;
        break;
      }
    if (!ok)
      throw SchemaError(std::string(context) + ": unknown key '" + key + "'");
  }
}

const Json& require(const Json& j, const char* key, const char* context) {
  auto it = j.find(key);
  if (it == j.end())
    throw SchemaError(std::string(context) + ": missing key '" + key + "'");
  return *it;
}

std::int64_t int64_from_json(const Json& j, const char* context) {
  if (!j.is_number_integer() && !j.is_number_unsigned())
    throw SchemaError(std::string(context) + ": expected an integer");
  return j.get<std::int64_t>();
}

BigRat rational_from_string(const std::string& s, const char* context) {
  static const std::regex pattern(R"(^(-?[0-9]+)(?:/([0-9]+))?$)");
  std::smatch m;
  if (!std::regex_match(s, m, pattern))
    throw SchemaError(std::string(context) + ": '" + s +
                      "' is not an integer or p/q string");
  const BigInt num(m[1].str());
  const BigInt den = m[2].matched ? BigInt(m[2].str()) : BigInt(1);
  if (den == 0)
    throw SchemaError(std::string(context) + ": zero denominator in '" + s +
                      "'");
  return BigRat(num, den);
}

std::string rational_to_string(const BigRat& r) {
  const BigInt num = boost::multiprecision::numerator(r);
  const BigInt den = boost::multiprecision::denominator(r);
  return den == 1 ? num.str() : num.str() + "/" + den.str();
}

// Exact coefficients never travel as floats: a float here is a schema error,
// not a value to round.
BigRat exact_rational_from_json(const Json& j, const char* context) {
  if (j.is_number_integer() || j.is_number_unsigned())
    return BigRat(BigInt(j.get<std::int64_t>()));
  if (j.is_string()) return rational_from_string(j.get<std::string>(), context);
  if (j.is_number_float())
    throw SchemaError(std::string(context) +
                      ": floats are not exact; use an integer or 'p/q' string");
  throw SchemaError(std::string(context) + ": expected integer or 'p/q' string");
}

Json rational_to_json(const BigRat& r) {
  const BigInt num = boost::multiprecision::numerator(r);
  const BigInt den = boost::multiprecision::denominator(r);
  if (den == 1 && num >= std::numeric_limits<std::int64_t>::min() &&
      num <= std::numeric_limits<std::int64_t>::max())
    return Json(num.convert_to<std::int64_t>());
  return Json(rational_to_string(r));
}

ComplexRat complex_from_json(const Json& j, const char* context) {
  check_object(j, {"re", "im"}, context);
  ComplexRat c{0, 0};
  if (j.contains("re")) c.re = exact_rational_from_json(j["re"], context);
  if (j.contains("im")) c.im = exact_rational_from_json(j["im"], context);
  return c;
}

Json complex_to_json(const ComplexRat& c) {
  Json j = Json::object();
  j["re"] = rational_to_json(c.re);
  j["im"] = rational_to_json(c.im);
  return j;
}

}  // namespace

Json bigint_to_json(const BigInt& v) {
  if (v >= std::numeric_limits<std::int64_t>::min() &&
      v <= std::numeric_limits<std::int64_t>::max())
    return Json(v.convert_to<std::int64_t>());
  return Json(v.str());
}

BigInt bigint_from_json(const Json& j, const char* context) {
  if (j.is_number_integer() || j.is_number_unsigned()) {
    if (j.is_number_unsigned()) return BigInt(j.get<std::uint64_t>());
    return BigInt(j.get<std::int64_t>());
  }
  if (j.is_string()) {
    static const std::regex pattern(R"(^-?[0-9]+$)");
    const std::string s = j.get<std::string>();
    if (!std::regex_match(s, pattern))
      throw SchemaError(std::string(context) + ": '" + s +
                        "' is not a decimal integer");
    return BigInt(s);
  }
  throw SchemaError(std::string(context) +
                    ": expected an integer or decimal string");
}

Json to_json(const UnitScalar& v) {
  Json j = Json::object();
  if (v.is_rational()) {
    j["kind"] = "rational";
    j["p"] = bigint_to_json(v.rational_value().p);
    j["q"] = bigint_to_json(v.rational_value().q);
  } else {
    j["kind"] = "irrational";
    j["t_formula"] =
        v.is_sqrt2_affine() ? v.describe() : v.declared_value().label;
    j["t_approx"] = v.rotation();
  }
  return j;
}

UnitScalar unit_scalar_from_json(const Json& j) {
  const char* ctx = "unit scalar";
  if (!j.is_object()) throw SchemaError("unit scalar: expected an object");
  const std::string kind = require(j, "kind", ctx).get<std::string>();
  if (kind == "rational") {
    check_object(j, {"kind", "p", "q"}, ctx);
    return UnitScalar::rational(bigint_from_json(require(j, "p", ctx), ctx),
                                bigint_from_json(require(j, "q", ctx), ctx));
  }
  if (kind != "irrational")
    throw SchemaError("unit scalar: kind must be 'rational' or 'irrational'");
  check_object(j, {"kind", "t_formula", "t_approx"}, ctx);
  const std::string formula = require(j, "t_formula", ctx).get<std::string>();
  const Json& approx = require(j, "t_approx", ctx);
  if (!approx.is_number())
    throw SchemaError("unit scalar: t_approx must be a number");
  const double t = approx.get<double>();
  static const std::regex grammar(
      R"(^frac\((-?[0-9]+(?:/[0-9]+)?) \+ (-?[0-9]+(?:/[0-9]+)?)\*sqrt2\)$)");
  std::smatch m;
  UnitScalar value = std::regex_match(formula, m, grammar)
                         ? UnitScalar::sqrt2_affine(
                               rational_from_string(m[1].str(), ctx),
                               rational_from_string(m[2].str(), ctx))
                         : UnitScalar::declared_irrational(t, formula);
  if (std::abs(value.rotation() - t) >= 1e-6)
    throw SchemaError("unit scalar: t_approx " + std::to_string(t) +
                      " disagrees with t_formula '" + formula + "'");
  return value;
}

Json to_json(const SpectrumSpec& s) {
  Json base = Json::object();
  std::visit(
      [&](const auto& b) {
        using T = std::decay_t<decltype(b)>;
        if constexpr (std::is_same_v<T, Constant>) {
          base["family"] = "constant";
          base["value"] = to_json(b.value);
        } else if constexpr (std::is_same_v<T, ExplicitThenConstant>) {
          base["family"] = "explicit_then_constant";
          Json prefix = Json::array();
          for (const auto& v : b.prefix) prefix.push_back(to_json(v));
          base["prefix"] = std::move(prefix);
          base["tail"] = to_json(b.tail);
        } else if constexpr (std::is_same_v<T, PeriodicPattern>) {
          base["family"] = "periodic";
          Json pattern = Json::array();
          for (const auto& v : b.pattern) pattern.push_back(to_json(v));
          base["pattern"] = std::move(pattern);
        } else if constexpr (std::is_same_v<T, HarmonicRoots>) {
          base["family"] = "harmonic";
        } else if constexpr (std::is_same_v<T, DyadicRoots>) {
          base["family"] = "dyadic";
        } else if constexpr (std::is_same_v<T, RootsEnumeration>) {
          base["family"] = "roots_enum";
        } else {
          static_assert(std::is_same_v<T, IrrationalDense>);
          base["family"] = "irrational_dense";
        }
      },
      s.base);
  Json j = Json::object();
  j["base"] = std::move(base);
  if (!s.overrides.empty()) {
    Json overrides = Json::array();
    for (const auto& [n, v] : s.overrides) {
      Json entry = Json::object();
      entry["n"] = n;
      entry["value"] = to_json(v);
      overrides.push_back(std::move(entry));
    }
    j["overrides"] = std::move(overrides);
  }
  if (s.conjugate) j["conjugate"] = true;
  return j;
}

SpectrumSpec spectrum_from_json(const Json& j) {
  const char* ctx = "spectrum spec";
  check_object(j, {"base", "overrides", "conjugate"}, ctx);
  const Json& base = require(j, "base", ctx);
  if (!base.is_object())
    throw SchemaError("spectrum spec: base must be an object");
  const std::string family =
      require(base, "family", "spectrum base").get<std::string>();

  SpectrumSpec spec{Constant{UnitScalar::one()}, {}, false};
  if (family == "constant") {
    check_object(base, {"family", "value"}, "constant base");
    spec.base =
        Constant{unit_scalar_from_json(require(base, "value", "constant base"))};
  } else if (family == "explicit_then_constant") {
    check_object(base, {"family", "prefix", "tail"}, "explicit base");
    const Json& prefix = require(base, "prefix", "explicit base");
    if (!prefix.is_array())
      throw SchemaError("explicit base: prefix must be an array");
    ExplicitThenConstant etc{
        {}, unit_scalar_from_json(require(base, "tail", "explicit base"))};
    for (const Json& v : prefix) etc.prefix.push_back(unit_scalar_from_json(v));
    spec.base = std::move(etc);
  } else if (family == "periodic") {
    check_object(base, {"family", "pattern"}, "periodic base");
    const Json& pattern = require(base, "pattern", "periodic base");
    if (!pattern.is_array() || pattern.empty())
      throw SchemaError("periodic base: pattern must be a nonempty array");
    PeriodicPattern pat;
    for (const Json& v : pattern) pat.pattern.push_back(unit_scalar_from_json(v));
    spec.base = std::move(pat);
  } else if (family == "harmonic") {
    check_object(base, {"family"}, "harmonic base");
    spec.base = HarmonicRoots{};
  } else if (family == "dyadic") {
    check_object(base, {"family"}, "dyadic base");
    spec.base = DyadicRoots{};
  } else if (family == "roots_enum") {
    check_object(base, {"family"}, "roots_enum base");
    spec.base = RootsEnumeration{};
  } else if (family == "irrational_dense") {
    check_object(base, {"family"}, "irrational_dense base");
    spec.base = IrrationalDense{};
  } else {
    throw SchemaError("spectrum base: unknown family '" + family + "'");
  }

  if (j.contains("overrides")) {
    const Json& overrides = j["overrides"];
    if (!overrides.is_array())
      throw SchemaError("spectrum spec: overrides must be an array");
    for (const Json& entry : overrides) {
      check_object(entry, {"n", "value"}, "override");
      const std::int64_t n = int64_from_json(require(entry, "n", "override"),
                                             "override index");
      if (n < 1) throw SchemaError("override: index must be >= 1");
      if (spec.overrides.contains(n))
        throw SchemaError("override: duplicate index " + std::to_string(n));
      spec.overrides.insert_or_assign(
          n, unit_scalar_from_json(require(entry, "value", "override")));
    }
  }
  if (j.contains("conjugate")) {
    if (!j["conjugate"].is_boolean())
      throw SchemaError("spectrum spec: conjugate must be a boolean");
    spec.conjugate = j["conjugate"].get<bool>();
  }
  return spec;
}

Json to_json(const PermutationSpec& s) {
  Json j = Json::object();
  std::visit(
      [&](const auto& b) {
        using T = std::decay_t<decltype(b)>;
        if constexpr (std::is_same_v<T, PermutationSpec::FiniteCycles>) {
          j["family"] = "finite_cycles";
          Json cycles = Json::array();
          for (const auto& c : b.cycles) cycles.push_back(c);
          j["cycles"] = std::move(cycles);
        } else if constexpr (std::is_same_v<T,
                                            PermutationSpec::DoublingBlocks>) {
          j["family"] = "doubling_blocks";
        } else if constexpr (std::is_same_v<T,
                                            PermutationSpec::ConstantBlocks>) {
          j["family"] = "constant_blocks";
          j["L"] = b.L;
        } else if constexpr (std::is_same_v<T, PermutationSpec::ZigzagShift>) {
          j["family"] = "zigzag_shift";
        } else {
          static_assert(std::is_same_v<T, PermutationSpec::Interleave>);
          j["family"] = "interleave";
          j["even"] = to_json(*b.even);
          j["odd"] = to_json(*b.odd);
        }
      },
      s.base());
  if (s.inverted()) j["inverted"] = true;
  return j;
}

PermutationSpec permutation_from_json(const Json& j) {
  const char* ctx = "permutation spec";
  if (!j.is_object()) throw SchemaError("permutation spec: expected an object");
  const std::string family = require(j, "family", ctx).get<std::string>();

  std::optional<PermutationSpec> spec;
  if (family == "finite_cycles") {
    check_object(j, {"family", "cycles", "inverted"}, ctx);
    const Json& cycles = require(j, "cycles", ctx);
    if (!cycles.is_array())
      throw SchemaError("finite_cycles: cycles must be an array of arrays");
    std::vector<std::vector<std::int64_t>> parsed;
    for (const Json& cycle : cycles) {
      if (!cycle.is_array())
        throw SchemaError("finite_cycles: each cycle must be an array");
      std::vector<std::int64_t> c;
      for (const Json& n : cycle)
        c.push_back(int64_from_json(n, "finite_cycles index"));
      parsed.push_back(std::move(c));
    }
    try {
      spec = PermutationSpec::finite_cycles(std::move(parsed));
    } catch (const std::invalid_argument& e) {
      throw SchemaError(std::string("finite_cycles: ") + e.what());
    }
  } else if (family == "doubling_blocks") {
    check_object(j, {"family", "inverted"}, ctx);
    spec = PermutationSpec::doubling_blocks();
  } else if (family == "constant_blocks") {
    check_object(j, {"family", "L", "inverted"}, ctx);
    const std::int64_t L =
        int64_from_json(require(j, "L", ctx), "constant_blocks L");
    if (L < 1) throw SchemaError("constant_blocks: L must be >= 1");
    spec = PermutationSpec::constant_blocks(L);
  } else if (family == "zigzag_shift") {
    check_object(j, {"family", "inverted"}, ctx);
    spec = PermutationSpec::zigzag_shift();
  } else if (family == "interleave") {
    check_object(j, {"family", "even", "odd", "inverted"}, ctx);
    spec = PermutationSpec::interleave(
        permutation_from_json(require(j, "even", ctx)),
        permutation_from_json(require(j, "odd", ctx)));
  } else {
    throw SchemaError("permutation spec: unknown family '" + family + "'");
  }

  if (j.contains("inverted")) {
    if (!j["inverted"].is_boolean())
      throw SchemaError("permutation spec: inverted must be a boolean");
    if (j["inverted"].get<bool>()) spec = spec->inverse();
  }
  return *spec;
}

Json to_json(const ExactVector& x) {
  Json terms = Json::array();
  for (const auto& [n, c] : x.terms()) {
    Json term = Json::object();
    term["n"] = n;
    term["re"] = rational_to_json(c.re);
    term["im"] = rational_to_json(c.im);
    terms.push_back(std::move(term));
  }
  Json j = Json::object();
  j["kind"] = "exact";
  j["terms"] = std::move(terms);
  return j;
}

Json to_json(const GroupedVector& x) {
  Json j = Json::object();
  j["kind"] = "grouped";
  if (x.structured()) {
    j["family"] = "dyadic_even_blocks";
    return j;
  }
  Json groups = Json::array();
  for (const auto& g : x.groups()) {
    Json group = Json::object();
    group["indices"] = g.indices;
    group["weight"] = complex_to_json(g.weight);
    groups.push_back(std::move(group));
  }
  j["groups"] = std::move(groups);
  return j;
}

Json to_json(const AnyVector& x) {
  return std::visit([](const auto& v) { return to_json(v); }, x);
}

AnyVector vector_from_json(const Json& j) {
  const char* ctx = "vector";
  if (!j.is_object()) throw SchemaError("vector: expected an object");
  const std::string kind = require(j, "kind", ctx).get<std::string>();
  if (kind == "exact") {
    check_object(j, {"kind", "terms"}, ctx);
    const Json& terms = require(j, "terms", ctx);
    if (!terms.is_array()) throw SchemaError("vector: terms must be an array");
    ExactVector x;
    std::set<std::int64_t> seen;
    for (const Json& term : terms) {
      check_object(term, {"n", "re", "im"}, "vector term");
      const std::int64_t n =
          int64_from_json(require(term, "n", "vector term"), "vector index");
      if (!seen.insert(n).second)
        throw SchemaError("vector: duplicate index " + std::to_string(n));
      x.set(n, ComplexRat{
                   exact_rational_from_json(require(term, "re", "vector term"),
                                            "vector coefficient"),
                   exact_rational_from_json(require(term, "im", "vector term"),
                                            "vector coefficient")});
    }
    return x;
  }
  if (kind != "grouped")
    throw SchemaError("vector: kind must be 'exact' or 'grouped'");
  check_object(j, {"kind", "family", "groups"}, ctx);
  const bool has_family = j.contains("family");
  const bool has_groups = j.contains("groups");
  if (has_family == has_groups)
    throw SchemaError("grouped vector: exactly one of family/groups");
  if (has_family) {
    const std::string family = j["family"].get<std::string>();
    if (family != "dyadic_even_blocks")
      throw SchemaError("grouped vector: unknown family '" + family + "'");
    return GroupedVector::dyadic_even_blocks();
  }
  const Json& groups = j["groups"];
  if (!groups.is_array())
    throw SchemaError("grouped vector: groups must be an array");
  std::vector<ExplicitGroup> parsed;
  for (const Json& group : groups) {
    check_object(group, {"indices", "weight"}, "group");
    const Json& indices = require(group, "indices", "group");
    if (!indices.is_array())
      throw SchemaError("group: indices must be an array");
    ExplicitGroup g;
    for (const Json& n : indices)
      g.indices.push_back(int64_from_json(n, "group index"));
    g.weight = complex_from_json(require(group, "weight", "group"), "weight");
    parsed.push_back(std::move(g));
  }
  try {
    return GroupedVector::explicit_groups(std::move(parsed));
  } catch (const std::invalid_argument& e) {
    throw SchemaError(std::string("grouped vector: ") + e.what());
  }
}

Json to_json(const PeriodicClassification& c) {
  Json j = Json::object();
  j["kind"] = kind_name(c.kind);
  j["closed"] = c.closed;
  j["dense"] = c.dense;
  j["closure_codimension"] = c.closure_codimension.is_inf()
                                 ? Json("inf")
                                 : bigint_to_json(c.closure_codimension.finite());
  if (c.exponent) j["exponent"] = bigint_to_json(*c.exponent);
  if (c.kernel_exponent)
    j["kernel_exponent"] = bigint_to_json(*c.kernel_exponent);
  j["explanation"] = c.explanation;
  return j;
}

SpecFile spec_file_from_json(const Json& j) {
  const char* ctx = "spec file";
  check_object(j, {"operator", "vectors", "oracle"}, ctx);
  const Json& op = require(j, "operator", ctx);
  check_object(op, {"kind", "spec"}, "operator");
  const std::string kind = require(op, "kind", "operator").get<std::string>();
  SpecFile file{SpectrumSpec{Constant{UnitScalar::one()}, {}, false}, {}, {}};
  if (kind == "diagonal")
    file.op = spectrum_from_json(require(op, "spec", "operator"));
  else if (kind == "permutation")
    file.op = permutation_from_json(require(op, "spec", "operator"));
  else
    throw SchemaError("operator: kind must be 'diagonal' or 'permutation'");
  if (j.contains("vectors")) {
    const Json& vectors = j["vectors"];
    if (!vectors.is_array())
      throw SchemaError("spec file: vectors must be an array");
    for (const Json& v : vectors) file.vectors.push_back(vector_from_json(v));
  }
  if (j.contains("oracle")) {
    const Json& oracle = j["oracle"];
    check_object(oracle, {"d", "max_m", "tol"}, "oracle");
    OracleParams params;
    if (oracle.contains("d")) {
      params.d = int64_from_json(oracle["d"], "oracle d");
      if (params.d < 1) throw SchemaError("oracle: d must be >= 1");
    }
    if (oracle.contains("max_m")) {
      params.max_m = bigint_from_json(oracle["max_m"], "oracle max_m");
      if (params.max_m < 1) throw SchemaError("oracle: max_m must be >= 1");
    }
    if (oracle.contains("tol")) {
      if (!oracle["tol"].is_number())
        throw SchemaError("oracle: tol must be a number");
      params.tol = oracle["tol"].get<double>();
      if (!(params.tol > 0)) throw SchemaError("oracle: tol must be positive");
    }
    file.oracle = params;
  }
  return file;
}

Json to_json(const SpecFile& f) {
  Json op = Json::object();
  if (std::holds_alternative<SpectrumSpec>(f.op)) {
    op["kind"] = "diagonal";
    op["spec"] = to_json(std::get<SpectrumSpec>(f.op));
  } else {
    op["kind"] = "permutation";
    op["spec"] = to_json(std::get<PermutationSpec>(f.op));
  }
  Json j = Json::object();
  j["operator"] = std::move(op);
  if (!f.vectors.empty()) {
    Json vectors = Json::array();
    for (const auto& v : f.vectors) vectors.push_back(to_json(v));
    j["vectors"] = std::move(vectors);
  }
  if (f.oracle) {
    Json oracle = Json::object();
    oracle["d"] = f.oracle->d;
    oracle["max_m"] = bigint_to_json(f.oracle->max_m);
    oracle["tol"] = f.oracle->tol;
    j["oracle"] = std::move(oracle);
  }
  return j;
}

}  // namespace perop
