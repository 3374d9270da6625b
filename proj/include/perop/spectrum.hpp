#pragma once

#include "perop/unit_scalar.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <variant>
#include <vector>

namespace perop {

// Base generators for infinite eigenvalue sequences {alpha_n, n >= 1}.
// Each family carries enough structure to answer whole-sequence questions
// (membership in the roots of unity, order bounds, spectrum closure) in
// closed form; no claim below is established by sampling.
struct Constant {
  UnitScalar value;
  bool operator==(const Constant&) const = default;
};
struct ExplicitThenConstant {
  std::vector<UnitScalar> prefix;
  UnitScalar tail;
  bool operator==(const ExplicitThenConstant&) const = default;
};
struct PeriodicPattern {
  std::vector<UnitScalar> pattern;  // nonempty; alpha_n = pattern[(n-1) mod len]
  bool operator==(const PeriodicPattern&) const = default;
};
struct HarmonicRoots {  // alpha_n = e^{2 pi i / n}
  bool operator==(const HarmonicRoots&) const = default;
};
struct DyadicRoots {  // alpha_1 = 1, alpha_n = e^{2 pi i / 2^{n-1}} for n >= 2
  bool operator==(const DyadicRoots&) const = default;
};
struct RootsEnumeration {  // alpha_n enumerates all roots of unity
  bool operator==(const RootsEnumeration&) const = default;
};
struct IrrationalDense {  // alpha_n = e^{2 pi i frac(q_n + sqrt2)}
  bool operator==(const IrrationalDense&) const = default;
};

using SpectrumBase =
    std::variant<Constant, ExplicitThenConstant, PeriodicPattern,
                 HarmonicRoots, DyadicRoots, RootsEnumeration, IrrationalDense>;

// Enumeration of reduced fractions in [0, 1), denominator-ascending then
// numerator-ascending: 0/1, 1/2, 1/3, 2/3, 1/4, 3/4, 1/5, ...  Feeds both
// RootsEnumeration and IrrationalDense (as the rational offsets q_n).
class RationalEnumerator {
 public:
  BigRat next();

 private:
  BigInt q_{1};
  BigInt p_{0};
};
BigRat rational_enumeration(std::int64_t n);  // n-th term, n >= 1

struct SpectrumSpec {
  SpectrumBase base;
  std::map<std::int64_t, UnitScalar> overrides;  // keys >= 1
  // When set, every effective value (base or override) is conjugated.
  bool conjugate = false;

  UnitScalar value_at(std::int64_t n) const;              // n >= 1
  std::vector<UnitScalar> prefix_values(std::int64_t d) const;
  bool operator==(const SpectrumSpec&) const = default;
};

enum class ClosureKind { FiniteSet, FiniteSetPlusOne, FullCircle };

// Declared closure of {alpha_n} (= the spectrum of the diagonal operator).
// FiniteSet: exactly `points`.  FiniteSetPlusOne: the family's values
// accumulate only at 1; `points` lists extra isolated values introduced by
// overrides (often empty).  FullCircle: dense in the circle.  The numeric
// oracle corroborates the claim at finite resolution; it is not proven here.
struct ClosureClaim {
  ClosureKind kind;
  std::vector<UnitScalar> points;
};

struct SpectrumMetadata {
  bool all_in_g;  // every effective value is a root of unity
  bool distinct_g_values_finite;
  // Present iff distinct_g_values_finite; canonically sorted.
  std::optional<std::vector<UnitScalar>> distinct_g_values;
  // Least N with alpha_n^N = 1 over all root-of-unity values realized
  // anywhere in the sequence (the lcm of their orders); infinite iff the
  // realized orders are unbounded.  Finite iff the plain sup is finite.
  NatOrInf order_lcm;
  NatOrInf g_index_count;      // indices with root-of-unity value
  NatOrInf non_g_index_count;  // indices with irrational rotation
  // Present iff g_index_count is finite: the indices themselves, ascending.
  std::optional<std::vector<std::int64_t>> g_indices;
  ClosureClaim closure;
};

// Exact whole-sequence metadata from the family's closed form, adjusted for
// the finitely many overrides (recomputed, never inherited blindly).
SpectrumMetadata metadata(const SpectrumSpec& spec);

}  // namespace perop
