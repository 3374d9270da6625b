#include "perop/spectrum.hpp"

#include <algorithm>
#include <stdexcept>

namespace perop {

BigRat RationalEnumerator::next() {
  BigRat out(p_, q_);
  do {
    ++p_;
    if (p_ >= q_) {
      ++q_;
      p_ = 1;
    }
  } while (boost::multiprecision::gcd(p_, q_) != 1);
  return out;
}

BigRat rational_enumeration(std::int64_t n) {
  if (n < 1) throw std::invalid_argument("rational_enumeration: n >= 1");
  RationalEnumerator en;
  BigRat r;
  for (std::int64_t i = 0; i < n; ++i) r = en.next();
  return r;
}

namespace {

UnitScalar from_fraction(const BigRat& r) {
  return UnitScalar::rational(numerator(r), denominator(r));
}

UnitScalar base_value(const SpectrumBase& base, std::int64_t n) {
  return std::visit(
      [n](const auto& b) -> UnitScalar {
        using T = std::decay_t<decltype(b)>;
        if constexpr (std::is_same_v<T, Constant>) {
          return b.value;
        } else if constexpr (std::is_same_v<T, ExplicitThenConstant>) {
          return n <= static_cast<std::int64_t>(b.prefix.size())
                     ? b.prefix[n - 1]
                     : b.tail;
        } else if constexpr (std::is_same_v<T, PeriodicPattern>) {
          if (b.pattern.empty())
            throw std::invalid_argument("PeriodicPattern: empty pattern");
          return b.pattern[(n - 1) % b.pattern.size()];
        } else if constexpr (std::is_same_v<T, HarmonicRoots>) {
          return UnitScalar::rational(1, n);
        } else if constexpr (std::is_same_v<T, DyadicRoots>) {
          return n == 1 ? UnitScalar::one()
                        : UnitScalar::rational(1, BigInt(1) << (n - 1));
        } else if constexpr (std::is_same_v<T, RootsEnumeration>) {
          return from_fraction(rational_enumeration(n));
        } else {
          static_assert(std::is_same_v<T, IrrationalDense>);
          return UnitScalar::sqrt2_affine(rational_enumeration(n), 1);
        }
      },
      base);
}

std::vector<UnitScalar> dedupe_sorted(std::vector<UnitScalar> values) {
  std::sort(values.begin(), values.end(), canonical_less);
  values.erase(std::unique(values.begin(), values.end()), values.end());
  return values;
}

}  // namespace

UnitScalar SpectrumSpec::value_at(std::int64_t n) const {
  if (n < 1) throw std::invalid_argument("value_at: n >= 1");
  auto it = overrides.find(n);
  UnitScalar v = it != overrides.end() ? it->second : base_value(base, n);
  return conjugate ? v.conjugate() : v;
}

std::vector<UnitScalar> SpectrumSpec::prefix_values(std::int64_t d) const {
  if (d < 1) throw std::invalid_argument("prefix_values: d >= 1");
  std::vector<UnitScalar> out;
  out.reserve(static_cast<std::size_t>(d));
  const bool enumerated = std::holds_alternative<RootsEnumeration>(base) ||
                          std::holds_alternative<IrrationalDense>(base);
  RationalEnumerator en;
  for (std::int64_t n = 1; n <= d; ++n) {
    UnitScalar v = UnitScalar::one();
    if (enumerated) {
      BigRat q = en.next();  // advance even when overridden, to stay in step
      auto it = overrides.find(n);
      if (it != overrides.end())
        v = it->second;
      else if (std::holds_alternative<RootsEnumeration>(base))
        v = from_fraction(q);
      else
        v = UnitScalar::sqrt2_affine(q, 1);
      if (conjugate) v = v.conjugate();
    } else {
      v = value_at(n);
    }
    out.push_back(std::move(v));
  }
  return out;
}

namespace {

// Families with a finite description: every realized value is either pinned
// to one known index ("single") or realized infinitely often; overrides can
// replace singles but can never remove an infinitely-realized value.
SpectrumMetadata metadata_finite_description(const SpectrumSpec& spec) {
  auto eff = [&](const UnitScalar& v) {
    return spec.conjugate ? v.conjugate() : v;
  };
  std::map<std::int64_t, UnitScalar> singles;
  std::vector<UnitScalar> infinite_values;

  if (const auto* c = std::get_if<Constant>(&spec.base)) {
    infinite_values.push_back(eff(c->value));
  } else if (const auto* e = std::get_if<ExplicitThenConstant>(&spec.base)) {
    for (std::size_t i = 0; i < e->prefix.size(); ++i)
      singles.emplace(static_cast<std::int64_t>(i + 1), eff(e->prefix[i]));
    infinite_values.push_back(eff(e->tail));
  } else {
    const auto& p = std::get<PeriodicPattern>(spec.base);
    if (p.pattern.empty())
      throw std::invalid_argument("PeriodicPattern: empty pattern");
    for (const auto& v : p.pattern) infinite_values.push_back(eff(v));
  }
  for (const auto& [n, v] : spec.overrides) singles.insert_or_assign(n, eff(v));

  bool inf_rational = false, inf_irrational = false;
  for (const auto& v : infinite_values)
    (v.is_root_of_unity() ? inf_rational : inf_irrational) = true;

  BigInt single_g = 0, single_non_g = 0;
  std::vector<std::int64_t> g_indices;
  for (const auto& [n, v] : singles) {
    if (v.is_root_of_unity()) {
      ++single_g;
      g_indices.push_back(n);
    } else {
      ++single_non_g;
    }
  }

  std::vector<UnitScalar> realized = infinite_values;
  for (const auto& [n, v] : singles) realized.push_back(v);
  realized = dedupe_sorted(std::move(realized));

  std::vector<UnitScalar> g_values;
  BigInt order_lcm = 1;
  bool all_in_g = true;
  for (const auto& v : realized) {
    if (v.is_root_of_unity()) {
      g_values.push_back(v);
      order_lcm = boost::multiprecision::lcm(order_lcm, v.order());
    } else {
      all_in_g = false;
    }
  }

  SpectrumMetadata m;
  m.all_in_g = all_in_g;
  m.distinct_g_values_finite = true;
  m.distinct_g_values = std::move(g_values);
  m.order_lcm = NatOrInf(order_lcm);
  m.g_index_count = inf_rational ? NatOrInf::inf() : NatOrInf(single_g);
  m.non_g_index_count =
      inf_irrational ? NatOrInf::inf() : NatOrInf(single_non_g);
  if (m.g_index_count.is_finite()) m.g_indices = std::move(g_indices);
  m.closure = {ClosureKind::FiniteSet, std::move(realized)};
  return m;
}

// Harmonic, Dyadic, RootsEnumeration: all base values are roots of unity of
// unbounded order at infinitely many distinct values; finitely many overrides
// cannot change any of that — only the irrational-index count is affected.
SpectrumMetadata metadata_unbounded_roots(const SpectrumSpec& spec) {
  auto eff = [&](const UnitScalar& v) {
    return spec.conjugate ? v.conjugate() : v;
  };
  BigInt non_g = 0;
  std::vector<UnitScalar> extra;
  for (const auto& [n, v] : spec.overrides) {
    if (!v.is_root_of_unity()) ++non_g;
    extra.push_back(eff(v));
  }
  SpectrumMetadata m;
  m.all_in_g = non_g == 0;
  m.distinct_g_values_finite = false;
  m.order_lcm = NatOrInf::inf();
  m.g_index_count = NatOrInf::inf();
  m.non_g_index_count = NatOrInf(non_g);
  if (std::holds_alternative<RootsEnumeration>(spec.base))
    m.closure = {ClosureKind::FullCircle, {}};
  else
    m.closure = {ClosureKind::FiniteSetPlusOne, dedupe_sorted(std::move(extra))};
  return m;
}

// IrrationalDense: base values are pairwise distinct certified irrationals,
// so the only root-of-unity indices are rational overrides.
SpectrumMetadata metadata_irrational_dense(const SpectrumSpec& spec) {
  auto eff = [&](const UnitScalar& v) {
    return spec.conjugate ? v.conjugate() : v;
  };
  std::vector<UnitScalar> g_values;
  std::vector<std::int64_t> g_indices;
  BigInt order_lcm = 1;
  for (const auto& [n, v] : spec.overrides) {
    if (v.is_root_of_unity()) {
      g_indices.push_back(n);
      g_values.push_back(eff(v));
      order_lcm = boost::multiprecision::lcm(order_lcm, v.order());
    }
  }
  SpectrumMetadata m;
  m.all_in_g = false;
  m.distinct_g_values_finite = true;
  m.distinct_g_values = dedupe_sorted(std::move(g_values));
  m.order_lcm = NatOrInf(order_lcm);
  m.g_index_count = NatOrInf(BigInt(g_indices.size()));
  m.non_g_index_count = NatOrInf::inf();
  m.g_indices = std::move(g_indices);
  m.closure = {ClosureKind::FullCircle, {}};
  return m;
}

}  // namespace

SpectrumMetadata metadata(const SpectrumSpec& spec) {
  if (std::holds_alternative<Constant>(spec.base) ||
      std::holds_alternative<ExplicitThenConstant>(spec.base) ||
      std::holds_alternative<PeriodicPattern>(spec.base))
    return metadata_finite_description(spec);
  if (std::holds_alternative<IrrationalDense>(spec.base))
    return metadata_irrational_dense(spec);
  return metadata_unbounded_roots(spec);
}

}  // namespace perop
