#include "doctest.h"

#include "perop/spectrum.hpp"

#include <set>

using namespace perop;

TEST_CASE("family closed forms produce the advertised values") {
  SpectrumSpec harmonic{HarmonicRoots{}, {}, false};
  CHECK(harmonic.value_at(1) == UnitScalar::one());
  CHECK(harmonic.value_at(2) == UnitScalar::rational(1, 2));
  CHECK(harmonic.value_at(6) == UnitScalar::rational(1, 6));

  SpectrumSpec dyadic{DyadicRoots{}, {}, false};
  CHECK(dyadic.value_at(1) == UnitScalar::one());
  CHECK(dyadic.value_at(2) == UnitScalar::rational(1, 2));
  CHECK(dyadic.value_at(3) == UnitScalar::rational(1, 4));
  CHECK(dyadic.value_at(4) == UnitScalar::rational(1, 8));

  SpectrumSpec pattern{
      PeriodicPattern{{UnitScalar::rational(1, 3), UnitScalar::one()}},
      {},
      false};
  CHECK(pattern.value_at(1) == UnitScalar::rational(1, 3));
  CHECK(pattern.value_at(2) == UnitScalar::one());
  CHECK(pattern.value_at(7) == UnitScalar::rational(1, 3));
}

TEST_CASE("rational enumeration walks reduced fractions in canonical order") {
  CHECK(rational_enumeration(1) == BigRat(0));
  CHECK(rational_enumeration(2) == BigRat(1, 2));
  CHECK(rational_enumeration(3) == BigRat(1, 3));
  CHECK(rational_enumeration(4) == BigRat(2, 3));
  CHECK(rational_enumeration(5) == BigRat(1, 4));
  CHECK(rational_enumeration(6) == BigRat(3, 4));
  CHECK(rational_enumeration(7) == BigRat(1, 5));

  RationalEnumerator stream;
  std::set<BigRat> seen;
  for (int i = 1; i <= 500; ++i) {
    const BigRat r = stream.next();
    CHECK(r == rational_enumeration(i));
    CHECK(r >= 0);
    CHECK(r < 1);
    CHECK(seen.insert(r).second);  // never repeats
  }
}

TEST_CASE("roots enumeration realizes every order") {
  SpectrumSpec spec{RootsEnumeration{}, {}, false};
  std::set<BigInt> orders;
  for (const UnitScalar& v : spec.prefix_values(200)) {
    CHECK(v.is_root_of_unity());
    orders.insert(v.order());
  }
  for (int q = 1; q <= 15; ++q) CHECK(orders.count(q) == 1);
}

TEST_CASE("irrational-dense values are never roots of unity") {
  SpectrumSpec spec{IrrationalDense{}, {}, false};
  for (const UnitScalar& v : spec.prefix_values(100)) {
    CHECK(v.is_sqrt2_affine());
    CHECK(!v.is_root_of_unity());
  }
  // alpha_1 = e^{2 pi i frac(0 + sqrt2)}
  CHECK(spec.value_at(1) == UnitScalar::sqrt2_affine(BigRat(0), BigRat(1)));
}

TEST_CASE("overrides replace base values pointwise") {
  SpectrumSpec spec{DyadicRoots{}, {}, false};
  spec.overrides.insert_or_assign(
      2, UnitScalar::sqrt2_affine(BigRat(0), BigRat(1)));
  CHECK(spec.value_at(1) == UnitScalar::one());
  CHECK(spec.value_at(2) == UnitScalar::sqrt2_affine(BigRat(0), BigRat(1)));
  CHECK(spec.value_at(3) == UnitScalar::rational(1, 4));
}

TEST_CASE("conjugation flips every effective value") {
  SpectrumSpec spec{HarmonicRoots{}, {}, true};
  spec.overrides.insert_or_assign(2, UnitScalar::rational(1, 3));
  CHECK(spec.value_at(2) == UnitScalar::rational(2, 3));
  CHECK(spec.value_at(4) == UnitScalar::rational(3, 4));
  CHECK(spec.value_at(1) == UnitScalar::one());
}

TEST_CASE("metadata for one irrational among dyadic roots") {
  SpectrumSpec spec{DyadicRoots{}, {}, false};
  spec.overrides.insert_or_assign(
      1, UnitScalar::sqrt2_affine(BigRat(0), BigRat(2)));
  const SpectrumMetadata meta = metadata(spec);
  CHECK(!meta.all_in_g);
  CHECK(meta.non_g_index_count == NatOrInf::of(1));
  CHECK(meta.g_index_count.is_inf());
  CHECK(meta.order_lcm.is_inf());
  CHECK(!meta.distinct_g_values_finite);
  CHECK(meta.closure.kind == ClosureKind::FiniteSetPlusOne);
}

TEST_CASE("metadata for a finite pattern") {
  SpectrumSpec spec{
      PeriodicPattern{{UnitScalar::rational(1, 4), UnitScalar::rational(1, 2),
                       UnitScalar::rational(3, 4), UnitScalar::one()}},
      {},
      false};
  const SpectrumMetadata meta = metadata(spec);
  CHECK(meta.all_in_g);
  CHECK(meta.distinct_g_values_finite);
  CHECK(meta.distinct_g_values->size() == 4);
  CHECK(meta.order_lcm == NatOrInf::of(4));
  CHECK(meta.non_g_index_count == NatOrInf::of(0));
  CHECK(meta.closure.kind == ClosureKind::FiniteSet);
  CHECK(meta.closure.points.size() == 4);
}

TEST_CASE("metadata never inherits stale facts across overrides") {
  // Overriding the only irrational away turns the spectrum all-rational.
  SpectrumSpec spec{
      ExplicitThenConstant{{UnitScalar::sqrt2_affine(BigRat(0), BigRat(1))},
                           UnitScalar::rational(1, 2)},
      {},
      false};
  CHECK(!metadata(spec).all_in_g);
  spec.overrides.insert_or_assign(1, UnitScalar::rational(1, 3));
  const SpectrumMetadata meta = metadata(spec);
  CHECK(meta.all_in_g);
  CHECK(meta.order_lcm == NatOrInf::of(6));
  CHECK(meta.non_g_index_count == NatOrInf::of(0));

  // And overriding a rational with an irrational registers it.
  SpectrumSpec spec2{Constant{UnitScalar::one()}, {}, false};
  spec2.overrides.insert_or_assign(
      5, UnitScalar::sqrt2_affine(BigRat(1, 2), BigRat(1)));
  const SpectrumMetadata meta2 = metadata(spec2);
  CHECK(!meta2.all_in_g);
  CHECK(meta2.non_g_index_count == NatOrInf::of(1));
  CHECK(meta2.g_index_count.is_inf());
}

TEST_CASE("metadata treats conjugated spectra symmetrically") {
  SpectrumSpec spec{RootsEnumeration{}, {}, false};
  SpectrumSpec conj = spec;
  conj.conjugate = true;
  const SpectrumMetadata a = metadata(spec);
  const SpectrumMetadata b = metadata(conj);
  CHECK(a.all_in_g == b.all_in_g);
  CHECK(a.order_lcm.is_inf() == b.order_lcm.is_inf());
  CHECK(a.closure.kind == b.closure.kind);
}
