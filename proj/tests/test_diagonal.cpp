#include "doctest.h"

#include "perop/diagonal.hpp"

using namespace perop;

namespace {

SpectrumSpec dyadic_with_irrationals(int count) {
  SpectrumSpec spec{DyadicRoots{}, {}, false};
  const BigRat offsets[] = {BigRat(0), BigRat(1, 3), BigRat(2, 3)};
  for (int i = 0; i < count; ++i)
    spec.overrides.insert_or_assign(
        i + 1, UnitScalar::sqrt2_affine(offsets[i], BigRat(i + 1)));
  return spec;
}

}  // namespace

TEST_CASE("all five regimes are reachable") {
  // No root of unity anywhere: only 0 is periodic.
  const PeriodicClassification zero =
      classify_diagonal({IrrationalDense{}, {}, false});
  CHECK(zero.kind == ClassificationKind::ZeroOnly);
  CHECK(zero.closed);
  CHECK(!zero.dense);
  CHECK(zero.closure_codimension.is_inf());
  CHECK(!zero.exponent);
  CHECK(!zero.kernel_exponent);

  // Bounded orders: T^N = I with N the lcm.
  const PeriodicClassification whole = classify_diagonal(
      {PeriodicPattern{{UnitScalar::rational(1, 4), UnitScalar::rational(1, 2),
                        UnitScalar::rational(3, 4), UnitScalar::one()}},
       {},
       false});
  CHECK(whole.kind == ClassificationKind::WholeSpace);
  CHECK(whole.closed);
  CHECK(whole.dense);
  CHECK(*whole.exponent == 4);
  CHECK(*whole.kernel_exponent == 4);
  CHECK(whole.closure_codimension == NatOrInf::of(0));

  // All roots of unity but unbounded orders: dense and proper.
  const PeriodicClassification dense =
      classify_diagonal({HarmonicRoots{}, {}, false});
  CHECK(dense.kind == ClassificationKind::ProperDense);
  CHECK(!dense.closed);
  CHECK(dense.dense);
  CHECK(!dense.exponent);
  CHECK(!dense.kernel_exponent);

  // Finitely many root-of-unity values among irrationals: a closed kernel.
  SpectrumSpec mixed{
      ExplicitThenConstant{{UnitScalar::rational(1, 2),
                            UnitScalar::rational(1, 3)},
                           UnitScalar::sqrt2_affine(BigRat(0), BigRat(1))},
      {},
      false};
  const PeriodicClassification closed = classify_diagonal(mixed);
  CHECK(closed.kind == ClassificationKind::ClosedProper);
  CHECK(closed.closed);
  CHECK(!closed.dense);
  CHECK(*closed.kernel_exponent == 6);
  CHECK(closed.closure_codimension.is_inf());

  // Unbounded root orders among finitely many irrationals: neither closed
  // nor dense, and the closure misses exactly those directions.
  const PeriodicClassification partial =
      classify_diagonal(dyadic_with_irrationals(1));
  CHECK(partial.kind == ClassificationKind::ProperNotClosed);
  CHECK(!partial.closed);
  CHECK(!partial.dense);
  CHECK(partial.closure_codimension == NatOrInf::of(1));
}

TEST_CASE("closure codimension counts the irrational directions") {
  CHECK(classify_diagonal(dyadic_with_irrationals(1)).closure_codimension ==
        NatOrInf::of(1));
  CHECK(classify_diagonal(dyadic_with_irrationals(3)).closure_codimension ==
        NatOrInf::of(3));
}

TEST_CASE("identity operator fixes everything") {
  const PeriodicClassification id =
      classify_diagonal({Constant{UnitScalar::one()}, {}, false});
  CHECK(id.kind == ClassificationKind::WholeSpace);
  CHECK(*id.exponent == 1);
}

TEST_CASE("vector periods are the lcm of support orders") {
  SpectrumSpec harmonic{HarmonicRoots{}, {}, false};
  ExactVector x = ExactVector::basis(2) + ExactVector::basis(3);
  CHECK(period_of_vector(harmonic, x) == 6);
  CHECK(period_of_vector(harmonic, ExactVector::basis(12)) == 12);

  ExactVector three;
  three.set(4, ComplexRat{1, 0});
  three.set(6, ComplexRat{BigRat(1, 2), BigRat(-1, 3)});
  three.set(10, ComplexRat{0, 1});
  CHECK(period_of_vector(harmonic, three) == 60);
}

TEST_CASE("aperiodic support is reported, zero vector rejected") {
  SpectrumSpec spec = dyadic_with_irrationals(1);
  CHECK_THROWS_AS(period_of_vector(spec, ExactVector::basis(1)),
                  NotPeriodicError);
  CHECK(!is_periodic(spec, ExactVector::basis(1)));
  CHECK(is_periodic(spec, ExactVector::basis(2)));
  CHECK(is_periodic(spec, ExactVector{}));
  CHECK_THROWS_AS(period_of_vector(spec, ExactVector{}), ContractViolation);
}

TEST_CASE("adjoint preserves classification and periods") {
  const std::vector<SpectrumSpec> specs = {
      {HarmonicRoots{}, {}, false},
      {IrrationalDense{}, {}, false},
      dyadic_with_irrationals(2),
      {PeriodicPattern{{UnitScalar::rational(2, 5), UnitScalar::one()}},
       {},
       false},
  };
  for (const SpectrumSpec& spec : specs) {
    const SpectrumSpec adj = adjoint_spec(spec);
    CHECK(classify_diagonal(adj) == classify_diagonal(spec));
    CHECK(adjoint_spec(adj) == spec);  // involution
  }
  SpectrumSpec harmonic{HarmonicRoots{}, {}, false};
  ExactVector x = ExactVector::basis(2) + ExactVector::basis(5);
  CHECK(period_of_vector(adjoint_spec(harmonic), x) ==
        period_of_vector(harmonic, x));
}

TEST_CASE("a decay certificate pins the periodic part to finitely many axes") {
  // Two root-of-unity eigenvalues in an otherwise irrational spectrum.
  SpectrumSpec spec{
      ExplicitThenConstant{{UnitScalar::rational(1, 2),
                            UnitScalar::sqrt2_affine(BigRat(0), BigRat(1)),
                            UnitScalar::rational(1, 4)},
                           UnitScalar::sqrt2_affine(BigRat(1, 3), BigRat(2))},
      {},
      false};
  const CompactnessNote note = compactness_note(spec, true);
  CHECK(note.periodic_dimension == 2);
  CHECK(note.generating_indices == std::vector<std::int64_t>{1, 3});

  // Without the certificate there is no refinement to report.
  CHECK_THROWS_AS(compactness_note(spec, false), ContractViolation);
  // And the certificate is inconsistent with infinitely many unit-modulus
  // roots of unity.
  SpectrumSpec harmonic{HarmonicRoots{}, {}, false};
  CHECK_THROWS_AS(compactness_note(harmonic, true), ContractViolation);
}

TEST_CASE("periodic vectors form an increasing union over exponents") {
  // If m | M then any vector fixed by T^m is fixed by T^M: the reported
  // period always divides any exponent that fixes the vector.
  SpectrumSpec spec{RootsEnumeration{}, {}, false};
  for (std::int64_t n = 1; n <= 20; ++n) {
    const ExactVector x = ExactVector::basis(n);
    const BigInt p = period_of_vector(spec, x);
    CHECK(spec.value_at(n).pow(p) == UnitScalar::one());
    for (BigInt m = 1; m < p; ++m)
      CHECK(spec.value_at(n).pow(m) != UnitScalar::one());
  }
}
