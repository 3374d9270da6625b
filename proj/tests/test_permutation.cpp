#include "doctest.h"

#include "perop/permutation.hpp"

#include <map>
#include <set>

using namespace perop;

TEST_CASE("doubling blocks rotate each dyadic block") {
  const PermutationSpec spec = PermutationSpec::doubling_blocks();
  CHECK(spec.apply(1) == 1);
  CHECK(spec.apply(2) == 3);
  CHECK(spec.apply(3) == 2);  // top of block [2,3] wraps
  CHECK(spec.apply(4) == 5);
  CHECK(spec.apply(7) == 4);  // top of block [4,7] wraps
  CHECK(spec.apply(8) == 9);

  std::map<std::int64_t, std::int64_t> expected_cards = {
      {1, 1}, {2, 2}, {3, 2}, {4, 4}, {5, 4}, {6, 4}, {7, 4}, {8, 8}};
  for (const auto& [n, card] : expected_cards)
    CHECK(spec.orbit_card(n) == NatOrInf::of(card));
}

TEST_CASE("every family is a bijection with a consistent inverse") {
  const std::vector<PermutationSpec> specs = {
      PermutationSpec::doubling_blocks(),
      PermutationSpec::constant_blocks(4),
      PermutationSpec::zigzag_shift(),
      PermutationSpec::finite_cycles({{2, 3}, {4, 5, 6, 7}}),
      PermutationSpec::interleave(PermutationSpec::doubling_blocks(),
                                  PermutationSpec::zigzag_shift()),
      PermutationSpec::doubling_blocks().inverse(),
  };
  for (const PermutationSpec& spec : specs) {
    std::set<std::int64_t> images;
    for (std::int64_t n = 1; n <= 2000; ++n) {
      const std::int64_t m = spec.apply(n);
      CHECK(m >= 1);
      CHECK(images.insert(m).second);
      CHECK(spec.apply_inverse(m) == n);
    }
  }
}

TEST_CASE("closed-form powers match iteration") {
  const std::vector<PermutationSpec> specs = {
      PermutationSpec::doubling_blocks(),
      PermutationSpec::constant_blocks(3),
      PermutationSpec::zigzag_shift(),
      PermutationSpec::finite_cycles({{1, 4, 2}, {5, 6}}),
      PermutationSpec::interleave(PermutationSpec::constant_blocks(2),
                                  PermutationSpec::doubling_blocks()),
  };
  for (const PermutationSpec& spec : specs)
    for (std::int64_t n = 1; n <= 40; ++n) {
      std::int64_t j = n;
      for (std::int64_t m = 1; m <= 25; ++m) {
        j = spec.apply(j);
        CHECK(spec.apply_power(n, m) == j);
      }
      CHECK(spec.apply_power(n, 0) == n);
      CHECK(spec.apply_power(n, -3) ==
            spec.apply_inverse(spec.apply_inverse(spec.apply_inverse(n))));
    }
}

TEST_CASE("powers stay exact far beyond any iteration budget") {
  const PermutationSpec spec = PermutationSpec::doubling_blocks();
  // Index 10 lives in the block [8, 15] of size 8; sigma^m shifts by m mod 8.
  const BigInt huge = (BigInt(1) << 100) + 5;  // = 5 mod 8
  CHECK(spec.apply_power(10, huge) == spec.apply_power(10, 5));
  const PermutationSpec cyc = PermutationSpec::finite_cycles({{3, 7, 11}});
  CHECK(cyc.apply_power(3, BigInt("1000000000000000000000000")) == 7);
}

TEST_CASE("zigzag shift has a single infinite orbit") {
  const PermutationSpec spec = PermutationSpec::zigzag_shift();
  CHECK(spec.apply(1) == 2);
  CHECK(spec.apply(3) == 1);
  CHECK(spec.apply(2) == 4);
  CHECK(spec.apply(5) == 3);
  for (std::int64_t n = 1; n <= 20; ++n) CHECK(spec.orbit_card(n).is_inf());
  // Walking from 1 visits every index pattern without returning.
  std::set<std::int64_t> seen = {1};
  std::int64_t j = 1;
  for (int steps = 0; steps < 500; ++steps) {
    j = spec.apply(j);
    CHECK(seen.insert(j).second);
  }
}

TEST_CASE("interleave routes parity classes to its children") {
  const PermutationSpec spec = PermutationSpec::interleave(
      PermutationSpec::doubling_blocks(),
      PermutationSpec::finite_cycles({{1, 2, 3}}));
  // Even index 2m follows the even child at m.
  CHECK(spec.apply(2) == 2);    // doubling fixes 1
  CHECK(spec.apply(4) == 6);    // doubling: 2 -> 3
  CHECK(spec.apply(6) == 4);    // doubling: 3 -> 2
  // Odd index 2m-1 follows the odd child at m.
  CHECK(spec.apply(1) == 3);    // cycle: 1 -> 2
  CHECK(spec.apply(3) == 5);    // cycle: 2 -> 3
  CHECK(spec.apply(5) == 1);    // cycle: 3 -> 1
  CHECK(spec.apply(7) == 7);    // off-support odd index is fixed
  CHECK(spec.orbit_card(1) == NatOrInf::of(3));
  CHECK(spec.orbit_card(16) == NatOrInf::of(8));  // even child's block [8,15]
}

TEST_CASE("classification follows the orbit-size profile") {
  const PeriodicClassification whole =
      classify_permutation(PermutationSpec::constant_blocks(4));
  CHECK(whole.kind == ClassificationKind::WholeSpace);
  CHECK(*whole.exponent == 4);

  const PeriodicClassification cycles = classify_permutation(
      PermutationSpec::finite_cycles({{2, 3}, {4, 5, 6, 7}}));
  CHECK(cycles.kind == ClassificationKind::WholeSpace);
  CHECK(*cycles.exponent == 4);

  const PeriodicClassification dense =
      classify_permutation(PermutationSpec::doubling_blocks());
  CHECK(dense.kind == ClassificationKind::ProperDense);
  CHECK(!dense.closed);
  CHECK(dense.dense);

  const PeriodicClassification zero =
      classify_permutation(PermutationSpec::zigzag_shift());
  CHECK(zero.kind == ClassificationKind::ZeroOnly);
  CHECK(zero.closure_codimension.is_inf());

  const PeriodicClassification closed = classify_permutation(
      PermutationSpec::interleave(PermutationSpec::zigzag_shift(),
                                  PermutationSpec::constant_blocks(2)));
  CHECK(closed.kind == ClassificationKind::ClosedProper);
  CHECK(*closed.kernel_exponent == 2);

  const PeriodicClassification partial = classify_permutation(
      PermutationSpec::interleave(PermutationSpec::zigzag_shift(),
                                  PermutationSpec::doubling_blocks()));
  CHECK(partial.kind == ClassificationKind::ProperNotClosed);
  CHECK(!partial.closed);
  CHECK(!partial.dense);
}

TEST_CASE("permutation codimension is never finite nonzero") {
  const std::vector<PermutationSpec> specs = {
      PermutationSpec::zigzag_shift(),
      PermutationSpec::doubling_blocks(),
      PermutationSpec::constant_blocks(7),
      PermutationSpec::interleave(PermutationSpec::zigzag_shift(),
                                  PermutationSpec::constant_blocks(2)),
      PermutationSpec::interleave(PermutationSpec::zigzag_shift(),
                                  PermutationSpec::zigzag_shift()),
  };
  for (const PermutationSpec& spec : specs) {
    const NatOrInf codim = classify_permutation(spec).closure_codimension;
    CHECK((codim == NatOrInf::of(0) || codim.is_inf()));
  }
}

TEST_CASE("vector periods respect coefficient patterns, not just orbits") {
  const PermutationSpec spec = PermutationSpec::constant_blocks(4);
  ExactVector alternating;  // e_1 + e_3: swapped by sigma^2 with equal weights
  alternating.set(1, ComplexRat{1, 0});
  alternating.set(3, ComplexRat{1, 0});
  CHECK(period_of_vector(spec, alternating) == 2);

  ExactVector generic;
  generic.set(2, ComplexRat{1, 0});
  generic.set(3, ComplexRat{-1, 0});
  CHECK(period_of_vector(spec, generic) == 4);

  ExactVector full;  // constant on a whole orbit: fixed by sigma itself
  for (std::int64_t n = 1; n <= 4; ++n) full.set(n, ComplexRat{BigRat(1, 7), 0});
  CHECK(period_of_vector(spec, full) == 1);
}

TEST_CASE("aperiodic and zero vectors are rejected with the right errors") {
  const PermutationSpec spec = PermutationSpec::zigzag_shift();
  CHECK_THROWS_AS(period_of_vector(spec, ExactVector::basis(1)),
                  NotPeriodicError);
  CHECK_THROWS_AS(period_of_vector(spec, ExactVector{}), ContractViolation);
}

TEST_CASE("the structured witness separates the union from its closure") {
  const PermutationSpec spec = PermutationSpec::doubling_blocks();
  const GroupedVector x = GroupedVector::dyadic_even_blocks();
  CHECK(verify_structured_period(spec, x, 2));
  CHECK(!verify_structured_period(spec, x, 1));
  CHECK(verify_structured_period(spec, x, 4));  // multiples of 2 also fix it
  CHECK(!naive_union_member(spec, x));
  CHECK_THROWS_AS(
      verify_structured_period(PermutationSpec::constant_blocks(2), x, 2),
      UnsupportedSelector);
}

TEST_CASE("explicit groups are checked by set invariance") {
  const PermutationSpec spec =
      PermutationSpec::finite_cycles({{2, 3}, {4, 5, 6, 7}});
  const GroupedVector whole_orbits = GroupedVector::explicit_groups(
      {{{2, 3}, ComplexRat{1, 0}}, {{4, 5, 6, 7}, ComplexRat{BigRat(1, 2), 0}}});
  CHECK(verify_structured_period(spec, whole_orbits, 1));
  CHECK(naive_union_member(spec, whole_orbits));

  const GroupedVector half_orbit =
      GroupedVector::explicit_groups({{{4, 6}, ComplexRat{1, 0}}});
  CHECK(!verify_structured_period(spec, half_orbit, 1));
  CHECK(verify_structured_period(spec, half_orbit, 2));
}

TEST_CASE("naive union membership for exact vectors tracks orbit sizes") {
  const PermutationSpec doubling = PermutationSpec::doubling_blocks();
  CHECK(naive_union_member(doubling, ExactVector::basis(100)));
  const PermutationSpec zigzag = PermutationSpec::zigzag_shift();
  CHECK(!naive_union_member(zigzag, ExactVector::basis(1)));
}

TEST_CASE("inverses preserve orbits, classification, and periods") {
  const std::vector<PermutationSpec> specs = {
      PermutationSpec::doubling_blocks(),
      PermutationSpec::finite_cycles({{1, 2, 3, 4, 5}}),
      PermutationSpec::zigzag_shift(),
  };
  for (const PermutationSpec& spec : specs) {
    const PermutationSpec inv = spec.inverse();
    CHECK(inv.inverse() == spec);
    for (std::int64_t n = 1; n <= 30; ++n) {
      CHECK(inv.apply(spec.apply(n)) == n);
      CHECK(inv.orbit_card(n) == spec.orbit_card(n));
    }
    CHECK(classify_permutation(inv) == classify_permutation(spec));
  }
  const PermutationSpec cyc = PermutationSpec::finite_cycles({{1, 2, 3}});
  ExactVector x;
  x.set(1, ComplexRat{1, 0});
  x.set(2, ComplexRat{0, 1});
  CHECK(period_of_vector(cyc.inverse(), x) == period_of_vector(cyc, x));
}

TEST_CASE("distinct permutation operators sit at distance sqrt(2)") {
  const PermutationSpec a = PermutationSpec::doubling_blocks();
  const PermutationSpec b = PermutationSpec::constant_blocks(2);
  CHECK(permutation_distance_check(a, b, 1000) ==
        doctest::Approx(std::sqrt(2.0)));
  CHECK(permutation_distance_check(a, a, 1000) == 0.0);
  // Same bijection through different descriptions: no witness, distance 0.
  const PermutationSpec c1 = PermutationSpec::constant_blocks(1);
  const PermutationSpec c2 = PermutationSpec::finite_cycles({});
  CHECK(permutation_distance_check(c1, c2, 1000) == 0.0);
}

TEST_CASE("invalid cycle lists are rejected") {
  CHECK_THROWS_AS(PermutationSpec::finite_cycles({{1, 2}, {2, 3}}),
                  std::invalid_argument);
  CHECK_THROWS_AS(PermutationSpec::finite_cycles({{}}), std::invalid_argument);
  CHECK_THROWS_AS(PermutationSpec::finite_cycles({{0, 1}}),
                  std::invalid_argument);
  CHECK_THROWS_AS(PermutationSpec::constant_blocks(0), std::invalid_argument);
}
