#include "doctest.h"

#include "perop/approximation.hpp"
#include "perop/diagonal.hpp"

#include <cmath>
#include <complex>
#include <numbers>

using namespace perop;

namespace {

const std::vector<SpectrumSpec>& sample_specs() {
  static const std::vector<SpectrumSpec> specs = [] {
    std::vector<SpectrumSpec> s;
    s.push_back({HarmonicRoots{}, {}, false});
    s.push_back({IrrationalDense{}, {}, false});
    s.push_back({RootsEnumeration{}, {}, false});
    s.push_back({Constant{UnitScalar::rational(1, 3)}, {}, false});
    s.push_back({PeriodicPattern{{UnitScalar::rational(1, 6),
                                  UnitScalar::sqrt2_affine(BigRat(0), BigRat(1))}},
                 {},
                 false});
    SpectrumSpec overridden{DyadicRoots{}, {}, false};
    overridden.overrides.insert_or_assign(
        1, UnitScalar::sqrt2_affine(BigRat(0), BigRat(2)));
    overridden.overrides.insert_or_assign(3, UnitScalar::rational(2, 5));
    s.push_back(std::move(overridden));
    return s;
  }();
  return specs;
}

}  // namespace

TEST_CASE("observed error respects both bounds at every level") {
  for (const SpectrumSpec& spec : sample_specs())
    for (int level = 1; level <= 8; ++level) {
      const ApproximationResult r = approximate(spec, level, 64);
      CHECK(r.tight_bound <= r.bound);
      CHECK(r.observed_error <= r.tight_bound + 1e-12);
      CHECK(r.bound ==
            doctest::Approx(2 * std::numbers::pi / std::pow(2.0, level)));
    }
}

TEST_CASE("snapped spectra have exponent dividing 2^level") {
  for (const SpectrumSpec& spec : sample_specs())
    for (int level = 1; level <= 10; ++level) {
      const ApproximationResult r = approximate(spec, level, 48);
      const PeriodicClassification cls = classify_diagonal(r.snapped);
      REQUIRE(cls.kind == ClassificationKind::WholeSpace);
      CHECK(r.exponent_bound % *cls.exponent == 0);
    }
}

TEST_CASE("snapping is idempotent") {
  for (const SpectrumSpec& spec : sample_specs())
    for (int level : {2, 5}) {
      const SpectrumSpec once = approximate(spec, level, 32).snapped;
      const ApproximationResult again = approximate(once, level, 32);
      CHECK(again.snapped == once);
      CHECK(again.observed_error == 0.0);
    }
}

TEST_CASE("level refinement nests: deeper grids contain shallower ones") {
  // A value already on the level-n grid stays put at level n+1.
  const SpectrumSpec spec{Constant{UnitScalar::rational(3, 8)}, {}, false};
  for (int level = 3; level <= 12; ++level) {
    const ApproximationResult r = approximate(spec, level, 8);
    CHECK(r.snapped.value_at(1) == UnitScalar::rational(3, 8));
    CHECK(r.observed_error == 0.0);
  }
}

TEST_CASE("snap of a known value lands on the hand-checked root") {
  // 1/3 is 0.0101... in binary: at level 4 the grid neighbors are 5/16 and
  // 6/16, and 5/16 is closer (|1/3 - 5/16| = 1/48 < |6/16 - 1/3| = 1/24).
  const SpectrumSpec spec{Constant{UnitScalar::rational(1, 3)}, {}, false};
  const ApproximationResult r = approximate(spec, 4, 4);
  CHECK(r.snapped.value_at(1) == UnitScalar::rational(5, 16));
  const double expected =
      std::abs(UnitScalar::rational(1, 3).to_complex() -
               UnitScalar::rational(5, 16).to_complex());
  CHECK(r.observed_error == doctest::Approx(expected).epsilon(1e-12));
}

TEST_CASE("errors are non-increasing down the convergence table") {
  for (const SpectrumSpec& spec : sample_specs()) {
    const auto table = convergence_table(spec, 10, 48);
    REQUIRE(table.size() == 10);
    for (std::size_t i = 1; i < table.size(); ++i) {
      CHECK(table[i].level == table[i - 1].level + 1);
      CHECK(table[i].observed_error <= table[i - 1].observed_error + 1e-12);
    }
  }
}

TEST_CASE("structural families cover every index, enumerated ones are flagged") {
  const ApproximationResult constant =
      approximate({Constant{UnitScalar::rational(1, 7)}, {}, false}, 5, 16);
  CHECK(!constant.probe_limited);

  const ApproximationResult dense =
      approximate({IrrationalDense{}, {}, false}, 5, 16);
  CHECK(dense.probe_limited);
  CHECK(dense.probe == 16);
  CHECK_THROWS_AS(approximate({IrrationalDense{}, {}, false}, 5, 16, false),
                  UnsupportedFamily);

  // A structurally-snapped family keeps its error bound beyond the probe.
  const ApproximationResult harmonic =
      approximate({HarmonicRoots{}, {}, false}, 6, 32);
  CHECK(!harmonic.probe_limited);
  for (std::int64_t n = 100; n <= 104; ++n) {
    const std::complex<double> diff =
        harmonic.snapped.value_at(n).to_complex() -
        UnitScalar::rational(1, n).to_complex();
    CHECK(std::abs(diff) <= harmonic.tight_bound + 1e-12);
  }
}

TEST_CASE("conjugation folds into the snapped spectrum") {
  SpectrumSpec conj{Constant{UnitScalar::rational(1, 3)}, {}, true};
  const ApproximationResult r = approximate(conj, 4, 8);
  CHECK(!r.snapped.conjugate);
  // conj of 1/3 is 2/3, whose nearest level-4 root is 11/16.
  CHECK(r.snapped.value_at(1) == UnitScalar::rational(11, 16));
}

TEST_CASE("overrides snap pointwise alongside the base") {
  SpectrumSpec spec{HarmonicRoots{}, {}, false};
  spec.overrides.insert_or_assign(
      2, UnitScalar::sqrt2_affine(BigRat(0), BigRat(1)));
  const ApproximationResult r = approximate(spec, 6, 32);
  // frac(sqrt2) = 0.41421..., nearest 64th of a turn is round(26.51)/64 = 27.
  CHECK(r.snapped.value_at(2) == UnitScalar::rational(27, 64));
  // Non-override indices still follow the snapped base.
  CHECK(r.snapped.value_at(1) == UnitScalar::one());
  const double err =
      std::abs(spec.value_at(2).to_complex() -
               r.snapped.value_at(2).to_complex());
  CHECK(r.observed_error >= err - 1e-12);
}

TEST_CASE("level bounds are enforced") {
  const SpectrumSpec spec{Constant{UnitScalar::one()}, {}, false};
  CHECK_THROWS_AS(approximate(spec, 0, 8), std::invalid_argument);
  CHECK_THROWS_AS(approximate(spec, 63, 8), std::invalid_argument);
  CHECK_THROWS_AS(approximate(spec, 5, 0), std::invalid_argument);
}
