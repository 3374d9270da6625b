#include "perop/approximation.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace perop {

namespace {

constexpr double kPi = std::numbers::pi;

}  // namespace

ApproximationResult approximate(const SpectrumSpec& spec, int level,
                                std::int64_t probe,
                                bool allow_probe_limited) {
  if (level < 1 || level > 62)
    throw std::invalid_argument("approximate: level must be in [1, 62]");
  if (probe < 1) throw std::invalid_argument("approximate: probe must be >= 1");
  const BigInt N = BigInt(1) << level;
  const auto snap = [&](const UnitScalar& v) {
    return UnitScalar::rational(v.nearest_dyadic(level).k, N);
  };

  // Effective base values (conjugation applied, overrides stripped): the
  // structural snap acts on these, then the overrides are snapped on top so
  // the shadowing structure of the original spec is preserved.
  SpectrumSpec base_only = spec;
  base_only.overrides.clear();

  ApproximationResult out{level,
                          SpectrumSpec{Constant{UnitScalar::one()}, {}, false},
                          2.0 * kPi / std::pow(2.0, level),
                          2.0 * std::sin(kPi / std::pow(2.0, level)),
                          0.0,
                          N,
                          false,
                          probe};

  // Horizon beyond which every base value of the family snaps to the tail's
  // grid point; 0 means the base structure itself is finite.
  std::int64_t materialize = 0;
  if (std::holds_alternative<HarmonicRoots>(spec.base)) {
    // Rotation 1/n is at most half a grid step once n >= 2^(level+1); the
    // midpoint tie at equality resolves toward k = 0 as well.
    if (level > 16)
      throw std::invalid_argument(
          "approximate: harmonic snap materializes 2^(level+1) prefix "
          "entries; level > 16 is unsupported");
    materialize = std::int64_t(1) << (level + 1);
  } else if (std::holds_alternative<DyadicRoots>(spec.base)) {
    // Rotation 2^-(n-1) reaches the half-step tie at n = level + 2.
    materialize = level + 2;
  } else if (std::holds_alternative<RootsEnumeration>(spec.base) ||
             std::holds_alternative<IrrationalDense>(spec.base)) {
    if (!allow_probe_limited)
      throw UnsupportedFamily(
          "enumerated spectra have no closed-form snapped tail; rerun with a "
          "probe-limited approximation");
    materialize = probe;
    out.probe_limited = true;
  }

  if (materialize > 0) {
    const std::vector<UnitScalar> vals = base_only.prefix_values(materialize + 1);
    ExplicitThenConstant etc{{}, snap(vals.back())};
    etc.prefix.reserve(static_cast<std::size_t>(materialize));
    for (std::int64_t i = 0; i < materialize; ++i)
      etc.prefix.push_back(snap(vals[static_cast<std::size_t>(i)]));
    out.snapped.base = etc;
  } else if (const auto* c = std::get_if<Constant>(&spec.base)) {
    out.snapped.base = Constant{snap(base_only.value_at(1))};
    (void)c;
  } else if (const auto* e = std::get_if<ExplicitThenConstant>(&spec.base)) {
    ExplicitThenConstant etc{
        {}, snap(base_only.value_at(
                static_cast<std::int64_t>(e->prefix.size()) + 1))};
    etc.prefix.reserve(e->prefix.size());
    for (std::size_t i = 0; i < e->prefix.size(); ++i)
      etc.prefix.push_back(
          snap(base_only.value_at(static_cast<std::int64_t>(i) + 1)));
    out.snapped.base = etc;
  } else {
    const auto& p = std::get<PeriodicPattern>(spec.base);
    PeriodicPattern pat;
    pat.pattern.reserve(p.pattern.size());
    for (std::size_t i = 0; i < p.pattern.size(); ++i)
      pat.pattern.push_back(
          snap(base_only.value_at(static_cast<std::int64_t>(i) + 1)));
    out.snapped.base = pat;
  }

  for (const auto& [n, v] : spec.overrides)
    if (materialize == 0 || n > materialize)
      out.snapped.overrides.insert_or_assign(n, snap(spec.value_at(n)));
    else if (std::holds_alternative<ExplicitThenConstant>(out.snapped.base)) {
      auto& etc = std::get<ExplicitThenConstant>(out.snapped.base);
      etc.prefix[static_cast<std::size_t>(n - 1)] = snap(spec.value_at(n));
    }

  double err = 0.0;
  const std::vector<UnitScalar> orig = spec.prefix_values(probe);
  const std::vector<UnitScalar> snapped = out.snapped.prefix_values(probe);
  for (std::int64_t j = 0; j < probe; ++j)
    err = std::max(err, std::abs(orig[static_cast<std::size_t>(j)].to_complex() -
                                 snapped[static_cast<std::size_t>(j)].to_complex()));
  for (const auto& [n, v] : spec.overrides)
    if (n > probe)
      err = std::max(err, std::abs(spec.value_at(n).to_complex() -
                                   out.snapped.value_at(n).to_complex()));
  out.observed_error = err;
  return out;
}

std::vector<ApproximationResult> convergence_table(const SpectrumSpec& spec,
                                                   int level_max,
                                                   std::int64_t probe) {
  if (level_max < 1 || level_max > 62)
    throw std::invalid_argument("convergence_table: level_max in [1, 62]");
  std::vector<ApproximationResult> rows;
  rows.reserve(static_cast<std::size_t>(level_max));
  for (int n = 1; n <= level_max; ++n)
    rows.push_back(approximate(spec, n, probe));
  return rows;
}

}  // namespace perop
