#include "perop/permutation.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <set>
#include <stdexcept>

namespace perop {

namespace {

// Block number k >= 1 with n in B_k = [2^{k-1}, 2^k - 1].
int block_of(std::int64_t n) {
  return std::bit_width(static_cast<std::uint64_t>(n));
}

std::int64_t checked_int64(const BigInt& v, const char* what) {
  if (v < std::numeric_limits<std::int64_t>::min() ||
      v > std::numeric_limits<std::int64_t>::max())
    throw std::overflow_error(std::string(what) + ": index out of range");
  return v.convert_to<std::int64_t>();
}

// Zigzag indexing between N and Z: 1<->0, 2k<->k, 2k+1<->-k.
BigInt to_zigzag(std::int64_t n) {
  if (n == 1) return 0;
  if (n % 2 == 0) return BigInt(n / 2);
  return BigInt(-(n - 1) / 2);
}
std::int64_t from_zigzag(const BigInt& z) {
  if (z == 0) return 1;
  if (z > 0) return checked_int64(2 * z, "zigzag");
  return checked_int64(-2 * z + 1, "zigzag");
}

void require_positive(std::int64_t n) {
  if (n < 1) throw std::invalid_argument("permutation index must be >= 1");
}

}  // namespace

bool PermutationSpec::Interleave::operator==(const Interleave& o) const {
  return *even == *o.even && *odd == *o.odd;
}

PermutationSpec PermutationSpec::finite_cycles(
    std::vector<std::vector<std::int64_t>> cycles) {
  auto index = std::make_shared<std::map<std::int64_t, CyclePos>>();
  for (std::size_t c = 0; c < cycles.size(); ++c) {
    if (cycles[c].empty())
      throw std::invalid_argument("finite_cycles: empty cycle");
    for (std::size_t i = 0; i < cycles[c].size(); ++i) {
      require_positive(cycles[c][i]);
      if (!index->emplace(cycles[c][i], CyclePos{c, i}).second)
        throw std::invalid_argument("finite_cycles: cycles not disjoint");
    }
  }
  PermutationSpec s(FiniteCycles{std::move(cycles)});
  s.cycle_index_ = std::move(index);
  return s;
}

PermutationSpec PermutationSpec::constant_blocks(std::int64_t L) {
  if (L < 1) throw std::invalid_argument("constant_blocks: L >= 1");
  return PermutationSpec(ConstantBlocks{L});
}

PermutationSpec PermutationSpec::interleave(PermutationSpec even,
                                            PermutationSpec odd) {
  return PermutationSpec(
      Interleave{std::make_shared<const PermutationSpec>(std::move(even)),
                 std::make_shared<const PermutationSpec>(std::move(odd))});
}

PermutationSpec PermutationSpec::inverse() const {
  PermutationSpec s = *this;
  s.inverted_ = !s.inverted_;
  return s;
}

std::int64_t PermutationSpec::apply(std::int64_t n) const {
  require_positive(n);
  return inverted_ ? apply_base_inverse(n) : apply_base(n);
}

std::int64_t PermutationSpec::apply_inverse(std::int64_t n) const {
  require_positive(n);
  return inverted_ ? apply_base(n) : apply_base_inverse(n);
}

std::int64_t PermutationSpec::apply_base(std::int64_t n) const {
  return std::visit(
      [&](const auto& b) -> std::int64_t {
        using T = std::decay_t<decltype(b)>;
        if constexpr (std::is_same_v<T, FiniteCycles>) {
          auto it = cycle_index_->find(n);
          if (it == cycle_index_->end()) return n;
          const auto& cyc = b.cycles[it->second.cycle];
          return cyc[(it->second.pos + 1) % cyc.size()];
        } else if constexpr (std::is_same_v<T, DoublingBlocks>) {
          const int k = block_of(n);
          const std::int64_t top = (std::int64_t(1) << k) - 1;
          return n == top ? std::int64_t(1) << (k - 1) : n + 1;
        } else if constexpr (std::is_same_v<T, ConstantBlocks>) {
          return (n - 1) % b.L == b.L - 1 ? n - (b.L - 1) : n + 1;
        } else if constexpr (std::is_same_v<T, ZigzagShift>) {
          return from_zigzag(to_zigzag(n) + 1);
        } else {
          static_assert(std::is_same_v<T, Interleave>);
          return n % 2 == 0 ? 2 * b.even->apply(n / 2)
                            : 2 * b.odd->apply((n + 1) / 2) - 1;
        }
      },
      base_);
}

std::int64_t PermutationSpec::apply_base_inverse(std::int64_t n) const {
  return std::visit(
      [&](const auto& b) -> std::int64_t {
        using T = std::decay_t<decltype(b)>;
        if constexpr (std::is_same_v<T, FiniteCycles>) {
          auto it = cycle_index_->find(n);
          if (it == cycle_index_->end()) return n;
          const auto& cyc = b.cycles[it->second.cycle];
          return cyc[(it->second.pos + cyc.size() - 1) % cyc.size()];
        } else if constexpr (std::is_same_v<T, DoublingBlocks>) {
          const bool bottom =
              (static_cast<std::uint64_t>(n) &
               (static_cast<std::uint64_t>(n) - 1)) == 0;  // n = 2^{k-1}
          return bottom ? 2 * n - 1 : n - 1;
        } else if constexpr (std::is_same_v<T, ConstantBlocks>) {
          return (n - 1) % b.L == 0 ? n + (b.L - 1) : n - 1;
        } else if constexpr (std::is_same_v<T, ZigzagShift>) {
          return from_zigzag(to_zigzag(n) - 1);
        } else {
          static_assert(std::is_same_v<T, Interleave>);
          return n % 2 == 0 ? 2 * b.even->apply_inverse(n / 2)
                            : 2 * b.odd->apply_inverse((n + 1) / 2) - 1;
        }
      },
      base_);
}

std::int64_t PermutationSpec::apply_power(std::int64_t n,
                                          const BigInt& m) const {
  require_positive(n);
  return apply_base_power(n, inverted_ ? BigInt(-m) : m);
}

std::int64_t PermutationSpec::apply_base_power(std::int64_t n,
                                               const BigInt& m) const {
  return std::visit(
      [&](const auto& b) -> std::int64_t {
        using T = std::decay_t<decltype(b)>;
        if constexpr (std::is_same_v<T, FiniteCycles>) {
          auto it = cycle_index_->find(n);
          if (it == cycle_index_->end()) return n;
          const auto& cyc = b.cycles[it->second.cycle];
          const BigInt len(cyc.size());
          const std::size_t step =
              mod_floor(BigInt(it->second.pos) + m, len).convert_to<std::size_t>();
          return cyc[step];
        } else if constexpr (std::is_same_v<T, DoublingBlocks>) {
          const int k = block_of(n);
          const std::int64_t base = std::int64_t(1) << (k - 1);
          const BigInt size(base);  // |B_k| = 2^{k-1}
          const std::int64_t off =
              mod_floor(BigInt(n - base) + m, size).convert_to<std::int64_t>();
          return base + off;
        } else if constexpr (std::is_same_v<T, ConstantBlocks>) {
          const std::int64_t start = n - (n - 1) % b.L;
          const std::int64_t off =
              mod_floor(BigInt((n - 1) % b.L) + m, BigInt(b.L))
                  .convert_to<std::int64_t>();
          return start + off;
        } else if constexpr (std::is_same_v<T, ZigzagShift>) {
          return from_zigzag(to_zigzag(n) + m);
        } else {
          static_assert(std::is_same_v<T, Interleave>);
          return n % 2 == 0 ? 2 * b.even->apply_power(n / 2, m)
                            : 2 * b.odd->apply_power((n + 1) / 2, m) - 1;
        }
      },
      base_);
}

OrbitCard PermutationSpec::orbit_card(std::int64_t m) const {
  require_positive(m);
  return std::visit(
      [&](const auto& b) -> OrbitCard {
        using T = std::decay_t<decltype(b)>;
        if constexpr (std::is_same_v<T, FiniteCycles>) {
          auto it = cycle_index_->find(m);
          return NatOrInf(BigInt(
              it == cycle_index_->end() ? 1 : b.cycles[it->second.cycle].size()));
        } else if constexpr (std::is_same_v<T, DoublingBlocks>) {
          return NatOrInf(BigInt(1) << (block_of(m) - 1));
        } else if constexpr (std::is_same_v<T, ConstantBlocks>) {
          return NatOrInf(BigInt(b.L));
        } else if constexpr (std::is_same_v<T, ZigzagShift>) {
          return NatOrInf::inf();
        } else {
          static_assert(std::is_same_v<T, Interleave>);
          return m % 2 == 0 ? b.even->orbit_card(m / 2)
                            : b.odd->orbit_card((m + 1) / 2);
        }
      },
      base_);
}

OrbitSummary orbit_summary(const PermutationSpec& spec) {
  return std::visit(
      [&](const auto& b) -> OrbitSummary {
        using T = std::decay_t<decltype(b)>;
        if constexpr (std::is_same_v<T, PermutationSpec::FiniteCycles>) {
          // Identity fixed points off the cycle support always exist.
          NatOrInf l(BigInt(1)), s(BigInt(1));
          for (const auto& c : b.cycles) {
            l = NatOrInf::lcm(l, NatOrInf(BigInt(c.size())));
            s = NatOrInf::max(s, NatOrInf(BigInt(c.size())));
          }
          return {true, false, l, s};
        } else if constexpr (std::is_same_v<T,
                                            PermutationSpec::DoublingBlocks>) {
          return {true, false, NatOrInf::inf(), NatOrInf::inf()};
        } else if constexpr (std::is_same_v<T,
                                            PermutationSpec::ConstantBlocks>) {
          return {true, false, NatOrInf(BigInt(b.L)), NatOrInf(BigInt(b.L))};
        } else if constexpr (std::is_same_v<T, PermutationSpec::ZigzagShift>) {
          return {false, true, NatOrInf(BigInt(1)), NatOrInf(BigInt(1))};
        } else {
          static_assert(std::is_same_v<T, PermutationSpec::Interleave>);
          const OrbitSummary e = orbit_summary(*b.even);
          const OrbitSummary o = orbit_summary(*b.odd);
          OrbitSummary out;
          out.has_finite_orbit = e.has_finite_orbit || o.has_finite_orbit;
          out.has_infinite_orbit = e.has_infinite_orbit || o.has_infinite_orbit;
          if (e.has_finite_orbit && o.has_finite_orbit) {
            out.finite_size_lcm =
                NatOrInf::lcm(e.finite_size_lcm, o.finite_size_lcm);
            out.finite_size_sup =
                NatOrInf::max(e.finite_size_sup, o.finite_size_sup);
          } else if (e.has_finite_orbit) {
            out.finite_size_lcm = e.finite_size_lcm;
            out.finite_size_sup = e.finite_size_sup;
          } else {
            out.finite_size_lcm = o.finite_size_lcm;
            out.finite_size_sup = o.finite_size_sup;
          }
          return out;
        }
      },
      spec.base());
}

PeriodicClassification classify_permutation(const PermutationSpec& spec) {
  const OrbitSummary s = orbit_summary(spec);
  PeriodicClassification c;
  if (!s.has_finite_orbit) {
    c.kind = ClassificationKind::ZeroOnly;
    c.closed = true;
    c.dense = false;
    c.closure_codimension = NatOrInf::inf();
    c.explanation =
        "every orbit is infinite, so no basis coordinate can recur and the "
        "only periodic vector is 0";
    return c;
  }
  if (!s.has_infinite_orbit) {
    if (s.finite_size_sup.is_finite()) {
      c.kind = ClassificationKind::WholeSpace;
      c.closed = true;
      c.dense = true;
      c.closure_codimension = NatOrInf(BigInt(0));
      c.exponent = s.finite_size_lcm.finite();
      c.kernel_exponent = c.exponent;
      c.explanation =
          "all orbits are finite with bounded size: T^N = I for N = " +
          s.finite_size_lcm.str() + " and P = H";
      return c;
    }
    c.kind = ClassificationKind::ProperDense;
    c.closed = false;
    c.dense = true;
    c.closure_codimension = NatOrInf(BigInt(0));
    c.explanation =
        "all orbits are finite but of unbounded size: P contains every "
        "finitely-supported vector yet misses limits mixing all orbit sizes";
    return c;
  }
  c.dense = false;
  c.closure_codimension = NatOrInf::inf();
  if (s.finite_size_sup.is_finite()) {
    c.kind = ClassificationKind::ClosedProper;
    c.closed = true;
    c.kernel_exponent = s.finite_size_lcm.finite();
    c.explanation =
        "finite orbits of bounded size coexist with infinite orbits: "
        "P = ker(T^M - I) with M = " +
        s.finite_size_lcm.str() + ", a proper closed subspace";
    return c;
  }
  c.kind = ClassificationKind::ProperNotClosed;
  c.closed = false;
  c.explanation =
      "finite orbits of unbounded size coexist with infinite orbits: P is "
      "neither closed nor dense";
  return c;
}

BigInt period_of_vector(const PermutationSpec& spec, const ExactVector& x) {
  if (x.is_zero())
    throw ContractViolation("period_of_vector: zero vector has no prime period");
  BigInt L = 1;
  for (const auto& [n, c] : x.terms()) {
    const OrbitCard card = spec.orbit_card(n);
    if (card.is_inf())
      throw NotPeriodicError(
          "support index " + std::to_string(n) +
          " lies on an infinite orbit; its coefficient would have to recur "
          "infinitely often, contradicting square-summability");
    L = boost::multiprecision::lcm(L, card.finite());
  }
  for (const BigInt& m : divisors_ascending(L)) {
    bool ok = true;
    for (const auto& [n, c] : x.terms()) {
      const std::int64_t target = spec.apply_power(n, m);
      auto it = x.terms().find(target);
      if (it == x.terms().end() || !(it->second == c)) {
        ok = false;
        break;
      }
    }
    if (ok) return m;
  }
  throw std::logic_error("period_of_vector: no divisor of L worked");
}

namespace {

bool explicit_group_invariant(const PermutationSpec& spec,
                              const ExplicitGroup& g, const BigInt& M) {
  // A finite set closed under sigma^M cannot meet an infinite orbit: the
  // sigma^M-orbit inside the set would force a finite sigma-orbit.
  for (std::int64_t n : g.indices)
    if (spec.orbit_card(n).is_inf()) return false;
  std::set<std::int64_t> image;
  for (std::int64_t n : g.indices) image.insert(spec.apply_power(n, M));
  return std::equal(image.begin(), image.end(), g.indices.begin(),
                    g.indices.end());
}

}  // namespace

bool verify_structured_period(const PermutationSpec& spec,
                              const GroupedVector& x, const BigInt& M) {
  if (M < 1) throw std::invalid_argument("verify_structured_period: M >= 1");
  if (!x.structured()) {
    for (const auto& g : x.groups())
      if (!explicit_group_invariant(spec, g, M)) return false;
    return true;
  }
  if (!std::holds_alternative<PermutationSpec::DoublingBlocks>(spec.base()))
    throw UnsupportedSelector(
        "dyadic_even_blocks selector is closed-form checkable only against "
        "doubling blocks");
  // Group k holds the even offsets of block [2^k, 2^{k+1}-1], size 2^k >= 2.
  // sigma^M shifts offsets by M mod 2^k (sign irrelevant for invariance), so
  // every group is invariant iff M is even.
  return M % 2 == 0;
}

bool naive_union_member(const PermutationSpec& spec, const ExactVector& x) {
  for (const auto& [n, c] : x.terms())
    if (spec.orbit_card(n).is_inf()) return false;
  return true;  // finitely many finite cardinalities are always bounded
}

bool naive_union_member(const PermutationSpec& spec, const GroupedVector& x) {
  if (!x.structured()) {
    for (const auto& g : x.groups())
      for (std::int64_t n : g.indices)
        if (spec.orbit_card(n).is_inf()) return false;
    return true;
  }
  // The structured selector touches indices 2^k + 2j for all k >= 1; the sup
  // of orbit cardinalities over that set must come from family structure.
  return std::visit(
      [&](const auto& b) -> bool {
        using T = std::decay_t<decltype(b)>;
        if constexpr (std::is_same_v<T, PermutationSpec::DoublingBlocks>) {
          return false;  // cards 2^k over the selector blocks, unbounded
        } else if constexpr (std::is_same_v<T, PermutationSpec::ZigzagShift>) {
          return false;  // every orbit infinite
        } else if constexpr (std::is_same_v<T, PermutationSpec::Interleave>) {
          // Selector indices are even and n/2 ranges over all of N, so the
          // sup equals the even child's global behavior.
          const OrbitSummary e = orbit_summary(*b.even);
          return !e.has_infinite_orbit && e.finite_size_sup.is_finite();
        } else {
          // FiniteCycles: bounded by the longest cycle.  ConstantBlocks: L.
          return true;
        }
      },
      spec.base());
}

double permutation_distance_check(const PermutationSpec& a,
                                  const PermutationSpec& b,
                                  std::int64_t probe_limit) {
  for (std::int64_t n = 1; n <= probe_limit; ++n)
    if (a.apply(n) != b.apply(n)) return std::sqrt(2.0);
  return 0.0;
}

}  // namespace perop
