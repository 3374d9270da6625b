#pragma once

#include "perop/classification.hpp"
#include "perop/vectors.hpp"

#include <cstdint>
#include <map>
#include <memory>
#include <variant>
#include <vector>

namespace perop {

// Orbit cardinality of an index under the bijection; >= 1 or infinite.
using OrbitCard = NatOrInf;

// Symbolic bijections sigma of N = {1, 2, ...}.  Every family answers
// orbit-cardinality questions from its structure; nothing is decided by
// unbounded iteration (iteration cannot distinguish large finite from
// infinite).
class PermutationSpec {
 public:
  struct FiniteCycles {
    // Disjoint cycles, identity elsewhere; each length >= 1.
    std::vector<std::vector<std::int64_t>> cycles;
    bool operator==(const FiniteCycles&) const = default;
  };
  // Blocks B_k = {2^{k-1}, ..., 2^k - 1}, each cycled:
  // sigma(2^k - 1) = 2^{k-1}, sigma(n) = n + 1 inside a block.
  struct DoublingBlocks {
    bool operator==(const DoublingBlocks&) const = default;
  };
  // Consecutive blocks of length L, each a single L-cycle.
  struct ConstantBlocks {
    std::int64_t L;
    bool operator==(const ConstantBlocks&) const = default;
  };
  // The two-sided shift k -> k+1 on Z, folded onto N by the zigzag indexing
  // 1<->0, 2k<->k, 2k+1<->-k.  One infinite orbit covering N:
  // sigma(1) = 2, sigma(2k) = 2k+2, sigma(3) = 1, sigma(2k+1) = 2k-1 (k >= 2).
  struct ZigzagShift {
    bool operator==(const ZigzagShift&) const = default;
  };
  // Acts on even indices via `even` (n = 2m -> 2*even(m)) and on odd indices
  // via `odd` (n = 2m-1 -> 2*odd(m) - 1).
  struct Interleave {
    std::shared_ptr<const PermutationSpec> even;
    std::shared_ptr<const PermutationSpec> odd;
    bool operator==(const Interleave& o) const;
  };

  using Base = std::variant<FiniteCycles, DoublingBlocks, ConstantBlocks,
                            ZigzagShift, Interleave>;

  static PermutationSpec finite_cycles(
      std::vector<std::vector<std::int64_t>> cycles);
  static PermutationSpec doubling_blocks() {
    return PermutationSpec(DoublingBlocks{});
  }
  static PermutationSpec constant_blocks(std::int64_t L);
  static PermutationSpec zigzag_shift() {
    return PermutationSpec(ZigzagShift{});
  }
  static PermutationSpec interleave(PermutationSpec even, PermutationSpec odd);

  // The inverse bijection (same orbits, so same classification).
  PermutationSpec inverse() const;
  bool inverted() const { return inverted_; }
  const Base& base() const { return base_; }

  std::int64_t apply(std::int64_t n) const;          // sigma(n)
  std::int64_t apply_inverse(std::int64_t n) const;  // sigma^{-1}(n)
  // sigma^m(n), closed-form per family (block rotation / cycle position);
  // m may be negative or far exceed any iteration budget.
  std::int64_t apply_power(std::int64_t n, const BigInt& m) const;
  OrbitCard orbit_card(std::int64_t m) const;

  bool operator==(const PermutationSpec& o) const {
    return inverted_ == o.inverted_ && base_ == o.base_;
  }

 private:
  explicit PermutationSpec(Base b) : base_(std::move(b)) {}
  std::int64_t apply_base(std::int64_t n) const;
  std::int64_t apply_base_inverse(std::int64_t n) const;
  std::int64_t apply_base_power(std::int64_t n, const BigInt& m) const;

  Base base_;
  bool inverted_ = false;
  // FiniteCycles lookup tables; shared so specs stay cheaply copyable.
  struct CyclePos {
    std::size_t cycle;
    std::size_t pos;
  };
  std::shared_ptr<const std::map<std::int64_t, CyclePos>> cycle_index_;
};

// Whole-orbit-structure summary, from family structure (recursive for
// Interleave).  finite_size_lcm/_sup range over realized finite orbit sizes
// and are meaningful only when has_finite_orbit.
struct OrbitSummary {
  bool has_finite_orbit;
  bool has_infinite_orbit;
  NatOrInf finite_size_lcm;
  NatOrInf finite_size_sup;
};
OrbitSummary orbit_summary(const PermutationSpec& spec);

// Decision procedure:
//   all orbits finite, sizes bounded    -> WholeSpace (exponent = lcm of sizes)
//   all orbits finite, sizes unbounded  -> ProperDense
//   mixed, finite sizes bounded         -> ClosedProper (kernel = lcm)
//   mixed, finite sizes unbounded       -> ProperNotClosed
//   all orbits infinite                 -> ZeroOnly
// The closure codimension is 0 or infinite, never finite nonzero.
PeriodicClassification classify_permutation(const PermutationSpec& spec);

// Least m >= 1 with c_{sigma^m(n)} = c_n for all n (coefficients extended by
// zero off the support).  Tests divisors of L = lcm of the support's orbit
// sizes, ascending.  Throws NotPeriodicError when a support index lies on an
// infinite orbit (detected via orbit_card, not iteration), ContractViolation
// when x = 0.
BigInt period_of_vector(const PermutationSpec& spec, const ExactVector& x);

// True iff every group's index set is invariant under sigma^M (groups carry
// constant weights, so set-invariance is T^M x = x).  The structured
// dyadic_even_blocks selector is checked in closed form and only against
// DoublingBlocks; pairing it with another spec raises UnsupportedSelector.
bool verify_structured_period(const PermutationSpec& spec,
                              const GroupedVector& x, const BigInt& M);

// True iff sup of orbit_card over nonzero-coefficient indices is finite,
// i.e. x lies in the union of the fixed spaces indexed by orbit size.
// The structured witness on DoublingBlocks returns false here while
// verify_structured_period(x, 2) holds: the union inclusion is proper.
bool naive_union_member(const PermutationSpec& spec, const ExactVector& x);
bool naive_union_member(const PermutationSpec& spec, const GroupedVector& x);

// sqrt(2) when the specs provably differ at some index <= probe_limit (an
// exact operator-norm lower bound witnessed by that basis vector), else 0
// (inconclusive).
double permutation_distance_check(const PermutationSpec& a,
                                  const PermutationSpec& b,
                                  std::int64_t probe_limit);

}  // namespace perop
