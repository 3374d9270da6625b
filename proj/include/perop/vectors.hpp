#pragma once

#include "perop/numeric.hpp"

#include <complex>
#include <cstdint>
#include <map>
#include <variant>
#include <vector>

namespace perop {

struct ComplexRat {
  BigRat re;
  BigRat im;
  bool is_zero() const { return re == 0 && im == 0; }
  ComplexRat operator+(const ComplexRat& o) const {
    return {re + o.re, im + o.im};
  }
  std::complex<double> to_complex() const {
    return {to_double(re), to_double(im)};
  }
  bool operator==(const ComplexRat&) const = default;
};

// Finite-support vector with exact complex rational coefficients.
// Invariant: keys >= 1, stored coefficients != 0.
class ExactVector {
 public:
  ExactVector() = default;
  static ExactVector basis(std::int64_t n) {
    ExactVector x;
    x.set(n, ComplexRat{1, 0});
    return x;
  }

  void set(std::int64_t n, ComplexRat c);
  const std::map<std::int64_t, ComplexRat>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::int64_t max_index() const {
    return terms_.empty() ? 0 : terms_.rbegin()->first;
  }
  ExactVector operator+(const ExactVector& o) const;
  bool operator==(const ExactVector&) const = default;

 private:
  std::map<std::int64_t, ComplexRat> terms_;
};

// Block-constant vector: each group is a set of indices sharing one weight.
// Two forms:
//   explicit  — finitely many finite index sets (pairwise disjoint, nonzero
//               weights); trivially square-summable;
//   dyadic_even_blocks — the infinite structured witness
//               sum_{k>=1} 2^{-k^2} sum_{0<=j<2^{k-1}} e_{2^k + 2j},
//               i.e. group k holds the even offsets of the block
//               [2^k, 2^{k+1}-1] with weight 2^{-k^2}; square-summable since
//               sum_k 2^{-2k^2} 2^{k-1} converges.
struct ExplicitGroup {
  std::vector<std::int64_t> indices;  // sorted, distinct, >= 1
  ComplexRat weight;                  // != 0
  bool operator==(const ExplicitGroup&) const = default;
};

class GroupedVector {
 public:
  static GroupedVector explicit_groups(std::vector<ExplicitGroup> groups);
  static GroupedVector dyadic_even_blocks() { return GroupedVector(Dyadic{}); }

  bool structured() const { return std::holds_alternative<Dyadic>(v_); }
  const std::vector<ExplicitGroup>& groups() const;  // pre: !structured()
  // Both constructors certify square-summability (see class comment).
  bool square_summable() const { return true; }
  bool operator==(const GroupedVector&) const = default;

 private:
  struct Dyadic {
    bool operator==(const Dyadic&) const = default;
  };
  explicit GroupedVector(std::variant<std::vector<ExplicitGroup>, Dyadic> v)
      : v_(std::move(v)) {}
  std::variant<std::vector<ExplicitGroup>, Dyadic> v_;
};

}  // namespace perop
