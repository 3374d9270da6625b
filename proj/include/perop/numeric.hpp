#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace perop {

using BigInt = boost::multiprecision::cpp_int;
using BigRat = boost::multiprecision::cpp_rational;

// Error taxonomy shared across modules.  Each maps to one CLI exit condition;
// see cli.hpp for the mapping.
struct OrderUndefined : std::domain_error {
  using std::domain_error::domain_error;
};
struct NotPeriodicError : std::domain_error {
  using std::domain_error::domain_error;
};
struct ContractViolation : std::logic_error {
  using std::logic_error::logic_error;
};
struct UnsupportedSelector : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct UnsupportedFamily : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct OrbitClosureUnavailable : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct NotNormal : std::domain_error {
  using std::domain_error::domain_error;
};
struct SchemaError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline BigInt mod_floor(const BigInt& a, const BigInt& m) {
  BigInt r = a % m;
  if (r < 0) r += m;
  return r;
}

// x - floor(x), exact, in [0, 1).
BigRat frac(const BigRat& x);

double to_double(const BigRat& x);
long double to_long_double(const BigRat& x);

// Distinct prime factors, ascending.  Callers pass multiplicative orders and
// their lcms, whose prime factors come from small reduced denominators, so
// trial division up to 10^6 suffices; a surviving cofactor is prime for every
// value this library produces.
std::vector<BigInt> prime_factors(BigInt n);

// All divisors, ascending.  Same factorization budget as prime_factors.
std::vector<BigInt> divisors_ascending(const BigInt& n);

// Natural number extended with a point at infinity.  Used for counts,
// codimensions and order bounds; infinity absorbs in every operation.
class NatOrInf {
 public:
  NatOrInf() : v_(BigInt(0)) {}
  explicit NatOrInf(BigInt v);
  static NatOrInf inf() { return NatOrInf(Tag{}); }
  static NatOrInf of(std::int64_t v) { return NatOrInf(BigInt(v)); }

  bool is_inf() const { return !v_.has_value(); }
  bool is_finite() const { return v_.has_value(); }
  const BigInt& finite() const;

  bool operator==(const NatOrInf& o) const { return v_ == o.v_; }
  bool operator==(const BigInt& o) const { return v_.has_value() && *v_ == o; }
  bool operator==(std::int64_t o) const { return v_.has_value() && *v_ == o; }

  NatOrInf plus(const NatOrInf& o) const;
  static NatOrInf lcm(const NatOrInf& a, const NatOrInf& b);
  static NatOrInf max(const NatOrInf& a, const NatOrInf& b);

  std::string str() const;  // decimal digits, or "inf"

 private:
  struct Tag {};
  explicit NatOrInf(Tag) : v_(std::nullopt) {}
  std::optional<BigInt> v_;
};

}  // namespace perop
