#pragma once

#include "perop/numeric.hpp"

#include <complex>
#include <string>
#include <variant>

namespace perop {

// A point on the unit circle, stored as its rotation number t in [0, 1):
// the scalar is e^{2 pi i t}.  Three representations:
//   Rational     t = p/q reduced, 0 <= p < q.  Exactly the roots of unity.
//   Sqrt2Affine  t = frac(a + b*sqrt2) with rational a, b and b != 0.
//                Irrational for every such a, b, and closed under integer
//                powers and conjugation, so irrationality is certified by
//                construction rather than tested on a float.
//   Declared     a rotation known only as a double; the caller asserts
//                irrationality and supplies a provenance label.
class UnitScalar {
 public:
  struct Rational {
    BigInt p, q;
    bool operator==(const Rational&) const = default;
  };
  struct Sqrt2Affine {
    BigRat a, b;  // a normalized to [0,1), b != 0
    bool operator==(const Sqrt2Affine&) const = default;
  };
  struct Declared {
    double t;
    std::string label;
    bool operator==(const Declared&) const = default;
  };

  static UnitScalar one() { return rational(0, 1); }
  static UnitScalar rational(BigInt p, BigInt q);       // q != 0
  static UnitScalar sqrt2_affine(BigRat a, BigRat b);   // b != 0
  static UnitScalar declared_irrational(double t, std::string label);

  bool is_root_of_unity() const;
  // Least m >= 1 with pow(m) == one().  Throws OrderUndefined on irrationals.
  BigInt order() const;
  UnitScalar pow(const BigInt& k) const;
  UnitScalar conjugate() const;
  std::complex<double> to_complex() const;
  double rotation() const;        // t as double
  long double rotation_ld() const;

  struct DyadicSnap {
    BigInt k;      // in [0, 2^level)
    double chord;  // |value - e^{2 pi i k / 2^level}|
  };
  // Nearest 2^level-th root of unity; exact midpoint ties resolve to the
  // smaller k after reduction mod 2^level.  1 <= level <= 62.
  DyadicSnap nearest_dyadic(int level) const;

  bool is_rational() const;
  const Rational& rational_value() const;      // pre: is_rational()
  bool is_sqrt2_affine() const;
  const Sqrt2Affine& sqrt2_value() const;      // pre: is_sqrt2_affine()
  bool is_declared() const;
  const Declared& declared_value() const;      // pre: is_declared()

  // "3/8", "frac(1/2 + -1*sqrt2)", or the declared label.
  std::string describe() const;

  bool operator==(const UnitScalar&) const = default;

 private:
  explicit UnitScalar(std::variant<Rational, Sqrt2Affine, Declared> v)
      : v_(std::move(v)) {}
  std::variant<Rational, Sqrt2Affine, Declared> v_;
};

// Total order used only to canonicalize value lists in metadata and reports.
bool canonical_less(const UnitScalar& a, const UnitScalar& b);

}  // namespace perop
