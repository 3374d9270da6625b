#include "perop/unit_scalar.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace perop {

namespace {

constexpr long double kPi = 3.14159265358979323846264338327950288L;
constexpr long double kSqrt2 = 1.41421356237309504880168872420969808L;

long double frac_ld(long double x) {
  long double f = std::fmod(x, 1.0L);
  if (f < 0) f += 1.0L;
  return f;
}

std::string rat_str(const BigRat& r) {
  std::ostringstream os;
  os << r;
  return os.str();
}

}  // namespace

UnitScalar UnitScalar::rational(BigInt p, BigInt q) {
  if (q == 0) throw std::invalid_argument("UnitScalar: zero denominator");
  if (q < 0) {
    q = -q;
    p = -p;
  }
  p = mod_floor(p, q);
  BigInt g = boost::multiprecision::gcd(p, q);
  if (g > 1) {
    p /= g;
    q /= g;
  }
  return UnitScalar(Rational{std::move(p), std::move(q)});
}

UnitScalar UnitScalar::sqrt2_affine(BigRat a, BigRat b) {
  if (b == 0)
    throw std::invalid_argument("UnitScalar: sqrt2_affine needs b != 0");
  return UnitScalar(Sqrt2Affine{frac(a), std::move(b)});
}

UnitScalar UnitScalar::declared_irrational(double t, std::string label) {
  if (!(t >= 0.0 && t < 1.0))
    throw std::invalid_argument("UnitScalar: declared rotation outside [0,1)");
  return UnitScalar(Declared{t, std::move(label)});
}

bool UnitScalar::is_root_of_unity() const {
  return std::holds_alternative<Rational>(v_);
}

BigInt UnitScalar::order() const {
  if (const auto* r = std::get_if<Rational>(&v_)) return r->q;
  throw OrderUndefined("order: " + describe() +
                       " is not a root of unity (irrational rotation)");
}

UnitScalar UnitScalar::pow(const BigInt& k) const {
  if (k == 0) return one();
  if (const auto* r = std::get_if<Rational>(&v_))
    return rational(r->p * k, r->q);
  if (const auto* s = std::get_if<Sqrt2Affine>(&v_))
    return sqrt2_affine(BigRat(k) * s->a, BigRat(k) * s->b);
  const auto& d = std::get<Declared>(v_);
  long double t = frac_ld(static_cast<long double>(d.t) *
                          k.convert_to<long double>());
  std::ostringstream label;
  label << "(" << d.label << ")^" << k;
  return declared_irrational(static_cast<double>(t), label.str());
}

UnitScalar UnitScalar::conjugate() const {
  if (const auto* r = std::get_if<Rational>(&v_))
    return rational(r->q - r->p, r->q);
  if (const auto* s = std::get_if<Sqrt2Affine>(&v_))
    return sqrt2_affine(-s->a, -s->b);
  const auto& d = std::get<Declared>(v_);
  double t = d.t == 0.0 ? 0.0 : 1.0 - d.t;
  return declared_irrational(t, "conj(" + d.label + ")");
}

long double UnitScalar::rotation_ld() const {
  if (const auto* r = std::get_if<Rational>(&v_))
    return to_long_double(BigRat(r->p, r->q));
  if (const auto* s = std::get_if<Sqrt2Affine>(&v_))
    return frac_ld(to_long_double(s->a) + to_long_double(s->b) * kSqrt2);
  return static_cast<long double>(std::get<Declared>(v_).t);
}

double UnitScalar::rotation() const {
  return static_cast<double>(rotation_ld());
}

std::complex<double> UnitScalar::to_complex() const {
  const long double ang = 2.0L * kPi * rotation_ld();
  return {static_cast<double>(std::cos(ang)),
          static_cast<double>(std::sin(ang))};
}

UnitScalar::DyadicSnap UnitScalar::nearest_dyadic(int level) const {
  if (level < 1 || level > 62)
    throw std::invalid_argument("nearest_dyadic: level outside [1,62]");
  const BigInt N = BigInt(1) << level;
  auto chord_of = [](long double delta) {
    // delta = rotation distance in [0, 1/2]; chord = |e^{2 pi i delta} - 1|.
    return static_cast<double>(2.0L * std::sin(kPi * delta));
  };
  if (const auto* r = std::get_if<Rational>(&v_)) {
    const BigInt num = r->p * N;   // t*N = num/q, 0 <= num < q*N
    const BigInt k0 = num / r->q;  // floor, k0 <= N-1
    const BigInt rem = num - k0 * r->q;
    BigInt k;
    if (2 * rem < r->q) {
      k = k0;
    } else if (2 * rem > r->q) {
      k = (k0 + 1) % N;
    } else {
      k = std::min(k0, BigInt((k0 + 1) % N));  // exact midpoint: smaller k
    }
    BigRat delta = frac(BigRat(r->p, r->q) - BigRat(k, N));
    if (delta > BigRat(1, 2)) delta = 1 - delta;
    return {k, chord_of(to_long_double(delta))};
  }
  const long double t = rotation_ld();
  const long double Nld = std::pow(2.0L, level);
  const long double x = t * Nld;
  long double best_delta = 2.0L;
  BigInt best_k = 0;
  for (int off = 0; off <= 1; ++off) {
    const long double kf = std::floor(x) + off;
    long double delta = std::fabs(t - kf / Nld);
    if (delta > 0.5L) delta = 1.0L - delta;
    BigInt k = mod_floor(BigInt(static_cast<long long>(kf)), N);
    if (delta < best_delta || (delta == best_delta && k < best_k)) {
      best_delta = delta;
      best_k = k;
    }
  }
  return {best_k, chord_of(best_delta)};
}

bool UnitScalar::is_rational() const {
  return std::holds_alternative<Rational>(v_);
}
const UnitScalar::Rational& UnitScalar::rational_value() const {
  return std::get<Rational>(v_);
}
bool UnitScalar::is_sqrt2_affine() const {
  return std::holds_alternative<Sqrt2Affine>(v_);
}
const UnitScalar::Sqrt2Affine& UnitScalar::sqrt2_value() const {
  return std::get<Sqrt2Affine>(v_);
}
bool UnitScalar::is_declared() const {
  return std::holds_alternative<Declared>(v_);
}
const UnitScalar::Declared& UnitScalar::declared_value() const {
  return std::get<Declared>(v_);
}

std::string UnitScalar::describe() const {
  if (const auto* r = std::get_if<Rational>(&v_))
    return r->p.str() + "/" + r->q.str();
  if (const auto* s = std::get_if<Sqrt2Affine>(&v_))
    return "frac(" + rat_str(s->a) + " + " + rat_str(s->b) + "*sqrt2)";
  return std::get<Declared>(v_).label;
}

bool canonical_less(const UnitScalar& a, const UnitScalar& b) {
  auto rank = [](const UnitScalar& s) {
    return s.is_rational() ? 0 : s.is_sqrt2_affine() ? 1 : 2;
  };
  if (rank(a) != rank(b)) return rank(a) < rank(b);
  if (a.is_rational()) {
    const auto &x = a.rational_value(), &y = b.rational_value();
    return x.q != y.q ? x.q < y.q : x.p < y.p;
  }
  if (a.is_sqrt2_affine()) {
    const auto &x = a.sqrt2_value(), &y = b.sqrt2_value();
    return x.a != y.a ? x.a < y.a : x.b < y.b;
  }
  const auto &x = a.declared_value(), &y = b.declared_value();
  return x.t != y.t ? x.t < y.t : x.label < y.label;
}

}  // namespace perop
