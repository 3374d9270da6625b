#include "perop/numeric.hpp"

#include <algorithm>
#include <utility>

namespace perop {

BigRat frac(const BigRat& x) {
  BigInt n = numerator(x);
  BigInt d = denominator(x);
  BigInt q = n / d;  // truncates toward zero
  if (n < 0 && q * d != n) --q;
  return x - BigRat(q);
}

double to_double(const BigRat& x) { return x.convert_to<double>(); }

long double to_long_double(const BigRat& x) {
  return x.convert_to<long double>();
}

namespace {

std::vector<std::pair<BigInt, int>> factor_with_exponents(BigInt n) {
  std::vector<std::pair<BigInt, int>> out;
  auto take = [&](const BigInt& p) {
    if (n % p == 0) {
      int e = 0;
      while (n % p == 0) {
        n /= p;
        ++e;
      }
      out.emplace_back(p, e);
    }
  };
  take(2);
  for (BigInt p = 3; p * p <= n && p < 1000000; p += 2) take(p);
  if (n > 1) out.emplace_back(n, 1);  // prime cofactor (see header note)
  return out;
}

}  // namespace

std::vector<BigInt> prime_factors(BigInt n) {
  std::vector<BigInt> out;
  if (n < 2) return out;
  for (auto& [p, e] : factor_with_exponents(std::move(n))) out.push_back(p);
  return out;
}

std::vector<BigInt> divisors_ascending(const BigInt& n) {
  std::vector<BigInt> divs{BigInt(1)};
  if (n < 2) return divs;
  for (auto& [p, e] : factor_with_exponents(n)) {
    const std::size_t base = divs.size();
    BigInt pe = 1;
    for (int i = 0; i < e; ++i) {
      pe *= p;
      for (std::size_t j = 0; j < base; ++j) divs.push_back(divs[j] * pe);
    }
  }
  std::sort(divs.begin(), divs.end());
  return divs;
}

NatOrInf::NatOrInf(BigInt v) : v_(std::move(v)) {
  if (*v_ < 0) throw std::logic_error("NatOrInf: negative value");
}

const BigInt& NatOrInf::finite() const {
  if (!v_) throw std::logic_error("NatOrInf: finite() on infinity");
  return *v_;
}

NatOrInf NatOrInf::plus(const NatOrInf& o) const {
  if (is_inf() || o.is_inf()) return inf();
  return NatOrInf(*v_ + *o.v_);
}

NatOrInf NatOrInf::lcm(const NatOrInf& a, const NatOrInf& b) {
  if (a.is_inf() || b.is_inf()) return inf();
  if (*a.v_ == 0 || *b.v_ == 0)
    throw std::logic_error("NatOrInf: lcm with zero");
  return NatOrInf(boost::multiprecision::lcm(*a.v_, *b.v_));
}

NatOrInf NatOrInf::max(const NatOrInf& a, const NatOrInf& b) {
  if (a.is_inf() || b.is_inf()) return inf();
  return NatOrInf(std::max(*a.v_, *b.v_));
}

std::string NatOrInf::str() const {
  return is_inf() ? "inf" : v_->str();
}

}  // namespace perop
