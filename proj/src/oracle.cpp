#include "perop/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>
#include <string>

namespace perop {

namespace {

constexpr double kPi = std::numbers::pi;

using boost::multiprecision::denominator;
using boost::multiprecision::numerator;

BigRat bigrat_of_double(double x) {
  if (!std::isfinite(x))
    throw std::invalid_argument("bigrat_of_double: non-finite input");
  if (x == 0.0) return BigRat(0);
  int e = 0;
  const double m = std::frexp(x, &e);  // x = m * 2^e with |m| in [0.5, 1)
  const auto mi = static_cast<std::int64_t>(std::ldexp(m, 53));
  BigRat r(mi);
  const int shift = e - 53;
  if (shift >= 0)
    r *= BigRat(BigInt(1) << shift);
  else
    r /= BigRat(BigInt(1) << -shift);
  return r;
}

BigRat rat_abs(const BigRat& x) { return x < 0 ? BigRat(-x) : x; }

BigInt rat_floor(const BigRat& x) {
  BigInt q = numerator(x) / denominator(x);
  if (x < 0 && BigRat(q) != x) --q;
  return q;
}

// Best approximation of theta among rationals with denominator <= max_q: the
// deepest convergent that fits, or the semiconvergent past it, whichever is
// exactly closer.
std::pair<BigInt, BigInt> best_rational(const BigRat& theta,
                                        const BigInt& max_q) {
  BigInt p_prev = 1, q_prev = 0;
  BigInt p_cur = rat_floor(theta), q_cur = 1;
  BigRat x = theta - BigRat(p_cur);
  while (x != 0) {
    x = 1 / x;
    const BigInt a = rat_floor(x);
    x -= BigRat(a);
    const BigInt p_next = a * p_cur + p_prev;
    const BigInt q_next = a * q_cur + q_prev;
    if (q_next > max_q) {
      const BigInt t = (max_q - q_prev) / q_cur;
      if (t >= 1) {
        const BigInt ps = t * p_cur + p_prev;
        const BigInt qs = t * q_cur + q_prev;
        if (rat_abs(theta - BigRat(ps, qs)) <
            rat_abs(theta - BigRat(p_cur, q_cur)))
          return {ps, qs};
      }
      return {p_cur, q_cur};
    }
    p_prev = p_cur;
    q_prev = q_cur;
    p_cur = p_next;
    q_cur = q_next;
  }
  return {p_cur, q_cur};
}

// Least-denominator rational in [lo, hi] (continued-fraction descent).
BigRat simplest_in(const BigRat& lo, const BigRat& hi) {
  const BigInt fl = rat_floor(lo);
  if (BigRat(fl) == lo) return lo;
  if (hi >= BigRat(fl + 1)) return BigRat(fl + 1);
  const BigRat inner =
      simplest_in(1 / (hi - BigRat(fl)), 1 / (lo - BigRat(fl)));
  return BigRat(fl) + 1 / inner;
}

std::complex<double> rotation_point(const BigInt& p, const BigInt& q) {
  const double t = BigRat(p, q).convert_to<double>();
  return {std::cos(2 * kPi * t), std::sin(2 * kPi * t)};
}

struct Snap {
  BigInt p, q;      // q = 0: no rotation within tol and denominator cap
  double distance;  // inf when q = 0
};

// Least-denominator rotation within chord `tol` of lambda, q <= max_q.
Snap snap_to_rotation(const std::complex<double>& lambda, const BigInt& max_q,
                      double tol) {
  const double theta_d = std::arg(lambda) / (2 * kPi);
  BigRat theta = bigrat_of_double(theta_d);
  if (theta < 0) theta += 1;
  // Points on the circle: chord < tol  <=>  |angle / 2 pi| < asin(tol/2)/pi.
  const double eps_d = std::asin(std::min(1.0, tol / 2)) / kPi;
  const BigRat best = simplest_in(theta - bigrat_of_double(eps_d),
                                  theta + bigrat_of_double(eps_d));
  const BigInt q = denominator(best);
  const BigInt p = mod_floor(numerator(best), q);
  const double dist = std::abs(lambda - rotation_point(p, q));
  if (q > max_q || !(dist < tol))
    return {0, 0, std::numeric_limits<double>::infinity()};
  return {p, q, dist};
}

}  // namespace

Eigen::VectorXcd TruncatedOperator::apply(const Eigen::VectorXcd& x) const {
  if (x.size() != d)
    throw std::invalid_argument("apply: vector dimension mismatch");
  switch (kind) {
    case Kind::Diagonal: {
      Eigen::VectorXcd y(d);
      for (std::int64_t i = 0; i < d; ++i)
        y(i) = entries[static_cast<std::size_t>(i)] * x(i);
      return y;
    }
    case Kind::Permutation: {
      Eigen::VectorXcd y = Eigen::VectorXcd::Zero(d);
      for (std::int64_t i = 0; i < d; ++i)
        y(images[static_cast<std::size_t>(i)] - 1) = x(i);
      return y;
    }
    case Kind::DenseNormal:
      return dense * x;
  }
  throw std::logic_error("apply: bad kind");
}

Eigen::MatrixXcd TruncatedOperator::to_matrix() const {
  switch (kind) {
    case Kind::Diagonal: {
      Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(d, d);
      for (std::int64_t i = 0; i < d; ++i)
        m(i, i) = entries[static_cast<std::size_t>(i)];
      return m;
    }
    case Kind::Permutation: {
      Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(d, d);
      for (std::int64_t i = 0; i < d; ++i)
        m(images[static_cast<std::size_t>(i)] - 1, i) = 1.0;
      return m;
    }
    case Kind::DenseNormal:
      return dense;
  }
  throw std::logic_error("to_matrix: bad kind");
}

double TruncatedOperator::unitary_defect() const {
  const Eigen::MatrixXcd a = to_matrix();
  return operator_norm_lower_bound(a.adjoint() * a -
                                   Eigen::MatrixXcd::Identity(d, d));
}

TruncatedOperator truncate(const SpectrumSpec& spec, std::int64_t d) {
  if (d < 1) throw std::invalid_argument("truncate: d >= 1");
  TruncatedOperator op;
  op.kind = TruncatedOperator::Kind::Diagonal;
  op.d = d;
  op.exact_entries = spec.prefix_values(d);
  op.entries.reserve(static_cast<std::size_t>(d));
  for (const auto& v : op.exact_entries) op.entries.push_back(v.to_complex());
  return op;
}

TruncatedOperator truncate(const PermutationSpec& spec,
                           std::int64_t d_request) {
  if (d_request < 1) throw std::invalid_argument("truncate: d >= 1");
  constexpr std::int64_t kCap = std::int64_t(1) << 22;
  std::int64_t d = d_request;
  for (std::int64_t n = 1; n <= d; ++n) {
    if (spec.orbit_card(n).is_inf())
      throw OrbitClosureUnavailable(
          "index " + std::to_string(n) +
          " lies on an infinite orbit; no finite window is invariant");
    for (std::int64_t j = spec.apply(n); j != n; j = spec.apply(j)) {
      d = std::max(d, j);
      if (d > kCap)
        throw std::invalid_argument("truncate: orbit closure exceeds 2^22");
    }
  }
  TruncatedOperator op;
  op.kind = TruncatedOperator::Kind::Permutation;
  op.d = d;
  op.images.reserve(static_cast<std::size_t>(d));
  for (std::int64_t n = 1; n <= d; ++n) op.images.push_back(spec.apply(n));
  op.perm_source = spec;
  return op;
}

TruncatedOperator truncate_cyclic(const PermutationSpec& spec,
                                  std::int64_t d) {
  if (d < 1) throw std::invalid_argument("truncate_cyclic: d >= 1");
  std::vector<std::int64_t> images(static_cast<std::size_t>(d), 0);
  std::vector<char> hit(static_cast<std::size_t>(d) + 1, 0);
  std::vector<std::size_t> escapers;
  for (std::int64_t n = 1; n <= d; ++n) {
    const std::int64_t t = spec.apply(n);
    if (t <= d) {
      images[static_cast<std::size_t>(n - 1)] = t;
      hit[static_cast<std::size_t>(t)] = 1;
    } else {
      escapers.push_back(static_cast<std::size_t>(n - 1));
    }
  }
  std::vector<std::int64_t> unhit;
  for (std::int64_t t = 1; t <= d; ++t)
    if (!hit[static_cast<std::size_t>(t)]) unhit.push_back(t);
  // |escapers| = |unhit| by counting; pairing in index order keeps the
  // construction deterministic.
  for (std::size_t k = 0; k < escapers.size(); ++k)
    images[escapers[k]] = unhit[k];
  TruncatedOperator op;
  op.kind = TruncatedOperator::Kind::Permutation;
  op.d = d;
  op.images = std::move(images);
  op.cyclic_surrogate = true;
  op.perm_source = spec;
  return op;
}

TruncatedOperator dense_normal(Eigen::MatrixXcd m) {
  if (m.rows() != m.cols() || m.rows() == 0)
    throw std::invalid_argument("dense_normal: square nonempty matrix");
  TruncatedOperator op;
  op.kind = TruncatedOperator::Kind::DenseNormal;
  op.d = m.rows();
  op.dense = std::move(m);
  return op;
}

std::optional<std::int64_t> detect_period(const TruncatedOperator& op,
                                          const Eigen::VectorXcd& x,
                                          std::int64_t max_m, double tol) {
  if (max_m < 1) throw std::invalid_argument("detect_period: max_m >= 1");
  Eigen::VectorXcd y = x;
  for (std::int64_t m = 1; m <= max_m; ++m) {
    y = op.apply(y);
    if ((y - x).lpNorm<Eigen::Infinity>() < tol) return m;
  }
  return std::nullopt;
}

std::set<std::int64_t> brute_force_periodic_basis(const TruncatedOperator& op,
                                                  const BigInt& max_m,
                                                  double tol) {
  if (max_m < 1)
    throw std::invalid_argument("brute_force_periodic_basis: max_m >= 1");
  std::set<std::int64_t> found;
  if (op.kind == TruncatedOperator::Kind::Diagonal &&
      static_cast<std::int64_t>(op.exact_entries.size()) == op.d) {
    for (std::int64_t i = 0; i < op.d; ++i) {
      const UnitScalar& alpha = op.exact_entries[static_cast<std::size_t>(i)];
      if (!alpha.is_root_of_unity()) continue;
      const BigInt q = alpha.order();
      if (q > max_m) continue;
      // Re-certify the order claim from first principles before trusting it.
      if (!(alpha.pow(q) == UnitScalar::one()))
        throw ContractViolation("order certificate failed: alpha^q != 1");
      for (const BigInt& p : prime_factors(q))
        if (alpha.pow(q / p) == UnitScalar::one())
          throw ContractViolation("order certificate failed: alpha^(q/p) = 1");
      found.insert(i + 1);
    }
    return found;
  }
  if (op.kind == TruncatedOperator::Kind::Permutation) {
    for (std::int64_t i = 0; i < op.d; ++i) {
      BigInt len = 1;
      for (std::int64_t j = op.images[static_cast<std::size_t>(i)];
           j != i + 1; j = op.images[static_cast<std::size_t>(j - 1)])
        ++len;
      if (len <= max_m) found.insert(i + 1);
    }
    return found;
  }
  if (max_m > (BigInt(1) << 22))
    throw std::invalid_argument(
        "brute_force_periodic_basis: a dense operator offers no exact path "
        "and max_m above 2^22 cannot be iterated");
  return iterate_periodic_basis(op, max_m.convert_to<std::int64_t>(), tol);
}

std::set<std::int64_t> iterate_periodic_basis(const TruncatedOperator& op,
                                              std::int64_t max_m, double tol) {
  if (max_m < 1)
    throw std::invalid_argument("iterate_periodic_basis: max_m >= 1");
  std::set<std::int64_t> found;
  switch (op.kind) {
    case TruncatedOperator::Kind::Diagonal:
      for (std::int64_t i = 0; i < op.d; ++i) {
        const std::complex<double> z = op.entries[static_cast<std::size_t>(i)];
        std::complex<double> w = z;
        for (std::int64_t m = 1; m <= max_m; ++m, w *= z)
          if (std::abs(w - 1.0) < tol) {
            found.insert(i + 1);
            break;
          }
      }
      break;
    case TruncatedOperator::Kind::Permutation:
      for (std::int64_t i = 0; i < op.d; ++i) {
        std::int64_t j = op.images[static_cast<std::size_t>(i)];
        for (std::int64_t m = 1; m <= max_m;
             ++m, j = op.images[static_cast<std::size_t>(j - 1)])
          if (j == i + 1) {
            found.insert(i + 1);
            break;
          }
      }
      break;
    case TruncatedOperator::Kind::DenseNormal:
      for (std::int64_t i = 0; i < op.d; ++i) {
        Eigen::VectorXcd e = Eigen::VectorXcd::Zero(op.d);
        e(i) = 1.0;
        if (detect_period(op, e, max_m, tol)) found.insert(i + 1);
      }
      break;
  }
  return found;
}

namespace {

Eigen::MatrixXcd power_matrix_of(const TruncatedOperator& op, const BigInt& k) {
  switch (op.kind) {
    case TruncatedOperator::Kind::Diagonal: {
      Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(op.d, op.d);
      for (std::int64_t i = 0; i < op.d; ++i)
        m(i, i) = op.exact_entries[static_cast<std::size_t>(i)].pow(k).to_complex();
      return m;
    }
    case TruncatedOperator::Kind::Permutation: {
      Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(op.d, op.d);
      for (std::int64_t i = 0; i < op.d; ++i) {
        std::int64_t target;
        if (op.perm_source && !op.cyclic_surrogate) {
          target = op.perm_source->apply_power(i + 1, k);
        } else {
          // Window cycle length, then k reduced mod it.
          BigInt len = 1;
          for (std::int64_t j = op.images[static_cast<std::size_t>(i)];
               j != i + 1; j = op.images[static_cast<std::size_t>(j - 1)])
            ++len;
          std::int64_t r = mod_floor(k, len).convert_to<std::int64_t>();
          target = i + 1;
          for (; r > 0; --r)
            target = op.images[static_cast<std::size_t>(target - 1)];
        }
        m(target - 1, i) = 1.0;
      }
      return m;
    }
    case TruncatedOperator::Kind::DenseNormal:
      return matrix_power(op.dense, k);
  }
  throw std::logic_error("power_matrix_of: bad kind");
}

}  // namespace

bool kernel_compare(const TruncatedOperator& op, const BigInt& k,
                    const std::vector<std::int64_t>& predicted_indices) {
  if (k < 1) throw std::invalid_argument("kernel_compare: k >= 1");
  const Eigen::MatrixXcd a =
      power_matrix_of(op, k) - Eigen::MatrixXcd::Identity(op.d, op.d);
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(a, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  std::int64_t null_dim = 0;
  for (Eigen::Index j = 0; j < sv.size(); ++j)
    if (sv(j) < 1e-7) ++null_dim;
  if (null_dim != static_cast<std::int64_t>(predicted_indices.size()))
    return false;
  const std::set<std::int64_t> pred(predicted_indices.begin(),
                                    predicted_indices.end());
  for (Eigen::Index j = op.d - null_dim; j < op.d; ++j) {
    double outside = 0.0;
    for (std::int64_t i = 0; i < op.d; ++i)
      if (!pred.count(i + 1)) outside += std::norm(svd.matrixV()(i, j));
    if (std::sqrt(outside) >= 1e-6) return false;
  }
  return true;
}

ExponentReport normal_matrix_exponent(const Eigen::MatrixXcd& m,
                                      const BigInt& max_n, double tol) {
  if (m.rows() != m.cols() || m.rows() == 0)
    throw std::invalid_argument("normal_matrix_exponent: square matrix");
  if (max_n < 1)
    throw std::invalid_argument("normal_matrix_exponent: max_n >= 1");
  const Eigen::Index d = m.rows();
  const Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(d, d);

  ExponentReport rep;
  rep.normality_defect =
      operator_norm_lower_bound(m * m.adjoint() - m.adjoint() * m);
  if (rep.normality_defect >= 1e-9)
    throw NotNormal("normality defect " + std::to_string(rep.normality_defect) +
                    "; finite-exponent structure is established for normal "
                    "operators only");
  rep.unitary_defect = operator_norm_lower_bound(m.adjoint() * m - id);

  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(m, false);
  rep.snaps.reserve(static_cast<std::size_t>(d));
  for (Eigen::Index i = 0; i < d; ++i) {
    const std::complex<double> ev = es.eigenvalues()(i);
    const Snap s = snap_to_rotation(ev, max_n, 1e-6);
    rep.snaps.push_back({ev, s.p, s.q, s.distance});
  }

  if (max_n <= 4096) {
    Eigen::MatrixXcd p = m;
    for (BigInt n = 1; n <= max_n; ++n, p *= m) {
      if (matrix_inf_norm(p - id) < tol) {
        rep.exponent = n;
        return rep;
      }
    }
    return rep;
  }

  BigInt candidate = 1;
  for (const EigenSnap& s : rep.snaps) {
    if (s.q == 0) return rep;  // some eigenvalue is not near a bounded root
    candidate = boost::multiprecision::lcm(candidate, s.q);
  }
  if (!(matrix_inf_norm(matrix_power(m, candidate) - id) < tol)) return rep;
  // Shrink along prime divisors to certify minimality.
  bool shrunk = true;
  while (shrunk) {
    shrunk = false;
    for (const BigInt& pr : prime_factors(candidate)) {
      const BigInt smaller = candidate / pr;
      if (smaller >= 1 &&
          matrix_inf_norm(matrix_power(m, smaller) - id) < tol) {
        candidate = smaller;
        shrunk = true;
        break;
      }
    }
  }
  rep.exponent = candidate;
  return rep;
}

double spectral_mapping_check(const TruncatedOperator& op, std::int64_t k) {
  if (op.kind != TruncatedOperator::Kind::Diagonal)
    throw ContractViolation(
        "spectral_mapping_check compares against diagonal entries");
  if (k < 0) throw std::invalid_argument("spectral_mapping_check: k >= 0");
  const Eigen::MatrixXcd tk = matrix_power(op.to_matrix(), BigInt(k));
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(tk, false);
  std::vector<std::complex<double>> predicted;
  predicted.reserve(op.entries.size());
  for (const auto& z : op.entries)
    predicted.push_back(std::pow(z, static_cast<double>(k)));
  std::vector<bool> used(predicted.size(), false);
  double worst = 0.0;
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
    const std::complex<double> ev = es.eigenvalues()(i);
    double best = std::numeric_limits<double>::infinity();
    std::size_t best_j = 0;
    for (std::size_t j = 0; j < predicted.size(); ++j) {
      if (used[j]) continue;
      const double dist = std::abs(ev - predicted[j]);
      if (dist < best) {
        best = dist;
        best_j = j;
      }
    }
    used[best_j] = true;
    worst = std::max(worst, best);
  }
  return worst;
}

double circular_gap(const std::vector<std::complex<double>>& values) {
  if (values.empty()) throw std::invalid_argument("circular_gap: empty input");
  std::vector<double> args;
  args.reserve(values.size());
  for (const auto& z : values) args.push_back(std::arg(z));
  std::sort(args.begin(), args.end());
  if (args.size() == 1) return 2 * kPi;
  double worst = 2 * kPi - (args.back() - args.front());
  for (std::size_t i = 1; i < args.size(); ++i)
    worst = std::max(worst, args[i] - args[i - 1]);
  return worst;
}

std::vector<std::complex<double>> convolution_eigenvalues(
    const std::vector<std::complex<double>>& h_samples, std::int64_t n_min,
    std::int64_t n_max) {
  if (h_samples.empty())
    throw std::invalid_argument("convolution_eigenvalues: empty samples");
  if (n_max < n_min)
    throw std::invalid_argument("convolution_eigenvalues: n_max >= n_min");
  const auto m = static_cast<double>(h_samples.size());
  const double scale = std::sqrt(2 * kPi) / m;
  std::vector<std::complex<double>> out;
  out.reserve(static_cast<std::size_t>(n_max - n_min + 1));
  for (std::int64_t n = n_min; n <= n_max; ++n) {
    std::complex<double> sum = 0.0;
    for (std::size_t j = 0; j < h_samples.size(); ++j) {
      const double x = -kPi + 2 * kPi * static_cast<double>(j) / m;
      sum += h_samples[j] *
             std::exp(std::complex<double>(0.0, -static_cast<double>(n) * x));
    }
    out.push_back(scale * sum);
  }
  return out;
}

std::vector<RootReport> root_of_unity_report(
    const std::vector<std::complex<double>>& lambdas, std::int64_t n_min,
    const BigInt& max_q, double tol) {
  if (max_q < 1) throw std::invalid_argument("root_of_unity_report: max_q >= 1");
  std::vector<RootReport> out;
  out.reserve(lambdas.size());
  for (std::size_t idx = 0; idx < lambdas.size(); ++idx) {
    const std::complex<double> lambda = lambdas[idx];
    BigRat theta = bigrat_of_double(std::arg(lambda) / (2 * kPi));
    if (theta < 0) theta += 1;
    auto [p, q] = best_rational(theta, max_q);
    p = mod_floor(p, q);
    const double dist = std::abs(lambda - rotation_point(p, q));
    out.push_back({n_min + static_cast<std::int64_t>(idx), lambda, p, q, dist,
                   dist < tol});
  }
  return out;
}

double matrix_inf_norm(const Eigen::MatrixXcd& m) {
  return m.cwiseAbs().rowwise().sum().maxCoeff();
}

double operator_norm_lower_bound(const Eigen::MatrixXcd& m) {
  return m.colwise().norm().maxCoeff();
}

Eigen::MatrixXcd matrix_power(const Eigen::MatrixXcd& m, const BigInt& k) {
  if (k < 0) throw std::invalid_argument("matrix_power: k >= 0");
  if (m.rows() != m.cols())
    throw std::invalid_argument("matrix_power: square matrix");
  Eigen::MatrixXcd result = Eigen::MatrixXcd::Identity(m.rows(), m.cols());
  Eigen::MatrixXcd base = m;
  for (BigInt e = k; e > 0; e >>= 1) {
    if (e % 2 != 0) result = result * base;
    if (e > 1) base = base * base;
  }
  return result;
}

Eigen::MatrixXcd make_random_unitary(std::int64_t d, std::uint64_t seed) {
  if (d < 1) throw std::invalid_argument("make_random_unitary: d >= 1");
  std::mt19937_64 gen(seed);
  // Explicit uniform and Box-Muller so the seed determines the matrix on any
  // conforming standard library (std::normal_distribution does not).
  const auto u01 = [&gen] {
    return static_cast<double>((gen() >> 11) + 1) * 0x1.0p-53;  // (0, 1]
  };
  const auto gaussian_pair = [&] {
    const double u = u01(), v = u01();
    const double r = std::sqrt(-2.0 * std::log(u));
    return std::complex<double>(r * std::cos(2 * kPi * v),
                                r * std::sin(2 * kPi * v));
  };
  Eigen::MatrixXcd a(d, d);
  for (std::int64_t i = 0; i < d; ++i)
    for (std::int64_t j = 0; j < d; ++j) a(i, j) = gaussian_pair();
  const Eigen::HouseholderQR<Eigen::MatrixXcd> qr(a);
  return qr.householderQ() * Eigen::MatrixXcd::Identity(d, d);
}

}  // namespace perop
