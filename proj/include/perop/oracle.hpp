#pragma once

#include "perop/permutation.hpp"
#include "perop/spectrum.hpp"

#include <Eigen/Dense>

#include <complex>
#include <cstdint>
#include <optional>
#include <set>
#include <vector>

namespace perop {

// Finite compression of an operator onto span{e_1, ..., e_d}, kept in a form
// that still knows where it came from: diagonal truncations carry their exact
// eigenvalues, permutation truncations their index map.  The numeric checks
// below treat the compression as an opaque matrix wherever independence from
// the symbolic layer matters.
struct TruncatedOperator {
  enum class Kind { Diagonal, Permutation, DenseNormal };

  Kind kind;
  std::int64_t d = 0;
  // Diagonal: entries[i] approximates, exact_entries[i] equals, alpha_{i+1}.
  std::vector<std::complex<double>> entries;
  std::vector<UnitScalar> exact_entries;
  // Permutation: images[i] = sigma(i+1), a bijection of {1, ..., d}.
  std::vector<std::int64_t> images;
  // Set when the window was closed by rerouting escaping images instead of
  // enlarging it; the result is a genuine permutation of the window but not a
  // compression of the original operator.
  bool cyclic_surrogate = false;
  std::optional<PermutationSpec> perm_source;
  Eigen::MatrixXcd dense;  // DenseNormal only

  Eigen::VectorXcd apply(const Eigen::VectorXcd& x) const;
  Eigen::MatrixXcd to_matrix() const;
  double unitary_defect() const;  // max column 2-norm of T*T - I
};

TruncatedOperator truncate(const SpectrumSpec& spec, std::int64_t d);

// Smallest orbit-closed window containing {1, ..., d_request}: every orbit
// meeting the window lies inside it, so the compression commutes with powers
// and periods measured inside equal periods of the full operator.  Throws
// OrbitClosureUnavailable when an index <= d_request has an infinite orbit.
TruncatedOperator truncate(const PermutationSpec& spec, std::int64_t d_request);

// Window of exactly d indices, with images escaping the window rerouted (in
// index order) onto the unhit indices.  Always a permutation of the window,
// never a compression: periods measured on it are the surrogate's own.
TruncatedOperator truncate_cyclic(const PermutationSpec& spec, std::int64_t d);

TruncatedOperator dense_normal(Eigen::MatrixXcd m);

// Least m in [1, max_m] with ||T^m x - x||_inf < tol, by plain iteration.
std::optional<std::int64_t> detect_period(const TruncatedOperator& op,
                                          const Eigen::VectorXcd& x,
                                          std::int64_t max_m, double tol);

// Indices n <= d whose basis vector is periodic with period <= max_m.
// Diagonal truncations are decided exactly (order of the exact eigenvalue,
// re-certified from first principles); permutation truncations by walking the
// orbit.  Dense operators fall back to iteration, which requires
// max_m <= 2^22.  `tol` only affects the dense fallback.
std::set<std::int64_t> brute_force_periodic_basis(const TruncatedOperator& op,
                                                  const BigInt& max_m,
                                                  double tol);

// The same scan performed purely by iterating the operator, with an explicit
// horizon: a NotFound here means no period <= max_m at resolution tol and
// nothing more.  Kept separate so exact and numeric answers can disagree
// loudly in tests instead of silently mixing.
std::set<std::int64_t> iterate_periodic_basis(const TruncatedOperator& op,
                                              std::int64_t max_m, double tol);

// SVD check that ker(T^k - I) has dimension |predicted_indices| and lies
// within 1e-6 of the coordinate span of those indices (null space threshold
// 1e-7 on singular values).
bool kernel_compare(const TruncatedOperator& op, const BigInt& k,
                    const std::vector<std::int64_t>& predicted_indices);

struct EigenSnap {
  std::complex<double> eigenvalue;
  // Least-denominator rotation p/q within chord 1e-6 of the eigenvalue and
  // with q <= max_n; q = 0 (distance = inf) when there is none.
  BigInt p, q;
  double distance;
};

struct ExponentReport {
  // Least N with ||T^N - I||_inf < tol, certified minimal over maximal
  // proper divisors; empty when no exponent was established within budget.
  std::optional<BigInt> exponent;
  double unitary_defect;    // max column 2-norm of T*T - I
  double normality_defect;  // max column 2-norm of TT* - T*T
  std::vector<EigenSnap> snaps;
};

// Finite-exponent search on a normal matrix.  Rejects non-normal input
// (normality defect >= 1e-9) with NotNormal.  max_n <= 4096 scans exponents
// linearly; larger budgets snap eigenvalue arguments to rationals, take the
// lcm as candidate, verify by binary powering and shrink along prime
// divisors until minimal.
ExponentReport normal_matrix_exponent(const Eigen::MatrixXcd& m,
                                      const BigInt& max_n, double tol);

// Max distance between the eigenvalues of T^k (computed by an eigensolver on
// the powered matrix) and the k-th powers of the diagonal entries, matched
// greedily.  Diagonal truncations only.
double spectral_mapping_check(const TruncatedOperator& op, std::int64_t k);

// Largest angular gap (radians) between consecutive arguments; a single
// value yields 2*pi.  Magnitudes are ignored.
double circular_gap(const std::vector<std::complex<double>>& values);

// Eigenvalues lambda_n of convolution by h on L^2(-pi, pi) for
// n = n_min..n_max, via the M-point trapezoid rule on the Fourier integral
// lambda_n = (1/sqrt(2 pi)) int h(x) e^{-inx} dx with samples
// h_j = h(-pi + 2 pi j / M).  Exact (to rounding) whenever h is a
// trigonometric polynomial of degree < M - |n|.
std::vector<std::complex<double>> convolution_eigenvalues(
    const std::vector<std::complex<double>>& h_samples, std::int64_t n_min,
    std::int64_t n_max);

struct RootReport {
  std::int64_t n;
  std::complex<double> lambda;
  BigInt p, q;      // nearest rotation with q <= max_q
  double distance;  // |lambda - e^{2 pi i p/q}|
  bool within;      // distance < tol
};

// For each value, the nearest root of unity of order <= max_q and whether it
// is within tol; the `within` count bounds the periodic dimension of the
// associated diagonal operator from below.
std::vector<RootReport> root_of_unity_report(
    const std::vector<std::complex<double>>& lambdas, std::int64_t n_min,
    const BigInt& max_q, double tol);

double matrix_inf_norm(const Eigen::MatrixXcd& m);  // max absolute row sum
// max column 2-norm = max ||M e_j||; a certified lower bound for ||M||.
double operator_norm_lower_bound(const Eigen::MatrixXcd& m);

Eigen::MatrixXcd matrix_power(const Eigen::MatrixXcd& m, const BigInt& k);

// Haar-ish random unitary: QR of a complex Gaussian matrix.  The Gaussian
// sampling is spelled out (explicit 53-bit uniforms + Box-Muller) so a seed
// reproduces the same matrix on any standard library.
Eigen::MatrixXcd make_random_unitary(std::int64_t d, std::uint64_t seed);

}  // namespace perop
