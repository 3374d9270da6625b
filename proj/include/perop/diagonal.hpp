#pragma once

#include "perop/classification.hpp"
#include "perop/spectrum.hpp"
#include "perop/vectors.hpp"

namespace perop {

// Decision procedure over metadata(spec):
//   no root-of-unity index                      -> ZeroOnly
//   all values roots of unity, orders bounded   -> WholeSpace (exponent = lcm)
//   all values roots of unity, orders unbounded -> ProperDense
//   mixed, finitely many distinct root values   -> ClosedProper
//        with kernel_exponent = lcm of their orders
//   mixed, infinitely many distinct root values -> ProperNotClosed
// In the mixed cases the closure codimension is the number of
// irrational-rotation indices.
PeriodicClassification classify_diagonal(const SpectrumSpec& spec);

// Least m >= 1 with T^m x = x: the lcm of the orders of the eigenvalues on
// the support.  Throws NotPeriodicError if a support eigenvalue is not a
// root of unity, ContractViolation when x = 0.
BigInt period_of_vector(const SpectrumSpec& spec, const ExactVector& x);

// True iff every support eigenvalue is a root of unity (x = 0 vacuously).
bool is_periodic(const SpectrumSpec& spec, const ExactVector& x);

// The adjoint's spectrum: every effective value conjugated.  Classification
// and vector periods are invariant under this map.
SpectrumSpec adjoint_spec(SpectrumSpec spec);

// Refinement under a caller-certified |alpha_n| -> 0 (compactness): only
// finitely many eigenvalues can then be roots of unity, and P is their span.
// Throws ContractViolation when the certificate is absent or the metadata
// contradicts it (infinitely many root-of-unity indices of modulus 1).
struct CompactnessNote {
  BigInt periodic_dimension;
  std::vector<std::int64_t> generating_indices;
};
CompactnessNote compactness_note(const SpectrumSpec& spec,
                                 bool decay_certificate);

}  // namespace perop
