#include "perop/diagonal.hpp"

namespace perop {

PeriodicClassification classify_diagonal(const SpectrumSpec& spec) {
  const SpectrumMetadata m = metadata(spec);
  PeriodicClassification c;
  if (m.g_index_count == 0) {
    c.kind = ClassificationKind::ZeroOnly;
    c.closed = true;
    c.dense = false;
    c.closure_codimension = NatOrInf::inf();
    c.explanation =
        "no eigenvalue is a root of unity, so the only periodic vector is 0";
    return c;
  }
  if (m.all_in_g) {
    if (m.order_lcm.is_finite()) {
      c.kind = ClassificationKind::WholeSpace;
      c.closed = true;
      c.dense = true;
      c.closure_codimension = NatOrInf(BigInt(0));
      c.exponent = m.order_lcm.finite();
      c.kernel_exponent = c.exponent;
      c.explanation =
          "every eigenvalue is a root of unity with a uniform order bound N = " +
          m.order_lcm.str() + ", so T^N = I and P = H";
      return c;
    }
    c.kind = ClassificationKind::ProperDense;
    c.closed = false;
    c.dense = true;
    c.closure_codimension = NatOrInf(BigInt(0));
    c.explanation =
        "every eigenvalue is a root of unity but the orders are unbounded: "
        "P contains all finitely-supported vectors yet misses their limits";
    return c;
  }
  // Mixed spectrum.  P is the union over k of ker(T^k - I); its closure is
  // the span of the root-of-unity coordinates, so the codimension equals the
  // number of irrational-rotation indices.
  c.closure_codimension = m.non_g_index_count;
  c.dense = false;
  if (m.distinct_g_values_finite) {
    BigInt k = 1;
    for (const auto& v : *m.distinct_g_values)
      k = boost::multiprecision::lcm(k, v.order());
    c.kind = ClassificationKind::ClosedProper;
    c.closed = true;
    c.kernel_exponent = k;
    c.explanation =
        "finitely many distinct root-of-unity eigenvalues: P = ker(T^k - I) "
        "with k = " +
        k.str() + ", a proper closed subspace";
    return c;
  }
  c.kind = ClassificationKind::ProperNotClosed;
  c.closed = false;
  c.explanation =
      "infinitely many distinct root-of-unity eigenvalues mixed with "
      "irrational rotations: P is neither closed nor dense; its closure has "
      "codimension " +
      m.non_g_index_count.str();
  return c;
}

BigInt period_of_vector(const SpectrumSpec& spec, const ExactVector& x) {
  if (x.is_zero())
    throw ContractViolation("period_of_vector: zero vector has no prime period");
  BigInt m = 1;
  for (const auto& [n, c] : x.terms()) {
    const UnitScalar v = spec.value_at(n);
    if (!v.is_root_of_unity())
      throw NotPeriodicError("support index " + std::to_string(n) +
                             " carries the irrational rotation " +
                             v.describe() + "; no power of T fixes it");
    m = boost::multiprecision::lcm(m, v.order());
  }
  return m;
}

bool is_periodic(const SpectrumSpec& spec, const ExactVector& x) {
  for (const auto& [n, c] : x.terms())
    if (!spec.value_at(n).is_root_of_unity()) return false;
  return true;
}

SpectrumSpec adjoint_spec(SpectrumSpec spec) {
  spec.conjugate = !spec.conjugate;
  return spec;
}

CompactnessNote compactness_note(const SpectrumSpec& spec,
                                 bool decay_certificate) {
  if (!decay_certificate)
    throw ContractViolation(
        "compactness_note: requires a caller-certified decay of |alpha_n|");
  const SpectrumMetadata m = metadata(spec);
  if (m.g_index_count.is_inf())
    throw ContractViolation(
        "compactness_note: certified |alpha_n| -> 0 contradicts infinitely "
        "many root-of-unity eigenvalues of modulus 1");
  return CompactnessNote{m.g_index_count.finite(),
                         m.g_indices.value_or(std::vector<std::int64_t>{})};
}

}  // namespace perop
