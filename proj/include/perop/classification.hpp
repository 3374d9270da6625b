#pragma once

#include "perop/numeric.hpp"

#include <optional>
#include <string>

namespace perop {

// Structure of the set P of periodic vectors.  P is always an invariant
// subspace (a countable increasing union of the kernels of T^k - I); the
// classification records which regime it falls in, so P itself is held
// descriptively and never materialized.
enum class ClassificationKind {
  ZeroOnly,         // P = {0}
  ClosedProper,     // P = ker(T^k - I), a proper closed subspace
  ProperDense,      // P proper and dense, not closed
  WholeSpace,       // P = H; equivalently T^N = I
  ProperNotClosed,  // P neither closed nor dense; its closure is proper
};

struct PeriodicClassification {
  ClassificationKind kind;
  bool closed;
  bool dense;
  NatOrInf closure_codimension;
  std::optional<BigInt> exponent;         // iff WholeSpace: least N, T^N = I
  std::optional<BigInt> kernel_exponent;  // iff closed and not ZeroOnly
  std::string explanation;                // one-line reason
  bool operator==(const PeriodicClassification& o) const {
    return kind == o.kind && closed == o.closed && dense == o.dense &&
           closure_codimension == o.closure_codimension &&
           exponent == o.exponent && kernel_exponent == o.kernel_exponent;
  }
};

inline std::string kind_name(ClassificationKind k) {
  switch (k) {
    case ClassificationKind::ZeroOnly:
      return "zero_only";
    case ClassificationKind::ClosedProper:
      return "closed_proper";
    case ClassificationKind::ProperDense:
      return "proper_dense";
    case ClassificationKind::WholeSpace:
      return "whole_space";
    case ClassificationKind::ProperNotClosed:
      return "proper_not_closed";
  }
  return "?";
}

}  // namespace perop
