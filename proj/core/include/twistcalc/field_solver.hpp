#pragma once

// Twisted conjugacy in UT_n(Q): R(phi) is 1 or infinity, and when it is 1
// every element is phi-conjugate to the identity by an explicit witness.

#include "twistcalc/automorphism.hpp"
#include "twistcalc/lattice.hpp"

#include <optional>
#include <vector>

namespace twistcalc {

struct Classification {
  /// 1 or infinity.
  ClassCount value = ClassCount::finite(Int(1));
  /// M_k for k = 0..n-2, all computed.
  std::vector<RatMatrix> layers;
  /// Smallest k with I - M_k singular, and a nonzero fixed vector there.
  std::optional<std::size_t> singular_layer;
  std::optional<RatVector> fixed_vector;
};

/// phi over Q with n >= 3. Inner parts and lambda are allowed; neither affects the result.
Classification classify(const NormalFormAuto& phi);

/// Z with X = Z phi(Z)^{-1}, lifting top-down through the central series and
/// verified by exact multiplication. SingularLayer when some I - M_k is singular.
UniTriMatrix solve_twisted(const NormalFormAuto& phi, const UniTriMatrix& x);

struct CenterReduction {
  /// Element of Z_1 with central = W^{-1} X phi(W).
  UniTriMatrix central;
  UniTriMatrix witness;
};

/// Lifts through the layers k = n-2..1 only; layer 0 may be singular.
/// SingularLayer when I - M_k is singular for some k >= 1.
CenterReduction conjugate_into_center(const NormalFormAuto& phi, const UniTriMatrix& x);

}  // namespace twistcalc
