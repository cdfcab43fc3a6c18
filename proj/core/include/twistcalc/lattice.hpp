#pragma once

#include "twistcalc/matrix.hpp"

#include <optional>
#include <string>
#include <vector>

namespace twistcalc {

/// A positive integer or infinity. Multiplication is infinity-absorbing.
class ClassCount {
 public:
  static ClassCount infinity() { return ClassCount(); }
  static ClassCount finite(Int value);

  bool is_infinite() const noexcept { return !value_.has_value(); }
  bool is_finite() const noexcept { return value_.has_value(); }
  /// Throws InvalidArgument when infinite.
  const Int& value() const;
  /// Decimal string or "inf".
  std::string to_string() const;
  static ClassCount parse(const std::string& text);

  friend ClassCount operator*(const ClassCount& x, const ClassCount& y);
  friend bool operator==(const ClassCount& x, const ClassCount& y) { return x.value_ == y.value_; }

 private:
  ClassCount() = default;
  std::optional<Int> value_;
};

/// U * M * V = S with U, V unimodular and S diagonal with s_1 | s_2 | ... (s_i >= 0).
struct SnfResult {
  IntMatrix U;
  IntMatrix S;
  IntMatrix V;

  std::vector<Int> invariant_factors() const;
  std::size_t rank() const;
};

/// Smallest-absolute-value pivoting with full row and column reduction.
SnfResult smith_normal_form(const IntMatrix& m);

/// Number of twisted classes of the automorphism x -> M x of Z^d:
/// infinity when det(I - M) = 0, else |det(I - M)|. M must be square and unimodular.
ClassCount reidemeister_abelian(const IntMatrix& m);

/// True iff M (square) fixes a nonzero integer vector, i.e. det(I - M) = 0.
bool has_fixed_vector(const IntMatrix& m);

/// Index in Z^ambient_rank of the subgroup spanned by the generators; infinity if rank-deficient.
ClassCount subgroup_index(const std::vector<IntVector>& generators, std::size_t ambient_rank);

/// Z-basis of {v : M v = 0}, read off the SNF transform V.
std::vector<IntVector> kernel_basis(const IntMatrix& m);

/// An integer solution of M x = b, or nullopt when none exists.
std::optional<IntVector> solve_integer(const IntMatrix& m, const IntVector& b);

}  // namespace twistcalc
