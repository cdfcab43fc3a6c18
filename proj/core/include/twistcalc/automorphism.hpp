#pragma once

#include "twistcalc/matrix.hpp"
#include "twistcalc/ring.hpp"
#include "twistcalc/unitriangular.hpp"

#include <array>
#include <optional>
#include <variant>
#include <vector>

namespace twistcalc {

/// An additive endomorphism lambda of R^+: an N x N integer matrix on the
/// lattice basis, or x -> c x over Q.
class AdditiveMap {
 public:
  static AdditiveMap lattice(IntMatrix m);
  static AdditiveMap scalar(Rational c);
  static AdditiveMap identity(const RingDescriptor& desc);

  bool is_lattice() const noexcept { return std::holds_alternative<IntMatrix>(rep_); }
  const IntMatrix& matrix() const { return std::get<IntMatrix>(rep_); }
  const Rational& factor() const { return std::get<Rational>(rep_); }

  /// Throws InvalidArgument if the representation does not fit the ring.
  void check_ring(const RingDescriptor& desc) const;
  RingElem operator()(const RingElem& x) const;

 private:
  explicit AdditiveMap(std::variant<IntMatrix, Rational> rep) : rep_(std::move(rep)) {}
  std::variant<IntMatrix, Rational> rep_;
};

/// phi = phi_A o Lambda o sigma^m o psi_D o Delta, applied right to left:
///   X -> A * Lambda(sigma^m(D * delta(X) * D^-1)) * A^-1
/// with Lambda(Y) = Y * T_{1,n}(lambda(y_{1,2} + ... + y_{n-1,n})).
struct NormalFormAuto {
  std::optional<UniTriMatrix> inner;
  std::optional<AdditiveMap> lambda;
  int flip = 0;
  std::vector<RingElem> diagonal;
  RingAutomorphism delta = RingAutomorphism::Identity;

  /// psi_D composed with optional flip and ring automorphism, no inner/central part.
  static NormalFormAuto monomial(std::vector<RingElem> diagonal, int flip = 0,
                                 RingAutomorphism delta = RingAutomorphism::Identity);
  static NormalFormAuto identity(const RingDescriptor& desc, std::size_t n);

  std::size_t n() const noexcept { return diagonal.size(); }
  const RingDescriptor& desc() const;
  /// Units on the diagonal, flip in {0, 1}, dimensions and rings consistent.
  void validate() const;
};

/// Automorphism of UT_3(R) acting on the abelianization R^2 by v -> M delta(v)
/// and on the center by det(M) delta. Generator images carry no central part.
struct HeisenbergAuto {
  std::array<std::array<RingElem, 2>, 2> M;
  RingAutomorphism delta = RingAutomorphism::Identity;

  const RingDescriptor& desc() const { return M[0][0].desc(); }
  RingElem det() const;
  /// det(M) must be a unit.
  void validate() const;
};

using Automorphism = std::variant<NormalFormAuto, HeisenbergAuto>;

const RingDescriptor& ring_of(const Automorphism& phi);
std::size_t dimension_of(const Automorphism& phi);

UniTriMatrix apply(const NormalFormAuto& phi, const UniTriMatrix& x);
UniTriMatrix apply_heisenberg(const HeisenbergAuto& psi, const UniTriMatrix& x);
UniTriMatrix apply(const Automorphism& phi, const UniTriMatrix& x);

/// For phi = sigma psi_D Delta returns phi^2 = psi_A Delta^2 with
/// a_r = delta(d_r) d_{n+1-r}^{-1}.
NormalFormAuto square_flip(const NormalFormAuto& phi);

/// Matrix of the map induced by phi on Z_{k+1}/Z_k.
///
/// For lattice rings this is an integer matrix of size (k+1)N acting on the
/// coordinates (x_1 basis, ..., x_{k+1} basis); over Q it is the rational
/// (k+1) x (k+1) matrix. Computed by applying phi to quotient representatives.
struct QuotientAction {
  std::size_t k = 0;
  std::variant<IntMatrix, RatMatrix> matrix;

  bool is_lattice() const noexcept { return std::holds_alternative<IntMatrix>(matrix); }
  const IntMatrix& lattice() const { return std::get<IntMatrix>(matrix); }
  const RatMatrix& rational() const { return std::get<RatMatrix>(matrix); }
};

QuotientAction induced_quotient_action(const Automorphism& phi, std::size_t k);

}  // namespace twistcalc
