#pragma once

#include "twistcalc/matrix.hpp"
#include "twistcalc/numeric.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace twistcalc {

enum class RingKind { Integers, Rationals, Quadratic };

/// One of Z, Q or a quadratic ring Z[w] with w^2 = d (d square-free, d != 0, 1).
///
/// All supported rings have characteristic zero. Z and the quadratic rings have
/// a finitely generated additive group with lattice basis {1} or {1, w}; Q is
/// flagged as a field and has no lattice view.
class RingDescriptor {
 public:
  static RingDescriptor integers() { return RingDescriptor(RingKind::Integers, 0); }
  static RingDescriptor rationals() { return RingDescriptor(RingKind::Rationals, 0); }
  /// Throws InvalidArgument unless d is square-free and d not in {0, 1}.
  static RingDescriptor quadratic(std::int64_t d);
  /// "Z", "Q", "Z[sqrt,d]" (d > 1) or "Z[isqrt,p]" (p >= 1, p = 1 is Z[i]).
  static RingDescriptor parse(std::string_view text);

  RingKind kind() const noexcept { return kind_; }
  /// w^2 for quadratic rings, 0 otherwise.
  std::int64_t d() const noexcept { return d_; }
  bool is_field() const noexcept { return kind_ == RingKind::Rationals; }
  bool has_lattice() const noexcept { return kind_ != RingKind::Rationals; }
  /// Rank N of R^+; throws for Q.
  std::size_t lattice_rank() const;
  std::string name() const;

  friend bool operator==(const RingDescriptor&, const RingDescriptor&) = default;

 private:
  RingDescriptor(RingKind kind, std::int64_t d) : kind_(kind), d_(d) {}
  RingKind kind_;
  std::int64_t d_;
};

/// Exact element a + b*w of a ring described by RingDescriptor.
class RingElem {
 public:
  /// Zero of Z; prefer the descriptor-taking constructors.
  RingElem() : desc_(RingDescriptor::integers()) {}
  RingElem(const RingDescriptor& desc, Rational a, Rational b = 0);
  RingElem(const RingDescriptor& desc, long a) : RingElem(desc, Rational(a)) {}

  static RingElem zero(const RingDescriptor& desc) { return RingElem(desc, Rational(), Rational(), Unchecked{}); }
  static RingElem one(const RingDescriptor& desc) { return RingElem(desc, Rational(1), Rational(), Unchecked{}); }
  /// The generator w of a quadratic ring.
  static RingElem omega(const RingDescriptor& desc);
  /// Parses "a", "a+b*w", "a-b*w", "b*w", "w", with integer or "p/q" parts.
  static RingElem parse(const RingDescriptor& desc, std::string_view text);

  const Rational& a() const noexcept { return a_; }
  const Rational& b() const noexcept { return b_; }
  const RingDescriptor& desc() const noexcept { return desc_; }

  bool is_zero() const { return sgn(a_) == 0 && sgn(b_) == 0; }
  bool is_one() const { return a_ == 1 && sgn(b_) == 0; }

  /// Field norm a^2 - d b^2 (the element itself for Z and Q).
  Rational norm() const;
  bool is_unit() const;
  std::string to_string() const;

  RingElem operator-() const { return RingElem(desc_, -a_, -b_, Unchecked{}); }
  friend RingElem operator+(const RingElem& x, const RingElem& y);
  friend RingElem operator-(const RingElem& x, const RingElem& y);
  friend RingElem operator*(const RingElem& x, const RingElem& y);
  RingElem& operator+=(const RingElem& y);
  RingElem& operator-=(const RingElem& y);

  /// Equal descriptors and coordinates.
  friend bool operator==(const RingElem& x, const RingElem& y) {
    return x.desc_ == y.desc_ && x.a_ == y.a_ && x.b_ == y.b_;
  }

 private:
  struct Unchecked {};
  RingElem(const RingDescriptor& desc, Rational a, Rational b, Unchecked)
      : a_(std::move(a)), b_(std::move(b)), desc_(desc) {}

  Rational a_;
  Rational b_;
  RingDescriptor desc_;
};

/// Multiplicative inverse: NotAUnit outside R*, ZeroDivision for 0.
RingElem inverse(const RingElem& x);

enum class RingAutomorphism { Identity, Conjugation };

/// {id} for Z and Q; {id, conj} for quadratic rings.
std::vector<RingAutomorphism> ring_automorphisms(const RingDescriptor& desc);
RingElem apply(RingAutomorphism delta, const RingElem& x);
RingAutomorphism compose(RingAutomorphism outer, RingAutomorphism inner);
RingAutomorphism inverse(RingAutomorphism delta);
std::string to_string(RingAutomorphism delta);
RingAutomorphism parse_ring_automorphism(std::string_view text);
/// Throws InvalidArgument when delta is not an automorphism of the ring.
void check_automorphism(const RingDescriptor& desc, RingAutomorphism delta);

struct UnitList {
  std::vector<RingElem> units;
  bool finite = true;
  /// Fundamental unit for real quadratic rings.
  std::optional<RingElem> fundamental;
};

inline constexpr std::int64_t kDefaultPellCap = 1'000'000;

/// Unit group enumeration. Finite unit groups are returned in full; for
/// Z[sqrt d] the first `count` units 1, -1, u, -u, u^-1, -u^-1, u^2, ... are
/// returned, where u is the fundamental unit found by scanning y = 1, 2, ...
/// up to `pell_cap` (ResourceCapExceeded beyond). Q returns an empty infinite list.
UnitList units(const RingDescriptor& desc, std::size_t count = 8,
               std::int64_t pell_cap = kDefaultPellCap);

/// Smallest unit x + y w with y >= 1 (x > 0) for d > 1.
RingElem fundamental_unit(const RingDescriptor& desc, std::int64_t pell_cap = kDefaultPellCap);

/// Coordinates over the lattice basis {1} or {1, w}; throws for Q.
IntVector to_lattice(const RingElem& x);
RingElem from_lattice(const RingDescriptor& desc, const IntVector& v);

/// Matrix of x -> c * delta(x) on the lattice basis; column j = to_lattice(c * delta(basis_j)).
IntMatrix mul_matrix(const RingElem& c, RingAutomorphism delta = RingAutomorphism::Identity);

}  // namespace twistcalc
