#pragma once

#include "twistcalc/ring.hpp"

#include <cstddef>
#include <optional>
#include <vector>

namespace twistcalc {

/// n x n upper unitriangular matrix over a ring, indices 1-based as (i, j) with i < j.
///
/// Only the strict upper triangle is stored. The upper central series is
/// Z_k = { X : x_{i,j} = 0 for 0 < j - i < n - k }, so Z_0 = {I}, Z_1 is the
/// center (only x_{1,n} free) and Z_{n-1} is the whole group. The quotient
/// Z_{k+1} / Z_k is identified with R^{k+1} via the (n-k-1)-th superdiagonal.
class UniTriMatrix {
 public:
  UniTriMatrix(const RingDescriptor& desc, std::size_t n);

  static UniTriMatrix identity(const RingDescriptor& desc, std::size_t n) { return UniTriMatrix(desc, n); }
  /// I + x E_{i,j}; InvalidArgument unless 1 <= i < j <= n.
  static UniTriMatrix transvection(std::size_t n, std::size_t i, std::size_t j, const RingElem& x);

  std::size_t n() const noexcept { return n_; }
  const RingDescriptor& desc() const noexcept { return desc_; }

  /// Strict-upper entry, 1 <= i < j <= n.
  RingElem at(std::size_t i, std::size_t j) const;
  void set(std::size_t i, std::size_t j, RingElem x);
  /// Full-matrix view: 1 on the diagonal, 0 below.
  RingElem entry(std::size_t i, std::size_t j) const;

  bool is_identity() const;

  friend UniTriMatrix operator*(const UniTriMatrix& x, const UniTriMatrix& y);
  friend bool operator==(const UniTriMatrix& x, const UniTriMatrix& y);

  UniTriMatrix inverse() const;

  /// Smallest k with X in Z_k (0 iff X = I).
  std::size_t central_level() const;

  /// Coordinates of X in Z_{k+1}/Z_k: entries x_{r, r+n-k-1}, r = 1..k+1.
  std::vector<RingElem> quotient_coords(std::size_t k) const;
  /// Section of the quotient map: v placed on the (n-k-1)-th superdiagonal.
  static UniTriMatrix quotient_rep(const RingDescriptor& desc, const std::vector<RingElem>& v,
                                   std::size_t k, std::size_t n);

  /// Reflection in the antidiagonal: (i, j) -> (n+1-j, n+1-i).
  UniTriMatrix antitranspose() const;

  /// Entrywise image under a ring map.
  template <class F>
  UniTriMatrix map_entries(F&& f) const {
    UniTriMatrix out(desc_, n_);
    for (std::size_t k = 0; k < entries_.size(); ++k)
      if (entries_[k]) out.store(k, f(*entries_[k]));
    return out;
  }

  /// Strict-upper entries with their positions, row-major.
  template <class F>
  void for_each_nonzero(F&& f) const {
    for (std::size_t i = 1; i < n_; ++i)
      for (std::size_t j = i + 1; j <= n_; ++j) {
        const auto& x = entries_[index(i, j)];
        if (x) f(i, j, *x);
      }
  }

 private:
  std::size_t index(std::size_t i, std::size_t j) const {
    return (i - 1) * n_ - (i - 1) * i / 2 + (j - i - 1);
  }
  void check_index(std::size_t i, std::size_t j) const;
  void store(std::size_t p, RingElem x) {
    if (x.is_zero()) {
      entries_[p].reset();
    } else {
      entries_[p] = std::move(x);
    }
  }

  RingDescriptor desc_;
  std::size_t n_;
  // nullopt is zero; engaged entries are nonzero.
  std::vector<std::optional<RingElem>> entries_;
};

UniTriMatrix commutator(const UniTriMatrix& x, const UniTriMatrix& y);

/// sigma(X) = antitranspose(X)^{-1}. An involutive automorphism of UT_n(R).
UniTriMatrix flip_sigma(const UniTriMatrix& x);

}  // namespace twistcalc
