#include "twistcalc/unitriangular.hpp"

#include "twistcalc/errors.hpp"

namespace twistcalc {

UniTriMatrix::UniTriMatrix(const RingDescriptor& desc, std::size_t n) : desc_(desc), n_(n) {
  if (n < 2) throw InvalidArgument("unitriangular matrices need n >= 2");
  entries_.resize(n * (n - 1) / 2);
}

void UniTriMatrix::check_index(std::size_t i, std::size_t j) const {
  if (i < 1 || i >= j || j > n_) {
    throw InvalidArgument("position (" + std::to_string(i) + "," + std::to_string(j) +
                          ") is not strictly upper in dimension " + std::to_string(n_));
  }
}

UniTriMatrix UniTriMatrix::transvection(std::size_t n, std::size_t i, std::size_t j, const RingElem& x) {
  UniTriMatrix t(x.desc(), n);
  t.set(i, j, x);
  return t;
}

RingElem UniTriMatrix::at(std::size_t i, std::size_t j) const {
  check_index(i, j);
  const auto& x = entries_[index(i, j)];
  return x ? *x : RingElem::zero(desc_);
}

void UniTriMatrix::set(std::size_t i, std::size_t j, RingElem x) {
  check_index(i, j);
  if (!(x.desc() == desc_)) throw DescriptorMismatch("entry ring differs from matrix ring");
  store(index(i, j), std::move(x));
}

RingElem UniTriMatrix::entry(std::size_t i, std::size_t j) const {
  if (i < 1 || j < 1 || i > n_ || j > n_) throw InvalidArgument("position out of range");
  if (i == j) return RingElem::one(desc_);
  if (i > j) return RingElem::zero(desc_);
  return at(i, j);
}

bool UniTriMatrix::is_identity() const {
  for (const auto& x : entries_)
    if (x) return false;
  return true;
}

namespace {

void require_compatible(const UniTriMatrix& x, const UniTriMatrix& y) {
  if (x.n() != y.n()) throw InvalidArgument("unitriangular dimension mismatch");
  if (!(x.desc() == y.desc())) throw DescriptorMismatch("unitriangular ring mismatch");
}

void accumulate(std::optional<RingElem>& acc, RingElem term) {
  if (acc) {
    *acc += term;
  } else {
    acc = std::move(term);
  }
}

}  // namespace

UniTriMatrix operator*(const UniTriMatrix& x, const UniTriMatrix& y) {
  require_compatible(x, y);
  const std::size_t n = x.n_;
  UniTriMatrix z(x.desc_, n);
  // (XY)_{ij} = x_ij + y_ij + sum_{i<l<j} x_il y_lj
  for (std::size_t i = 1; i < n; ++i) {
    for (std::size_t j = i + 1; j <= n; ++j) {
      std::optional<RingElem> acc = x.entries_[x.index(i, j)];
      if (const auto& yij = y.entries_[y.index(i, j)]) accumulate(acc, *yij);
      for (std::size_t l = i + 1; l < j; ++l) {
        const auto& xil = x.entries_[x.index(i, l)];
        if (!xil) continue;
        const auto& ylj = y.entries_[y.index(l, j)];
        if (ylj) accumulate(acc, *xil * *ylj);
      }
      if (acc) z.store(z.index(i, j), std::move(*acc));
    }
  }
  return z;
}

bool operator==(const UniTriMatrix& x, const UniTriMatrix& y) {
  return x.n_ == y.n_ && x.desc_ == y.desc_ && x.entries_ == y.entries_;
}

UniTriMatrix UniTriMatrix::inverse() const {
  // Solve X Y = I column by column, bottom-up: y_ij = -(x_ij + sum_{i<l<j} x_il y_lj).
  UniTriMatrix y(desc_, n_);
  for (std::size_t j = 2; j <= n_; ++j) {
    for (std::size_t i = j - 1; i >= 1; --i) {
      std::optional<RingElem> acc = entries_[index(i, j)];
      for (std::size_t l = i + 1; l < j; ++l) {
        const auto& xil = entries_[index(i, l)];
        if (!xil) continue;
        const auto& ylj = y.entries_[y.index(l, j)];
        if (ylj) accumulate(acc, *xil * *ylj);
      }
      if (acc) y.store(y.index(i, j), -*acc);
    }
  }
  return y;
}

std::size_t UniTriMatrix::central_level() const {
  for (std::size_t s = 1; s < n_; ++s)
    for (std::size_t i = 1; i + s <= n_; ++i)
      if (entries_[index(i, i + s)]) return n_ - s;
  return 0;
}

std::vector<RingElem> UniTriMatrix::quotient_coords(std::size_t k) const {
  if (k + 2 > n_) throw InvalidArgument("quotient layer k must satisfy k <= n - 2");
  if (central_level() > k + 1) throw InvalidArgument("matrix is not in Z_{k+1}");
  const std::size_t s = n_ - k - 1;
  std::vector<RingElem> v;
  v.reserve(k + 1);
  for (std::size_t r = 1; r <= k + 1; ++r) {
    const auto& x = entries_[index(r, r + s)];
    v.push_back(x ? *x : RingElem::zero(desc_));
  }
  return v;
}

UniTriMatrix UniTriMatrix::quotient_rep(const RingDescriptor& desc, const std::vector<RingElem>& v,
                                        std::size_t k, std::size_t n) {
  if (k + 2 > n) throw InvalidArgument("quotient layer k must satisfy k <= n - 2");
  if (v.size() != k + 1) throw InvalidArgument("quotient vector must have k + 1 coordinates");
  UniTriMatrix q(desc, n);
  const std::size_t s = n - k - 1;
  for (std::size_t r = 1; r <= k + 1; ++r) q.set(r, r + s, v[r - 1]);
  return q;
}

UniTriMatrix UniTriMatrix::antitranspose() const {
  UniTriMatrix t(desc_, n_);
  for_each_nonzero([&](std::size_t i, std::size_t j, const RingElem& x) {
    t.entries_[t.index(n_ + 1 - j, n_ + 1 - i)] = x;
  });
  return t;
}

UniTriMatrix commutator(const UniTriMatrix& x, const UniTriMatrix& y) {
  return x.inverse() * y.inverse() * x * y;
}

UniTriMatrix flip_sigma(const UniTriMatrix& x) { return x.antitranspose().inverse(); }

}  // namespace twistcalc
