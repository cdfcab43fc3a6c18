#include "twistcalc/lattice.hpp"

#include "twistcalc/errors.hpp"

#include <algorithm>

namespace twistcalc {

ClassCount ClassCount::finite(Int value) {
  if (value <= 0) throw InvalidArgument("class count must be positive, got " + twistcalc::to_string(value));
  ClassCount c;
  c.value_ = std::move(value);
  return c;
}

const Int& ClassCount::value() const {
  if (!value_) throw InvalidArgument("class count is infinite");
  return *value_;
}

std::string ClassCount::to_string() const { return value_ ? twistcalc::to_string(*value_) : "inf"; }

ClassCount ClassCount::parse(const std::string& text) {
  if (text == "inf") return infinity();
  return finite(parse_integer(text));
}

ClassCount operator*(const ClassCount& x, const ClassCount& y) {
  if (x.is_infinite() || y.is_infinite()) return ClassCount::infinity();
  return ClassCount::finite(*x.value_ * *y.value_);
}

std::vector<Int> SnfResult::invariant_factors() const {
  std::vector<Int> out;
  for (std::size_t i = 0; i < std::min(S.rows(), S.cols()); ++i) out.push_back(S(i, i));
  return out;
}

std::size_t SnfResult::rank() const {
  std::size_t r = 0;
  for (std::size_t i = 0; i < std::min(S.rows(), S.cols()); ++i)
    if (S(i, i) != 0) ++r;
  return r;
}

SnfResult smith_normal_form(const IntMatrix& m) {
  const std::size_t rows = m.rows();
  const std::size_t cols = m.cols();
  IntMatrix a = m;
  IntMatrix u = IntMatrix::identity(rows);
  IntMatrix v = IntMatrix::identity(cols);
  Int q;

  for (std::size_t t = 0; t < std::min(rows, cols); ++t) {
    for (;;) {
      // Smallest nonzero |entry| of the trailing block becomes the pivot.
      std::size_t pr = rows, pc = cols;
      for (std::size_t i = t; i < rows; ++i)
        for (std::size_t j = t; j < cols; ++j) {
          if (a(i, j) == 0) continue;
          if (pr == rows || mpz_cmpabs(a(i, j).get_mpz_t(), a(pr, pc).get_mpz_t()) < 0) {
            pr = i;
            pc = j;
          }
        }
      if (pr == rows) return {std::move(u), std::move(a), std::move(v)};

      a.swap_rows(t, pr);
      u.swap_rows(t, pr);
      a.swap_cols(t, pc);
      v.swap_cols(t, pc);

      bool clean = true;
      for (std::size_t i = t + 1; i < rows; ++i) {
        if (a(i, t) == 0) continue;
        mpz_tdiv_q(q.get_mpz_t(), a(i, t).get_mpz_t(), a(t, t).get_mpz_t());
        Int neg = -q;
        a.add_row_multiple(i, t, neg);
        u.add_row_multiple(i, t, neg);
        if (a(i, t) != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < cols; ++j) {
        if (a(t, j) == 0) continue;
        mpz_tdiv_q(q.get_mpz_t(), a(t, j).get_mpz_t(), a(t, t).get_mpz_t());
        Int neg = -q;
        a.add_col_multiple(j, t, neg);
        v.add_col_multiple(j, t, neg);
        if (a(t, j) != 0) clean = false;
      }
      if (!clean) continue;

      // Enforce s_t | every later entry by folding an offending row into row t.
      std::size_t bad_row = rows;
      for (std::size_t i = t + 1; i < rows && bad_row == rows; ++i)
        for (std::size_t j = t + 1; j < cols; ++j)
          if (!mpz_divisible_p(a(i, j).get_mpz_t(), a(t, t).get_mpz_t())) {
            bad_row = i;
            break;
          }
      if (bad_row == rows) break;
      a.add_row_multiple(t, bad_row, Int(1));
      u.add_row_multiple(t, bad_row, Int(1));
    }
    if (a(t, t) < 0) {
      a.negate_row(t);
      u.negate_row(t);
    }
  }
  return {std::move(u), std::move(a), std::move(v)};
}

ClassCount reidemeister_abelian(const IntMatrix& m) {
  if (!m.is_square()) throw InvalidArgument("reidemeister_abelian needs a square matrix");
  if (abs(determinant(m)) != 1) throw InvalidArgument("matrix is not an automorphism of Z^d (|det| != 1)");
  Int det = determinant(IntMatrix::identity(m.rows()) - m);
  if (det == 0) return ClassCount::infinity();
  return ClassCount::finite(abs(det));
}

bool has_fixed_vector(const IntMatrix& m) {
  if (!m.is_square()) throw InvalidArgument("has_fixed_vector needs a square matrix");
  return determinant(IntMatrix::identity(m.rows()) - m) == 0;
}

ClassCount subgroup_index(const std::vector<IntVector>& generators, std::size_t ambient_rank) {
  if (ambient_rank == 0) return ClassCount::finite(Int(1));
  if (generators.empty()) return ClassCount::infinity();
  IntMatrix g = IntMatrix::from_columns(generators, ambient_rank);
  SnfResult snf = smith_normal_form(g);
  if (snf.rank() < ambient_rank) return ClassCount::infinity();
  Int index = 1;
  for (std::size_t i = 0; i < ambient_rank; ++i) index *= snf.S(i, i);
  return ClassCount::finite(index);
}

std::vector<IntVector> kernel_basis(const IntMatrix& m) {
  SnfResult snf = smith_normal_form(m);
  std::vector<IntVector> basis;
  for (std::size_t j = snf.rank(); j < m.cols(); ++j) basis.push_back(snf.V.column(j));
  return basis;
}

std::optional<IntVector> solve_integer(const IntMatrix& m, const IntVector& b) {
  if (b.size() != m.rows()) throw InvalidArgument("right-hand side length mismatch");
  SnfResult snf = smith_normal_form(m);
  IntVector c = snf.U * b;
  const std::size_t r = snf.rank();
  IntVector y(m.cols(), Int(0));
  for (std::size_t i = 0; i < m.rows(); ++i) {
    if (i < r) {
      if (!mpz_divisible_p(c[i].get_mpz_t(), snf.S(i, i).get_mpz_t())) return std::nullopt;
      y[i] = c[i] / snf.S(i, i);
    } else if (c[i] != 0) {
      return std::nullopt;
    }
  }
  return snf.V * y;
}

}  // namespace twistcalc
