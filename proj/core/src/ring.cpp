#include "twistcalc/ring.hpp"

#include "twistcalc/errors.hpp"

#include <cstdlib>

namespace twistcalc {

namespace {

bool square_free(std::int64_t d) {
  std::uint64_t m = static_cast<std::uint64_t>(d < 0 ? -d : d);
  for (std::uint64_t p = 2; p * p <= m; ++p) {
    if (m % (p * p) == 0) return false;
    while (m % p == 0) m /= p;
  }
  return true;
}

void require_same(const RingElem& x, const RingElem& y) {
  if (!(x.desc() == y.desc())) {
    throw DescriptorMismatch("ring mismatch: " + x.desc().name() + " vs " + y.desc().name());
  }
}

std::int64_t parse_i64(std::string_view s) {
  Int v = parse_integer(s);
  if (!v.fits_slong_p()) throw ParseError("ring parameter out of range");
  return v.get_si();
}

}  // namespace

RingDescriptor RingDescriptor::quadratic(std::int64_t d) {
  if (d == 0 || d == 1) throw InvalidArgument("quadratic ring needs d not in {0, 1}");
  if (!square_free(d)) throw InvalidArgument("quadratic ring needs square-free d, got " + std::to_string(d));
  return RingDescriptor(RingKind::Quadratic, d);
}

RingDescriptor RingDescriptor::parse(std::string_view text) {
  if (text == "Z") return integers();
  if (text == "Q") return rationals();
  auto inside = [&](std::string_view prefix) -> std::optional<std::string_view> {
    if (text.size() > prefix.size() + 1 && text.substr(0, prefix.size()) == prefix && text.back() == ']') {
      return text.substr(prefix.size(), text.size() - prefix.size() - 1);
    }
    return std::nullopt;
  };
  if (auto arg = inside("Z[sqrt,")) {
    std::int64_t d = parse_i64(*arg);
    if (d <= 1) throw ParseError("Z[sqrt,d] needs d > 1");
    return quadratic(d);
  }
  if (auto arg = inside("Z[isqrt,")) {
    std::int64_t p = parse_i64(*arg);
    if (p < 1) throw ParseError("Z[isqrt,p] needs p >= 1");
    return quadratic(-p);
  }
  throw ParseError("unknown ring '" + std::string(text) + "' (expected Z, Q, Z[sqrt,d], Z[isqrt,p])");
}

std::size_t RingDescriptor::lattice_rank() const {
  switch (kind_) {
    case RingKind::Integers:
      return 1;
    case RingKind::Quadratic:
      return 2;
    case RingKind::Rationals:
      break;
  }
  throw InvalidArgument("Q has no finite lattice rank");
}

std::string RingDescriptor::name() const {
  switch (kind_) {
    case RingKind::Integers:
      return "Z";
    case RingKind::Rationals:
      return "Q";
    case RingKind::Quadratic:
      return d_ > 0 ? "Z[sqrt," + std::to_string(d_) + "]" : "Z[isqrt," + std::to_string(-d_) + "]";
  }
  return "?";
}

RingElem::RingElem(const RingDescriptor& desc, Rational a, Rational b)
    : a_(std::move(a)), b_(std::move(b)), desc_(desc) {
  a_.canonicalize();
  b_.canonicalize();
  if (desc_.kind() != RingKind::Quadratic && sgn(b_) != 0) {
    throw InvalidArgument("w-coefficient on a non-quadratic ring " + desc_.name());
  }
  if (desc_.kind() != RingKind::Rationals && (!is_integral(a_) || !is_integral(b_))) {
    throw InvalidArgument("non-integral coordinate in " + desc_.name());
  }
}

RingElem RingElem::omega(const RingDescriptor& desc) {
  if (desc.kind() != RingKind::Quadratic) throw InvalidArgument("w only exists in quadratic rings");
  return RingElem(desc, Rational(0), Rational(1));
}

RingElem RingElem::parse(const RingDescriptor& desc, std::string_view raw) {
  std::string text;
  for (char c : raw)
    if (c != ' ') text.push_back(c);
  if (text.empty()) throw ParseError("empty ring element");
  auto wpos = text.find('w');
  if (wpos == std::string::npos) return RingElem(desc, parse_rational(text));
  if (wpos != text.size() - 1) throw ParseError("'w' must end the term: '" + text + "'");

  std::size_t split = std::string::npos;
  for (std::size_t i = text.size(); i-- > 1;) {
    if (text[i] == '+' || text[i] == '-') {
      split = i;
      break;
    }
  }
  std::string a_part = split == std::string::npos ? "0" : text.substr(0, split);
  std::string b_part = split == std::string::npos ? text : text.substr(split);
  b_part.pop_back();  // 'w'
  if (!b_part.empty() && b_part.back() == '*') b_part.pop_back();
  Rational b;
  if (b_part.empty() || b_part == "+") {
    b = 1;
  } else if (b_part == "-") {
    b = -1;
  } else {
    b = parse_rational(b_part);
  }
  return RingElem(desc, parse_rational(a_part), b);
}

Rational RingElem::norm() const {
  if (desc_.kind() != RingKind::Quadratic) return a_;
  return a_ * a_ - Rational(desc_.d()) * b_ * b_;
}

bool RingElem::is_unit() const {
  if (is_zero()) return false;
  switch (desc_.kind()) {
    case RingKind::Rationals:
      return true;
    case RingKind::Integers:
      return abs(a_) == 1;
    case RingKind::Quadratic:
      return abs(norm()) == 1;
  }
  return false;
}

std::string RingElem::to_string() const {
  if (sgn(b_) == 0) return twistcalc::to_string(a_);
  std::string bterm = twistcalc::to_string(abs(b_)) + "*w";
  if (sgn(a_) == 0) return sgn(b_) < 0 ? "-" + bterm : bterm;
  return twistcalc::to_string(a_) + (sgn(b_) < 0 ? "-" : "+") + bterm;
}

RingElem operator+(const RingElem& x, const RingElem& y) {
  require_same(x, y);
  return RingElem(x.desc_, x.a_ + y.a_, x.b_ + y.b_, RingElem::Unchecked{});
}

RingElem operator-(const RingElem& x, const RingElem& y) {
  require_same(x, y);
  return RingElem(x.desc_, x.a_ - y.a_, x.b_ - y.b_, RingElem::Unchecked{});
}

RingElem operator*(const RingElem& x, const RingElem& y) {
  require_same(x, y);
  if (x.desc_.kind() != RingKind::Quadratic) {
    return RingElem(x.desc_, x.a_ * y.a_, Rational(0), RingElem::Unchecked{});
  }
  Rational a = x.a_ * y.a_ + Rational(x.desc_.d()) * x.b_ * y.b_;
  Rational b = x.a_ * y.b_ + y.a_ * x.b_;
  return RingElem(x.desc_, std::move(a), std::move(b), RingElem::Unchecked{});
}

RingElem& RingElem::operator+=(const RingElem& y) {
  require_same(*this, y);
  a_ += y.a_;
  b_ += y.b_;
  return *this;
}

RingElem& RingElem::operator-=(const RingElem& y) {
  require_same(*this, y);
  a_ -= y.a_;
  b_ -= y.b_;
  return *this;
}

RingElem inverse(const RingElem& x) {
  if (x.is_zero()) throw ZeroDivision("inverse of zero");
  const auto& desc = x.desc();
  switch (desc.kind()) {
    case RingKind::Rationals:
      return RingElem(desc, 1 / x.a());
    case RingKind::Integers:
      if (abs(x.a()) != 1) throw NotAUnit(x.to_string() + " is not a unit of Z");
      return x;
    case RingKind::Quadratic: {
      Rational n = x.norm();
      if (abs(n) != 1) throw NotAUnit(x.to_string() + " is not a unit of " + desc.name());
      // n = +-1, so the inverse is n times the conjugate.
      return sgn(n) > 0 ? RingElem(desc, x.a(), -x.b()) : RingElem(desc, -x.a(), x.b());
    }
  }
  throw InvalidArgument("unknown ring kind");
}

std::vector<RingAutomorphism> ring_automorphisms(const RingDescriptor& desc) {
  if (desc.kind() == RingKind::Quadratic) return {RingAutomorphism::Identity, RingAutomorphism::Conjugation};
  return {RingAutomorphism::Identity};
}

void check_automorphism(const RingDescriptor& desc, RingAutomorphism delta) {
  if (delta == RingAutomorphism::Conjugation && desc.kind() != RingKind::Quadratic) {
    throw InvalidArgument("conjugation is not an automorphism of " + desc.name());
  }
}

RingElem apply(RingAutomorphism delta, const RingElem& x) {
  if (delta == RingAutomorphism::Identity) return x;
  check_automorphism(x.desc(), delta);
  return RingElem(x.desc(), x.a(), -x.b());
}

RingAutomorphism compose(RingAutomorphism outer, RingAutomorphism inner) {
  return outer == inner ? RingAutomorphism::Identity : RingAutomorphism::Conjugation;
}

RingAutomorphism inverse(RingAutomorphism delta) { return delta; }

std::string to_string(RingAutomorphism delta) {
  return delta == RingAutomorphism::Identity ? "id" : "conj";
}

RingAutomorphism parse_ring_automorphism(std::string_view text) {
  if (text == "id") return RingAutomorphism::Identity;
  if (text == "conj") return RingAutomorphism::Conjugation;
  throw ParseError("ring automorphism must be 'id' or 'conj', got '" + std::string(text) + "'");
}

RingElem fundamental_unit(const RingDescriptor& desc, std::int64_t pell_cap) {
  if (desc.kind() != RingKind::Quadratic || desc.d() <= 1) {
    throw InvalidArgument("fundamental unit search needs Z[sqrt d] with d > 1");
  }
  const Int d = desc.d();
  Int x;
  for (std::int64_t y = 1; y <= pell_cap; ++y) {
    Int dy2 = d * Int(y) * Int(y);
    for (int s : {-1, 1}) {
      Int cand = dy2 + s;
      if (cand > 0 && mpz_perfect_square_p(cand.get_mpz_t())) {
        mpz_sqrt(x.get_mpz_t(), cand.get_mpz_t());
        return RingElem(desc, Rational(x), Rational(y));
      }
    }
  }
  throw ResourceCapExceeded("no unit found for " + desc.name() + " with y <= " + std::to_string(pell_cap));
}

UnitList units(const RingDescriptor& desc, std::size_t count, std::int64_t pell_cap) {
  UnitList out;
  const RingElem one = RingElem::one(desc);
  switch (desc.kind()) {
    case RingKind::Rationals:
      out.finite = false;
      return out;
    case RingKind::Integers:
      out.units = {one, -one};
      return out;
    case RingKind::Quadratic:
      break;
  }
  if (desc.d() == -1) {
    const RingElem i = RingElem::omega(desc);
    out.units = {one, -one, i, -i};
    return out;
  }
  if (desc.d() < -1) {
    out.units = {one, -one};
    return out;
  }
  out.finite = false;
  const RingElem u = fundamental_unit(desc, pell_cap);
  const RingElem u_inv = inverse(u);
  out.fundamental = u;
  RingElem pos = u;
  RingElem neg = u_inv;
  auto push = [&](const RingElem& x) {
    if (out.units.size() < count) out.units.push_back(x);
  };
  push(one);
  push(-one);
  while (out.units.size() < count) {
    push(pos);
    push(-pos);
    push(neg);
    push(-neg);
    pos = pos * u;
    neg = neg * u_inv;
  }
  return out;
}

IntVector to_lattice(const RingElem& x) {
  switch (x.desc().kind()) {
    case RingKind::Integers:
      return {x.a().get_num()};
    case RingKind::Quadratic:
      return {x.a().get_num(), x.b().get_num()};
    case RingKind::Rationals:
      break;
  }
  throw InvalidArgument("Q has no lattice coordinates");
}

RingElem from_lattice(const RingDescriptor& desc, const IntVector& v) {
  if (!desc.has_lattice()) throw InvalidArgument("Q has no lattice coordinates");
  if (v.size() != desc.lattice_rank()) throw InvalidArgument("lattice vector has wrong length");
  if (desc.kind() == RingKind::Integers) return RingElem(desc, Rational(v[0]));
  return RingElem(desc, Rational(v[0]), Rational(v[1]));
}

IntMatrix mul_matrix(const RingElem& c, RingAutomorphism delta) {
  const auto& desc = c.desc();
  const std::size_t n = desc.lattice_rank();
  IntMatrix m(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    RingElem basis = j == 0 ? RingElem::one(desc) : RingElem::omega(desc);
    IntVector col = to_lattice(c * apply(delta, basis));
    for (std::size_t i = 0; i < n; ++i) m(i, j) = col[i];
  }
  return m;
}

}  // namespace twistcalc
