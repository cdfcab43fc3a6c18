#include "twistcalc/automorphism.hpp"

#include "twistcalc/errors.hpp"

namespace twistcalc {

AdditiveMap AdditiveMap::lattice(IntMatrix m) {
  if (!m.is_square()) throw InvalidArgument("lambda matrix must be square");
  return AdditiveMap(std::move(m));
}

AdditiveMap AdditiveMap::scalar(Rational c) {
  c.canonicalize();
  return AdditiveMap(std::move(c));
}

AdditiveMap AdditiveMap::identity(const RingDescriptor& desc) {
  if (desc.is_field()) return scalar(Rational(1));
  return lattice(IntMatrix::identity(desc.lattice_rank()));
}

void AdditiveMap::check_ring(const RingDescriptor& desc) const {
  if (desc.is_field()) {
    if (is_lattice()) throw InvalidArgument("lambda over Q must be a rational scalar");
    return;
  }
  if (!is_lattice()) {
    const Rational& c = factor();
    if (!is_integral(c)) throw InvalidArgument("lambda scalar must be an integer over " + desc.name());
    return;
  }
  if (matrix().rows() != desc.lattice_rank()) {
    throw InvalidArgument("lambda matrix must be " + std::to_string(desc.lattice_rank()) + "x" +
                          std::to_string(desc.lattice_rank()) + " over " + desc.name());
  }
}

RingElem AdditiveMap::operator()(const RingElem& x) const {
  if (!is_lattice()) return x * RingElem(x.desc(), factor());
  return from_lattice(x.desc(), matrix() * to_lattice(x));
}

NormalFormAuto NormalFormAuto::monomial(std::vector<RingElem> diagonal, int flip, RingAutomorphism delta) {
  NormalFormAuto phi;
  phi.diagonal = std::move(diagonal);
  phi.flip = flip;
  phi.delta = delta;
  return phi;
}

NormalFormAuto NormalFormAuto::identity(const RingDescriptor& desc, std::size_t n) {
  return monomial(std::vector<RingElem>(n, RingElem::one(desc)));
}

const RingDescriptor& NormalFormAuto::desc() const {
  if (diagonal.empty()) throw InvalidArgument("automorphism has an empty diagonal");
  return diagonal.front().desc();
}

void NormalFormAuto::validate() const {
  if (diagonal.size() < 2) throw InvalidArgument("automorphism needs n >= 2 diagonal entries");
  const RingDescriptor& r = desc();
  for (const auto& d : diagonal) {
    if (!(d.desc() == r)) throw DescriptorMismatch("diagonal entries over different rings");
    if (!d.is_unit()) throw NotAUnit("diagonal entry " + d.to_string() + " is not a unit of " + r.name());
  }
  if (flip != 0 && flip != 1) throw InvalidArgument("flip exponent must be 0 or 1");
  check_automorphism(r, delta);
  if (inner) {
    if (inner->n() != n()) throw InvalidArgument("inner part has the wrong dimension");
    if (!(inner->desc() == r)) throw DescriptorMismatch("inner part over a different ring");
  }
  if (lambda) {
    if (n() < 3) throw InvalidArgument("central automorphisms need n >= 3");
    lambda->check_ring(r);
  }
}

RingElem HeisenbergAuto::det() const { return M[0][0] * M[1][1] - M[0][1] * M[1][0]; }

void HeisenbergAuto::validate() const {
  const RingDescriptor& r = desc();
  for (const auto& row : M)
    for (const auto& x : row)
      if (!(x.desc() == r)) throw DescriptorMismatch("Heisenberg matrix entries over different rings");
  check_automorphism(r, delta);
  if (!det().is_unit()) throw NotAUnit("Heisenberg matrix determinant " + det().to_string() + " is not a unit");
}

const RingDescriptor& ring_of(const Automorphism& phi) {
  return std::visit([](const auto& a) -> const RingDescriptor& { return a.desc(); }, phi);
}

std::size_t dimension_of(const Automorphism& phi) {
  if (const auto* nf = std::get_if<NormalFormAuto>(&phi)) return nf->n();
  return 3;
}

UniTriMatrix apply(const NormalFormAuto& phi, const UniTriMatrix& x) {
  const std::size_t n = x.n();
  if (phi.n() != n) throw InvalidArgument("automorphism and matrix dimensions differ");
  if (!(phi.desc() == x.desc())) throw DescriptorMismatch("automorphism and matrix rings differ");
  if (phi.flip != 0 && phi.flip != 1) throw InvalidArgument("flip exponent must be 0 or 1");
  if (phi.lambda && n < 3) throw InvalidArgument("central automorphisms need n >= 3");

  std::vector<std::optional<RingElem>> dinv(n);
  UniTriMatrix y(x.desc(), n);
  x.for_each_nonzero([&](std::size_t i, std::size_t j, const RingElem& v) {
    if (!dinv[j - 1]) dinv[j - 1] = inverse(phi.diagonal[j - 1]);
    y.set(i, j, phi.diagonal[i - 1] * twistcalc::apply(phi.delta, v) * *dinv[j - 1]);
  });
  if (phi.flip == 1) y = flip_sigma(y);
  if (phi.lambda) {
    RingElem s = RingElem::zero(x.desc());
    for (std::size_t i = 1; i < n; ++i) s += y.at(i, i + 1);
    RingElem shift = (*phi.lambda)(s);
    if (!shift.is_zero()) y.set(1, n, y.at(1, n) + shift);
  }
  if (phi.inner) y = *phi.inner * y * phi.inner->inverse();
  return y;
}

namespace {

// Quadratic function with tri(x + y) = tri(x) + tri(y) + x y and tri(1) = 0,
// integral on every supported ring.
RingElem tri(const RingElem& x) {
  const RingDescriptor& r = x.desc();
  if (r.kind() != RingKind::Quadratic) return RingElem(r, x.a() * (x.a() - 1) / 2);
  Rational a = x.a() * (x.a() - 1) / 2 + Rational(r.d()) * x.b() * (x.b() - 1) / 2;
  return RingElem(r, a, x.a() * x.b());
}

}  // namespace

UniTriMatrix apply_heisenberg(const HeisenbergAuto& psi, const UniTriMatrix& x) {
  if (x.n() != 3) throw InvalidArgument("Heisenberg automorphisms act on UT_3 only");
  if (!(psi.desc() == x.desc())) throw DescriptorMismatch("automorphism and matrix rings differ");
  const auto& M = psi.M;
  const RingElem a = twistcalc::apply(psi.delta, x.at(1, 2));
  const RingElem b = twistcalc::apply(psi.delta, x.at(2, 3));
  const RingElem c = twistcalc::apply(psi.delta, x.at(1, 3));
  UniTriMatrix y(x.desc(), 3);
  y.set(1, 2, M[0][0] * a + M[0][1] * b);
  y.set(2, 3, M[1][0] * a + M[1][1] * b);
  y.set(1, 3, psi.det() * c + M[0][0] * M[1][0] * tri(a) + M[0][1] * M[1][1] * tri(b) + M[0][1] * M[1][0] * a * b);
  return y;
}

UniTriMatrix apply(const Automorphism& phi, const UniTriMatrix& x) {
  if (const auto* nf = std::get_if<NormalFormAuto>(&phi)) return apply(*nf, x);
  return apply_heisenberg(std::get<HeisenbergAuto>(phi), x);
}

NormalFormAuto square_flip(const NormalFormAuto& phi) {
  if (phi.inner || phi.lambda || phi.flip != 1) {
    throw InvalidArgument("square_flip needs phi = sigma psi_D Delta (no inner or central part)");
  }
  const std::size_t n = phi.n();
  std::vector<RingElem> a;
  a.reserve(n);
  for (std::size_t r = 1; r <= n; ++r) {
    a.push_back(twistcalc::apply(phi.delta, phi.diagonal[r - 1]) * inverse(phi.diagonal[n - r]));
  }
  return NormalFormAuto::monomial(std::move(a), 0, compose(phi.delta, phi.delta));
}

QuotientAction induced_quotient_action(const Automorphism& phi, std::size_t k) {
  const RingDescriptor& ring = ring_of(phi);
  const std::size_t n = dimension_of(phi);
  if (k + 2 > n) throw InvalidArgument("layer k must satisfy 0 <= k <= n - 2");

  std::vector<RingElem> basis{RingElem::one(ring)};
  if (ring.kind() == RingKind::Quadratic) basis.push_back(RingElem::omega(ring));
  const std::size_t width = basis.size();
  const std::size_t dim = (k + 1) * width;

  QuotientAction out;
  out.k = k;
  if (ring.is_field()) {
    RatMatrix m(k + 1, k + 1);
    for (std::size_t r = 0; r <= k; ++r) {
      std::vector<RingElem> v(k + 1, RingElem::zero(ring));
      v[r] = basis[0];
      auto image = twistcalc::apply(phi, UniTriMatrix::quotient_rep(ring, v, k, n)).quotient_coords(k);
      for (std::size_t i = 0; i <= k; ++i) m(i, r) = image[i].a();
    }
    out.matrix = std::move(m);
    return out;
  }

  IntMatrix m(dim, dim);
  for (std::size_t r = 0; r <= k; ++r) {
    for (std::size_t b = 0; b < width; ++b) {
      std::vector<RingElem> v(k + 1, RingElem::zero(ring));
      v[r] = basis[b];
      auto image = twistcalc::apply(phi, UniTriMatrix::quotient_rep(ring, v, k, n)).quotient_coords(k);
      const std::size_t col = r * width + b;
      for (std::size_t i = 0; i <= k; ++i) {
        IntVector coords = to_lattice(image[i]);
        for (std::size_t c = 0; c < width; ++c) m(i * width + c, col) = coords[c];
      }
    }
  }
  out.matrix = std::move(m);
  return out;
}

}  // namespace twistcalc
