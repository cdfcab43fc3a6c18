#include "twistcalc/field_solver.hpp"

#include "twistcalc/errors.hpp"

namespace twistcalc {

namespace {

void require_rational(const NormalFormAuto& phi) {
  phi.validate();
  if (!phi.desc().is_field()) throw InvalidArgument("the field solver works over Q; use the engine for " + phi.desc().name());
  if (phi.n() < 3) throw InvalidArgument("the field solver needs n >= 3");
}

void require_shape(const NormalFormAuto& phi, const UniTriMatrix& x) {
  if (x.n() != phi.n()) throw InvalidArgument("matrix and automorphism dimensions differ");
  if (!(x.desc() == phi.desc())) throw DescriptorMismatch("matrix and automorphism rings differ");
}

std::vector<RingElem> to_ring(const RingDescriptor& q, const RatVector& v) {
  std::vector<RingElem> out;
  out.reserve(v.size());
  for (const auto& c : v) out.emplace_back(q, c);
  return out;
}

// Peels layers n-2 down to `stop`, returning (residual, Z) with residual = Z^{-1} X phi(Z).
std::pair<UniTriMatrix, UniTriMatrix> lift(const NormalFormAuto& phi, const std::vector<RatMatrix>& layers,
                                           const UniTriMatrix& x, std::size_t stop) {
  const RingDescriptor& q = phi.desc();
  const std::size_t n = phi.n();
  UniTriMatrix residual = x;
  UniTriMatrix z = UniTriMatrix::identity(q, n);
  for (std::size_t k = n - 1; k-- > stop;) {
    RatVector w;
    for (const auto& c : residual.quotient_coords(k)) w.push_back(c.a());
    RatMatrix a = RatMatrix::identity(k + 1) - layers[k];
    auto v = solve(a, w);
    if (!v) throw SingularLayer(k, "I - M_" + std::to_string(k) + " is singular");
    UniTriMatrix step = UniTriMatrix::quotient_rep(q, to_ring(q, *v), k, n);
    z = z * step;
    residual = step.inverse() * residual * apply(phi, step);
  }
  return {std::move(residual), std::move(z)};
}

}  // namespace

Classification classify(const NormalFormAuto& phi) {
  require_rational(phi);
  Classification out;
  for (std::size_t k = 0; k + 2 <= phi.n(); ++k) {
    out.layers.push_back(induced_quotient_action(phi, k).rational());
    if (out.singular_layer) continue;
    auto kernel = kernel_basis(RatMatrix::identity(k + 1) - out.layers.back());
    if (!kernel.empty()) {
      out.singular_layer = k;
      out.fixed_vector = kernel.front();
      out.value = ClassCount::infinity();
    }
  }
  return out;
}

UniTriMatrix solve_twisted(const NormalFormAuto& phi, const UniTriMatrix& x) {
  Classification c = classify(phi);
  require_shape(phi, x);
  if (c.singular_layer) throw SingularLayer(*c.singular_layer, "R(phi) is infinite: I - M_" + std::to_string(*c.singular_layer) + " is singular");
  auto [residual, z] = lift(phi, c.layers, x, 0);
  if (!residual.is_identity() || !(x * apply(phi, z) * z.inverse()).is_identity()) {
    throw Error("internal: twisted conjugator failed verification");
  }
  return z;
}

CenterReduction conjugate_into_center(const NormalFormAuto& phi, const UniTriMatrix& x) {
  Classification c = classify(phi);
  require_shape(phi, x);
  for (std::size_t k = 1; k < c.layers.size(); ++k) {
    if (!kernel_basis(RatMatrix::identity(k + 1) - c.layers[k]).empty()) {
      throw SingularLayer(k, "I - M_" + std::to_string(k) + " is singular above the center");
    }
  }
  auto [residual, w] = lift(phi, c.layers, x, 1);
  if (residual.central_level() > 1 || !(w.inverse() * x * apply(phi, w) == residual)) {
    throw Error("internal: central reduction failed verification");
  }
  return {std::move(residual), std::move(w)};
}

}  // namespace twistcalc
