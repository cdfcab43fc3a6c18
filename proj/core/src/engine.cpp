#include "twistcalc/engine.hpp"

#include "twistcalc/errors.hpp"

#include <algorithm>
#include <atomic>
#include <set>
#include <thread>

namespace twistcalc {

namespace {

void validate(const Automorphism& phi) {
  std::visit([](const auto& a) { a.validate(); }, phi);
}

std::size_t checked_case_count(std::size_t base, std::size_t exponent, std::size_t multiplier, std::size_t cap) {
  std::size_t total = multiplier;
  for (std::size_t i = 0; i < exponent; ++i) {
    if (base != 0 && total > cap / base) throw ResourceCapExceeded("sweep exceeds the case cap of " + std::to_string(cap));
    total *= base;
  }
  if (total > cap) throw ResourceCapExceeded("sweep exceeds the case cap of " + std::to_string(cap));
  return total;
}

std::vector<RingElem> sweep_units(const RingDescriptor& ring, const std::optional<std::vector<RingElem>>& given) {
  if (given) {
    for (const auto& u : *given) {
      if (!(u.desc() == ring)) throw DescriptorMismatch("unit list ring differs from sweep ring");
      if (!u.is_unit()) throw NotAUnit(u.to_string() + " is not a unit of " + ring.name());
    }
    return *given;
  }
  UnitList list = units(ring);
  if (!list.finite) throw InvalidArgument("R* of " + ring.name() + " is infinite; pass an explicit unit list");
  return list.units;
}

// Enumerates (flip, delta, D) in lexicographic order with d_1 most significant.
std::vector<NormalFormAuto> enumerate_monomial(const RingDescriptor& ring, std::size_t n,
                                               const std::vector<RingElem>& unit_list, bool normalize_first,
                                               const std::vector<int>& flips,
                                               const std::vector<RingAutomorphism>& deltas, std::size_t cap) {
  if (unit_list.empty()) throw InvalidArgument("empty unit list");
  const std::size_t free_slots = normalize_first ? n - 1 : n;
  const std::size_t total = checked_case_count(unit_list.size(), free_slots, flips.size() * deltas.size(), cap);
  std::vector<NormalFormAuto> out;
  out.reserve(total);
  const RingElem one = RingElem::one(ring);
  for (int flip : flips) {
    for (RingAutomorphism delta : deltas) {
      std::vector<std::size_t> digits(free_slots, 0);
      for (;;) {
        std::vector<RingElem> diag;
        diag.reserve(n);
        if (normalize_first) diag.push_back(one);
        for (std::size_t d : digits) diag.push_back(unit_list[d]);
        out.push_back(NormalFormAuto::monomial(std::move(diag), flip, delta));
        std::size_t pos = free_slots;
        while (pos > 0) {
          --pos;
          if (++digits[pos] < unit_list.size()) break;
          digits[pos] = 0;
          if (pos == 0) {
            pos = free_slots + 1;
            break;
          }
        }
        if (pos == free_slots + 1 || free_slots == 0) break;
      }
    }
  }
  return out;
}

template <class Work>
void parallel_for(std::size_t count, unsigned jobs, Work&& work) {
  jobs = std::max(1u, jobs);
  if (jobs == 1 || count < 2) {
    for (std::size_t i = 0; i < count; ++i) work(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  std::exception_ptr failure;
  std::atomic<bool> failed{false};
  for (unsigned t = 0; t < jobs; ++t) {
    pool.emplace_back([&] {
      for (;;) {
        std::size_t i = next.fetch_add(1);
        if (i >= count || failed.load()) return;
        try {
          work(i);
        } catch (...) {
          if (!failed.exchange(true)) failure = std::current_exception();
          return;
        }
      }
    });
  }
  for (auto& th : pool) th.join();
  if (failure) std::rethrow_exception(failure);
}

UniTriMatrix first_superdiagonal(const RingDescriptor& ring, std::size_t n, const std::vector<RingElem>& t) {
  UniTriMatrix m(ring, n);
  for (std::size_t i = 1; i < n; ++i) m.set(i, i + 1, t[i - 1]);
  return m;
}

RingElem lambda_or_zero(const NormalFormAuto& phi, const RingElem& x) {
  return phi.lambda ? (*phi.lambda)(x) : RingElem::zero(x.desc());
}

void require_central_form(const NormalFormAuto& phi) {
  phi.validate();
  if (phi.inner) throw InvalidArgument("central subgroup H needs phi without an inner part");
  if (phi.n() < 3) throw InvalidArgument("central subgroup H needs n >= 3");
}

// (Z phi(Z)^{-1})_{1,n} for Z whose image in G/Z_1 is fixed by phi.
RingElem central_defect(const NormalFormAuto& phi, const UniTriMatrix& z) {
  UniTriMatrix c = z * apply(phi, z).inverse();
  if (c.central_level() > 1) throw Error("internal: lifted element is not fixed modulo the center");
  return c.at(1, phi.n());
}

}  // namespace

std::vector<IntMatrix> layer_matrices(const Automorphism& phi) {
  validate(phi);
  const std::size_t n = dimension_of(phi);
  std::vector<IntMatrix> out;
  for (std::size_t k = 0; k + 2 <= n; ++k) out.push_back(induced_quotient_action(phi, k).lattice());
  return out;
}

ReidemeisterValue reidemeister_number(const Automorphism& phi) {
  validate(phi);
  const RingDescriptor& ring = ring_of(phi);
  if (ring.is_field()) throw InvalidArgument("reidemeister_number needs a ring with finitely generated R^+; use the field solver for Q");
  const std::size_t n = dimension_of(phi);
  ReidemeisterValue out;
  for (std::size_t k = 0; k + 2 <= n; ++k) {
    IntMatrix m = induced_quotient_action(phi, k).lattice();
    ClassCount layer = reidemeister_abelian(m);
    out.layers.push_back(layer);
    out.value = out.value * layer;
    if (layer.is_infinite()) {
      auto kernel = kernel_basis(IntMatrix::identity(m.rows()) - m);
      out.witness = LayerWitness{k, kernel.front()};
      return out;
    }
  }
  return out;
}

std::optional<PredictedLayer> predict_singular_layer(const NormalFormAuto& phi) {
  const std::size_t n = phi.n();
  std::vector<RingElem> key;
  key.reserve(n);
  if (phi.flip == 0) {
    key = phi.diagonal;
  } else {
    for (std::size_t r = 1; r <= n; ++r) key.push_back(apply(phi.delta, phi.diagonal[r - 1]) * inverse(phi.diagonal[n - r]));
  }
  for (std::size_t j = 1; j <= n; ++j) {
    for (std::size_t i = j + 1; i <= n; ++i) {
      if (!(key[i - 1] == key[j - 1])) continue;
      if (phi.flip == 1 && i + j == n + 1) continue;
      return PredictedLayer{j, i, n + j - i - 1};
    }
  }
  return std::nullopt;
}

bool SweepReport::all_infinite() const {
  return std::all_of(cases.begin(), cases.end(), [](const SweepCase& c) { return c.result.value.is_infinite(); });
}

bool SweepReport::predictions_hold() const {
  return std::all_of(cases.begin(), cases.end(), [&](const SweepCase& c) {
    if (!c.prediction) return !threshold_met;
    return c.prediction_singular;
  });
}

std::size_t SweepReport::finite_count() const {
  return static_cast<std::size_t>(
      std::count_if(cases.begin(), cases.end(), [](const SweepCase& c) { return c.result.value.is_finite(); }));
}

SweepReport r_infinity_sweep(const RingDescriptor& ring, std::size_t n, const SweepOptions& options) {
  if (ring.is_field()) throw InvalidArgument("sweeps need a ring with finitely generated R^+");
  if (n < 2) throw InvalidArgument("sweeps need n >= 2");
  const std::vector<RingElem> unit_list = sweep_units(ring, options.units);
  const auto deltas = options.deltas.value_or(ring_automorphisms(ring));
  for (auto d : deltas) check_automorphism(ring, d);
  for (int f : options.flips)
    if (f != 0 && f != 1) throw InvalidArgument("flip exponent must be 0 or 1");

  SweepReport report;
  report.ring = ring;
  report.n = n;
  const UnitList group = units(ring, 1);
  report.unit_count = group.finite ? group.units.size() : 0;
  report.threshold_met = group.finite && n > 2 * group.units.size();

  auto phis = enumerate_monomial(ring, n, unit_list, options.normalize_first, options.flips, deltas, options.max_cases);
  report.cases.resize(phis.size());
  std::atomic<std::size_t> done{0};
  parallel_for(phis.size(), options.jobs, [&](std::size_t idx) {
    SweepCase c;
    c.phi = std::move(phis[idx]);
    c.result = reidemeister_number(c.phi);
    c.prediction = predict_singular_layer(c.phi);
    if (c.prediction) c.prediction_singular = has_fixed_vector(induced_quotient_action(c.phi, c.prediction->layer).lattice());
    report.cases[idx] = std::move(c);
    std::size_t finished = done.fetch_add(1) + 1;
    if (options.progress) options.progress(finished, report.cases.size());
  });
  return report;
}

SpectrumSample spectrum_sample(const RingDescriptor& ring, std::size_t n, const SpectrumOptions& options) {
  if (ring.is_field()) throw InvalidArgument("spectrum sampling needs a ring with finitely generated R^+");
  std::set<Int> values;
  SpectrumSample out;
  auto record = [&](const ReidemeisterValue& v) {
    ++out.automorphisms_tested;
    if (v.value.is_infinite()) {
      out.has_infinity = true;
    } else {
      values.insert(v.value.value());
    }
  };
  const auto deltas = options.deltas.value_or(ring_automorphisms(ring));
  if (options.include_normal_forms) {
    const auto unit_list = sweep_units(ring, options.units);
    for (const auto& phi : enumerate_monomial(ring, n, unit_list, options.normalize_first, options.flips, deltas,
                                              std::size_t{1} << 24)) {
      record(reidemeister_number(phi));
    }
  }
  if (options.heisenberg_bound) {
    if (n != 3) throw InvalidArgument("Heisenberg automorphisms exist only for n = 3");
    const long b = *options.heisenberg_bound;
    for (long m00 = -b; m00 <= b; ++m00)
      for (long m01 = -b; m01 <= b; ++m01)
        for (long m10 = -b; m10 <= b; ++m10)
          for (long m11 = -b; m11 <= b; ++m11)
            for (RingAutomorphism delta : deltas) {
              HeisenbergAuto psi{{{{RingElem(ring, m00), RingElem(ring, m01)}, {RingElem(ring, m10), RingElem(ring, m11)}}},
                                 delta};
              if (!psi.det().is_unit()) continue;
              record(reidemeister_number(psi));
            }
  }
  out.finite_values.assign(values.begin(), values.end());
  return out;
}

CentralSubgroupH central_subgroup_H(const NormalFormAuto& phi) {
  require_central_form(phi);
  const RingDescriptor& ring = phi.desc();
  const std::size_t n = phi.n();
  CentralSubgroupH out;
  out.ring = ring;
  auto keep = [&](const RingElem& g) {
    if (!g.is_zero()) out.generators.push_back(g);
  };

  if (phi.flip == 0) {
    const RingElem c0 = phi.diagonal[0] * inverse(phi.diagonal[n - 1]);
    if (ring.is_field()) {
      for (std::size_t i = 1; i < n; ++i) {
        const RingElem ci = phi.diagonal[i - 1] * inverse(phi.diagonal[i]);
        if (ci.is_one()) keep(lambda_or_zero(phi, RingElem::one(ring)));
      }
      keep(RingElem::one(ring) - c0);
    } else {
      for (std::size_t i = 1; i < n; ++i) {
        const RingElem ci = phi.diagonal[i - 1] * inverse(phi.diagonal[i]);
        IntMatrix ki = IntMatrix::identity(ring.lattice_rank()) - mul_matrix(ci, phi.delta);
        for (const auto& v : kernel_basis(ki)) keep(lambda_or_zero(phi, from_lattice(ring, v)));
      }
      IntMatrix k0 = IntMatrix::identity(ring.lattice_rank()) - mul_matrix(c0, phi.delta);
      for (std::size_t j = 0; j < k0.cols(); ++j) keep(from_lattice(ring, k0.column(j)));
    }
  } else {
    if (n != 3) throw InvalidArgument("central subgroup H with a flip is only supported for n = 3");
    // F = preimage of the fixed points on G/Z_1; Z -> Z phi(Z)^{-1} maps F onto H.
    QuotientAction top = induced_quotient_action(phi, 1);
    QuotientAction center = induced_quotient_action(phi, 0);
    if (ring.is_field()) {
      for (const auto& v : kernel_basis(RatMatrix::identity(2) - top.rational())) {
        keep(central_defect(phi, UniTriMatrix::quotient_rep(ring, {RingElem(ring, v[0]), RingElem(ring, v[1])}, 1, 3)));
      }
      keep(RingElem(ring, 1 - center.rational()(0, 0)));
    } else {
      const std::size_t N = ring.lattice_rank();
      for (const auto& v : kernel_basis(IntMatrix::identity(2 * N) - top.lattice())) {
        IntVector t1(v.begin(), v.begin() + N), t2(v.begin() + N, v.end());
        keep(central_defect(phi, UniTriMatrix::quotient_rep(ring, {from_lattice(ring, t1), from_lattice(ring, t2)}, 1, 3)));
      }
      IntMatrix k0 = IntMatrix::identity(N) - center.lattice();
      for (std::size_t j = 0; j < k0.cols(); ++j) keep(from_lattice(ring, k0.column(j)));
    }
  }

  if (ring.is_field()) {
    out.index = out.generators.empty() ? ClassCount::infinity() : ClassCount::finite(Int(1));
  } else {
    std::vector<IntVector> lattice_gens;
    for (const auto& g : out.generators) lattice_gens.push_back(to_lattice(g));
    out.index = subgroup_index(lattice_gens, ring.lattice_rank());
  }
  return out;
}

std::optional<CentralConjugator> central_conjugator(const NormalFormAuto& phi, const RingElem& a, const RingElem& b) {
  require_central_form(phi);
  if (phi.flip != 0) throw InvalidArgument("central_conjugator implements the m = 0 construction only");
  const RingDescriptor& ring = phi.desc();
  if (!(a.desc() == ring) || !(b.desc() == ring)) throw DescriptorMismatch("central elements over a different ring");
  const std::size_t n = phi.n();
  const RingElem c0 = phi.diagonal[0] * inverse(phi.diagonal[n - 1]);

  // Unknowns: coefficients on a basis of each fixed space {t_i}, then y.
  // a - b = sum lambda(t_i) + (c0 delta(y) - y).
  std::vector<std::size_t> owner;              // slot index i for each t-parameter
  std::vector<RingElem> direction;             // t_i direction for each t-parameter
  std::vector<RingElem> y_basis;
  std::vector<RingElem> t(n - 1, RingElem::zero(ring));
  RingElem y = RingElem::zero(ring);

  if (ring.is_field()) {
    for (std::size_t i = 1; i < n; ++i) {
      if ((phi.diagonal[i - 1] * inverse(phi.diagonal[i])).is_one()) {
        owner.push_back(i - 1);
        direction.push_back(RingElem::one(ring));
      }
    }
    RatMatrix g(1, owner.size() + 1);
    for (std::size_t p = 0; p < owner.size(); ++p) g(0, p) = lambda_or_zero(phi, direction[p]).a();
    g(0, owner.size()) = (c0 - RingElem::one(ring)).a();
    auto x = solve(g, {(a - b).a()});
    if (!x) return std::nullopt;
    for (std::size_t p = 0; p < owner.size(); ++p) t[owner[p]] += direction[p] * RingElem(ring, (*x)[p]);
    y = RingElem(ring, (*x)[owner.size()]);
  } else {
    const std::size_t N = ring.lattice_rank();
    for (std::size_t i = 1; i < n; ++i) {
      const RingElem ci = phi.diagonal[i - 1] * inverse(phi.diagonal[i]);
      for (const auto& v : kernel_basis(IntMatrix::identity(N) - mul_matrix(ci, phi.delta))) {
        owner.push_back(i - 1);
        direction.push_back(from_lattice(ring, v));
      }
    }
    std::vector<IntVector> columns;
    for (const auto& dir : direction) columns.push_back(to_lattice(lambda_or_zero(phi, dir)));
    IntMatrix shift = mul_matrix(c0, phi.delta) - IntMatrix::identity(N);
    for (std::size_t j = 0; j < N; ++j) columns.push_back(shift.column(j));
    auto x = solve_integer(IntMatrix::from_columns(columns, N), to_lattice(a - b));
    if (!x) return std::nullopt;
    for (std::size_t p = 0; p < owner.size(); ++p) t[owner[p]] += direction[p] * RingElem(ring, Rational((*x)[p]));
    IntVector yv(x->begin() + static_cast<std::ptrdiff_t>(owner.size()), x->end());
    y = from_lattice(ring, yv);
  }

  CentralConjugator w{first_superdiagonal(ring, n, t), UniTriMatrix::transvection(n, 1, n, y)};
  const UniTriMatrix ty = w.T * w.Y;
  if (!(UniTriMatrix::transvection(n, 1, n, a) == ty.inverse() * UniTriMatrix::transvection(n, 1, n, b) * apply(phi, ty))) {
    throw Error("internal: central conjugator failed verification");
  }
  return w;
}

}  // namespace twistcalc
