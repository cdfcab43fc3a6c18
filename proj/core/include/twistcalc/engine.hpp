#pragma once

#include "twistcalc/automorphism.hpp"
#include "twistcalc/lattice.hpp"

#include <cstddef>
#include <functional>
#include <optional>
#include <vector>

namespace twistcalc {

/// A nonzero vector fixed by the layer-k action, certifying R(phi_k) = infinity.
struct LayerWitness {
  std::size_t layer = 0;
  IntVector vector;
};

/// R(phi) as the product of the per-layer numbers R(phi_k), k = 0..n-2.
///
/// Layers are evaluated from the center outwards and evaluation stops at the
/// first infinite layer, so `layers` may be shorter than n - 1 when the value
/// is infinite. `witness` is present exactly when the value is infinite.
struct ReidemeisterValue {
  ClassCount value = ClassCount::finite(Int(1));
  std::vector<ClassCount> layers;
  std::optional<LayerWitness> witness;
};

/// Integer layer matrices M_k for all k = 0..n-2 (lattice rings only).
std::vector<IntMatrix> layer_matrices(const Automorphism& phi);

/// Reidemeister number of phi on UT_n(R) for R = Z or a quadratic ring.
/// Throws InvalidArgument over Q (see the field solver).
ReidemeisterValue reidemeister_number(const Automorphism& phi);

/// The layer a pigeonhole argument predicts to be singular for
/// phi = sigma^m psi_D Delta, with the index pair (j < i) it came from.
struct PredictedLayer {
  std::size_t j = 0;
  std::size_t i = 0;
  std::size_t layer = 0;
};

/// m = 0: first pair j < i with d_i = d_j. m = 1: first pair with
/// a_i = a_j and i + j != n + 1, where a_r = delta(d_r) d_{n+1-r}^{-1}.
/// In both cases the layer is k = n + j - i - 1.
std::optional<PredictedLayer> predict_singular_layer(const NormalFormAuto& phi);

struct SweepOptions {
  /// Units to draw diagonal entries from; required when R* is infinite.
  std::optional<std::vector<RingElem>> units;
  /// Fix d_1 = 1 (scalar diagonals act trivially).
  bool normalize_first = true;
  std::vector<int> flips{0, 1};
  /// Defaults to every ring automorphism.
  std::optional<std::vector<RingAutomorphism>> deltas;
  unsigned jobs = 1;
  std::size_t max_cases = std::size_t{1} << 24;
  /// Called from worker threads with (finished, total); must be thread-safe.
  std::function<void(std::size_t, std::size_t)> progress;
};

struct SweepCase {
  NormalFormAuto phi;
  ReidemeisterValue result;
  std::optional<PredictedLayer> prediction;
  /// det(I - M_k) = 0 at the predicted layer.
  bool prediction_singular = false;
};

struct SweepReport {
  RingDescriptor ring = RingDescriptor::integers();
  std::size_t n = 0;
  std::size_t unit_count = 0;
  /// n > 2 |R*| with R* finite.
  bool threshold_met = false;
  std::vector<SweepCase> cases;

  bool all_infinite() const;
  /// Every case with a prediction has a singular predicted layer, and when the
  /// threshold is met every case carries a prediction.
  bool predictions_hold() const;
  std::size_t finite_count() const;
};

/// Evaluates every normalized (m, delta, D) tuple. Cases come back in
/// lexicographic order of (m, delta, D) regardless of `jobs`.
SweepReport r_infinity_sweep(const RingDescriptor& ring, std::size_t n, const SweepOptions& options = {});

struct SpectrumOptions {
  std::optional<std::vector<RingElem>> units;
  bool normalize_first = true;
  std::vector<int> flips{0, 1};
  std::optional<std::vector<RingAutomorphism>> deltas;
  bool include_normal_forms = true;
  /// n = 3 only: add HeisenbergAuto with integer entries in [-bound, bound].
  std::optional<long> heisenberg_bound;
};

struct SpectrumSample {
  /// Sorted, deduplicated finite values attained.
  std::vector<Int> finite_values;
  bool has_infinity = false;
  std::size_t automorphisms_tested = 0;
};

SpectrumSample spectrum_sample(const RingDescriptor& ring, std::size_t n, const SpectrumOptions& options = {});

/// The subgroup H of R^+ with T_{1,n}(a) ~ T_{1,n}(b) iff a - b in H, for
/// phi = Lambda sigma^m psi_D Delta (no inner part).
struct CentralSubgroupH {
  RingDescriptor ring = RingDescriptor::integers();
  std::vector<RingElem> generators;
  /// |R^+ : H|; over Q either 1 or infinity.
  ClassCount index = ClassCount::infinity();
};

/// m = 0 for every n >= 3; m = 1 only for n = 3.
CentralSubgroupH central_subgroup_H(const NormalFormAuto& phi);

/// T_{1,n}(a) = (T Y)^{-1} T_{1,n}(b) phi(T Y), checked by exact multiplication.
struct CentralConjugator {
  UniTriMatrix T;
  UniTriMatrix Y;
};

/// Constructive conjugator for central elements, m = 0. nullopt when a - b is not in H.
std::optional<CentralConjugator> central_conjugator(const NormalFormAuto& phi, const RingElem& a, const RingElem& b);

}  // namespace twistcalc
