#pragma once

// JSON forms. Arithmetic values (ring elements, class counts, integer matrix
// entries) are written as decimal strings; readers accept strings or numbers.

#include "twistcalc/automorphism.hpp"
#include "twistcalc/engine.hpp"
#include "twistcalc/field_solver.hpp"
#include "twistcalc/lattice.hpp"
#include "twistcalc/oracle.hpp"

#include <nlohmann/json.hpp>

namespace twistcalc {

using Json = nlohmann::json;

Json to_json(const RingElem& x);
RingElem ring_elem_from_json(const RingDescriptor& ring, const Json& j);

Json to_json(const ClassCount& c);

/// Nested arrays of decimal strings.
Json to_json(const IntMatrix& m);
IntMatrix int_matrix_from_json(const Json& j);
Json to_json(const IntVector& v);

/// {"n": n, "entries": [[i, j, "elem"], ...]} with only nonzero strict-upper entries.
Json to_json(const UniTriMatrix& x);
UniTriMatrix unitriangular_from_json(const RingDescriptor& ring, const Json& j);

/// {"inner": matrix|null, "lambda": intmatrix|scalar|null, "m": 0|1, "D": [...], "delta": "id"|"conj"}
/// or {"heisenberg": {"M": [[..], [..]], "delta": ...}}.
Json to_json(const Automorphism& phi);
Automorphism automorphism_from_json(const RingDescriptor& ring, const Json& j);

/// {"layers": [...] | "inf", "value": ..., "witness": {"layer": k, "vector": [...]} | null}.
Json to_json(const ReidemeisterValue& v);
/// One sweep case: {"params": {"m", "D", "delta"}, ...ReidemeisterValue, "prediction": ...}.
Json to_json(const SweepCase& c);
Json to_json(const SweepReport& r);
Json to_json(const SpectrumSample& s);
Json to_json(const CentralSubgroupH& h);
Json to_json(const Classification& c);
Json to_json(const FiniteGroupTable& g);
Json to_json(const PropositionReport& r);

}  // namespace twistcalc
