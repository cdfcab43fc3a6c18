#include "twistcalc/serialize.hpp"

#include "twistcalc/errors.hpp"

namespace twistcalc {

namespace {

std::string scalar_text(const Json& j) {
  if (j.is_string()) return j.get<std::string>();
  if (j.is_number_integer()) return std::to_string(j.get<long long>());
  if (j.is_number_unsigned()) return std::to_string(j.get<unsigned long long>());
  throw ParseError("expected an integer, a fraction string or a ring element string, got " + j.dump());
}

std::size_t index_value(const Json& j, const char* what) {
  Int v = parse_integer(scalar_text(j));
  if (v < 0 || !v.fits_ulong_p()) throw ParseError(std::string(what) + " out of range");
  return v.get_ui();
}

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw ParseError(std::string("missing field \"") + key + "\"");
  return j.at(key);
}

bool present(const Json& j, const char* key) { return j.is_object() && j.contains(key) && !j.at(key).is_null(); }

Json layers_json(const ReidemeisterValue& v) {
  if (v.value.is_infinite()) return "inf";
  Json out = Json::array();
  for (const auto& c : v.layers) out.push_back(c.to_string());
  return out;
}

}  // namespace

Json to_json(const RingElem& x) { return x.to_string(); }

RingElem ring_elem_from_json(const RingDescriptor& ring, const Json& j) { return RingElem::parse(ring, scalar_text(j)); }

Json to_json(const ClassCount& c) { return c.to_string(); }

Json to_json(const IntMatrix& m) {
  Json out = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(to_string(m(i, j)));
    out.push_back(std::move(row));
  }
  return out;
}

IntMatrix int_matrix_from_json(const Json& j) {
  if (!j.is_array() || j.empty()) throw ParseError("integer matrix must be a nonempty array of rows");
  const std::size_t rows = j.size();
  const std::size_t cols = j.front().is_array() ? j.front().size() : 0;
  if (cols == 0) throw ParseError("integer matrix rows must be nonempty arrays");
  IntMatrix m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r) {
    if (!j[r].is_array() || j[r].size() != cols) throw ParseError("integer matrix rows must have equal length");
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = parse_integer(scalar_text(j[r][c]));
  }
  return m;
}

Json to_json(const IntVector& v) {
  Json out = Json::array();
  for (const auto& x : v) out.push_back(to_string(x));
  return out;
}

Json to_json(const UniTriMatrix& x) {
  Json entries = Json::array();
  x.for_each_nonzero([&](std::size_t i, std::size_t j, const RingElem& v) { entries.push_back({i, j, v.to_string()}); });
  return {{"n", x.n()}, {"entries", std::move(entries)}};
}

UniTriMatrix unitriangular_from_json(const RingDescriptor& ring, const Json& j) {
  const std::size_t n = index_value(field(j, "n"), "n");
  if (n < 2) throw ParseError("matrix needs n >= 2");
  UniTriMatrix x(ring, n);
  const Json& entries = field(j, "entries");
  if (!entries.is_array()) throw ParseError("\"entries\" must be an array");
  for (const auto& e : entries) {
    if (!e.is_array() || e.size() != 3) throw ParseError("each entry must be [i, j, \"elem\"]");
    const std::size_t r = index_value(e[0], "row index");
    const std::size_t c = index_value(e[1], "column index");
    if (r < 1 || r >= c || c > n) throw ParseError("entry (" + std::to_string(r) + "," + std::to_string(c) + ") is not strictly upper");
    x.set(r, c, ring_elem_from_json(ring, e[2]));
  }
  return x;
}

Json to_json(const Automorphism& phi) {
  if (const auto* h = std::get_if<HeisenbergAuto>(&phi)) {
    Json m = Json::array();
    for (const auto& row : h->M) m.push_back({row[0].to_string(), row[1].to_string()});
    return {{"heisenberg", {{"M", std::move(m)}, {"delta", to_string(h->delta)}}}};
  }
  const auto& nf = std::get<NormalFormAuto>(phi);
  Json d = Json::array();
  for (const auto& x : nf.diagonal) d.push_back(x.to_string());
  Json lambda = nullptr;
  if (nf.lambda) lambda = nf.lambda->is_lattice() ? to_json(nf.lambda->matrix()) : Json(to_string(nf.lambda->factor()));
  return {{"inner", nf.inner ? to_json(*nf.inner) : Json(nullptr)},
          {"lambda", std::move(lambda)},
          {"m", nf.flip},
          {"D", std::move(d)},
          {"delta", to_string(nf.delta)}};
}

Automorphism automorphism_from_json(const RingDescriptor& ring, const Json& j) {
  if (!j.is_object()) throw ParseError("automorphism must be a JSON object");
  if (j.contains("heisenberg")) {
    const Json& h = j.at("heisenberg");
    const Json& m = field(h, "M");
    if (!m.is_array() || m.size() != 2 || !m[0].is_array() || m[0].size() != 2 || !m[1].is_array() || m[1].size() != 2) {
      throw ParseError("Heisenberg \"M\" must be 2x2");
    }
    HeisenbergAuto psi{{{{ring_elem_from_json(ring, m[0][0]), ring_elem_from_json(ring, m[0][1])},
                         {ring_elem_from_json(ring, m[1][0]), ring_elem_from_json(ring, m[1][1])}}},
                       present(h, "delta") ? parse_ring_automorphism(h.at("delta").get<std::string>())
                                           : RingAutomorphism::Identity};
    psi.validate();
    return psi;
  }
  NormalFormAuto phi;
  const Json& d = field(j, "D");
  if (!d.is_array()) throw ParseError("\"D\" must be an array");
  for (const auto& x : d) phi.diagonal.push_back(ring_elem_from_json(ring, x));
  if (present(j, "m")) phi.flip = static_cast<int>(index_value(j.at("m"), "m"));
  if (present(j, "delta")) phi.delta = parse_ring_automorphism(j.at("delta").get<std::string>());
  if (present(j, "inner")) phi.inner = unitriangular_from_json(ring, j.at("inner"));
  if (present(j, "lambda")) {
    const Json& l = j.at("lambda");
    phi.lambda = l.is_array() ? AdditiveMap::lattice(int_matrix_from_json(l)) : AdditiveMap::scalar(parse_rational(scalar_text(l)));
  }
  phi.validate();
  return phi;
}

Json to_json(const ReidemeisterValue& v) {
  Json witness = nullptr;
  if (v.witness) witness = {{"layer", v.witness->layer}, {"vector", to_json(v.witness->vector)}};
  return {{"layers", layers_json(v)}, {"value", v.value.to_string()}, {"witness", std::move(witness)}};
}

Json to_json(const SweepCase& c) {
  Json d = Json::array();
  for (const auto& x : c.phi.diagonal) d.push_back(x.to_string());
  Json out = to_json(c.result);
  out["params"] = {{"m", c.phi.flip}, {"D", std::move(d)}, {"delta", to_string(c.phi.delta)}};
  if (c.prediction) {
    out["prediction"] = {{"j", c.prediction->j},
                         {"i", c.prediction->i},
                         {"layer", c.prediction->layer},
                         {"singular", c.prediction_singular}};
  } else {
    out["prediction"] = nullptr;
  }
  return out;
}

Json to_json(const SweepReport& r) {
  Json cases = Json::array();
  for (const auto& c : r.cases) cases.push_back(to_json(c));
  return {{"ring", r.ring.name()},
          {"n", r.n},
          {"unit_count", std::to_string(r.unit_count)},
          {"threshold_met", r.threshold_met},
          {"case_count", std::to_string(r.cases.size())},
          {"finite_count", std::to_string(r.finite_count())},
          {"all_infinite", r.all_infinite()},
          {"predictions_hold", r.predictions_hold()},
          {"cases", std::move(cases)}};
}

Json to_json(const SpectrumSample& s) {
  Json values = Json::array();
  for (const auto& v : s.finite_values) values.push_back(to_string(v));
  return {{"finite_values", std::move(values)},
          {"has_infinity", s.has_infinity},
          {"automorphisms_tested", std::to_string(s.automorphisms_tested)}};
}

Json to_json(const CentralSubgroupH& h) {
  Json gens = Json::array();
  for (const auto& g : h.generators) gens.push_back(g.to_string());
  return {{"ring", h.ring.name()}, {"generators", std::move(gens)}, {"index", h.index.to_string()}};
}

Json to_json(const Classification& c) {
  Json fixed = nullptr;
  if (c.fixed_vector) {
    fixed = Json::array();
    for (const auto& x : *c.fixed_vector) fixed.push_back(to_string(x));
  }
  return {{"value", c.value.to_string()},
          {"singular_layer", c.singular_layer ? Json(*c.singular_layer) : Json(nullptr)},
          {"fixed_vector", std::move(fixed)}};
}

Json to_json(const FiniteGroupTable& g) {
  return {{"size", g.size()}, {"mul", g.table()}, {"generators", g.generators()}};
}

Json to_json(const PropositionReport& r) {
  Json results = Json::array();
  for (const auto& p : r.results) {
    results.push_back({{"name", p.name},
                       {"holds", p.holds},
                       {"lhs", p.lhs},
                       {"rhs", p.rhs},
                       {"strict", p.strict},
                       {"detail", p.detail}});
  }
  return {{"classes", std::to_string(r.classes)}, {"results", std::move(results)}};
}

}  // namespace twistcalc
