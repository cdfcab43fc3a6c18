#include "twistcalc/cli.hpp"

#include "twistcalc/engine.hpp"
#include "twistcalc/errors.hpp"
#include "twistcalc/field_solver.hpp"
#include "twistcalc/oracle.hpp"
#include "twistcalc/serialize.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <mutex>
#include <sstream>

namespace twistcalc::cli {

namespace {

std::vector<std::string> split(const std::string& text, char sep = ',') {
  std::vector<std::string> out;
  if (text.empty()) return out;
  std::string item;
  std::istringstream in(text);
  while (std::getline(in, item, sep)) out.push_back(item);
  return out;
}

// Inline JSON when it looks like JSON, otherwise a path (an optional leading '@' is stripped).
Json read_json_arg(const std::string& text) {
  const auto first = text.find_first_not_of(" \t\n");
  if (first != std::string::npos && (text[first] == '{' || text[first] == '[')) {
    try {
      return Json::parse(text);
    } catch (const Json::parse_error& e) {
      throw ParseError(std::string("malformed JSON argument: ") + e.what());
    }
  }
  const std::string path = !text.empty() && text[0] == '@' ? text.substr(1) : text;
  std::ifstream in(path);
  if (!in) throw ParseError("cannot read JSON file " + path);
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw ParseError("malformed JSON in " + path + ": " + e.what());
  }
}

std::vector<RingElem> parse_elems(const RingDescriptor& ring, const std::string& text) {
  std::vector<RingElem> out;
  for (const auto& s : split(text)) out.push_back(RingElem::parse(ring, s));
  return out;
}

struct Output {
  std::ostream& out;
  std::ostream& err;
  bool json = false;
  std::string expect;

  // Prints the report and checks --expect against `actual`.
  int finish(const Json& machine, const std::string& human, const std::string& actual) const {
    if (json) {
      out << machine.dump(2) << '\n';
    } else {
      out << human;
    }
    if (!expect.empty() && expect != actual) {
      err << "expectation failed: expected " << expect << ", got " << actual << '\n';
      return kExpectFailed;
    }
    return kOk;
  }
};

struct AutoFlags {
  std::string ring = "Z";
  std::size_t n = 0;
  std::string diag;
  int m = 0;
  std::string delta = "id";
  std::string lambda;
  std::string inner;
  std::string heisenberg;
  std::string automorphism;

  void attach(CLI::App* app, bool heisenberg_allowed = true) {
    app->add_option("--ring", ring, "Z, Q, Z[sqrt,d] or Z[isqrt,p]")->capture_default_str();
    app->add_option("--n", n, "Matrix size (defaults to the length of --diag)");
    app->add_option("--diag", diag, "Comma-separated diagonal units d_1,...,d_n");
    app->add_option("--m", m, "Flip exponent")->check(CLI::IsMember({0, 1}));
    app->add_option("--delta", delta, "Ring automorphism: id or conj")->capture_default_str();
    app->add_option("--lambda", lambda, "Central map: scalar, or integer matrix as JSON");
    app->add_option("--inner", inner, "Inner part as matrix JSON (inline or file)");
    if (heisenberg_allowed) app->add_option("--heisenberg", heisenberg, "UT_3 automorphism from M = a,b,c,d (row-major)");
    app->add_option("--auto", automorphism, "Automorphism JSON (inline or file)");
  }

  RingDescriptor descriptor() const { return RingDescriptor::parse(ring); }

  Automorphism build() const {
    const RingDescriptor r = descriptor();
    if (!automorphism.empty()) {
      Automorphism phi = automorphism_from_json(r, read_json_arg(automorphism));
      if (n != 0 && dimension_of(phi) != n) throw InvalidArgument("--n disagrees with --auto");
      return phi;
    }
    const RingAutomorphism d = parse_ring_automorphism(delta);
    if (!heisenberg.empty()) {
      auto e = parse_elems(r, heisenberg);
      if (e.size() != 4) throw InvalidArgument("--heisenberg needs four entries a,b,c,d");
      if (n != 0 && n != 3) throw InvalidArgument("Heisenberg automorphisms need n = 3");
      HeisenbergAuto psi{{{{e[0], e[1]}, {e[2], e[3]}}}, d};
      psi.validate();
      return psi;
    }
    return normal_form(r, d);
  }

  NormalFormAuto build_normal_form() const {
    Automorphism phi = build();
    if (!std::holds_alternative<NormalFormAuto>(phi)) throw InvalidArgument("this command needs a normal-form automorphism");
    return std::get<NormalFormAuto>(std::move(phi));
  }

 private:
  NormalFormAuto normal_form(const RingDescriptor& r, RingAutomorphism d) const {
    std::vector<RingElem> diagonal = parse_elems(r, diag);
    if (diagonal.empty()) {
      if (n == 0) throw InvalidArgument("give --n or --diag");
      diagonal.assign(n, RingElem::one(r));
    }
    if (n != 0 && diagonal.size() != n) {
      throw InvalidArgument("--diag has " + std::to_string(diagonal.size()) + " entries but --n is " + std::to_string(n));
    }
    NormalFormAuto phi = NormalFormAuto::monomial(std::move(diagonal), m, d);
    if (!lambda.empty()) {
      if (lambda.find('[') != std::string::npos) {
        phi.lambda = AdditiveMap::lattice(int_matrix_from_json(read_json_arg(lambda)));
      } else {
        phi.lambda = AdditiveMap::scalar(parse_rational(lambda));
      }
    }
    if (!inner.empty()) phi.inner = unitriangular_from_json(r, read_json_arg(inner));
    phi.validate();
    return phi;
  }
};

std::size_t env_cap(std::size_t fallback) {
  if (const char* env = std::getenv("TWISTCALC_CAP")) {
    char* end = nullptr;
    unsigned long long v = std::strtoull(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<std::size_t>(v);
  }
  return fallback;
}

std::string join(const std::vector<std::string>& parts, const std::string& sep = ", ") {
  std::string s;
  for (std::size_t i = 0; i < parts.size(); ++i) s += (i ? sep : "") + parts[i];
  return s;
}

std::string describe(const ReidemeisterValue& v) {
  std::ostringstream h;
  h << "R(phi) = " << v.value.to_string() << '\n';
  std::vector<std::string> layers;
  for (const auto& c : v.layers) layers.push_back(c.to_string());
  h << "layers (k = 0..): " << join(layers) << '\n';
  if (v.witness) {
    std::vector<std::string> coords;
    for (const auto& x : v.witness->vector) coords.push_back(to_string(x));
    h << "witness: layer " << v.witness->layer << " fixes (" << join(coords) << ")\n";
  }
  return h.str();
}

// ---- reid ----

struct ReidCmd {
  AutoFlags a;

  int operator()(const Output& o) const {
    Automorphism phi = a.build();
    if (ring_of(phi).is_field()) {
      if (!std::holds_alternative<NormalFormAuto>(phi)) throw InvalidArgument("over Q only normal-form automorphisms are supported");
      Classification c = classify(std::get<NormalFormAuto>(phi));
      std::ostringstream h;
      h << "R(phi) = " << c.value.to_string() << '\n';
      if (c.singular_layer) h << "singular layer: " << *c.singular_layer << '\n';
      Json j = to_json(c);
      j["automorphism"] = to_json(phi);
      return o.finish(j, h.str(), c.value.to_string());
    }
    ReidemeisterValue v = reidemeister_number(phi);
    Json j = to_json(v);
    j["automorphism"] = to_json(phi);
    return o.finish(j, describe(v), v.value.to_string());
  }
};

// ---- sweep ----

struct SweepCmd {
  std::string ring = "Z";
  std::size_t n = 0;
  std::string units;
  std::string flips = "0,1";
  std::string deltas;
  unsigned jobs = 1;
  std::size_t max_cases = 0;
  bool all_d = false;
  bool cases = false;
  bool quiet = false;

  int operator()(const Output& o) const {
    const RingDescriptor r = RingDescriptor::parse(ring);
    SweepOptions opt;
    if (!units.empty()) opt.units = parse_elems(r, units);
    opt.flips.clear();
    for (const auto& f : split(flips)) opt.flips.push_back(static_cast<int>(parse_integer(f).get_si()));
    if (!deltas.empty()) {
      opt.deltas.emplace();
      for (const auto& d : split(deltas)) opt.deltas->push_back(parse_ring_automorphism(d));
    }
    opt.normalize_first = !all_d;
    opt.jobs = jobs;
    opt.max_cases = max_cases ? max_cases : env_cap(opt.max_cases);
    std::mutex mu;
    std::size_t last_percent = 0;
    if (!quiet) {
      opt.progress = [&](std::size_t done, std::size_t total) {
        if (total < 1000) return;
        std::size_t percent = done * 100 / total;
        std::lock_guard<std::mutex> lock(mu);
        if (percent > last_percent || done == total) {
          last_percent = percent;
          o.err << "\rsweep: " << done << "/" << total << " (" << percent << "%)" << (done == total ? "\n" : "") << std::flush;
        }
      };
    }
    SweepReport report = r_infinity_sweep(r, n, opt);

    Json j = to_json(report);
    if (!cases) j.erase("cases");
    std::ostringstream h;
    h << "ring " << r.name() << ", n = " << n << ", |R*| = " << (report.unit_count ? std::to_string(report.unit_count) : "inf")
      << ", n > 2|R*|: " << (report.threshold_met ? "yes" : "no") << '\n';
    h << "cases: " << report.cases.size() << ", finite: " << report.finite_count()
      << ", all infinite: " << (report.all_infinite() ? "yes" : "no")
      << ", predictions hold: " << (report.predictions_hold() ? "yes" : "no") << '\n';
    if (cases) {
      for (const auto& c : report.cases) {
        std::vector<std::string> d;
        for (const auto& x : c.phi.diagonal) d.push_back(x.to_string());
        h << "m=" << c.phi.flip << " delta=" << to_string(c.phi.delta) << " D=(" << join(d, ",") << ") R=" << c.result.value.to_string();
        if (c.prediction) h << " predicted layer " << c.prediction->layer << (c.prediction_singular ? " (singular)" : " (NOT singular)");
        h << '\n';
      }
    }
    std::string actual = report.all_infinite() ? "all-inf" : "some-finite";
    if (o.expect == "predictions") actual = report.predictions_hold() ? "predictions" : "predictions-fail";
    return o.finish(j, h.str(), actual);
  }
};

// ---- spectrum ----

struct SpectrumCmd {
  std::string ring = "Z";
  std::size_t n = 0;
  std::string units;
  long heisenberg_bound = -1;
  bool no_normal_forms = false;

  int operator()(const Output& o) const {
    const RingDescriptor r = RingDescriptor::parse(ring);
    SpectrumOptions opt;
    if (!units.empty()) opt.units = parse_elems(r, units);
    opt.include_normal_forms = !no_normal_forms;
    if (heisenberg_bound >= 0) opt.heisenberg_bound = heisenberg_bound;
    SpectrumSample s = spectrum_sample(r, n, opt);
    std::vector<std::string> values;
    for (const auto& v : s.finite_values) values.push_back(to_string(v));
    if (s.has_infinity) values.push_back("inf");
    const std::string set = "{" + join(values) + "}";
    std::ostringstream h;
    h << "spectrum sample over " << r.name() << ", n = " << n << ": " << set << '\n';
    h << "automorphisms tested: " << s.automorphisms_tested << '\n';
    return o.finish(to_json(s), h.str(), set);
  }
};

// ---- oracle ----

struct OracleCmd {
  std::string group;
  std::size_t cyclic = 0;
  std::string ut;
  AutoFlags ut_auto;
  std::string automorphism;
  std::string checks;
  std::string subgroup;
  std::string factors;
  std::size_t samples = 50;
  std::uint64_t seed = 1;

  int operator()(const Output& o) const {
    std::optional<FiniteGroupTable> g;
    std::optional<FiniteAutomorphism> phi;
    Json group_json;
    if (!group.empty()) {
      group_json = read_json_arg(group);
      g = FiniteGroupTable::from_json(group_json);
    } else if (cyclic) {
      g = FiniteGroupTable::cyclic(cyclic);
    } else if (!ut.empty()) {
      auto parts = split(ut);
      if (parts.size() != 2) throw InvalidArgument("--ut needs n,modulus");
      const std::size_t n = parse_integer(parts[0]).get_ui();
      const std::size_t mod = parse_integer(parts[1]).get_ui();
      AutoFlags f = ut_auto;
      f.ring = "Z";
      f.n = n;
      NormalFormAuto nf = NormalFormAuto::identity(RingDescriptor::integers(), n);
      if (!f.diag.empty() || f.m != 0 || !f.lambda.empty() || !f.inner.empty()) {
        // Diagonal entries need only be invertible mod m, so build without unit validation.
        nf.diagonal = f.diag.empty() ? nf.diagonal : parse_elems(RingDescriptor::integers(), f.diag);
        nf.flip = f.m;
        if (!f.lambda.empty()) nf.lambda = AdditiveMap::scalar(parse_rational(f.lambda));
        if (!f.inner.empty()) nf.inner = unitriangular_from_json(RingDescriptor::integers(), read_json_arg(f.inner));
      }
      auto built = ut_mod(n, mod, nf);
      g = std::move(built.first);
      phi = std::move(built.second);
    } else {
      throw InvalidArgument("give --group, --cyclic or --ut");
    }

    if (automorphism == "inverse") {
      phi = inversion_map(*g);
    } else if (automorphism == "id" || (automorphism.empty() && !phi)) {
      phi = FiniteAutomorphism::identity(*g);
    } else if (!automorphism.empty()) {
      Json img = read_json_arg(automorphism);
      std::vector<Elem> image;
      for (const auto& x : img) image.push_back(x.is_string() ? static_cast<Elem>(parse_integer(x.get<std::string>()).get_ui()) : x.get<Elem>());
      phi = FiniteAutomorphism(*g, std::move(image));
    }

    PropositionOptions opt;
    opt.inner_samples = samples;
    opt.seed = seed;
    for (const auto& c : split(checks)) {
      if (c == "inn") {
        opt.inn = true;
      } else if (c == "ind") {
        opt.ind = true;
      } else if (c == "nilin") {
        opt.nilin = true;
      } else if (c == "zf") {
        Json h = !subgroup.empty() ? read_json_arg(subgroup) : group_json.value("subgroup", Json());
        if (!h.is_array()) throw InvalidArgument("zf needs a central subgroup (--subgroup or a \"subgroup\" field)");
        opt.central = h.get<std::vector<Elem>>();
      } else if (c == "prod") {
        Json f = !factors.empty() ? read_json_arg(factors) : group_json.value("factors", Json());
        if (!f.is_array() || f.size() != 2) throw InvalidArgument("prod needs two factors (--factors or a \"factors\" field)");
        opt.product = std::make_pair(f[0].get<std::vector<Elem>>(), f[1].get<std::vector<Elem>>());
      } else {
        throw InvalidArgument("unknown check " + c + " (inn, prod, zf, ind, nilin)");
      }
    }
    PropositionReport rep = check_propositions(*g, *phi, opt);
    std::ostringstream h;
    h << "|G| = " << g->size() << ", R(phi) = " << rep.classes << '\n';
    for (const auto& r : rep.results) {
      h << r.name << ": " << (r.holds ? "holds" : "FAILS") << " (" << r.lhs << " vs " << r.rhs << (r.strict ? ", strict" : "") << ")";
      if (!r.detail.empty()) h << " " << r.detail;
      h << '\n';
    }
    Json j = to_json(rep);
    j["size"] = std::to_string(g->size());
    std::string actual = std::to_string(rep.classes);
    if (o.expect == "holds") actual = rep.all_hold() ? "holds" : "fails";
    return o.finish(j, h.str(), actual);
  }
};

// ---- solve ----

struct SolveCmd {
  AutoFlags a;
  std::string target;
  bool center = false;

  int operator()(const Output& o) const {
    NormalFormAuto phi = a.build_normal_form();
    Classification c = classify(phi);
    Json j = {{"classification", to_json(c)}};
    std::ostringstream h;
    h << "R(phi) = " << c.value.to_string() << '\n';
    std::string actual = c.value.to_string();
    if (!target.empty()) {
      UniTriMatrix x = unitriangular_from_json(phi.desc(), read_json_arg(target));
      if (center) {
        try {
          CenterReduction red = conjugate_into_center(phi, x);
          j["central"] = to_json(red.central);
          j["W"] = to_json(red.witness);
          j["verified"] = true;
          h << "central: " << to_json(red.central).dump() << "\nW: " << to_json(red.witness).dump() << "\nverified\n";
          actual = "verified";
        } catch (const SingularLayer& e) {
          j["central"] = nullptr;
          j["verified"] = false;
          h << "no reduction: " << e.what() << '\n';
        }
      } else if (c.value.is_finite()) {
        UniTriMatrix z = solve_twisted(phi, x);
        j["Z"] = to_json(z);
        j["verified"] = true;
        h << "Z: " << to_json(z).dump() << "\nverified\n";
        actual = "verified";
      } else {
        j["Z"] = nullptr;
        j["verified"] = false;
        h << "no solution attempted: layer " << *c.singular_layer << " is singular\n";
      }
    } else if (c.singular_layer) {
      h << "singular layer: " << *c.singular_layer << '\n';
    }
    return o.finish(j, h.str(), actual);
  }
};

// ---- hsub ----

struct HsubCmd {
  AutoFlags a;
  std::string elem_a;
  std::string elem_b;

  int operator()(const Output& o) const {
    NormalFormAuto phi = a.build_normal_form();
    CentralSubgroupH hs = central_subgroup_H(phi);
    Json j = to_json(hs);
    std::ostringstream h;
    std::vector<std::string> gens;
    for (const auto& g : hs.generators) gens.push_back(g.to_string());
    h << "H = <" << join(gens) << ">, index " << hs.index.to_string() << '\n';
    std::string actual = hs.index.to_string();
    if (!elem_a.empty() || !elem_b.empty()) {
      const RingDescriptor& r = phi.desc();
      RingElem x = RingElem::parse(r, elem_a.empty() ? "0" : elem_a);
      RingElem y = RingElem::parse(r, elem_b.empty() ? "0" : elem_b);
      auto w = central_conjugator(phi, x, y);
      if (w) {
        j["conjugator"] = {{"T", to_json(w->T)}, {"Y", to_json(w->Y)}, {"verified", true}};
        h << "conjugate: T = " << to_json(w->T).dump() << ", Y = " << to_json(w->Y).dump() << '\n';
        actual = "conjugate";
      } else {
        j["conjugator"] = nullptr;
        h << "not conjugate\n";
        actual = "not-conjugate";
      }
    }
    return o.finish(j, h.str(), actual);
  }
};

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Reidemeister numbers of unitriangular groups", "twistcalc"};
  app.require_subcommand(1);
  Output o{out, err, false, {}};
  auto common = [&](CLI::App* sub) {
    sub->add_flag("--json", o.json, "Machine-readable output");
    sub->add_option("--expect", o.expect, "Exit 2 unless the result equals this");
  };

  ReidCmd reid;
  auto* reid_app = app.add_subcommand("reid", "One Reidemeister number with its layer breakdown");
  reid.a.attach(reid_app);
  common(reid_app);

  SweepCmd sweep;
  auto* sweep_app = app.add_subcommand("sweep", "Evaluate every normalized monomial automorphism");
  sweep_app->add_option("--ring", sweep.ring)->capture_default_str();
  sweep_app->add_option("--n", sweep.n)->required();
  sweep_app->add_option("--units", sweep.units, "Units to draw diagonals from (required for infinite R*)");
  sweep_app->add_option("--flips", sweep.flips)->capture_default_str();
  sweep_app->add_option("--deltas", sweep.deltas, "Comma-separated ring automorphisms (default: all)");
  sweep_app->add_option("--jobs", sweep.jobs)->capture_default_str();
  sweep_app->add_option("--max-cases", sweep.max_cases);
  sweep_app->add_flag("--all-d", sweep.all_d, "Do not fix d_1 = 1");
  sweep_app->add_flag("--cases", sweep.cases, "List every case");
  sweep_app->add_flag("--quiet", sweep.quiet, "No progress on stderr");
  common(sweep_app);

  SpectrumCmd spectrum;
  auto* spectrum_app = app.add_subcommand("spectrum", "Sample the Reidemeister spectrum");
  spectrum_app->add_option("--ring", spectrum.ring)->capture_default_str();
  spectrum_app->add_option("--n", spectrum.n)->required();
  spectrum_app->add_option("--units", spectrum.units);
  spectrum_app->add_option("--heisenberg-bound", spectrum.heisenberg_bound, "n = 3: add Heisenberg automorphisms with entries in [-B, B]");
  spectrum_app->add_flag("--no-normal-forms", spectrum.no_normal_forms);
  common(spectrum_app);

  OracleCmd oracle;
  auto* oracle_app = app.add_subcommand("oracle", "Brute-force twisted classes in a finite group");
  oracle_app->add_option("--group", oracle.group, "Group table JSON {\"size\", \"mul\", \"generators\"}");
  oracle_app->add_option("--cyclic", oracle.cyclic, "Cyclic group of this order");
  oracle_app->add_option("--ut", oracle.ut, "UT_n(Z/m) as n,m; the automorphism comes from --diag/--m/--lambda/--inner");
  oracle_app->add_option("--diag", oracle.ut_auto.diag);
  oracle_app->add_option("--m", oracle.ut_auto.m)->check(CLI::IsMember({0, 1}));
  oracle_app->add_option("--lambda", oracle.ut_auto.lambda);
  oracle_app->add_option("--inner", oracle.ut_auto.inner);
  oracle_app->add_option("--auto", oracle.automorphism, "id, inverse, or an image permutation as JSON (default: id, or the --ut map)");
  oracle_app->add_option("--check", oracle.checks, "Comma-separated: inn, prod, zf, ind, nilin");
  oracle_app->add_option("--subgroup", oracle.subgroup, "Central subgroup for zf, JSON element list");
  oracle_app->add_option("--factors", oracle.factors, "Direct factors for prod, JSON [[...], [...]]");
  oracle_app->add_option("--samples", oracle.samples)->capture_default_str();
  oracle_app->add_option("--seed", oracle.seed)->capture_default_str();
  common(oracle_app);

  SolveCmd solve_cmd;
  auto* solve_app = app.add_subcommand("solve", "Twisted conjugacy over Q");
  solve_cmd.a.attach(solve_app, false);
  solve_app->add_option("--target", solve_cmd.target, "Matrix JSON X; prints Z with X = Z phi(Z)^-1");
  solve_app->add_flag("--center", solve_cmd.center, "Only conjugate X into the center");
  common(solve_app);

  HsubCmd hsub;
  auto* hsub_app = app.add_subcommand("hsub", "Central subgroup H and central conjugators");
  hsub.a.attach(hsub_app, false);
  hsub_app->add_option("--a", hsub.elem_a, "Central element a of T_{1,n}(a)");
  hsub_app->add_option("--b", hsub.elem_b, "Central element b of T_{1,n}(b)");
  common(hsub_app);

  std::vector<const char*> argv{"twistcalc"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << '\n';
    return kUsage;
  }

  try {
    if (reid_app->parsed()) return reid(o);
    if (sweep_app->parsed()) return sweep(o);
    if (spectrum_app->parsed()) return spectrum(o);
    if (oracle_app->parsed()) return oracle(o);
    if (solve_app->parsed()) return solve_cmd(o);
    if (hsub_app->parsed()) return hsub(o);
  } catch (const ResourceCapExceeded& e) {
    err << "resource cap exceeded: " << e.what() << '\n';
    return kCapExceeded;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const Json::exception& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}

}  // namespace twistcalc::cli
