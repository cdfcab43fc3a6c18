#include "twistcalc/oracle.hpp"

#include "twistcalc/errors.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cstdlib>
#include <numeric>
#include <random>
#include <set>

namespace twistcalc {

namespace {

constexpr std::size_t kDefaultCap = 6561;

void check_cap(std::size_t size, const std::string& what) {
  const std::size_t cap = oracle_size_cap();
  if (size > cap) {
    throw ResourceCapExceeded(what + " has " + std::to_string(size) + " elements, above the oracle cap of " +
                              std::to_string(cap) + " (set TWISTCALC_CAP to raise it)");
  }
}

class UnionFind {
 public:
  explicit UnionFind(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), std::size_t{0}); }

  std::size_t find(std::size_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }

  // The smaller root wins, so every root is the minimum of its class.
  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (b < a) std::swap(a, b);
    parent_[b] = a;
  }

 private:
  std::vector<std::size_t> parent_;
};

bool sorted_contains(const std::vector<Elem>& v, Elem x) { return std::binary_search(v.begin(), v.end(), x); }

std::vector<Elem> sorted_unique(std::vector<Elem> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

Elem json_elem(const nlohmann::json& j) {
  if (j.is_number_unsigned()) return j.get<Elem>();
  if (j.is_number_integer()) {
    auto v = j.get<long long>();
    if (v < 0) throw ParseError("group element index must be non-negative");
    return static_cast<Elem>(v);
  }
  if (j.is_string()) {
    Int v = parse_integer(j.get<std::string>());
    if (v < 0 || !v.fits_ulong_p()) throw ParseError("group element index out of range");
    return static_cast<Elem>(v.get_ui());
  }
  throw ParseError("group element index must be an integer or decimal string");
}

std::size_t checked_power(std::size_t base, std::size_t exp, const std::string& what) {
  const std::size_t cap = oracle_size_cap();
  std::size_t size = 1;
  for (std::size_t i = 0; i < exp; ++i) {
    if (size > cap / base) check_cap(cap + 1, what);
    size *= base;
  }
  check_cap(size, what);
  return size;
}

long long mod_norm(long long x, long long m) {
  x %= m;
  return x < 0 ? x + m : x;
}

long long mod_inverse(long long a, long long m) {
  long long g = m, x = 0, x1 = 1, r = mod_norm(a, m);
  while (r != 0) {
    long long q = g / r;
    std::tie(g, r) = std::make_pair(r, g - q * r);
    std::tie(x, x1) = std::make_pair(x1, x - q * x1);
  }
  if (g != 1) return -1;
  return mod_norm(x, m);
}

long long integer_entry(const RingElem& x, const std::string& what) {
  if (!is_integral(x.a()) || !x.a().get_num().fits_slong_p()) throw InvalidArgument(what + " must be a machine-size integer");
  return x.a().get_num().get_si();
}

// Strict-upper matrices over Z/m, row-major entries.
class ModUT {
 public:
  ModUT(std::size_t n, long long m) : n_(n), m_(m) {
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) pos_.push_back({i, j});
  }

  using Entries = std::vector<long long>;

  std::size_t count() const { return pos_.size(); }
  std::size_t idx(std::size_t i, std::size_t j) const { return i * n_ - i * (i + 1) / 2 + (j - i - 1); }

  Entries decode(std::size_t code) const {
    Entries e(count());
    for (std::size_t p = count(); p-- > 0;) {
      e[p] = static_cast<long long>(code % static_cast<std::size_t>(m_));
      code /= static_cast<std::size_t>(m_);
    }
    return e;
  }

  std::size_t encode(const Entries& e) const {
    std::size_t code = 0;
    for (long long v : e) code = code * static_cast<std::size_t>(m_) + static_cast<std::size_t>(mod_norm(v, m_));
    return code;
  }

  Entries mul(const Entries& x, const Entries& y) const {
    Entries z(count());
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = i + 1; j < n_; ++j) {
        long long acc = x[idx(i, j)] + y[idx(i, j)];
        for (std::size_t l = i + 1; l < j; ++l) acc += x[idx(i, l)] * y[idx(l, j)] % m_;
        z[idx(i, j)] = mod_norm(acc, m_);
      }
    return z;
  }

  Entries inverse(const Entries& x) const {
    Entries y(count());
    for (std::size_t j = 1; j < n_; ++j)
      for (std::size_t i = j; i-- > 0;) {
        long long acc = x[idx(i, j)];
        for (std::size_t l = i + 1; l < j; ++l) acc += x[idx(i, l)] * y[idx(l, j)] % m_;
        y[idx(i, j)] = mod_norm(-acc, m_);
      }
    return y;
  }

  Entries antitranspose(const Entries& x) const {
    Entries y(count());
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = i + 1; j < n_; ++j) y[idx(n_ - 1 - j, n_ - 1 - i)] = x[idx(i, j)];
    return y;
  }

 private:
  std::size_t n_;
  long long m_;
  std::vector<std::pair<std::size_t, std::size_t>> pos_;
};

}  // namespace

std::size_t oracle_size_cap() {
  if (const char* env = std::getenv("TWISTCALC_CAP")) {
    char* end = nullptr;
    unsigned long long v = std::strtoull(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<std::size_t>(v);
  }
  return kDefaultCap;
}

FiniteGroupTable FiniteGroupTable::from_multiplication(std::vector<std::vector<Elem>> mul, std::vector<Elem> generators) {
  const std::size_t s = mul.size();
  if (s == 0) throw InvalidArgument("group table is empty");
  check_cap(s, "group table");
  for (const auto& row : mul) {
    if (row.size() != s) throw InvalidArgument("group table must be square");
    std::vector<char> seen(s, 0);
    for (Elem x : row) {
      if (x >= s) throw InvalidArgument("group table entry out of range");
      if (seen[x]) throw InvalidArgument("group table row repeats an element");
      seen[x] = 1;
    }
  }
  FiniteGroupTable g;
  g.mul_ = std::move(mul);

  bool found = false;
  for (Elem e = 0; e < s && !found; ++e) {
    bool ok = true;
    for (Elem x = 0; x < s && ok; ++x) ok = g.mul_[e][x] == x && g.mul_[x][e] == x;
    if (ok) {
      g.identity_ = e;
      found = true;
    }
  }
  if (!found) throw InvalidArgument("group table has no identity");

  g.inv_.assign(s, 0);
  for (Elem x = 0; x < s; ++x) {
    std::optional<Elem> inv;
    for (Elem y = 0; y < s; ++y)
      if (g.mul_[x][y] == g.identity_) {
        if (inv) throw InvalidArgument("group table has a repeated entry");
        inv = y;
      }
    if (!inv || g.mul_[*inv][x] != g.identity_) throw InvalidArgument("element " + std::to_string(x) + " has no inverse");
    g.inv_[x] = *inv;
  }

  auto assoc = [&](Elem a, Elem b, Elem c) {
    if (g.mul_[g.mul_[a][b]][c] != g.mul_[a][g.mul_[b][c]]) {
      throw InvalidArgument("group table is not associative at (" + std::to_string(a) + "," + std::to_string(b) + "," +
                            std::to_string(c) + ")");
    }
  };
  if (s <= 64) {
    for (Elem a = 0; a < s; ++a)
      for (Elem b = 0; b < s; ++b)
        for (Elem c = 0; c < s; ++c) assoc(a, b, c);
  } else {
    std::mt19937_64 rng(0x5eed);
    std::uniform_int_distribution<Elem> pick(0, static_cast<Elem>(s - 1));
    for (int t = 0; t < 20000; ++t) assoc(pick(rng), pick(rng), pick(rng));
  }

  if (!generators.empty()) {
    for (Elem x : generators)
      if (x >= s) throw InvalidArgument("generator out of range");
    if (g.closure(generators).size() != s) throw InvalidArgument("declared generators do not generate the group");
    g.generators_ = std::move(generators);
  } else {
    std::vector<char> reached(s, 0);
    reached[g.identity_] = 1;
    for (Elem x = 0; x < s; ++x) {
      if (reached[x]) continue;
      g.generators_.push_back(x);
      for (Elem y : g.closure(g.generators_)) reached[y] = 1;
    }
  }
  return g;
}

FiniteGroupTable FiniteGroupTable::from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("mul")) throw ParseError("group JSON needs a \"mul\" table");
  const auto& rows = j.at("mul");
  if (!rows.is_array()) throw ParseError("\"mul\" must be an array of rows");
  if (j.contains("size") && json_elem(j.at("size")) != rows.size()) throw ParseError("\"size\" disagrees with \"mul\"");
  check_cap(rows.size(), "group table");
  std::vector<std::vector<Elem>> mul;
  for (const auto& row : rows) {
    if (!row.is_array()) throw ParseError("\"mul\" rows must be arrays");
    std::vector<Elem> r;
    for (const auto& x : row) r.push_back(json_elem(x));
    mul.push_back(std::move(r));
  }
  std::vector<Elem> gens;
  if (j.contains("generators"))
    for (const auto& x : j.at("generators")) gens.push_back(json_elem(x));
  return from_multiplication(std::move(mul), std::move(gens));
}

FiniteGroupTable FiniteGroupTable::cyclic(std::size_t m) { return abelian({m}); }

FiniteGroupTable FiniteGroupTable::abelian(const std::vector<std::size_t>& moduli) {
  std::size_t s = 1;
  for (std::size_t m : moduli) {
    if (m == 0) throw InvalidArgument("cyclic factor order must be positive");
    if (s > oracle_size_cap() / m) check_cap(oracle_size_cap() + 1, "abelian group");
    s *= m;
  }
  check_cap(s, "abelian group");
  auto digits = [&](std::size_t x) {
    std::vector<std::size_t> d(moduli.size());
    for (std::size_t p = moduli.size(); p-- > 0;) {
      d[p] = x % moduli[p];
      x /= moduli[p];
    }
    return d;
  };
  std::vector<std::vector<Elem>> mul(s, std::vector<Elem>(s));
  for (std::size_t a = 0; a < s; ++a) {
    auto da = digits(a);
    for (std::size_t b = 0; b < s; ++b) {
      auto db = digits(b);
      std::size_t c = 0;
      for (std::size_t p = 0; p < moduli.size(); ++p) c = c * moduli[p] + (da[p] + db[p]) % moduli[p];
      mul[a][b] = static_cast<Elem>(c);
    }
  }
  std::vector<Elem> gens;
  std::size_t weight = s;
  for (std::size_t m : moduli) {
    weight /= m;
    if (m > 1) gens.push_back(static_cast<Elem>(weight));
  }
  return from_multiplication(std::move(mul), std::move(gens));
}

bool FiniteGroupTable::is_abelian() const {
  for (Elem a = 0; a < size(); ++a)
    for (Elem b = a + 1; b < size(); ++b)
      if (mul_[a][b] != mul_[b][a]) return false;
  return true;
}

std::vector<Elem> FiniteGroupTable::closure(const std::vector<Elem>& elems) const {
  std::vector<char> seen(size(), 0);
  std::vector<Elem> out{identity_}, frontier{identity_};
  seen[identity_] = 1;
  while (!frontier.empty()) {
    Elem x = frontier.back();
    frontier.pop_back();
    for (Elem g : elems) {
      Elem y = mul_[x][g];
      if (!seen[y]) {
        seen[y] = 1;
        out.push_back(y);
        frontier.push_back(y);
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

bool FiniteGroupTable::is_normal(const std::vector<Elem>& subgroup) const {
  for (Elem g = 0; g < size(); ++g)
    for (Elem h : subgroup)
      if (!sorted_contains(subgroup, mul_[mul_[g][h]][inv_[g]])) return false;
  return true;
}

FiniteAutomorphism::FiniteAutomorphism(const FiniteGroupTable& g, std::vector<Elem> image) : image_(std::move(image)) {
  const std::size_t s = g.size();
  if (image_.size() != s) throw InvalidArgument("automorphism size differs from group size");
  std::vector<char> hit(s, 0);
  for (Elem x : image_) {
    if (x >= s || hit[x]) throw InvalidArgument("automorphism is not a bijection");
    hit[x] = 1;
  }
  auto check = [&](Elem a, Elem b) {
    if (image_[g.mul(a, b)] != g.mul(image_[a], image_[b])) {
      throw InvalidArgument("map is not multiplicative at (" + std::to_string(a) + "," + std::to_string(b) + ")");
    }
  };
  if (s <= 1000) {
    for (Elem a = 0; a < s; ++a)
      for (Elem b = 0; b < s; ++b) check(a, b);
  } else {
    std::mt19937_64 rng(0xa5a5);
    std::uniform_int_distribution<Elem> pick(0, static_cast<Elem>(s - 1));
    for (int t = 0; t < 100000; ++t) check(pick(rng), pick(rng));
  }
}

FiniteAutomorphism FiniteAutomorphism::identity(const FiniteGroupTable& g) {
  std::vector<Elem> img(g.size());
  std::iota(img.begin(), img.end(), Elem{0});
  return FiniteAutomorphism(std::move(img), Unchecked{});
}

FiniteAutomorphism compose(const FiniteAutomorphism& outer, const FiniteAutomorphism& inner) {
  if (outer.size() != inner.size()) throw InvalidArgument("composing automorphisms of different groups");
  std::vector<Elem> img(inner.size());
  for (std::size_t x = 0; x < img.size(); ++x) img[x] = outer(inner(static_cast<Elem>(x)));
  return FiniteAutomorphism(std::move(img), FiniteAutomorphism::Unchecked{});
}

FiniteAutomorphism inner_automorphism(const FiniteGroupTable& g, Elem conj) {
  if (conj >= g.size()) throw InvalidArgument("conjugating element out of range");
  std::vector<Elem> img(g.size());
  for (Elem x = 0; x < g.size(); ++x) img[x] = g.mul(g.mul(conj, x), g.inv(conj));
  return FiniteAutomorphism(std::move(img), FiniteAutomorphism::Unchecked{});
}

FiniteAutomorphism inversion_map(const FiniteGroupTable& g) {
  if (!g.is_abelian()) throw InvalidArgument("inversion is an automorphism only of abelian groups");
  std::vector<Elem> img(g.size());
  for (Elem x = 0; x < g.size(); ++x) img[x] = g.inv(x);
  return FiniteAutomorphism(std::move(img), FiniteAutomorphism::Unchecked{});
}

TwistedClasses twisted_classes(const FiniteGroupTable& g, const FiniteAutomorphism& phi, ClassMode mode) {
  if (phi.size() != g.size()) throw InvalidArgument("automorphism size differs from group size");
  const std::size_t s = g.size();
  std::vector<Elem> movers;
  if (mode == ClassMode::Generators) {
    movers = g.generators();
  } else {
    movers.resize(s);
    std::iota(movers.begin(), movers.end(), Elem{0});
  }
  UnionFind uf(s);
  for (Elem z : movers) {
    const Elem right = g.inv(phi(z));
    for (Elem x = 0; x < s; ++x) uf.unite(x, g.mul(g.mul(z, x), right));
  }
  TwistedClasses out;
  out.class_of.assign(s, 0);
  std::vector<std::size_t> slot(s, s);
  for (Elem x = 0; x < s; ++x) {
    std::size_t root = uf.find(x);
    if (slot[root] == s) {
      slot[root] = out.representatives.size();
      out.representatives.push_back(static_cast<Elem>(root));
    }
    out.class_of[x] = slot[root];
  }
  out.count = out.representatives.size();
  return out;
}

Section section(const FiniteGroupTable& g, const std::vector<Elem>& s_in, const std::vector<Elem>& n_in) {
  const auto s = sorted_unique(s_in);
  const auto n = sorted_unique(n_in);
  if (g.closure(s) != s) throw InvalidArgument("declared subgroup is not closed");
  if (g.closure(n) != n) throw InvalidArgument("declared normal subgroup is not closed");
  for (Elem x : n)
    if (!sorted_contains(s, x)) throw InvalidArgument("normal subgroup is not contained in the subgroup");
  for (Elem x : s)
    for (Elem y : n)
      if (!sorted_contains(n, g.mul(g.mul(x, y), g.inv(x)))) throw InvalidArgument("declared subgroup is not normal");

  std::vector<Elem> reps;
  std::vector<std::optional<Elem>> index_of(g.size());
  for (Elem x : s) {
    if (index_of[x]) continue;
    const Elem idx = static_cast<Elem>(reps.size());
    reps.push_back(x);
    for (Elem y : n) index_of[g.mul(x, y)] = idx;
  }
  const std::size_t q = reps.size();
  std::vector<std::vector<Elem>> mul(q, std::vector<Elem>(q));
  for (std::size_t a = 0; a < q; ++a)
    for (std::size_t b = 0; b < q; ++b) mul[a][b] = *index_of[g.mul(reps[a], reps[b])];
  return Section{FiniteGroupTable::from_multiplication(std::move(mul)), std::move(reps), std::move(index_of)};
}

FiniteAutomorphism induced_on(const FiniteGroupTable& g, const FiniteAutomorphism& phi, const Section& sec,
                              const std::vector<Elem>& s, const std::vector<Elem>& n) {
  if (phi.size() != g.size()) throw InvalidArgument("automorphism size differs from group size");
  const auto ss = sorted_unique(s);
  const auto nn = sorted_unique(n);
  for (Elem x : ss)
    if (!sorted_contains(ss, phi(x))) throw InvalidArgument("subgroup is not phi-invariant");
  for (Elem x : nn)
    if (!sorted_contains(nn, phi(x))) throw InvalidArgument("normal subgroup is not phi-invariant");
  std::vector<Elem> img;
  img.reserve(sec.representative.size());
  for (Elem r : sec.representative) img.push_back(*sec.index_of[phi(r)]);
  return FiniteAutomorphism(sec.table, std::move(img));
}

std::vector<std::vector<Elem>> upper_central_series(const FiniteGroupTable& g) {
  std::vector<std::vector<Elem>> series{{g.identity()}};
  while (series.back().size() < g.size()) {
    const auto& z = series.back();
    std::vector<Elem> next;
    for (Elem x = 0; x < g.size(); ++x) {
      bool central = true;
      for (Elem y = 0; y < g.size() && central; ++y) {
        Elem comm = g.mul(g.mul(g.inv(x), g.inv(y)), g.mul(x, y));
        central = sorted_contains(z, comm);
      }
      if (central) next.push_back(x);
    }
    if (next.size() == z.size()) throw InvalidArgument("group is not nilpotent");
    series.push_back(std::move(next));
  }
  return series;
}

FiniteGroupTable direct_product(const FiniteGroupTable& g, const FiniteGroupTable& h) {
  const std::size_t gs = g.size(), hs = h.size();
  if (gs > oracle_size_cap() / hs) check_cap(oracle_size_cap() + 1, "direct product");
  const std::size_t s = gs * hs;
  check_cap(s, "direct product");
  std::vector<std::vector<Elem>> mul(s, std::vector<Elem>(s));
  for (Elem a = 0; a < s; ++a)
    for (Elem b = 0; b < s; ++b)
      mul[a][b] = static_cast<Elem>(g.mul(static_cast<Elem>(a / hs), static_cast<Elem>(b / hs)) * hs +
                                    h.mul(static_cast<Elem>(a % hs), static_cast<Elem>(b % hs)));
  std::vector<Elem> gens;
  for (Elem x : g.generators()) gens.push_back(static_cast<Elem>(x * hs + h.identity()));
  for (Elem y : h.generators()) gens.push_back(static_cast<Elem>(g.identity() * hs + y));
  if (gens.empty()) gens.push_back(static_cast<Elem>(g.identity() * hs + h.identity()));
  return FiniteGroupTable::from_multiplication(std::move(mul), std::move(gens));
}

FiniteAutomorphism direct_product(const FiniteGroupTable& gh, const FiniteAutomorphism& phi,
                                  const FiniteAutomorphism& psi) {
  const std::size_t hs = psi.size();
  if (phi.size() * hs != gh.size()) throw InvalidArgument("factor automorphisms do not match the product group");
  std::vector<Elem> img(gh.size());
  for (Elem x = 0; x < gh.size(); ++x)
    img[x] = static_cast<Elem>(phi(static_cast<Elem>(x / hs)) * hs + psi(static_cast<Elem>(x % hs)));
  return FiniteAutomorphism(gh, std::move(img));
}

std::pair<FiniteGroupTable, FiniteAutomorphism> linear_abelian(std::size_t p, const IntMatrix& m) {
  if (!m.is_square() || m.rows() == 0) throw InvalidArgument("linear map must be a nonempty square matrix");
  if (p < 2) throw InvalidArgument("modulus must be at least 2");
  const std::size_t d = m.rows();
  Int det = determinant(m);
  if (gcd(det, Int(static_cast<unsigned long>(p))) != 1) throw InvalidArgument("linear map is not invertible mod p");
  checked_power(p, d, "(Z/p)^d");
  FiniteGroupTable g = FiniteGroupTable::abelian(std::vector<std::size_t>(d, p));
  const Int mod(static_cast<unsigned long>(p));
  std::vector<Elem> img(g.size());
  for (std::size_t x = 0; x < g.size(); ++x) {
    IntVector v(d);
    std::size_t code = x;
    for (std::size_t k = d; k-- > 0;) {
      v[k] = static_cast<unsigned long>(code % p);
      code /= p;
    }
    IntVector w = m * v;
    std::size_t out = 0;
    for (std::size_t k = 0; k < d; ++k) {
      Int r = w[k] % mod;
      if (r < 0) r += mod;
      out = out * p + r.get_ui();
    }
    img[x] = static_cast<Elem>(out);
  }
  FiniteAutomorphism phi(g, std::move(img));
  return {std::move(g), std::move(phi)};
}

std::pair<FiniteGroupTable, FiniteAutomorphism> ut_mod(std::size_t n, std::size_t modulus, const NormalFormAuto& phi) {
  if (n < 2) throw InvalidArgument("ut_mod needs n >= 2");
  if (modulus < 2) throw InvalidArgument("ut_mod needs a modulus >= 2");
  if (phi.n() != n) throw InvalidArgument("automorphism dimension differs from n");
  if (phi.desc().kind() != RingKind::Integers) throw InvalidArgument("ut_mod reduces automorphisms over Z only");
  if (phi.delta != RingAutomorphism::Identity) throw InvalidArgument("ut_mod needs delta = id");
  if (phi.flip != 0 && phi.flip != 1) throw InvalidArgument("flip exponent must be 0 or 1");

  const auto m = static_cast<long long>(modulus);
  ModUT ut(n, m);
  const std::size_t size = checked_power(modulus, ut.count(), "UT_" + std::to_string(n) + "(Z/" + std::to_string(modulus) + ")");

  std::vector<long long> d, dinv;
  for (std::size_t i = 0; i < n; ++i) {
    long long di = mod_norm(integer_entry(phi.diagonal[i], "diagonal entry"), m);
    long long inv = mod_inverse(di, m);
    if (inv < 0) {
      throw InvalidArgument("diagonal entry " + phi.diagonal[i].to_string() + " is not invertible mod " + std::to_string(m));
    }
    d.push_back(di);
    dinv.push_back(inv);
  }
  long long lambda = 0;
  if (phi.lambda) {
    if (n < 3) throw InvalidArgument("central automorphisms need n >= 3");
    Rational c = phi.lambda->is_lattice() ? Rational(phi.lambda->matrix()(0, 0)) : phi.lambda->factor();
    if (!is_integral(c) || !c.get_num().fits_slong_p()) throw InvalidArgument("lambda must be an integer scalar");
    lambda = mod_norm(c.get_num().get_si(), m);
  }
  std::optional<ModUT::Entries> a, ainv;
  if (phi.inner) {
    ModUT::Entries e(ut.count());
    for (std::size_t i = 1; i <= n; ++i)
      for (std::size_t j = i + 1; j <= n; ++j) e[ut.idx(i - 1, j - 1)] = mod_norm(integer_entry(phi.inner->at(i, j), "inner entry"), m);
    a = e;
    ainv = ut.inverse(e);
  }

  auto image = [&](const ModUT::Entries& x) {
    ModUT::Entries y(ut.count());
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) y[ut.idx(i, j)] = d[i] * x[ut.idx(i, j)] % m * dinv[j] % m;
    if (phi.flip == 1) y = ut.inverse(ut.antitranspose(y));
    if (lambda != 0) {
      long long sum = 0;
      for (std::size_t i = 0; i + 1 < n; ++i) sum += y[ut.idx(i, i + 1)];
      y[ut.idx(0, n - 1)] = mod_norm(y[ut.idx(0, n - 1)] + lambda * mod_norm(sum, m), m);
    }
    if (a) y = ut.mul(ut.mul(*a, y), *ainv);
    return y;
  };

  std::vector<ModUT::Entries> elems(size);
  for (std::size_t c = 0; c < size; ++c) elems[c] = ut.decode(c);
  std::vector<std::vector<Elem>> mul(size, std::vector<Elem>(size));
  for (std::size_t x = 0; x < size; ++x)
    for (std::size_t y = 0; y < size; ++y) mul[x][y] = static_cast<Elem>(ut.encode(ut.mul(elems[x], elems[y])));

  // Elementary transvections E_{i,j}(1) generate.
  std::vector<Elem> gens;
  for (std::size_t p = 0; p < ut.count(); ++p) {
    ModUT::Entries e(ut.count(), 0);
    e[p] = 1;
    gens.push_back(static_cast<Elem>(ut.encode(e)));
  }
  FiniteGroupTable g = FiniteGroupTable::from_multiplication(std::move(mul), std::move(gens));
  std::vector<Elem> img(size);
  for (std::size_t c = 0; c < size; ++c) img[c] = static_cast<Elem>(ut.encode(image(elems[c])));
  FiniteAutomorphism f(g, std::move(img));
  return {std::move(g), std::move(f)};
}

bool PropositionReport::all_hold() const {
  return std::all_of(results.begin(), results.end(), [](const PropositionResult& r) { return r.holds; });
}

namespace {

std::size_t restricted_count(const FiniteGroupTable& g, const FiniteAutomorphism& phi, const std::vector<Elem>& s,
                             const std::vector<Elem>& n) {
  Section sec = section(g, s, n);
  return twisted_classes(sec.table, induced_on(g, phi, sec, s, n)).count;
}

}  // namespace

PropositionReport check_propositions(const FiniteGroupTable& g, const FiniteAutomorphism& phi,
                                     const PropositionOptions& options) {
  if (phi.size() != g.size()) throw InvalidArgument("automorphism size differs from group size");
  PropositionReport report;
  report.classes = twisted_classes(g, phi).count;
  const std::string r = std::to_string(report.classes);
  const std::vector<Elem> everything = [&] {
    std::vector<Elem> v(g.size());
    std::iota(v.begin(), v.end(), Elem{0});
    return v;
  }();
  const std::vector<Elem> trivial{g.identity()};

  if (options.inn) {
    PropositionResult res{"inn", true, r, r, false, {}};
    std::mt19937_64 rng(options.seed);
    std::uniform_int_distribution<Elem> pick(0, static_cast<Elem>(g.size() - 1));
    for (std::size_t t = 0; t < options.inner_samples; ++t) {
      Elem c = pick(rng);
      std::size_t other = twisted_classes(g, compose(inner_automorphism(g, c), phi)).count;
      if (other != report.classes) {
        res.holds = false;
        res.rhs = std::to_string(other);
        res.detail = "conjugating element " + std::to_string(c);
        break;
      }
    }
    report.results.push_back(std::move(res));
  }

  if (options.product) {
    const auto p = sorted_unique(options.product->first);
    const auto q = sorted_unique(options.product->second);
    if (p.size() * q.size() != g.size()) throw InvalidArgument("declared factors have the wrong orders");
    for (Elem x : p) {
      if (x != g.identity() && sorted_contains(q, x)) throw InvalidArgument("declared factors intersect nontrivially");
      for (Elem y : q)
        if (g.mul(x, y) != g.mul(y, x)) throw InvalidArgument("declared factors do not commute");
    }
    std::size_t rp = restricted_count(g, phi, p, trivial);
    std::size_t rq = restricted_count(g, phi, q, trivial);
    PropositionResult res{"prod", rp * rq == report.classes, r, std::to_string(rp * rq), false, {}};
    if (!res.holds) res.detail = "R(phi|P) = " + std::to_string(rp) + ", R(phi|Q) = " + std::to_string(rq);
    report.results.push_back(std::move(res));
  }

  if (options.central) {
    const auto h = sorted_unique(*options.central);
    for (Elem x : h)
      for (Elem y = 0; y < g.size(); ++y)
        if (g.mul(x, y) != g.mul(y, x)) throw InvalidArgument("declared subgroup is not central");
    std::size_t rh = restricted_count(g, phi, h, trivial);
    std::size_t rbar = restricted_count(g, phi, everything, h);
    PropositionResult res{"zf", report.classes <= rh * rbar, r, std::to_string(rh * rbar), report.classes < rh * rbar,
                          "R(phi') = " + std::to_string(rh) + ", R(phi bar) = " + std::to_string(rbar)};
    report.results.push_back(std::move(res));
  }

  if (options.ind) {
    if (!g.is_abelian()) throw InvalidArgument("the index formula needs an abelian group");
    std::set<Elem> image;
    for (Elem z = 0; z < g.size(); ++z) image.insert(g.mul(z, g.inv(phi(z))));
    std::size_t index = g.size() / image.size();
    report.results.push_back({"ind", index == report.classes, r, std::to_string(index), false, {}});
  }

  if (options.nilin) {
    auto series = upper_central_series(g);
    std::size_t bound = 1;
    std::string parts;
    for (std::size_t k = 0; k + 1 < series.size(); ++k) {
      std::size_t rk = restricted_count(g, phi, series[k + 1], series[k]);
      bound *= rk;
      parts += (parts.empty() ? "" : " * ") + std::to_string(rk);
    }
    report.results.push_back({"nilin", report.classes <= bound, r, std::to_string(bound), report.classes < bound,
                              "layers: " + parts});
  }
  return report;
}

}  // namespace twistcalc
