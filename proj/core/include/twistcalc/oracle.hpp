#pragma once

// Brute-force twisted conjugacy in finite groups given by multiplication tables.
//
// These routines are ground truth for the linear algebra elsewhere in the
// library: abelian layer formulas and the structural propositions. They do not
// validate Reidemeister numbers over Z itself, since reducing mod m changes
// the number of classes.

#include "twistcalc/automorphism.hpp"
#include "twistcalc/lattice.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json_fwd.hpp>

namespace twistcalc {

using Elem = std::uint32_t;

/// Largest group the oracle will tabulate: TWISTCALC_CAP if set, else 3^8.
std::size_t oracle_size_cap();

class FiniteGroupTable {
 public:
  /// Validates the table: identity and inverses exactly, associativity
  /// exhaustively up to 64 elements and on random triples above. Generators,
  /// when given, must generate; otherwise a generating set is computed.
  static FiniteGroupTable from_multiplication(std::vector<std::vector<Elem>> mul, std::vector<Elem> generators = {});
  /// {"size": s, "mul": [[...]], "generators": [...]}.
  static FiniteGroupTable from_json(const nlohmann::json& j);
  static FiniteGroupTable cyclic(std::size_t m);
  /// Z/m_1 x ... x Z/m_r, element index in mixed radix with m_1 most significant.
  static FiniteGroupTable abelian(const std::vector<std::size_t>& moduli);

  std::size_t size() const noexcept { return mul_.size(); }
  Elem mul(Elem a, Elem b) const { return mul_[a][b]; }
  Elem inv(Elem a) const { return inv_[a]; }
  Elem identity() const noexcept { return identity_; }
  const std::vector<Elem>& generators() const noexcept { return generators_; }
  const std::vector<std::vector<Elem>>& table() const noexcept { return mul_; }
  bool is_abelian() const;
  /// Subgroup generated by the given elements, sorted.
  std::vector<Elem> closure(const std::vector<Elem>& elems) const;
  bool is_normal(const std::vector<Elem>& subgroup) const;

 private:
  FiniteGroupTable() = default;
  std::vector<std::vector<Elem>> mul_;
  std::vector<Elem> inv_;
  Elem identity_ = 0;
  std::vector<Elem> generators_;
};

class FiniteAutomorphism {
 public:
  /// Checks bijectivity and multiplicativity (exhaustive up to 1000 elements, sampled above).
  FiniteAutomorphism(const FiniteGroupTable& g, std::vector<Elem> image);
  static FiniteAutomorphism identity(const FiniteGroupTable& g);

  Elem operator()(Elem x) const { return image_[x]; }
  const std::vector<Elem>& image() const noexcept { return image_; }
  std::size_t size() const noexcept { return image_.size(); }

 private:
  struct Unchecked {};
  FiniteAutomorphism(std::vector<Elem> image, Unchecked) : image_(std::move(image)) {}
  friend FiniteAutomorphism compose(const FiniteAutomorphism&, const FiniteAutomorphism&);
  friend FiniteAutomorphism inner_automorphism(const FiniteGroupTable&, Elem);
  friend FiniteAutomorphism inversion_map(const FiniteGroupTable&);
  std::vector<Elem> image_;
};

/// x -> outer(inner(x)).
FiniteAutomorphism compose(const FiniteAutomorphism& outer, const FiniteAutomorphism& inner);
/// x -> g x g^{-1}.
FiniteAutomorphism inner_automorphism(const FiniteGroupTable& g, Elem conj);
/// x -> x^{-1}; InvalidArgument unless the group is abelian.
FiniteAutomorphism inversion_map(const FiniteGroupTable& g);

enum class ClassMode {
  /// Union x with g x phi(g)^{-1} for generators g only.
  Generators,
  /// Union x with z x phi(z)^{-1} for every z (test mode).
  AllElements,
};

struct TwistedClasses {
  std::size_t count = 0;
  /// Smallest element of each class, ascending.
  std::vector<Elem> representatives;
  /// Class index (into representatives) of each element.
  std::vector<std::size_t> class_of;
};

TwistedClasses twisted_classes(const FiniteGroupTable& g, const FiniteAutomorphism& phi,
                               ClassMode mode = ClassMode::Generators);

/// A subquotient S/N of a table group (N normal in S) as a table of its own.
struct Section {
  FiniteGroupTable table;
  /// Representative in the ambient group of each element of the section.
  std::vector<Elem> representative;
  /// Section index of each ambient element, or nullopt outside S.
  std::vector<std::optional<Elem>> index_of;
};

/// N must be a normal subgroup of the subgroup S; both given as element lists.
Section section(const FiniteGroupTable& g, const std::vector<Elem>& s, const std::vector<Elem>& n);
/// Automorphism induced on S/N; InvalidArgument unless phi(S) = S and phi(N) = N.
FiniteAutomorphism induced_on(const FiniteGroupTable& g, const FiniteAutomorphism& phi, const Section& sec,
                              const std::vector<Elem>& s, const std::vector<Elem>& n);

/// Z_0 = {e} < Z_1 < ... < Z_c = G; InvalidArgument if the group is not nilpotent.
std::vector<std::vector<Elem>> upper_central_series(const FiniteGroupTable& g);

/// G x H with index (a, b) -> a |H| + b.
FiniteGroupTable direct_product(const FiniteGroupTable& g, const FiniteGroupTable& h);
FiniteAutomorphism direct_product(const FiniteGroupTable& gh, const FiniteAutomorphism& phi,
                                  const FiniteAutomorphism& psi);

/// (Z/p)^d with x -> M x mod p; M must be invertible mod p.
std::pair<FiniteGroupTable, FiniteAutomorphism> linear_abelian(std::size_t p, const IntMatrix& m);

/// UT_n(Z/mZ) with phi reduced entrywise. phi must be over Z with delta = id,
/// diagonal entries coprime to m and an integer lambda. The inner part and
/// the flip are reduced as well. ResourceCapExceeded above oracle_size_cap().
/// Elements are indexed by their strict-upper entries (row-major, base m,
/// first entry most significant).
std::pair<FiniteGroupTable, FiniteAutomorphism> ut_mod(std::size_t n, std::size_t modulus, const NormalFormAuto& phi);

struct PropositionOptions {
  /// R(inn_g o phi) = R(phi) for random g.
  bool inn = false;
  std::size_t inner_samples = 50;
  std::uint64_t seed = 1;
  /// R(phi) = R(phi|P) R(phi|Q) for a declared internal direct product P x Q.
  std::optional<std::pair<std::vector<Elem>, std::vector<Elem>>> product;
  /// R(phi) <= R(phi|H) R(phi on G/H) for a declared phi-invariant central H.
  std::optional<std::vector<Elem>> central;
  /// R(phi) = |G : {z phi(z)^{-1}}| for abelian G.
  bool ind = false;
  /// R(phi) <= product over the upper central series layers.
  bool nilin = false;
};

struct PropositionResult {
  std::string name;
  bool holds = false;
  /// Both sides of the identity or inequality, as decimal strings.
  std::string lhs;
  std::string rhs;
  /// For inequalities: lhs < rhs.
  bool strict = false;
  /// Failure data, e.g. the inner element that broke invariance.
  std::string detail;
};

struct PropositionReport {
  std::size_t classes = 0;
  std::vector<PropositionResult> results;
  bool all_hold() const;
};

PropositionReport check_propositions(const FiniteGroupTable& g, const FiniteAutomorphism& phi,
                                     const PropositionOptions& options);

}  // namespace twistcalc
