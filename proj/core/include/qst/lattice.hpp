#pragma once

#include <cstdint>
#include <iosfwd>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace qst {

/// Index of a lattice element. Element identity is table index; values from
/// different lattices must never be mixed (guarded by fingerprints).
using Elem = std::uint16_t;

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class CapacityError : public Error {
 public:
  using Error::Error;
};

struct VerifyReport {
  bool ok = true;
  std::string what;          // description of the first violation
  Elem lhs = 0, rhs = 0;     // offending pair, when meaningful
  explicit operator bool() const { return ok; }
};

/// A finite complete orthomodular lattice, immutable after construction.
///
/// Order, orthocomplement and meet/join tables are precomputed; completeness
/// is automatic since the lattice is finite. A structural fingerprint ties
/// dependent values (ElementSet, QSet, BinaryOperation) to their lattice.
class OrthoLattice {
 public:
  static constexpr std::size_t kDefaultCapacity = 4096;

  /// Empty placeholder; every usable lattice comes from a named constructor.
  OrthoLattice() = default;

  // -- constructors ---------------------------------------------------------

  /// Power-set lattice 2^k with set complement. Requires 1 <= k <= 16.
  static OrthoLattice boolean(unsigned k, std::size_t cap = kDefaultCapacity);

  /// Horizontal sum of m complementary atom pairs (MOm); m = 2 is the
  /// six-element Chinese Lantern.
  static OrthoLattice mo(unsigned m, std::size_t cap = kDefaultCapacity);

  /// Componentwise direct product.
  static OrthoLattice product(const OrthoLattice& a, const OrthoLattice& b,
                              std::size_t cap = kDefaultCapacity);

  /// Pasting of two ortholattices at 0 and 1. Re-runs verify_axioms and
  /// rejects the result when it is not orthomodular.
  static OrthoLattice horizontal_sum(const OrthoLattice& a,
                                     const OrthoLattice& b,
                                     std::size_t cap = kDefaultCapacity);

  /// Build from an explicit order relation and orthocomplementation.
  /// leq_pairs lists all pairs (x, y) with x <= y (reflexive pairs optional).
  /// Throws unless the data describes an OML; with allow_non_oml only the
  /// lattice structure is required (used to load O6-style counterexamples).
  static OrthoLattice from_relation(std::size_t n,
                                    const std::vector<std::pair<Elem, Elem>>& leq_pairs,
                                    const std::vector<Elem>& ortho,
                                    std::vector<std::string> labels = {},
                                    bool allow_non_oml = false,
                                    std::size_t cap = kDefaultCapacity);

  // -- structure ------------------------------------------------------------

  std::size_t size() const { return n_; }
  Elem bottom() const { return bottom_; }
  Elem top() const { return top_; }
  std::uint64_t fingerprint() const { return fingerprint_; }

  bool leq(Elem x, Elem y) const { return leq_[idx(x, y)] != 0; }
  Elem ortho(Elem x) const { return ortho_[check(x)]; }
  Elem meet(Elem x, Elem y) const { return meet_[idx(x, y)]; }
  Elem join(Elem x, Elem y) const { return join_[idx(x, y)]; }

  Elem meet_all(const std::vector<Elem>& xs) const;
  Elem join_all(const std::vector<Elem>& xs) const;

  const std::string& label(Elem x) const { return labels_[check(x)]; }
  /// Resolves a label, or a decimal index, to an element.
  std::optional<Elem> find(const std::string& label_or_index) const;

  /// P and Q commute: P = (P\Q) v (P\Q^perp).
  bool commutes(Elem p, Elem q) const;

  /// Marsden commutator of a pair: the join of the four sign-pattern meets.
  Elem commutator_pair(Elem p, Elem q) const;

  bool is_boolean() const;
  /// Meet criterion: P\Q = 0 for all distinct P, Q below the top.
  bool is_extremely_noncommutative() const;

  /// Checks partial order, meet/join tables, ortho involution and De Morgan,
  /// complement laws, and the orthomodular law over all pairs.
  VerifyReport verify_axioms() const;

  // -- persistence ----------------------------------------------------------

  /// Line-oriented text format with fields n, ortho, leq and optional labels.
  void save(std::ostream& os) const;
  static OrthoLattice load(std::istream& is, bool allow_non_oml = false,
                           std::size_t cap = kDefaultCapacity);
  static OrthoLattice load_file(const std::string& path,
                                bool allow_non_oml = false,
                                std::size_t cap = kDefaultCapacity);

 private:
  void finalize(bool allow_non_oml);  // tables, bounds, fingerprint, axioms
  std::size_t idx(Elem x, Elem y) const { return std::size_t(check(x)) * n_ + check(y); }
  Elem check(Elem x) const {
    if (x >= n_) throw Error("element index out of range");
    return x;
  }

  std::size_t n_ = 0;
  std::vector<std::uint8_t> leq_;
  std::vector<Elem> ortho_;
  std::vector<Elem> meet_, join_;
  std::vector<std::string> labels_;
  Elem bottom_ = 0, top_ = 0;
  std::uint64_t fingerprint_ = 0;
};

/// A finite subset of a lattice: sorted, deduplicated element indices plus
/// the owning lattice's fingerprint.
class ElementSet {
 public:
  ElementSet() = default;
  ElementSet(const OrthoLattice& l, std::vector<Elem> members);

  const std::vector<Elem>& members() const { return members_; }
  std::uint64_t lattice_fingerprint() const { return fingerprint_; }
  std::size_t size() const { return members_.size(); }
  bool contains(Elem x) const;

  void require_same_lattice(const OrthoLattice& l) const;

 private:
  std::vector<Elem> members_;
  std::uint64_t fingerprint_ = 0;
};

/// {P | P commutes with every member of A}; always a complete subalgebra.
ElementSet commutant(const OrthoLattice& l, const ElementSet& a);

/// Double commutant A^!!, the smallest sublogic containing A.
ElementSet generated_sublogic(const OrthoLattice& l, const ElementSet& a);

/// Commutator of a finite family: max E in A^! n A^!! with
/// P\E commuting with Q\E for all P, Q in A. Empty family yields top.
Elem commutator_set(const OrthoLattice& l, const ElementSet& a);

/// Bruns-Kalmbach form: join over sign patterns of the pattern meets.
/// Independent route kept alongside commutator_set; the two must agree.
Elem commutator_bk(const OrthoLattice& l, const ElementSet& a);

/// One factor of a commutator decomposition: the interval [0, top_elem] of
/// the ambient sublogic with relative complement X -> X^perp \ top_elem,
/// materialized as its own OrthoLattice.
struct IntervalFactor {
  OrthoLattice lattice;
  Elem top_elem = 0;                  // E or E^perp in the ambient lattice
  std::vector<Elem> to_ambient;       // factor index -> ambient element
};

struct Decomposition {
  IntervalFactor boolean_part;        // [0, commutator]
  IntervalFactor residual_part;       // [0, commutator^perp]
  Elem commutator = 0;
  bool reconstruction_ok = false;     // X -> (X\E, X\E^perp) is an iso
};

/// Splits the sublogic generated by a nonempty family below its commutator.
Decomposition decompose(const OrthoLattice& l, const ElementSet& a);

/// A subalgebra materialized as its own lattice with translation maps.
struct Sublattice {
  OrthoLattice lattice;
  std::vector<Elem> to_ambient;    // local index -> ambient element
  std::vector<Elem> from_ambient;  // ambient element -> local index, or npos
  static constexpr Elem npos = 0xffff;
};

/// Builds the induced lattice on a subset closed under meet, join and ortho
/// (checked; bottom and top must be members).
Sublattice induced_sublattice(const OrthoLattice& l, const ElementSet& members);

/// Order+ortho isomorphism test by atom-signature backtracking. Intended for
/// the small lattices used in tests and closures.
bool isomorphic(const OrthoLattice& a, const OrthoLattice& b);

}  // namespace qst
