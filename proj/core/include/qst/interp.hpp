#pragma once

#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "qst/formula.hpp"
#include "qst/ops.hpp"
#include "qst/qset.hpp"

namespace qst {

/// A lattice-valued interpretation: an implication driving bounded universal
/// quantification and equality, and a conjunction driving bounded existential
/// quantification and membership. Flags are recomputed from the tables.
struct Interpretation {
  BinaryOperation imp, conj;
  std::string id;           // "j,k" for the polynomial pairs
  bool normal = false;      // imp satisfies (LB) and conj satisfies (GC)
  bool self_dual = false;   // conj is the dual conjunction of imp
  std::uint64_t fingerprint = 0;

  static Interpretation polynomial(const OrthoLattice& l, int j, int k);
  static Interpretation custom(const OrthoLattice& l, BinaryOperation imp,
                               BinaryOperation conj, std::string id);
};

/// All 36 polynomial pairs in row-major (j, k) order.
std::vector<Interpretation> all_polynomial_interpretations(const OrthoLattice& l);

using Env = std::map<std::string, QId>;

class UnsupportedConstruct : public Error {
 public:
  using Error::Error;
};

/// Truth-value engine. The atomic relations (=, membership, inclusion) are
/// memoized per evaluator; the recursion follows the rank of the nodes.
class Evaluator {
 public:
  Evaluator(const QSetStore& store, const Interpretation& interp, bool use_cache = true);

  const OrthoLattice& lattice() const { return store_.lattice(); }
  const QSetStore& store() const { return store_; }
  const Interpretation& interp() const { return interp_; }

  /// Iff is expanded to its defining abbreviation before evaluation;
  /// unbounded quantifiers are rejected.
  Elem truth_value(const Formula& f, const Env& env);
  /// Binds the formula's free names x1..xn positionally.
  Elem truth_value(const Formula& f, const std::vector<QId>& args);

  Elem eq(QId u, QId v);
  Elem member(QId u, QId v);  // value of "u in v"
  Elem subset(QId u, QId v);  // value of "u sub v"

  std::size_t cache_entries() const { return memo_.size(); }

 private:
  Elem eval(const Formula& f, Env& env);
  QId resolve(const Term& t, const Env& env) const;
  Elem atom_cached(int tag, QId u, QId v);

  const QSetStore& store_;
  Interpretation interp_;
  bool use_cache_;
  std::unordered_map<std::uint64_t, Elem> memo_;
};

Env bind_args(const Formula& f, const std::vector<QId>& args);

// -- metatheoretic check procedures -----------------------------------------

struct TransferCheck {
  Elem lhs = 0;    // truth value of the formula at the arguments
  Elem bound = 0;  // commutator of the arguments
  bool pass = false;
};

/// Transfer inequality at one instance; when the bound is the top, the value
/// itself must be the top.
TransferCheck transfer_check(Evaluator& ev, const Formula& f, const std::vector<QId>& args);

struct DualitySide {
  Elem negated_quantifier = 0;  // value of !(Q x in u . phi)
  Elem pushed_negation = 0;     // value of (Q' x in u . !phi)
  bool pass = false;
};

struct DeMorganCheck {
  DualitySide m5;  // universal against negated existential
  DualitySide m6;  // existential against negated universal
  bool pass() const { return m5.pass && m6.pass; }
};

/// Bounded-quantifier De Morgan laws for one body and one range.
DeMorganCheck de_morgan_check(Evaluator& ev, const Formula& body, const std::string& var,
                              QId range, const Env& extra = {});

/// Connective-level duality (negated conjunction against joined negations and
/// the dual) for two closed formulas; holds in every interpretation.
bool de_morgan_connectives(Evaluator& ev, const Formula& f1, const Formula& f2,
                           const Env& env);

/// Finite-family analogue of quantifier duality: the complement of the meet
/// of the instance values equals the join of the complemented values. The
/// unbounded rules themselves are rejected by the evaluator, so the checks
/// quantify over explicit finite families.
bool de_morgan_families(Evaluator& ev, const Formula& body, const std::string& var,
                        const std::vector<QId>& family, const Env& extra = {});

struct DeMorganCounterexample {
  Elem p0 = 0, q0 = 0;             // the noncommuting seed pair
  Elem cut = 0;                    // complement of their commutator
  Elem p = 0, q = 0;               // the cut pair fed to the formula
  Elem exists_side = 0;            // value of (E x in P~) !!(x in Q~)
  Elem forall_negation_side = 0;   // value of !(A x in P~) !(x in Q~)
  bool found = false;
};

/// The standard violation of bounded De Morgan duality in the Takeuti
/// interpretation (Sasaki arrow with the classical conjunction). Throws on
/// Boolean lattices, where no counterexample exists.
DeMorganCounterexample takeuti_counterexample(const OrthoLattice& l);

struct AbsolutenessReport {
  Elem full_value = 0;
  Elem sub_value = 0;  // mapped back into the ambient lattice
  bool pass = false;
};

/// Evaluates the formula inside the sublogic (operations restricted, nodes
/// re-rooted) and in the full lattice; the two must agree. All argument
/// supports must lie inside the sublogic.
AbsolutenessReport absoluteness_check(QSetStore& store, const Interpretation& interp,
                                      const Formula& f, const std::vector<QId>& args,
                                      const ElementSet& sublogic);

struct RestrictionReport {
  Elem lhs = 0;  // value at the arguments, cut by p
  Elem rhs = 0;  // value at the restricted arguments, cut by p
  bool pass = false;
};

/// Restriction principle at one instance; p must commute with every support
/// element of the arguments.
RestrictionReport restriction_check(QSetStore& store, const Interpretation& interp,
                                    const Formula& f, const std::vector<QId>& args, Elem p);

struct CensusResult {
  std::size_t distinct = 0;
  std::vector<std::string> self_dual_ids;
  // Discriminator rows at the first noncommuting pair (when one exists):
  // values of [[P~ sub Q~]] per implication and [[(Q^perp)~ in P~]] per
  // conjunction.
  bool has_noncommuting_pair = false;
  Elem witness_p = 0, witness_q = 0;
  std::vector<Elem> subset_row;      // indexed by j
  std::vector<Elem> membership_row;  // indexed by k
};

/// Builds all 36 polynomial interpretations and separates them by the
/// discriminator values [[P~ sub Q~]] and [[(Q^perp)~ in P~]] over all pairs.
CensusResult interpretation_census(const OrthoLattice& l);

struct CollapseReport {
  bool vacuous = false;  // Boolean lattice: nothing to exhibit
  Elem p = 0, q = 0;
  Elem value = 0;        // truth value of the distribution instance, < top
  std::string formula;
};

/// A ZFC-provable distribution instance whose truth value drops below the
/// top at noncommuting constants; witnesses that value-1 transfer forces
/// Boolean logic.
CollapseReport boolean_collapse_check(const OrthoLattice& l, const Interpretation& interp);

struct NonNormalFailure {
  std::string interp_id;
  std::string formula;
  std::vector<std::string> arg_literals;
  Elem lhs = 0, bound = 0;
  bool violated = false;
};

/// The two shipped non-normal interpretations (conjunction replaced by join;
/// implication replaced by the constant top) with a transfer violation each,
/// found on the proof's formula instances.
std::vector<NonNormalFailure> non_normal_transfer_failure(const OrthoLattice& l);

}  // namespace qst
