#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qst/lattice.hpp"

namespace qst {

/// The monomial slot of the Kotas canonical form.
enum class KotasEps : std::uint8_t { Zero, P, POrtho, Q, QOrtho, One };

/// Canonical form of a two-variable ortholattice polynomial:
///   (P^Q^a) v (P^Q'^b) v (P'^Q^c) v (P'^Q'^d) v (eps ^ com(P,Q)')
struct KotasSpec {
  bool alpha = false, beta = false, gamma = false, delta = false;
  KotasEps eps = KotasEps::Zero;

  std::string to_string() const;
  bool operator==(const KotasSpec&) const = default;
};

/// All 96 canonical forms, in a fixed enumeration order.
std::vector<KotasSpec> all_kotas_specs();

/// Canonical spec of the quantized implication ->_j, j in 0..5.
KotasSpec kotas_spec_implication(int j);
/// Canonical spec of the quantized conjunction *_j, j in 0..5.
KotasSpec kotas_spec_conjunction(int j);

Elem eval_kotas(const OrthoLattice& l, const KotasSpec& s, Elem p, Elem q);

/// A total two-argument operation on a lattice, materialized as a table.
/// Value type: carries the owning lattice's fingerprint, not a reference.
class BinaryOperation {
 public:
  enum class Kind : std::uint8_t { Tabulated, Kotas, Implication, Conjunction };

  static BinaryOperation tabulated(const OrthoLattice& l, std::vector<Elem> table,
                                   std::string name = "tabulated");
  static BinaryOperation kotas(const OrthoLattice& l, const KotasSpec& s);
  /// ->_j by its explicit polynomial form; equals the Kotas route tablewise.
  static BinaryOperation implication(const OrthoLattice& l, int j);
  /// *_j by its explicit polynomial form.
  static BinaryOperation conjunction(const OrthoLattice& l, int j);

  Elem operator()(Elem p, Elem q) const { return table_[std::size_t(p) * n_ + q]; }

  Kind kind() const { return kind_; }
  /// j for named implications/conjunctions, -1 otherwise.
  int index() const { return index_; }
  const std::string& name() const { return name_; }
  const std::vector<Elem>& table() const { return table_; }
  std::size_t lattice_size() const { return n_; }
  std::uint64_t lattice_fingerprint() const { return lattice_fp_; }
  /// Table identity hash; equal tables on the same lattice hash equally.
  std::uint64_t fingerprint() const { return fp_; }

  void require_same_lattice(const OrthoLattice& l) const;
  bool same_table(const BinaryOperation& other) const {
    return lattice_fp_ == other.lattice_fp_ && table_ == other.table_;
  }

 private:
  BinaryOperation(const OrthoLattice& l, std::vector<Elem> table, Kind kind, int index,
                  std::string name);

  std::size_t n_ = 0;
  std::vector<Elem> table_;
  Kind kind_ = Kind::Tabulated;
  int index_ = -1;
  std::string name_;
  std::uint64_t lattice_fp_ = 0, fp_ = 0;
};

/// P * Q = (P -> Q^perp)^perp. Applying it twice gives back the original.
BinaryOperation dual_conjunction(const OrthoLattice& l, const BinaryOperation& op);

struct PairWitness {
  Elem p = 0, q = 0;
  std::string text;  // labeled rendering
};

struct LocalityReport {
  bool l1_ok = true, l2_ok = true;
  std::optional<PairWitness> l1_witness;       // value escapes {P,Q}^!!
  std::optional<std::array<Elem, 3>> l2_witness;  // (P, Q, E) with cut mismatch
  bool ok() const { return l1_ok && l2_ok; }
};

/// Exhaustive (L1)/(L2) scan: values stay inside the generated sublogic, and
/// cutting by a commuting element commutes with the operation.
LocalityReport check_local(const OrthoLattice& l, const BinaryOperation& op);

/// ((P = Q)) as a tabulated operation: top when equal, bottom otherwise.
/// Satisfies (L1) but not (L2); the shipped non-local specimen for tests.
BinaryOperation equality_indicator_op(const OrthoLattice& l);

struct ConditionStatus {
  bool holds = true;
  std::optional<PairWitness> witness;
};

/// The implicative conditions of the classification, each with a witness on
/// failure: (LB), (E), (MP), (MT), (NG), plus (GC) for conjunctions.
struct ConditionReport {
  ConditionStatus lb, e, mp, mt, ng, gc;
  bool material() const { return e.holds && mp.holds && mt.holds && ng.holds; }
  std::string to_text(const std::string& op_name, std::uint64_t lattice_fp) const;
};

ConditionReport check_conditions(const OrthoLattice& l, const BinaryOperation& op);

/// X \ com(P,Q) and X \ com(P,Q)^perp. X must lie in the sublogic generated
/// by {P, Q}; X equals the join of the two parts.
Elem b_part(const OrthoLattice& l, Elem p, Elem q, Elem x);
Elem n_part(const OrthoLattice& l, Elem p, Elem q, Elem x);

/// Number of distinct operations among the 96 canonical forms.
std::size_t census_polynomials(const OrthoLattice& l);

/// Two-variable Boolean polynomial over {meet, join, ortho, 0, 1, P, Q}.
class BoolPoly {
 public:
  static BoolPoly p();
  static BoolPoly q();
  static BoolPoly zero();
  static BoolPoly one();
  static BoolPoly meet(BoolPoly a, BoolPoly b);
  static BoolPoly join(BoolPoly a, BoolPoly b);
  static BoolPoly ortho(BoolPoly a);

  /// Classical truth value at a row of the two-variable truth table.
  bool truth(bool vp, bool vq) const;
  /// Interpretation with the lattice operations.
  Elem eval(const OrthoLattice& l, Elem p, Elem q) const;
  /// Disjunctive normal form read off the 4-row truth table (eps stays 0).
  KotasSpec dnf() const;

 private:
  enum class Tag : std::uint8_t { P, Q, Zero, One, Meet, Join, Ortho };
  BoolPoly(Tag t, std::vector<BoolPoly> kids) : tag_(t), kids_(std::move(kids)) {}
  Tag tag_;
  std::vector<BoolPoly> kids_;
};

struct QuantizationReport {
  bool commuting_ok = true;  // op agrees with b on every commuting pair
  bool bpart_ok = true;      // op(P,Q)_B == dnf(b)(P,Q) on every pair
  std::optional<PairWitness> witness;
  explicit operator bool() const { return commuting_ok; }
};

/// Is op a quantization of the Boolean polynomial b? Both routes of the
/// equivalence are evaluated and reported.
QuantizationReport check_quantization(const OrthoLattice& l, const BinaryOperation& op,
                                      const BoolPoly& b);

}  // namespace qst
