#pragma once

#include <cstdint>
#include <deque>
#include <mutex>
#include <string>
#include <unordered_map>
#include <vector>

#include "qst/hf.hpp"
#include "qst/lattice.hpp"
#include "qst/ops.hpp"

namespace qst {

/// Node handle within one QSetStore. Structurally equal nodes share an id.
using QId = std::uint32_t;

struct QEntry {
  QId child;
  Elem weight;
  /// Set only by restriction (the bookkeeping pair <u, 0>). Marker entries
  /// take part in evaluation and identity but their subtree supports are
  /// not counted, so restricted supports cut exactly.
  bool marker = false;
};

/// Hash-consed bounded-rank fragment of the lattice-valued universe.
/// Nodes are immutable; the store only grows. All QIds are store-local.
class QSetStore {
 public:
  explicit QSetStore(const OrthoLattice& l) : l_(l) {}
  QSetStore(const QSetStore&) = delete;
  QSetStore& operator=(const QSetStore&) = delete;

  const OrthoLattice& lattice() const { return l_; }
  std::size_t node_count() const { return nodes_.size(); }

  /// The node with empty domain (the check image of the empty set).
  QId empty_check();
  /// Builds a node from (child, weight) pairs; children must be distinct.
  QId make(std::vector<std::pair<QId, Elem>> dom);
  /// Entry-level construction preserving marker flags (transport, literals).
  QId make_raw(std::vector<QEntry> dom);
  /// v-check: all weights are top; rank equals the set-theoretic rank.
  QId check_embed(const HFSet& v, std::size_t max_depth = 6);
  /// P-tilde: singleton domain {0-check} with weight p.
  QId p_tilde(Elem p);
  /// u|p: children restricted recursively, weights cut by p, plus the
  /// marker pair <u, 0>.
  QId restrict(QId u, Elem p);

  const std::vector<QEntry>& dom(QId u) const { return node(u).dom; }
  unsigned rank(QId u) const { return node(u).rank; }
  const std::vector<Elem>& support(QId u) const { return node(u).support; }

  ElementSet support_set(QId u) const;
  ElementSet joint_support(const std::vector<QId>& us) const;
  /// Commutator of the union of supports.
  Elem set_commutator(const std::vector<QId>& us) const;
  /// Double commutant of the union of supports.
  ElementSet generated_logic(const std::vector<QId>& us) const;

  /// Children-first traversal order covering u and its descendants once.
  std::vector<QId> fold_order(QId u) const;

  /// qset { child : weight, ... } | check {...} | ptilde <elem> |
  /// restrict(<literal>, <elem>); marker entries render as "marker <lit>".
  std::string literal(QId u) const;
  QId parse_literal(const std::string& text);

 private:
  struct Node {
    std::vector<QEntry> dom;  // sorted by child id, markers last among equals
    unsigned rank = 0;
    std::vector<Elem> support;  // sorted, always contains bottom
    std::uint64_t hash = 0;
  };
  const Node& node(QId u) const {
    if (u >= nodes_.size()) throw Error("bad qset id");
    return nodes_[u];
  }
  void finish_node(Node& n) const;  // rank + support from a sorted domain
  QId intern(Node n);

  const OrthoLattice& l_;
  std::deque<Node> nodes_;  // deque: references stay valid while growing
  std::unordered_multimap<std::uint64_t, QId> index_;
  std::mutex mu_;
};

/// A quantum subset of the classical base {0, ..., base_size-1}: one lattice
/// weight per base point. Representable as a QSet over the checked base.
struct QuantumSubset {
  std::size_t base_size = 0;
  std::vector<Elem> weights;
};

QuantumSubset qsubset_complement(const OrthoLattice& l, const QuantumSubset& a);
QuantumSubset qsubset_meet(const OrthoLattice& l, const QuantumSubset& a,
                           const QuantumSubset& b);
QuantumSubset qsubset_join(const OrthoLattice& l, const QuantumSubset& a,
                           const QuantumSubset& b);
/// Pointwise quantized meet through a conjunction; with the classical
/// conjunction it coincides with qsubset_meet.
QuantumSubset qsubset_quantized_meet(const OrthoLattice& l, const QuantumSubset& a,
                                     const QuantumSubset& b, const BinaryOperation& conj);

QId to_qset(QSetStore& store, const QuantumSubset& a);

/// All weight assignments over the base in a fixed mixed-radix order when
/// |L|^base fits the budget, otherwise a seeded uniform sample of size
/// budget. Deterministic either way.
std::vector<QuantumSubset> enumerate_power(const OrthoLattice& l, std::size_t base_size,
                                           std::size_t budget, std::uint64_t seed = 42);

/// Rebuilds u (from src) inside dst, mapping element indices through
/// elem_map; preserves ranks and marker flags.
QId transport(const QSetStore& src, QId u, QSetStore& dst,
              const std::vector<Elem>& elem_map);

}  // namespace qst
