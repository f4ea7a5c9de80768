#include "qst/ops.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace qst {
namespace {

constexpr std::uint64_t kFnvOffset = 1469598103934665603ull;
constexpr std::uint64_t kFnvPrime = 1099511628211ull;

std::uint64_t hash_table(std::uint64_t lattice_fp, const std::vector<Elem>& t) {
  std::uint64_t h = kFnvOffset ^ lattice_fp;
  for (Elem x : t) {
    h ^= x;
    h *= kFnvPrime;
  }
  return h;
}

Elem eps_value(const OrthoLattice& l, KotasEps e, Elem p, Elem q) {
  switch (e) {
    case KotasEps::Zero: return l.bottom();
    case KotasEps::P: return p;
    case KotasEps::POrtho: return l.ortho(p);
    case KotasEps::Q: return q;
    case KotasEps::QOrtho: return l.ortho(q);
    case KotasEps::One: return l.top();
  }
  throw Error("bad eps");
}

const char* eps_name(KotasEps e) {
  switch (e) {
    case KotasEps::Zero: return "0";
    case KotasEps::P: return "P";
    case KotasEps::POrtho: return "P'";
    case KotasEps::Q: return "Q";
    case KotasEps::QOrtho: return "Q'";
    case KotasEps::One: return "1";
  }
  return "?";
}

}  // namespace

std::string KotasSpec::to_string() const {
  std::ostringstream os;
  os << "kotas(" << alpha << beta << gamma << delta << ";" << eps_name(eps) << ")";
  return os.str();
}

std::vector<KotasSpec> all_kotas_specs() {
  std::vector<KotasSpec> out;
  out.reserve(96);
  for (int mask = 0; mask < 16; ++mask)
    for (int e = 0; e < 6; ++e)
      out.push_back(KotasSpec{(mask & 1) != 0, (mask & 2) != 0, (mask & 4) != 0,
                              (mask & 8) != 0, KotasEps(e)});
  return out;
}

KotasSpec kotas_spec_implication(int j) {
  if (j < 0 || j > 5) throw Error("implication index out of range");
  // disjunctive normal form of P' v Q keeps the alpha, gamma, delta minterms
  static constexpr KotasEps eps[6] = {KotasEps::Zero,   KotasEps::P,      KotasEps::Q,
                                      KotasEps::POrtho, KotasEps::QOrtho, KotasEps::One};
  return KotasSpec{true, false, true, true, eps[j]};
}

KotasSpec kotas_spec_conjunction(int j) {
  if (j < 0 || j > 5) throw Error("conjunction index out of range");
  static constexpr KotasEps eps[6] = {KotasEps::One, KotasEps::POrtho, KotasEps::Q,
                                      KotasEps::P,   KotasEps::QOrtho, KotasEps::Zero};
  return KotasSpec{true, false, false, false, eps[j]};
}

Elem eval_kotas(const OrthoLattice& l, const KotasSpec& s, Elem p, Elem q) {
  Elem po = l.ortho(p), qo = l.ortho(q);
  Elem acc = l.bottom();
  if (s.alpha) acc = l.join(acc, l.meet(p, q));
  if (s.beta) acc = l.join(acc, l.meet(p, qo));
  if (s.gamma) acc = l.join(acc, l.meet(po, q));
  if (s.delta) acc = l.join(acc, l.meet(po, qo));
  Elem noncom = l.ortho(l.commutator_pair(p, q));
  return l.join(acc, l.meet(eps_value(l, s.eps, p, q), noncom));
}

BinaryOperation::BinaryOperation(const OrthoLattice& l, std::vector<Elem> table, Kind kind,
                                 int index, std::string name)
    : n_(l.size()),
      table_(std::move(table)),
      kind_(kind),
      index_(index),
      name_(std::move(name)),
      lattice_fp_(l.fingerprint()) {
  if (table_.size() != n_ * n_) throw Error("operation table size mismatch");
  for (Elem x : table_)
    if (x >= n_) throw Error("operation table entry out of range");
  fp_ = hash_table(lattice_fp_, table_);
}

BinaryOperation BinaryOperation::tabulated(const OrthoLattice& l, std::vector<Elem> table,
                                           std::string name) {
  return BinaryOperation(l, std::move(table), Kind::Tabulated, -1, std::move(name));
}

BinaryOperation BinaryOperation::kotas(const OrthoLattice& l, const KotasSpec& s) {
  std::size_t n = l.size();
  std::vector<Elem> t(n * n);
  for (Elem p = 0; p < n; ++p)
    for (Elem q = 0; q < n; ++q) t[std::size_t(p) * n + q] = eval_kotas(l, s, p, q);
  return BinaryOperation(l, std::move(t), Kind::Kotas, -1, s.to_string());
}

BinaryOperation BinaryOperation::implication(const OrthoLattice& l, int j) {
  if (j < 0 || j > 5) throw Error("implication index out of range");
  std::size_t n = l.size();
  std::vector<Elem> t(n * n);
  for (Elem p = 0; p < n; ++p)
    for (Elem q = 0; q < n; ++q) {
      Elem po = l.ortho(p), qo = l.ortho(q);
      Elem v = 0;
      switch (j) {
        case 0:
          v = l.join(l.join(l.meet(po, qo), l.meet(po, q)), l.meet(p, q));
          break;
        case 1:
          v = l.join(l.join(l.meet(po, qo), l.meet(po, q)), l.meet(p, l.join(po, q)));
          break;
        case 2:
          v = l.join(l.meet(po, qo), q);
          break;
        case 3:
          v = l.join(po, l.meet(p, q));
          break;
        case 4:
          v = l.join(l.join(l.meet(l.join(po, q), qo), l.meet(po, q)), l.meet(p, q));
          break;
        case 5:
          v = l.join(po, q);
          break;
      }
      t[std::size_t(p) * n + q] = v;
    }
  return BinaryOperation(l, std::move(t), Kind::Implication, j, "imp" + std::to_string(j));
}

BinaryOperation BinaryOperation::conjunction(const OrthoLattice& l, int j) {
  if (j < 0 || j > 5) throw Error("conjunction index out of range");
  std::size_t n = l.size();
  std::vector<Elem> t(n * n);
  for (Elem p = 0; p < n; ++p)
    for (Elem q = 0; q < n; ++q) {
      Elem noncom = l.ortho(l.commutator_pair(p, q));
      Elem base = l.meet(p, q);
      Elem v = 0;
      switch (j) {
        case 0: v = l.join(base, noncom); break;
        case 1: v = l.join(base, l.meet(l.ortho(p), noncom)); break;
        case 2: v = l.join(base, l.meet(q, noncom)); break;
        case 3: v = l.join(base, l.meet(p, noncom)); break;
        case 4: v = l.join(base, l.meet(l.ortho(q), noncom)); break;
        case 5: v = base; break;
      }
      t[std::size_t(p) * n + q] = v;
    }
  return BinaryOperation(l, std::move(t), Kind::Conjunction, j, "conj" + std::to_string(j));
}

void BinaryOperation::require_same_lattice(const OrthoLattice& l) const {
  if (lattice_fp_ != l.fingerprint())
    throw Error("operation belongs to a different lattice");
}

BinaryOperation dual_conjunction(const OrthoLattice& l, const BinaryOperation& op) {
  op.require_same_lattice(l);
  std::size_t n = l.size();
  std::vector<Elem> t(n * n);
  for (Elem p = 0; p < n; ++p)
    for (Elem q = 0; q < n; ++q)
      t[std::size_t(p) * n + q] = l.ortho(op(p, l.ortho(q)));
  return BinaryOperation::tabulated(l, std::move(t), "dual(" + op.name() + ")");
}

BinaryOperation equality_indicator_op(const OrthoLattice& l) {
  std::size_t n = l.size();
  std::vector<Elem> t(n * n, l.bottom());
  for (Elem p = 0; p < n; ++p) t[std::size_t(p) * n + p] = l.top();
  return BinaryOperation::tabulated(l, std::move(t), "eq-indicator");
}

LocalityReport check_local(const OrthoLattice& l, const BinaryOperation& op) {
  op.require_same_lattice(l);
  LocalityReport rep;
  std::size_t n = l.size();
  for (Elem p = 0; p < n && rep.l1_ok; ++p)
    for (Elem q = 0; q < n && rep.l1_ok; ++q) {
      auto gen = generated_sublogic(l, ElementSet(l, {p, q}));
      if (!gen.contains(op(p, q))) {
        rep.l1_ok = false;
        rep.l1_witness = PairWitness{p, q, l.label(p) + "," + l.label(q)};
      }
    }
  for (Elem e = 0; e < n && rep.l2_ok; ++e)
    for (Elem p = 0; p < n && rep.l2_ok; ++p) {
      if (!l.commutes(p, e)) continue;
      for (Elem q = 0; q < n; ++q) {
        if (!l.commutes(q, e)) continue;
        if (l.meet(op(p, q), e) != l.meet(op(l.meet(p, e), l.meet(q, e)), e)) {
          rep.l2_ok = false;
          rep.l2_witness = std::array<Elem, 3>{p, q, e};
          break;
        }
      }
    }
  return rep;
}

ConditionReport check_conditions(const OrthoLattice& l, const BinaryOperation& op) {
  op.require_same_lattice(l);
  ConditionReport rep;
  std::size_t n = l.size();
  auto witness = [&](Elem p, Elem q) {
    return PairWitness{p, q,
                       l.label(p) + "[" + std::to_string(p) + "]," + l.label(q) + "[" +
                           std::to_string(q) + "]"};
  };
  auto record = [&](ConditionStatus& st, Elem p, Elem q) {
    if (st.holds) {
      st.holds = false;
      st.witness = witness(p, q);
    }
  };
  for (Elem p = 0; p < n; ++p)
    for (Elem q = 0; q < n; ++q) {
      Elem v = op(p, q);
      if (l.commutes(p, q)) {
        if (v != l.join(l.ortho(p), q)) record(rep.lb, p, q);
        if (v != l.meet(p, q)) record(rep.gc, p, q);
      }
      if ((v == l.top()) != l.leq(p, q)) record(rep.e, p, q);
      if (!l.leq(l.meet(p, v), q)) record(rep.mp, p, q);
      if (!l.leq(l.meet(l.ortho(q), v), l.ortho(p))) record(rep.mt, p, q);
      if (!l.leq(l.meet(p, l.ortho(q)), l.ortho(v))) record(rep.ng, p, q);
    }
  return rep;
}

std::string ConditionReport::to_text(const std::string& op_name,
                                     std::uint64_t lattice_fp) const {
  std::ostringstream os;
  os << "op " << op_name << " lattice " << std::hex << lattice_fp << std::dec << "\n";
  auto line = [&](const char* name, const ConditionStatus& st) {
    os << "  " << name << ": " << (st.holds ? "holds" : "fails");
    if (st.witness) os << " at (" << st.witness->text << ")";
    os << "\n";
  };
  line("(LB)", lb);
  line("(E) ", e);
  line("(MP)", mp);
  line("(MT)", mt);
  line("(NG)", ng);
  line("(GC)", gc);
  return os.str();
}

namespace {
Elem checked_part(const OrthoLattice& l, Elem p, Elem q, Elem x, bool boolean_side) {
  if (!generated_sublogic(l, ElementSet(l, {p, q})).contains(x))
    throw Error("element outside the sublogic generated by the pair");
  Elem com = l.commutator_pair(p, q);
  return l.meet(x, boolean_side ? com : l.ortho(com));
}
}  // namespace

Elem b_part(const OrthoLattice& l, Elem p, Elem q, Elem x) {
  return checked_part(l, p, q, x, true);
}

Elem n_part(const OrthoLattice& l, Elem p, Elem q, Elem x) {
  return checked_part(l, p, q, x, false);
}

std::size_t census_polynomials(const OrthoLattice& l) {
  // Operations are distinguished by their values on noncommuting pairs; on
  // commuting pairs every canonical form reduces to its disjunctive normal
  // form, which the theorem's count brackets out. A Boolean logic has no
  // noncommuting pairs, and there the full tables are compared.
  std::vector<std::pair<Elem, Elem>> domain;
  std::size_t n = l.size();
  for (Elem p = 0; p < n; ++p)
    for (Elem q = 0; q < n; ++q)
      if (!l.commutes(p, q)) domain.emplace_back(p, q);
  if (domain.empty())
    for (Elem p = 0; p < n; ++p)
      for (Elem q = 0; q < n; ++q) domain.emplace_back(p, q);

  std::set<std::vector<Elem>> distinct;
  for (const KotasSpec& s : all_kotas_specs()) {
    std::vector<Elem> key;
    key.reserve(domain.size());
    for (auto [p, q] : domain) key.push_back(eval_kotas(l, s, p, q));
    distinct.insert(std::move(key));
  }
  return distinct.size();
}

BoolPoly BoolPoly::p() { return BoolPoly(Tag::P, {}); }
BoolPoly BoolPoly::q() { return BoolPoly(Tag::Q, {}); }
BoolPoly BoolPoly::zero() { return BoolPoly(Tag::Zero, {}); }
BoolPoly BoolPoly::one() { return BoolPoly(Tag::One, {}); }
BoolPoly BoolPoly::meet(BoolPoly a, BoolPoly b) {
  return BoolPoly(Tag::Meet, {std::move(a), std::move(b)});
}
BoolPoly BoolPoly::join(BoolPoly a, BoolPoly b) {
  return BoolPoly(Tag::Join, {std::move(a), std::move(b)});
}
BoolPoly BoolPoly::ortho(BoolPoly a) { return BoolPoly(Tag::Ortho, {std::move(a)}); }

bool BoolPoly::truth(bool vp, bool vq) const {
  switch (tag_) {
    case Tag::P: return vp;
    case Tag::Q: return vq;
    case Tag::Zero: return false;
    case Tag::One: return true;
    case Tag::Meet: return kids_[0].truth(vp, vq) && kids_[1].truth(vp, vq);
    case Tag::Join: return kids_[0].truth(vp, vq) || kids_[1].truth(vp, vq);
    case Tag::Ortho: return !kids_[0].truth(vp, vq);
  }
  return false;
}

Elem BoolPoly::eval(const OrthoLattice& l, Elem p, Elem q) const {
  switch (tag_) {
    case Tag::P: return p;
    case Tag::Q: return q;
    case Tag::Zero: return l.bottom();
    case Tag::One: return l.top();
    case Tag::Meet: return l.meet(kids_[0].eval(l, p, q), kids_[1].eval(l, p, q));
    case Tag::Join: return l.join(kids_[0].eval(l, p, q), kids_[1].eval(l, p, q));
    case Tag::Ortho: return l.ortho(kids_[0].eval(l, p, q));
  }
  throw Error("bad polynomial node");
}

KotasSpec BoolPoly::dnf() const {
  KotasSpec s;
  s.alpha = truth(true, true);
  s.beta = truth(true, false);
  s.gamma = truth(false, true);
  s.delta = truth(false, false);
  s.eps = KotasEps::Zero;
  return s;
}

QuantizationReport check_quantization(const OrthoLattice& l, const BinaryOperation& op,
                                      const BoolPoly& b) {
  op.require_same_lattice(l);
  QuantizationReport rep;
  KotasSpec dnf = b.dnf();
  std::size_t n = l.size();
  for (Elem p = 0; p < n; ++p)
    for (Elem q = 0; q < n; ++q) {
      Elem v = op(p, q);
      if (l.commutes(p, q) && v != b.eval(l, p, q)) {
        if (rep.commuting_ok) {
          rep.commuting_ok = false;
          rep.witness = PairWitness{p, q, l.label(p) + "," + l.label(q)};
        }
      }
      Elem vb = l.meet(v, l.commutator_pair(p, q));
      if (vb != eval_kotas(l, dnf, p, q)) rep.bpart_ok = false;
    }
  return rep;
}

}  // namespace qst
