#include "qst/interp.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace qst {

Interpretation Interpretation::custom(const OrthoLattice& l, BinaryOperation imp,
                                      BinaryOperation conj, std::string id) {
  imp.require_same_lattice(l);
  conj.require_same_lattice(l);
  Interpretation it{std::move(imp), std::move(conj), std::move(id)};
  auto imp_rep = check_conditions(l, it.imp);
  auto conj_rep = check_conditions(l, it.conj);
  it.normal = imp_rep.lb.holds && conj_rep.gc.holds;
  it.self_dual = dual_conjunction(l, it.imp).same_table(it.conj);
  it.fingerprint = it.imp.fingerprint() * 1099511628211ull ^ it.conj.fingerprint();
  return it;
}

Interpretation Interpretation::polynomial(const OrthoLattice& l, int j, int k) {
  return custom(l, BinaryOperation::implication(l, j), BinaryOperation::conjunction(l, k),
                std::to_string(j) + "," + std::to_string(k));
}

std::vector<Interpretation> all_polynomial_interpretations(const OrthoLattice& l) {
  std::vector<Interpretation> out;
  out.reserve(36);
  for (int j = 0; j < 6; ++j)
    for (int k = 0; k < 6; ++k) out.push_back(Interpretation::polynomial(l, j, k));
  return out;
}

Evaluator::Evaluator(const QSetStore& store, const Interpretation& interp, bool use_cache)
    : store_(store), interp_(interp), use_cache_(use_cache) {
  interp_.imp.require_same_lattice(store.lattice());
  interp_.conj.require_same_lattice(store.lattice());
}

QId Evaluator::resolve(const Term& t, const Env& env) const {
  auto it = env.find(t.name);
  if (it == env.end())
    throw Error((t.bound ? "unbound variable: " : "unresolved constant: ") + t.name);
  return it->second;
}

Elem Evaluator::atom_cached(int tag, QId u, QId v) {
  // equality is symmetric in its defining recursion; normalize the key
  if (tag == 0 && u > v) std::swap(u, v);
  std::uint64_t key = (std::uint64_t(tag) << 62) | (std::uint64_t(u) << 31) | v;
  if (use_cache_) {
    auto it = memo_.find(key);
    if (it != memo_.end()) return it->second;
  }
  const OrthoLattice& l = lattice();
  Elem out;
  switch (tag) {
    case 0:  // u = v
      out = l.meet(subset(u, v), subset(v, u));
      break;
    case 1: {  // u in v
      out = l.bottom();
      for (const QEntry& e : store_.dom(v))
        out = l.join(out, interp_.conj(e.weight, eq(e.child, u)));
      break;
    }
    default: {  // u sub v
      out = l.top();
      for (const QEntry& e : store_.dom(u))
        out = l.meet(out, interp_.imp(e.weight, member(e.child, v)));
      break;
    }
  }
  if (use_cache_) memo_.emplace(key, out);
  return out;
}

Elem Evaluator::eq(QId u, QId v) { return atom_cached(0, u, v); }
Elem Evaluator::member(QId u, QId v) { return atom_cached(1, u, v); }
Elem Evaluator::subset(QId u, QId v) { return atom_cached(2, u, v); }

Elem Evaluator::eval(const Formula& f, Env& env) {
  const OrthoLattice& l = lattice();
  switch (f->kind) {
    case FormulaKind::Not:
      return l.ortho(eval(f->lhs, env));
    case FormulaKind::And:
      return l.meet(eval(f->lhs, env), eval(f->rhs, env));
    case FormulaKind::Or:
      return l.join(eval(f->lhs, env), eval(f->rhs, env));
    case FormulaKind::Imp:
      return interp_.imp(eval(f->lhs, env), eval(f->rhs, env));
    case FormulaKind::Iff:
      throw Error("iff must be expanded before evaluation");
    case FormulaKind::ForallIn: {
      QId range = resolve(f->bound, env);
      Elem acc = l.top();
      auto saved = env.find(f->var) != env.end() ? std::optional<QId>(env[f->var])
                                                 : std::nullopt;
      for (const QEntry& e : store_.dom(range)) {
        env[f->var] = e.child;
        acc = l.meet(acc, interp_.imp(e.weight, eval(f->lhs, env)));
      }
      if (saved)
        env[f->var] = *saved;
      else
        env.erase(f->var);
      return acc;
    }
    case FormulaKind::ExistsIn: {
      QId range = resolve(f->bound, env);
      Elem acc = l.bottom();
      auto saved = env.find(f->var) != env.end() ? std::optional<QId>(env[f->var])
                                                 : std::nullopt;
      for (const QEntry& e : store_.dom(range)) {
        env[f->var] = e.child;
        acc = l.join(acc, interp_.conj(e.weight, eval(f->lhs, env)));
      }
      if (saved)
        env[f->var] = *saved;
      else
        env.erase(f->var);
      return acc;
    }
    case FormulaKind::Forall:
    case FormulaKind::Exists:
      throw UnsupportedConstruct(
          "unbounded quantifier: evaluation over the full universe is not supported");
    case FormulaKind::Atom: {
      QId u = resolve(f->t1, env), v = resolve(f->t2, env);
      switch (f->rel) {
        case AtomRel::Eq: return eq(u, v);
        case AtomRel::In: return member(u, v);
        case AtomRel::Sub: return subset(u, v);
      }
    }
  }
  throw Error("bad formula node");
}

Elem Evaluator::truth_value(const Formula& f, const Env& env) {
  Env scratch = env;
  Formula expanded = desugar(f);  // expands Iff, keeps the dual connectives
  return eval(expanded, scratch);
}

Env bind_args(const Formula& f, const std::vector<QId>& args) {
  Env env;
  for (const std::string& name : free_names(f)) {
    if (name.size() < 2 || name[0] != 'x' ||
        name.find_first_not_of("0123456789", 1) != std::string::npos)
      throw Error("free name '" + name + "' is not an argument slot (expected x1, x2, ...)");
    std::size_t idx = std::stoul(name.substr(1));
    if (idx == 0 || idx > args.size())
      throw Error("formula needs argument " + name + " but only " +
                  std::to_string(args.size()) + " were given");
    env[name] = args[idx - 1];
  }
  return env;
}

Elem Evaluator::truth_value(const Formula& f, const std::vector<QId>& args) {
  return truth_value(f, bind_args(f, args));
}

TransferCheck transfer_check(Evaluator& ev, const Formula& f, const std::vector<QId>& args) {
  TransferCheck tc;
  tc.lhs = ev.truth_value(f, args);
  tc.bound = ev.store().set_commutator(args);
  tc.pass = ev.lattice().leq(tc.bound, tc.lhs);
  return tc;
}

DeMorganCheck de_morgan_check(Evaluator& ev, const Formula& body, const std::string& var,
                              QId range, const Env& extra) {
  Env env = extra;
  env["$range"] = range;
  Term range_term{false, "$range"};
  Formula not_body = make_not(body);

  DeMorganCheck out;
  out.m5.negated_quantifier =
      ev.truth_value(make_not(make_forall_in(var, range_term, body)), env);
  out.m5.pushed_negation =
      ev.truth_value(make_exists_in(var, range_term, not_body), env);
  out.m5.pass = out.m5.negated_quantifier == out.m5.pushed_negation;

  out.m6.negated_quantifier =
      ev.truth_value(make_not(make_exists_in(var, range_term, body)), env);
  out.m6.pushed_negation =
      ev.truth_value(make_forall_in(var, range_term, not_body), env);
  out.m6.pass = out.m6.negated_quantifier == out.m6.pushed_negation;
  return out;
}

bool de_morgan_connectives(Evaluator& ev, const Formula& f1, const Formula& f2,
                           const Env& env) {
  Elem a1 = ev.truth_value(make_not(make_and(f1, f2)), env);
  Elem a2 = ev.truth_value(make_or(make_not(f1), make_not(f2)), env);
  Elem b1 = ev.truth_value(make_not(make_or(f1, f2)), env);
  Elem b2 = ev.truth_value(make_and(make_not(f1), make_not(f2)), env);
  return a1 == a2 && b1 == b2;
}

bool de_morgan_families(Evaluator& ev, const Formula& body, const std::string& var,
                        const std::vector<QId>& family, const Env& extra) {
  const OrthoLattice& l = ev.lattice();
  Elem inf = l.top(), sup_neg = l.bottom();
  Elem sup = l.bottom(), inf_neg = l.top();
  for (QId u : family) {
    Env env = extra;
    env[var] = u;
    Elem v = ev.truth_value(body, env);
    Elem nv = ev.truth_value(make_not(body), env);
    inf = l.meet(inf, v);
    sup = l.join(sup, v);
    sup_neg = l.join(sup_neg, nv);
    inf_neg = l.meet(inf_neg, nv);
  }
  return l.ortho(inf) == sup_neg && l.ortho(sup) == inf_neg;
}

DeMorganCounterexample takeuti_counterexample(const OrthoLattice& l) {
  DeMorganCounterexample out;
  for (Elem p0 = 0; p0 < l.size() && !out.found; ++p0)
    for (Elem q0 = 0; q0 < l.size() && !out.found; ++q0)
      if (!l.commutes(p0, q0)) {
        out.found = true;
        out.p0 = p0;
        out.q0 = q0;
      }
  if (!out.found) throw Error("no counterexample: the lattice is Boolean");

  out.cut = l.ortho(l.commutator_pair(out.p0, out.q0));
  out.p = l.meet(out.p0, out.cut);
  out.q = l.meet(out.q0, out.cut);

  QSetStore store(l);
  Interpretation takeuti = Interpretation::polynomial(l, 3, 5);
  Evaluator ev(store, takeuti);
  QId range = store.p_tilde(out.p);
  QId qt = store.p_tilde(out.q);

  Env env{{"$q", qt}};
  Formula body = make_not(make_atom(AtomRel::In, Term{true, "x"}, Term{false, "$q"}));
  auto check = de_morgan_check(ev, body, "x", range, env);
  out.exists_side = check.m5.pushed_negation;
  out.forall_negation_side = check.m5.negated_quantifier;
  return out;
}

AbsolutenessReport absoluteness_check(QSetStore& store, const Interpretation& interp,
                                      const Formula& f, const std::vector<QId>& args,
                                      const ElementSet& sublogic) {
  const OrthoLattice& l = store.lattice();
  for (QId u : args)
    for (Elem x : store.support(u))
      if (!sublogic.contains(x))
        throw Error("argument support leaves the sublogic");

  Sublattice sub = induced_sublattice(l, sublogic);
  std::size_t m = sub.lattice.size();

  auto restrict_op = [&](const BinaryOperation& op, const char* what) {
    std::vector<Elem> t(m * m);
    for (Elem x = 0; x < m; ++x)
      for (Elem y = 0; y < m; ++y) {
        Elem v = sub.from_ambient[op(sub.to_ambient[x], sub.to_ambient[y])];
        if (v == Sublattice::npos)
          throw Error(std::string("operation leaves the sublogic: ") + what);
        t[std::size_t(x) * m + y] = v;
      }
    return BinaryOperation::tabulated(sub.lattice, std::move(t), what);
  };
  Interpretation sub_interp = Interpretation::custom(
      sub.lattice, restrict_op(interp.imp, "imp|R"), restrict_op(interp.conj, "conj|R"),
      interp.id + "|R");

  QSetStore sub_store(sub.lattice);
  std::vector<QId> sub_args;
  for (QId u : args) sub_args.push_back(transport(store, u, sub_store, sub.from_ambient));

  Evaluator full(store, interp), inside(sub_store, sub_interp);
  AbsolutenessReport rep;
  rep.full_value = full.truth_value(f, args);
  rep.sub_value = sub.to_ambient[inside.truth_value(f, sub_args)];
  rep.pass = rep.full_value == rep.sub_value;
  return rep;
}

RestrictionReport restriction_check(QSetStore& store, const Interpretation& interp,
                                    const Formula& f, const std::vector<QId>& args, Elem p) {
  const OrthoLattice& l = store.lattice();
  for (QId u : args)
    for (Elem x : store.support(u))
      if (!l.commutes(p, x))
        throw Error("restriction element does not commute with the supports");

  std::vector<QId> cut;
  for (QId u : args) cut.push_back(store.restrict(u, p));

  Evaluator ev(store, interp);
  RestrictionReport rep;
  rep.lhs = l.meet(ev.truth_value(f, args), p);
  rep.rhs = l.meet(ev.truth_value(f, cut), p);
  rep.pass = rep.lhs == rep.rhs;
  return rep;
}

CensusResult interpretation_census(const OrthoLattice& l) {
  CensusResult out;
  for (Elem p = 0; p < l.size() && !out.has_noncommuting_pair; ++p)
    for (Elem q = 0; q < l.size() && !out.has_noncommuting_pair; ++q)
      if (!l.commutes(p, q)) {
        out.has_noncommuting_pair = true;
        out.witness_p = p;
        out.witness_q = q;
      }

  QSetStore store(l);
  std::set<std::vector<Elem>> seen;
  for (int j = 0; j < 6; ++j)
    for (int k = 0; k < 6; ++k) {
      Interpretation it = Interpretation::polynomial(l, j, k);
      Evaluator ev(store, it);
      std::vector<Elem> key;
      key.reserve(2 * l.size() * l.size());
      for (Elem p = 0; p < l.size(); ++p)
        for (Elem q = 0; q < l.size(); ++q) {
          key.push_back(ev.subset(store.p_tilde(p), store.p_tilde(q)));
          key.push_back(ev.member(store.p_tilde(l.ortho(q)), store.p_tilde(p)));
        }
      seen.insert(std::move(key));
      if (it.self_dual) out.self_dual_ids.push_back(it.id);

      if (out.has_noncommuting_pair) {
        if (k == 0)
          out.subset_row.push_back(
              ev.subset(store.p_tilde(out.witness_p), store.p_tilde(out.witness_q)));
        if (j == 0)
          out.membership_row.push_back(ev.member(store.p_tilde(l.ortho(out.witness_q)),
                                                 store.p_tilde(out.witness_p)));
      }
    }
  out.distinct = seen.size();
  return out;
}

CollapseReport boolean_collapse_check(const OrthoLattice& l, const Interpretation& interp) {
  if (!interp.normal) throw Error("collapse check needs a normal interpretation");
  CollapseReport rep;
  rep.formula =
      "x3 in x1 <-> ((x3 in x1 & x3 in x2) | (x3 in x1 & !(x3 in x2)))";
  Formula f = parse(rep.formula);

  QSetStore store(l);
  Evaluator ev(store, interp);
  for (Elem p = 0; p < l.size(); ++p)
    for (Elem q = 0; q < l.size(); ++q) {
      if (l.commutes(p, q)) continue;
      Elem v = ev.truth_value(
          f, {store.p_tilde(p), store.p_tilde(q), store.empty_check()});
      if (v != l.top()) {
        rep.p = p;
        rep.q = q;
        rep.value = v;
        return rep;
      }
    }
  if (l.is_boolean()) {
    rep.vacuous = true;
    return rep;
  }
  throw Error("collapse check found no witness on a non-Boolean lattice");
}

std::vector<NonNormalFailure> non_normal_transfer_failure(const OrthoLattice& l) {
  std::size_t n = l.size();
  std::vector<Elem> join_table(n * n), const_top(n * n, l.top());
  for (Elem p = 0; p < n; ++p)
    for (Elem q = 0; q < n; ++q) join_table[std::size_t(p) * n + q] = l.join(p, q);

  Interpretation join_conj = Interpretation::custom(
      l, BinaryOperation::implication(l, 3),
      BinaryOperation::tabulated(l, std::move(join_table), "join"), "3,join");
  Interpretation top_imp = Interpretation::custom(
      l, BinaryOperation::tabulated(l, std::move(const_top), "const-top"),
      BinaryOperation::conjunction(l, 5), "const1,5");

  // proof instances: the duality of membership with the negated universal,
  // and negation through a refuted implication
  Formula duality = parse("x1 in x2 <-> !(A y in x2 . !(y = x1))");
  Formula negation = parse("((x1 in x2) -> !(x3 = x3)) <-> !(x1 in x2)");

  QSetStore store(l);
  std::vector<NonNormalFailure> out;
  for (const Interpretation* it : {&join_conj, &top_imp}) {
    Evaluator ev(store, *it);
    NonNormalFailure fail;
    fail.interp_id = it->id;
    for (const Formula* f : {&duality, &negation}) {
      for (Elem p = 0; p < n && !fail.violated; ++p)
        for (Elem q = 0; q < n && !fail.violated; ++q) {
          std::vector<QId> args{store.p_tilde(p), store.p_tilde(q), store.empty_check()};
          std::size_t arity = free_names(*f).size();
          args.resize(arity <= 3 ? std::max<std::size_t>(arity, 2) : 3);
          auto tc = transfer_check(ev, *f, args);
          if (!tc.pass) {
            fail.violated = true;
            fail.formula = print(*f);
            for (QId a : args) fail.arg_literals.push_back(store.literal(a));
            fail.lhs = tc.lhs;
            fail.bound = tc.bound;
          }
        }
      if (fail.violated) break;
    }
    out.push_back(std::move(fail));
  }
  return out;
}

}  // namespace qst
