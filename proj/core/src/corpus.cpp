#include "qst/corpus.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace qst {

namespace {

std::uint64_t fnv_str(const std::string& s) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

// The shipped corpus. Each note says why the entry is ZFC-provable; the
// sanity gate re-validates all of them classically on every load.
const char* kBuiltinCorpus = R"(
id: eq-refl
formula: x1 = x1
arity: 1
note: reflexivity of equality, provable from the logical axioms of equality
tags: identity

id: sub-refl
formula: x1 sub x1
arity: 1
note: every set is a subset of itself (forall z in x1, z in x1)
tags: subset

id: eq-sym
formula: x1 = x2 -> x2 = x1
arity: 2
note: symmetry of equality
tags: identity

id: eq-trans
formula: (x1 = x2 & x2 = x3) -> x1 = x3
arity: 3
note: transitivity of equality
tags: identity

id: sub-trans
formula: (x1 sub x2 & x2 sub x3) -> x1 sub x3
arity: 3
note: transitivity of inclusion
tags: subset

id: eq-to-sub
formula: x1 = x2 -> x1 sub x2
arity: 2
note: equal sets include each other
tags: subset identity

id: extensionality
formula: (x1 sub x2 & x2 sub x1) -> x1 = x2
arity: 2
note: mutual inclusion gives equality (extensionality)
tags: subset identity

id: in-congruence-right
formula: (x1 = x2 & x1 in x3) -> x2 in x3
arity: 3
note: equality is a congruence for membership on the left argument
tags: identity

id: in-congruence-left
formula: (x1 = x2 & x3 in x1) -> x3 in x2
arity: 3
note: equality is a congruence for membership on the right argument
tags: identity

id: bounded-demorgan
formula: (A x in x1 . x in x2) <-> !(E x in x1 . !(x in x2))
arity: 2
note: duality of bounded quantifiers, provable in first-order logic
tags: de-morgan subset

id: double-negation
formula: x1 in x2 <-> !(!(x1 in x2))
arity: 2
note: double negation elimination
tags: de-morgan

id: membership-forall-dual
formula: x1 in x2 <-> !(A y in x2 . !(y = x1))
arity: 2
note: membership as a negated bounded universal, provable in first-order logic
tags: de-morgan

id: negated-implication
formula: ((x1 in x2) -> !(x3 = x3)) <-> !(x1 in x2)
arity: 3
note: implying a refuted statement is refutation
tags: identity

id: distribution-instance
formula: x3 in x1 <-> ((x3 in x1 & x3 in x2) | (x3 in x1 & !(x3 in x2)))
arity: 3
note: case split on membership in x2, an instance of distribution
tags: de-morgan pairing-free

id: excluded-middle
formula: x1 in x2 | !(x1 in x2)
arity: 2
note: excluded middle
tags: identity

id: forall-trivial
formula: A y in x1 . y = y
arity: 1
note: bounded universal over reflexivity instances
tags: identity

id: exists-monotone
formula: x1 sub x2 -> ((E y in x1 . y in x3) -> (E y in x2 . y in x3))
arity: 3
note: bounded existentials are monotone under inclusion
tags: subset

id: meet-commutes-elementwise
formula: (x1 in x2 & x1 in x3) <-> (x1 in x3 & x1 in x2)
arity: 3
note: commutativity of intersection, stated elementwise
tags: subset-calculus

id: join-associates-elementwise
formula: ((x1 in x2 | x1 in x3) | x1 in x4) <-> (x1 in x2 | (x1 in x3 | x1 in x4))
arity: 4
note: associativity of union, stated elementwise
tags: subset-calculus

id: absorption-elementwise
formula: (x1 in x2 & (x1 in x2 | x1 in x3)) <-> x1 in x2
arity: 3
note: absorption law of the subset calculus, stated elementwise
tags: subset-calculus

id: subset-exists-witness
formula: (E y in x1 . y in x2) -> (E y in x1 . y in x2)
arity: 2
note: a trivial implication kept as a smoke instance for existentials
tags: subset
)";

}  // namespace

std::vector<TheoremEntry> parse_corpus(const std::string& text) {
  std::vector<TheoremEntry> out;
  std::istringstream is(text);
  std::string line;
  TheoremEntry cur;
  auto flush = [&] {
    if (cur.id.empty()) return;
    if (cur.source.empty()) throw Error("corpus entry '" + cur.id + "' has no formula");
    cur.formula = parse(cur.source);
    if (!is_delta0(cur.formula))
      throw Error("corpus entry '" + cur.id + "' is not a bounded formula");
    std::size_t want = free_names(cur.formula).size();
    if (cur.arity != want)
      throw Error("corpus entry '" + cur.id + "' declares arity " +
                  std::to_string(cur.arity) + " but uses " + std::to_string(want) +
                  " argument slots");
    out.push_back(cur);
    cur = TheoremEntry{};
  };
  while (std::getline(is, line)) {
    auto pos = line.find(':');
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    if (pos == std::string::npos) throw Error("corpus: malformed line '" + line + "'");
    std::string key = line.substr(0, pos);
    std::string val = line.substr(pos + 1);
    auto trim = [](std::string& s) {
      s.erase(0, s.find_first_not_of(" \t"));
      s.erase(s.find_last_not_of(" \t") + 1);
    };
    trim(key);
    trim(val);
    if (key == "id") {
      flush();
      cur.id = val;
    } else if (key == "formula") {
      cur.source = val;
    } else if (key == "arity") {
      cur.arity = std::stoul(val);
    } else if (key == "note") {
      cur.note = val;
    } else if (key == "tags") {
      std::istringstream ts(val);
      std::string tag;
      while (ts >> tag) cur.tags.push_back(tag);
    } else {
      throw Error("corpus: unknown field '" + key + "'");
    }
  }
  flush();
  return out;
}

std::vector<TheoremEntry> load_corpus_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw Error("cannot open corpus file: " + path);
  std::ostringstream ss;
  ss << f.rdbuf();
  return parse_corpus(ss.str());
}

const std::string& builtin_corpus_text() {
  static const std::string text = kBuiltinCorpus;
  return text;
}

const std::vector<TheoremEntry>& builtin_corpus() {
  static const std::vector<TheoremEntry> corpus = parse_corpus(builtin_corpus_text());
  return corpus;
}

void corpus_sanity_gate(const std::vector<TheoremEntry>& corpus, unsigned instantiations,
                        std::uint64_t seed) {
  for (const TheoremEntry& e : corpus) {
    std::mt19937_64 rng(seed ^ fnv_str(e.id));
    for (unsigned t = 0; t < instantiations; ++t) {
      std::map<std::string, HFSet> env;
      for (const std::string& name : free_names(e.formula))
        env[name] = HFSet::random(rng, 4);
      if (!classical_satisfaction(e.formula, env))
        throw Error("corpus sanity gate failed for '" + e.id + "'");
    }
  }
}

OrthoLattice lattice_by_name(const std::string& name, bool allow_non_oml) {
  if (name.rfind("bool", 0) == 0 && name.size() > 4) {
    return OrthoLattice::boolean(unsigned(std::stoul(name.substr(4))));
  }
  if (name.rfind("mo", 0) == 0 && name.size() > 2 &&
      std::isdigit(static_cast<unsigned char>(name[2]))) {
    return OrthoLattice::mo(unsigned(std::stoul(name.substr(2))));
  }
  if (name.rfind("prod(", 0) == 0 && name.back() == ')') {
    std::string inner = name.substr(5, name.size() - 6);
    int depth = 0;
    for (std::size_t i = 0; i < inner.size(); ++i) {
      if (inner[i] == '(') ++depth;
      if (inner[i] == ')') --depth;
      if (inner[i] == ',' && depth == 0)
        return OrthoLattice::product(lattice_by_name(inner.substr(0, i), allow_non_oml),
                                     lattice_by_name(inner.substr(i + 1), allow_non_oml));
    }
    throw Error("bad product lattice name: " + name);
  }
  if (name.rfind("file:", 0) == 0)
    return OrthoLattice::load_file(name.substr(5), allow_non_oml);
  throw Error("unknown lattice name: " + name +
              " (expected bool<k>, mo<n>, prod(a,b) or file:<path>)");
}

std::pair<int, int> interp_by_name(const std::string& name) {
  if (name == "sasaki") return {3, 3};
  if (name == "takeuti") return {3, 5};
  auto comma = name.find(',');
  if (comma != std::string::npos) {
    int j = std::stoi(name.substr(0, comma));
    int k = std::stoi(name.substr(comma + 1));
    if (0 <= j && j <= 5 && 0 <= k && k <= 5) return {j, k};
  }
  throw Error("unknown interpretation id: " + name + " (expected j,k with 0<=j,k<=5)");
}

SuiteConfig SuiteConfig::parse_text(const std::string& text) {
  SuiteConfig cfg;
  std::istringstream is(text);
  std::string line;
  while (std::getline(is, line)) {
    auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    auto eq = line.find('=');
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    if (eq == std::string::npos) throw Error("suite config: malformed line '" + line + "'");
    std::string key = line.substr(0, eq), val = line.substr(eq + 1);
    auto trim = [](std::string& s) {
      s.erase(0, s.find_first_not_of(" \t"));
      s.erase(s.find_last_not_of(" \t") + 1);
    };
    trim(key);
    trim(val);
    if (key == "lattices") {
      cfg.lattices.clear();
      std::string cur;
      int depth = 0;
      for (char c : val) {
        if (c == '(') ++depth;
        if (c == ')') --depth;
        if (c == ',' && depth == 0) {
          std::string item = cur;
          trim(item);
          if (!item.empty()) cfg.lattices.push_back(item);
          cur.clear();
        } else {
          cur += c;
        }
      }
      trim(cur);
      if (!cur.empty()) cfg.lattices.push_back(cur);
    } else if (key == "interps") {
      if (val == "all") {
        cfg.interp_choice = InterpChoice::All36;
      } else if (val == "selfdual") {
        cfg.interp_choice = InterpChoice::SelfDual6;
      } else {
        cfg.interp_choice = InterpChoice::Explicit;
        std::istringstream vs(val);
        std::string item;
        while (vs >> item) cfg.explicit_interps.push_back(interp_by_name(item));
      }
    } else if (key == "rank_bound") {
      cfg.rank_bound = unsigned(std::stoul(val));
    } else if (key == "budget") {
      cfg.budget = std::stoul(val);
    } else if (key == "seed") {
      cfg.seed = std::stoull(val);
    } else if (key == "corpus") {
      cfg.corpus_path = val;
    } else {
      throw Error("suite config: unknown key '" + key + "'");
    }
  }
  return cfg;
}

SuiteConfig SuiteConfig::load_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw Error("cannot open suite config: " + path);
  std::ostringstream ss;
  ss << f.rdbuf();
  return parse_text(ss.str());
}

std::vector<Interpretation> SuiteConfig::interpretations(const OrthoLattice& l) const {
  std::vector<Interpretation> out;
  switch (interp_choice) {
    case InterpChoice::All36:
      return all_polynomial_interpretations(l);
    case InterpChoice::SelfDual6:
      for (int j = 0; j < 6; ++j) out.push_back(Interpretation::polynomial(l, j, j));
      return out;
    case InterpChoice::Explicit:
      for (auto [j, k] : explicit_interps) out.push_back(Interpretation::polynomial(l, j, k));
      return out;
  }
  return out;
}

QId sample_qset(QSetStore& store, std::mt19937_64& rng, unsigned rank_bound) {
  const OrthoLattice& l = store.lattice();
  auto random_elem = [&] { return Elem(rng() % l.size()); };
  auto nest = [&](auto&& self, unsigned bound) -> QId {
    if (bound == 0) return store.empty_check();
    std::size_t width = rng() % 3;
    std::vector<std::pair<QId, Elem>> dom;
    for (std::size_t i = 0; i <= width; ++i) {
      QId child = self(self, unsigned(rng() % bound));
      bool dup = false;
      for (auto& [c, w] : dom) dup = dup || c == child;
      if (!dup) dom.emplace_back(child, random_elem());
    }
    return store.make(std::move(dom));
  };
  switch (rng() % 8) {
    case 0:
    case 1:
      return store.check_embed(HFSet::random(rng, std::min(rank_bound, 2u)));
    case 2:
    case 3:
      return store.p_tilde(random_elem());
    case 4:
    case 5:
      return nest(nest, rank_bound);
    case 6:
      return store.restrict(store.p_tilde(random_elem()), random_elem());
    default:
      return store.restrict(nest(nest, rank_bound > 0 ? rank_bound - 1 : 0), random_elem());
  }
}

TransferSuiteReport run_transfer_suite(const SuiteConfig& cfg) {
  std::vector<TheoremEntry> corpus =
      cfg.corpus_path.empty() ? builtin_corpus() : load_corpus_file(cfg.corpus_path);
  corpus_sanity_gate(corpus);

  TransferSuiteReport rep;
  rep.formulas = corpus.size();
  for (const std::string& lname : cfg.lattices) {
    OrthoLattice l = lattice_by_name(lname);
    QSetStore store(l);
    auto interps = cfg.interpretations(l);

    // one tuple set per formula, shared across interpretations
    std::vector<std::vector<std::vector<QId>>> tuples(corpus.size());
    for (std::size_t fi = 0; fi < corpus.size(); ++fi) {
      std::mt19937_64 rng(cfg.seed ^ fnv_str(lname) ^ fnv_str(corpus[fi].id));
      for (std::size_t t = 0; t < cfg.budget; ++t) {
        std::vector<QId> args;
        for (std::size_t k = 0; k < corpus[fi].arity; ++k)
          args.push_back(sample_qset(store, rng, cfg.rank_bound));
        tuples[fi].push_back(std::move(args));
      }
    }

    std::size_t lattice_checks = 0;
    for (const Interpretation& it : interps) {
      Evaluator ev(store, it);
      for (std::size_t fi = 0; fi < corpus.size(); ++fi) {
        for (const auto& args : tuples[fi]) {
          TransferCheck tc = transfer_check(ev, corpus[fi].formula, args);
          ++rep.checks;
          ++lattice_checks;
          if (tc.bound == l.top()) ++rep.bound_top_checks;
          if (!tc.pass) {
            ++rep.violations;
            if (!rep.first_violation) {
              TransferViolation v;
              v.lattice = lname;
              v.interp_id = it.id;
              v.formula_id = corpus[fi].id;
              for (QId a : args) v.arg_literals.push_back(store.literal(a));
              v.lhs_label = l.label(tc.lhs);
              v.bound_label = l.label(tc.bound);
              rep.first_violation = std::move(v);
            }
            rep.lattice_lines.push_back("lattice " + lname + ": HALTED on violation");
            return rep;  // a violation halts the sweep with its witness
          }
        }
      }
    }
    std::ostringstream line;
    line << "lattice " << lname << " fp " << std::hex << l.fingerprint() << std::dec
         << " interps " << interps.size() << " checks " << lattice_checks
         << " violations 0";
    rep.lattice_lines.push_back(line.str());
  }
  return rep;
}

std::string TransferSuiteReport::to_text() const {
  std::ostringstream os;
  os << "transfer suite: " << formulas << " formulas, " << checks << " checks, "
     << bound_top_checks << " with commutator 1, " << violations << " violations\n";
  for (const std::string& s : lattice_lines) os << "  " << s << "\n";
  if (first_violation) {
    const auto& v = *first_violation;
    os << "  VIOLATION lattice=" << v.lattice << " interp=" << v.interp_id
       << " formula=" << v.formula_id << "\n";
    for (const auto& a : v.arg_literals) os << "    arg " << a << "\n";
    os << "    value=" << v.lhs_label << " bound=" << v.bound_label << "\n";
  }
  os << (pass() ? "PASS" : "FAIL") << "\n";
  return os.str();
}

DeMorganSuiteReport run_demorgan_suite(const SuiteConfig& cfg) {
  DeMorganSuiteReport rep;
  rep.pass = true;
  for (const std::string& lname : cfg.lattices) {
    OrthoLattice l = lattice_by_name(lname);
    DeMorganLatticeReport lr;
    lr.lattice = lname;
    lr.boolean = l.is_boolean();

    QSetStore store(l);
    auto interps = cfg.interpretations(l);
    std::vector<Formula> bodies = {
        parse("x in x1"), parse("!(x in x1)"), parse("x = x1"),
        parse("x in x1 & x in x2"), parse("x in x1 | !(x = x2)")};

    bool diagonal = true;
    for (const Interpretation& it : interps) {
      Evaluator ev(store, it);
      DeMorganCell cell;
      cell.interp_id = it.id;
      cell.self_dual = it.self_dual;

      // deterministic discriminating family: body (x in Q~) over range P~
      cell.bounded_laws = true;
      for (Elem p = 0; p < l.size() && cell.bounded_laws; ++p)
        for (Elem q = 0; q < l.size() && cell.bounded_laws; ++q) {
          Env env{{"x1", store.p_tilde(q)}};
          cell.bounded_laws =
              de_morgan_check(ev, bodies[0], "x", store.p_tilde(p), env).pass();
        }
      // sampled instances on top
      std::mt19937_64 rng(cfg.seed ^ fnv_str(lname) ^ fnv_str(it.id));
      std::size_t samples = std::min<std::size_t>(cfg.budget, 100);
      for (std::size_t t = 0; t < samples && cell.bounded_laws; ++t) {
        Env env{{"x1", sample_qset(store, rng, cfg.rank_bound)},
                {"x2", sample_qset(store, rng, cfg.rank_bound)}};
        QId range = sample_qset(store, rng, cfg.rank_bound);
        const Formula& body = bodies[rng() % bodies.size()];
        cell.bounded_laws = de_morgan_check(ev, body, "x", range, env).pass();
      }

      cell.connective_laws = true;
      for (std::size_t t = 0; t < 25 && cell.connective_laws; ++t) {
        Env env{{"x1", sample_qset(store, rng, cfg.rank_bound)},
                {"x2", sample_qset(store, rng, cfg.rank_bound)}};
        cell.connective_laws =
            de_morgan_connectives(ev, parse("x1 in x2"), parse("x2 sub x1"), env);
        if (cell.connective_laws) {
          std::vector<QId> family;
          for (int i = 0; i < 4; ++i) family.push_back(sample_qset(store, rng, cfg.rank_bound));
          cell.connective_laws = de_morgan_families(ev, parse("y in x1"), "y", family, env);
        }
      }

      bool expected = lr.boolean || it.self_dual;
      if (cell.bounded_laws != expected) diagonal = false;
      if (!cell.connective_laws) diagonal = false;
      lr.cells.push_back(std::move(cell));
    }
    lr.diagonal_exact = diagonal;
    rep.pass = rep.pass && diagonal;
    rep.lattices.push_back(std::move(lr));
  }
  return rep;
}

std::string DeMorganSuiteReport::to_text() const {
  std::ostringstream os;
  os << "de morgan suite\n";
  for (const auto& lr : lattices) {
    os << "  lattice " << lr.lattice << (lr.boolean ? " (boolean)" : "") << ": ";
    std::size_t passed = 0;
    for (const auto& c : lr.cells) passed += c.bounded_laws;
    os << passed << "/" << lr.cells.size() << " interpretations satisfy the bounded laws;"
       << " pass set " << (lr.diagonal_exact ? "matches" : "DOES NOT match")
       << " the self-dual set\n";
    os << "    bounded-law pass:";
    for (const auto& c : lr.cells)
      if (c.bounded_laws) os << " " << c.interp_id;
    os << "\n";
  }
  os << (pass ? "PASS" : "FAIL") << "\n";
  return os.str();
}

bool MetatheoryReport::pass() const {
  for (const auto& p : parts)
    if (!p.pass()) return false;
  return true;
}

std::string MetatheoryReport::to_text() const {
  std::ostringstream os;
  os << "metatheory suite\n";
  for (const auto& p : parts) {
    os << "  " << p.name << ": " << p.checks << " checks, " << p.failures << " failures\n";
    if (!p.first_failure.empty()) os << "    first failure: " << p.first_failure << "\n";
  }
  os << (pass() ? "PASS" : "FAIL") << "\n";
  return os.str();
}

namespace {

bool wanted(const std::vector<std::string>& only, const std::string& name) {
  return only.empty() || std::find(only.begin(), only.end(), name) != only.end();
}

}  // namespace

MetatheoryReport run_metatheory_suite(const SuiteConfig& cfg,
                                      const std::vector<std::string>& only) {
  MetatheoryReport rep;
  std::vector<Formula> formulas = {parse("x1 = x1"), parse("x1 sub x2"),
                                   parse("x1 in x2"), parse("A y in x1 . y in x2")};
  std::size_t per_part = std::max<std::size_t>(cfg.budget / 10, 20);

  if (wanted(only, "absoluteness")) {
    MetatheoryPart part{"absoluteness"};
    for (const std::string& lname : cfg.lattices) {
      OrthoLattice l = lattice_by_name(lname);
      QSetStore store(l);
      std::mt19937_64 rng(cfg.seed ^ fnv_str(lname) ^ fnv_str("absoluteness"));
      for (const Interpretation& it : cfg.interpretations(l)) {
        for (std::size_t t = 0; t < per_part / 4 + 1; ++t) {
          for (const Formula& f : formulas) {
            std::vector<QId> args;
            for (std::size_t k = 0; k < free_names(f).size(); ++k)
              args.push_back(sample_qset(store, rng, cfg.rank_bound));
            ElementSet sub = store.generated_logic(args);
            auto res = absoluteness_check(store, it, f, args, sub);
            ++part.checks;
            if (!res.pass) {
              ++part.failures;
              if (part.first_failure.empty())
                part.first_failure = lname + " interp " + it.id + " formula " + print(f);
            }
          }
        }
      }
    }
    rep.parts.push_back(std::move(part));
  }

  if (wanted(only, "restriction")) {
    MetatheoryPart part{"restriction"};
    for (const std::string& lname : cfg.lattices) {
      OrthoLattice l = lattice_by_name(lname);
      QSetStore store(l);
      std::mt19937_64 rng(cfg.seed ^ fnv_str(lname) ^ fnv_str("restriction"));
      for (const Interpretation& it : cfg.interpretations(l)) {
        if (!it.normal) continue;  // the principle is stated for normal pairs
        for (std::size_t t = 0; t < per_part / 4 + 1; ++t) {
          for (const Formula& f : formulas) {
            std::vector<QId> args;
            for (std::size_t k = 0; k < free_names(f).size(); ++k)
              args.push_back(sample_qset(store, rng, cfg.rank_bound));
            ElementSet commuting = commutant(l, store.joint_support(args));
            Elem p = commuting.members()[rng() % commuting.size()];
            auto res = restriction_check(store, it, f, args, p);
            ++part.checks;
            if (!res.pass) {
              ++part.failures;
              if (part.first_failure.empty())
                part.first_failure = lname + " interp " + it.id + " p=" + l.label(p) +
                                     " formula " + print(f);
            }
          }
        }
      }
    }
    rep.parts.push_back(std::move(part));
  }

  if (wanted(only, "elementary")) {
    MetatheoryPart part{"elementary"};
    for (const std::string& lname : cfg.lattices) {
      OrthoLattice l = lattice_by_name(lname);
      QSetStore store(l);
      std::vector<QId> base;
      for (unsigned i = 0; i < 3; ++i) base.push_back(store.check_embed(HFSet::ordinal(i)));
      auto assignments = enumerate_power(l, 3, std::min<std::size_t>(cfg.budget, 400),
                                         cfg.seed ^ fnv_str(lname));
      for (const Interpretation& it : cfg.interpretations(l)) {
        if (!it.normal) continue;
        Evaluator ev(store, it);
        for (const auto& w : assignments) {
          QId u = store.make({{base[0], w.weights[0]},
                              {base[1], w.weights[1]},
                              {base[2], w.weights[2]}});
          for (int i = 0; i < 3; ++i) {
            ++part.checks;
            if (ev.member(base[i], u) != w.weights[i]) {
              ++part.failures;
              if (part.first_failure.empty())
                part.first_failure = lname + " interp " + it.id + " slot " + std::to_string(i);
            }
          }
        }
      }
    }
    rep.parts.push_back(std::move(part));
  }

  if (wanted(only, "support-restriction")) {
    MetatheoryPart part{"support-restriction"};
    for (const std::string& lname : cfg.lattices) {
      OrthoLattice l = lattice_by_name(lname);
      QSetStore store(l);
      std::mt19937_64 rng(cfg.seed ^ fnv_str(lname) ^ fnv_str("support"));
      for (std::size_t t = 0; t < std::max<std::size_t>(cfg.budget / 10, 200); ++t) {
        QId u = sample_qset(store, rng, cfg.rank_bound);
        Elem p = Elem(rng() % l.size());
        std::vector<Elem> cut;
        for (Elem x : store.support(u)) cut.push_back(l.meet(x, p));
        std::sort(cut.begin(), cut.end());
        cut.erase(std::unique(cut.begin(), cut.end()), cut.end());
        ++part.checks;
        if (store.support(store.restrict(u, p)) != cut) {
          ++part.failures;
          if (part.first_failure.empty())
            part.first_failure = lname + " node " + store.literal(u) + " p=" + l.label(p);
        }
      }
    }
    rep.parts.push_back(std::move(part));
  }

  if (wanted(only, "commutator-agreement")) {
    MetatheoryPart part{"commutator-agreement"};
    for (const std::string& lname : cfg.lattices) {
      OrthoLattice l = lattice_by_name(lname);
      std::mt19937_64 rng(cfg.seed ^ fnv_str(lname) ^ fnv_str("commutator"));
      auto check_family = [&](const std::vector<Elem>& xs) {
        ElementSet fam(l, xs);
        ++part.checks;
        if (commutator_set(l, fam) != commutator_bk(l, fam)) {
          ++part.failures;
          if (part.first_failure.empty()) part.first_failure = lname;
        }
      };
      if (l.size() <= 8) {
        // exhaustive over families of at most four elements
        for (std::uint32_t mask = 0; mask < (1u << l.size()); ++mask) {
          if (std::popcount(mask) > 4) continue;
          std::vector<Elem> xs;
          for (Elem i = 0; i < l.size(); ++i)
            if (mask & (1u << i)) xs.push_back(i);
          check_family(xs);
        }
      } else {
        for (std::size_t t = 0; t < std::max<std::size_t>(cfg.budget / 10, 100); ++t) {
          std::vector<Elem> xs;
          for (std::size_t k = 0; k < 1 + rng() % 4; ++k) xs.push_back(Elem(rng() % l.size()));
          check_family(xs);
        }
      }
    }
    rep.parts.push_back(std::move(part));
  }

  return rep;
}

CensusSuiteReport run_census(const SuiteConfig& cfg) {
  CensusSuiteReport rep;
  for (const std::string& lname : cfg.lattices) {
    OrthoLattice l = lattice_by_name(lname);
    auto census = interpretation_census(l);
    CensusLatticeReport lr;
    lr.lattice = lname;
    lr.interpretations = census.distinct;
    lr.self_dual = census.self_dual_ids.size();
    lr.polynomials = census_polynomials(l);
    for (Elem e : census.subset_row) lr.subset_row.push_back(l.label(e));
    for (Elem e : census.membership_row) lr.membership_row.push_back(l.label(e));
    rep.lattices.push_back(std::move(lr));
  }
  return rep;
}

std::string CensusSuiteReport::to_text() const {
  std::ostringstream os;
  os << "census\n";
  for (const auto& lr : lattices) {
    os << "  lattice " << lr.lattice << ": " << lr.polynomials << " polynomials, "
       << lr.interpretations << " interpretations, " << lr.self_dual << " self-dual\n";
    if (!lr.subset_row.empty()) {
      os << "    [[P~ sub Q~]] by j:";
      for (const auto& s : lr.subset_row) os << " " << s;
      os << "\n    [[(Q')~ in P~]] by k:";
      for (const auto& s : lr.membership_row) os << " " << s;
      os << "\n";
    }
  }
  return os.str();
}

}  // namespace qst
