#include <doctest.h>

#include <random>

#include "qst/interp.hpp"

using namespace qst;

namespace {

QId random_qset(QSetStore& s, std::mt19937_64& rng, unsigned max_rank) {
  if (max_rank == 0) return s.empty_check();
  std::size_t width = rng() % 3;
  std::vector<std::pair<QId, Elem>> dom;
  for (std::size_t i = 0; i < width + (max_rank == 1 ? 0 : 1); ++i) {
    QId child = random_qset(s, rng, unsigned(rng() % max_rank));
    Elem w = Elem(rng() % s.lattice().size());
    bool dup = false;
    for (auto& [c, cw] : dom) dup = dup || c == child;
    if (!dup) dom.emplace_back(child, w);
  }
  return s.make(std::move(dom));
}

}  // namespace

TEST_CASE("atomic truth values at the base of the universe") {
  auto mo2 = OrthoLattice::mo(2);
  QSetStore s(mo2);
  QId zero = s.empty_check();

  for (const auto& it : all_polynomial_interpretations(mo2)) {
    Evaluator ev(s, it);
    CHECK(ev.eq(zero, zero) == mo2.top());
    std::mt19937_64 rng(1);
    for (int i = 0; i < 10; ++i)
      CHECK(ev.member(random_qset(s, rng, 2), zero) == mo2.bottom());
    for (Elem p = 0; p < mo2.size(); ++p) {
      QId pt = s.p_tilde(p);
      CHECK(ev.member(zero, pt) == it.conj(p, mo2.top()));
      CHECK(ev.eq(zero, pt) == it.imp(p, mo2.bottom()));
    }
  }
}

TEST_CASE("membership recovers weights over checked bases") {
  auto mo2 = OrthoLattice::mo(2);
  QSetStore s(mo2);
  std::vector<QId> base;
  for (unsigned i = 0; i < 3; ++i) base.push_back(s.check_embed(HFSet::ordinal(i)));

  for (const auto& it : all_polynomial_interpretations(mo2)) {
    if (!it.normal) continue;
    Evaluator ev(s, it);
    // exhaust u with dom(u) = dom of the checked 3-element base
    for (Elem w0 = 0; w0 < mo2.size(); ++w0)
      for (Elem w1 = 0; w1 < mo2.size(); ++w1)
        for (Elem w2 = 0; w2 < mo2.size(); ++w2) {
          QId u = s.make({{base[0], w0}, {base[1], w1}, {base[2], w2}});
          CHECK(ev.member(base[0], u) == w0);
          CHECK(ev.member(base[1], u) == w1);
          CHECK(ev.member(base[2], u) == w2);
        }
  }
}

TEST_CASE("eval example: membership in a weighted singleton") {
  auto mo2 = OrthoLattice::mo(2);
  Elem a = *mo2.find("a");
  QSetStore s(mo2);
  Evaluator ev(s, Interpretation::polynomial(mo2, 3, 3));
  Env env{{"c0", s.empty_check()}, {"pA", s.p_tilde(a)}};
  CHECK(ev.truth_value(parse("c0 in pA"), env) == a);
}

TEST_CASE("transfer instances") {
  auto mo2 = OrthoLattice::mo(2);
  Elem a = *mo2.find("a"), b = *mo2.find("b");
  QSetStore s(mo2);
  Formula dmsc0 = parse("(A x in x1 . x in x2) <-> !(E x in x1 . !(x in x2))");

  // check-embedded arguments have commutator 1, so the value must be 1
  for (const auto& it : all_polynomial_interpretations(mo2)) {
    Evaluator ev(s, it);
    auto tc = transfer_check(ev, dmsc0,
                             {s.check_embed(HFSet::ordinal(2)), s.check_embed(HFSet::ordinal(1))});
    CHECK(tc.bound == mo2.top());
    CHECK(tc.pass);
    CHECK(tc.lhs == mo2.top());
  }

  // Takeuti interpretation: the bound collapses to 0 and gives no constraint
  {
    Evaluator ev(s, Interpretation::polynomial(mo2, 3, 5));
    auto tc = transfer_check(ev, dmsc0, {s.p_tilde(a), s.p_tilde(b)});
    CHECK(tc.bound == mo2.bottom());
    CHECK(tc.pass);
    CHECK(tc.lhs != mo2.top());
  }
  // the self-dual Sasaki pair restores value 1
  {
    Evaluator ev(s, Interpretation::polynomial(mo2, 3, 3));
    auto tc = transfer_check(ev, dmsc0, {s.p_tilde(a), s.p_tilde(b)});
    CHECK(tc.lhs == mo2.top());
  }
}

TEST_CASE("bounded De Morgan laws hold exactly for self-dual pairs") {
  auto mo2 = OrthoLattice::mo(2);
  QSetStore s(mo2);

  // body x in (Q~) over range P~: the proof's discriminating family
  for (const auto& it : all_polynomial_interpretations(mo2)) {
    Evaluator ev(s, it);
    bool all_pass = true;
    for (Elem p = 0; p < mo2.size() && all_pass; ++p)
      for (Elem q = 0; q < mo2.size() && all_pass; ++q) {
        Env env{{"$q", s.p_tilde(q)}};
        Formula body = make_atom(AtomRel::In, Term{true, "x"}, Term{false, "$q"});
        auto check = de_morgan_check(ev, body, "x", s.p_tilde(p), env);
        all_pass = check.pass();
      }
    CHECK(all_pass == it.self_dual);
  }
}

TEST_CASE("connective and family De Morgan laws hold in every interpretation") {
  auto mo2 = OrthoLattice::mo(2);
  QSetStore s(mo2);
  std::mt19937_64 rng(23);
  for (const auto& it : all_polynomial_interpretations(mo2)) {
    Evaluator ev(s, it);
    for (int trial = 0; trial < 8; ++trial) {
      Env env{{"x1", random_qset(s, rng, 2)}, {"x2", random_qset(s, rng, 2)}};
      Formula f1 = parse("x1 in x2");
      Formula f2 = parse("x1 = x2");
      CHECK(de_morgan_connectives(ev, f1, f2, env));
      std::vector<QId> family;
      for (int i = 0; i < 4; ++i) family.push_back(random_qset(s, rng, 2));
      CHECK(de_morgan_families(ev, parse("y in x2"), "y", family, env));
    }
  }
}

TEST_CASE("takeuti counterexample") {
  auto mo2 = OrthoLattice::mo(2);
  auto ce = takeuti_counterexample(mo2);
  CHECK(ce.found);
  CHECK(ce.exists_side == mo2.bottom());
  CHECK(ce.forall_negation_side == *mo2.find("a"));

  auto prod = OrthoLattice::product(OrthoLattice::boolean(1), OrthoLattice::mo(2));
  auto cp = takeuti_counterexample(prod);
  CHECK(cp.exists_side == prod.bottom());
  CHECK(cp.forall_negation_side == *prod.find("(0,a)"));

  CHECK_THROWS_AS(takeuti_counterexample(OrthoLattice::boolean(3)), Error);
}

TEST_CASE("delta0 absoluteness") {
  auto mo2 = OrthoLattice::mo(2);
  Elem a = *mo2.find("a");
  QSetStore s(mo2);
  Formula f = parse("x1 sub x1 & !(x1 in x1)");
  auto interp = Interpretation::polynomial(mo2, 3, 3);

  // two-valued core
  auto rep = absoluteness_check(s, interp, f, {s.check_embed(HFSet::ordinal(2))},
                                ElementSet(mo2, {mo2.bottom(), mo2.top()}));
  CHECK(rep.pass);

  // the four-element sublogic around one atom: value of [[0-check in a~]]
  auto rep2 = absoluteness_check(s, interp, parse("x2 in x1"),
                                 {s.p_tilde(a), s.empty_check()},
                                 ElementSet(mo2, {mo2.bottom(), a, mo2.ortho(a), mo2.top()}));
  CHECK(rep2.pass);
  CHECK(rep2.full_value == a);

  std::vector<Elem> all(mo2.size());
  for (Elem i = 0; i < mo2.size(); ++i) all[i] = i;
  auto rep3 = absoluteness_check(s, interp, parse("x1 = x1"), {s.p_tilde(a)},
                                 ElementSet(mo2, all));
  CHECK(rep3.pass);

  // support outside the sublogic is rejected
  CHECK_THROWS_AS(absoluteness_check(s, interp, f, {s.p_tilde(a)},
                                     ElementSet(mo2, {mo2.bottom(), mo2.top()})),
                  Error);
}

TEST_CASE("delta0 restriction principle") {
  auto mo2 = OrthoLattice::mo(2);
  Elem a = *mo2.find("a"), b = *mo2.find("b");
  QSetStore s(mo2);
  auto interp = Interpretation::polynomial(mo2, 3, 3);
  Formula f = parse("x1 sub x1");

  auto r1 = restriction_check(s, interp, f, {s.p_tilde(a)}, mo2.top());
  CHECK(r1.pass);
  auto r0 = restriction_check(s, interp, f, {s.p_tilde(a)}, mo2.bottom());
  CHECK(r0.pass);
  CHECK(r0.lhs == mo2.bottom());

  auto rp = restriction_check(s, interp, parse("x1 in x2"),
                              {s.empty_check(), s.p_tilde(a)}, a);
  CHECK(rp.pass);

  // p must commute with the supports
  CHECK_THROWS_AS(restriction_check(s, interp, f, {s.p_tilde(a)}, b), Error);
}

TEST_CASE("interpretation census") {
  auto mo2 = OrthoLattice::mo(2);
  auto census = interpretation_census(mo2);
  CHECK(census.distinct == 36);
  CHECK(census.self_dual_ids ==
        std::vector<std::string>{"0,0", "1,1", "2,2", "3,3", "4,4", "5,5"});
  REQUIRE(census.has_noncommuting_pair);
  Elem a = census.witness_p, b = census.witness_q;
  CHECK(census.subset_row ==
        std::vector<Elem>{mo2.bottom(), a, b, mo2.ortho(a), mo2.ortho(b), mo2.top()});
  CHECK(census.membership_row ==
        std::vector<Elem>{mo2.top(), mo2.ortho(a), b, a, mo2.ortho(b), mo2.bottom()});

  CHECK(interpretation_census(OrthoLattice::boolean(3)).distinct == 1);

  auto prod = OrthoLattice::product(OrthoLattice::boolean(1), OrthoLattice::mo(2));
  auto pc = interpretation_census(prod);
  CHECK(pc.distinct == 36);
  CHECK(pc.self_dual_ids.size() == 6);
}

TEST_CASE("value-1 transfer forces Boolean logic") {
  auto mo2 = OrthoLattice::mo(2);
  auto rep = boolean_collapse_check(mo2, Interpretation::polynomial(mo2, 3, 3));
  CHECK_FALSE(rep.vacuous);
  CHECK(rep.value != mo2.top());

  auto b3 = OrthoLattice::boolean(3);
  CHECK(boolean_collapse_check(b3, Interpretation::polynomial(b3, 3, 3)).vacuous);

  auto prod = OrthoLattice::product(OrthoLattice::boolean(1), OrthoLattice::mo(2));
  auto rp = boolean_collapse_check(prod, Interpretation::polynomial(prod, 2, 2));
  CHECK_FALSE(rp.vacuous);
  CHECK(rp.value != prod.top());
}

TEST_CASE("non-normal interpretations violate transfer") {
  auto b2 = OrthoLattice::boolean(2);
  auto fails = non_normal_transfer_failure(b2);
  REQUIRE(fails.size() == 2);
  for (const auto& f : fails) {
    CHECK(f.violated);
    CHECK(f.bound == b2.top());
    CHECK(f.lhs != b2.top());
  }

  // control: the normal Sasaki pair has no violation on those instances
  QSetStore s(b2);
  Evaluator ev(s, Interpretation::polynomial(b2, 3, 3));
  Formula duality = parse("x1 in x2 <-> !(A y in x2 . !(y = x1))");
  for (Elem p = 0; p < b2.size(); ++p)
    for (Elem q = 0; q < b2.size(); ++q)
      CHECK(transfer_check(ev, duality, {s.p_tilde(p), s.p_tilde(q)}).pass);
}

TEST_CASE("memoization is sound") {
  auto mo2 = OrthoLattice::mo(2);
  QSetStore s(mo2);
  std::mt19937_64 rng(47);
  auto interp = Interpretation::polynomial(mo2, 2, 4);
  Formula f = parse("(x1 sub x2 & x2 sub x1) <-> x1 = x2");
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<QId> args{random_qset(s, rng, 3), random_qset(s, rng, 3)};
    Evaluator cached(s, interp, true), plain(s, interp, false);
    CHECK(cached.truth_value(f, args) == plain.truth_value(f, args));
    CHECK(plain.cache_entries() == 0);
  }
}

TEST_CASE("unbounded quantifiers are rejected with a clear error") {
  auto mo2 = OrthoLattice::mo(2);
  QSetStore s(mo2);
  Evaluator ev(s, Interpretation::polynomial(mo2, 3, 3));
  CHECK_THROWS_AS(ev.truth_value(parse("A x . x = x"), Env{}), UnsupportedConstruct);
}
