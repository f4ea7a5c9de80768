#include <doctest.h>

#include <random>

#include "qst/ops.hpp"

using namespace qst;

namespace {

std::vector<OrthoLattice> test_lattices() {
  std::vector<OrthoLattice> ls;
  ls.push_back(OrthoLattice::mo(2));
  ls.push_back(OrthoLattice::boolean(3));
  ls.push_back(OrthoLattice::product(OrthoLattice::boolean(1), OrthoLattice::mo(2)));
  return ls;
}

}  // namespace

TEST_CASE("kotas canonical form evaluation") {
  auto mo2 = OrthoLattice::mo(2);
  Elem a = *mo2.find("a"), b = *mo2.find("b");

  // Sasaki arrow spec: alpha=gamma=delta=1, beta=0, eps=P'
  auto imp3 = kotas_spec_implication(3);
  CHECK(imp3.eps == KotasEps::POrtho);
  CHECK(eval_kotas(mo2, imp3, a, b) == mo2.ortho(a));

  // Sasaki projection spec: alpha=1 others 0, eps=P
  auto conj3 = kotas_spec_conjunction(3);
  CHECK(conj3.eps == KotasEps::P);
  CHECK(eval_kotas(mo2, conj3, a, b) == a);

  // on Boolean lattices every ->_j is classical implication
  auto b3 = OrthoLattice::boolean(3);
  for (int j = 0; j < 6; ++j)
    for (Elem p = 0; p < b3.size(); ++p)
      for (Elem q = 0; q < b3.size(); ++q)
        CHECK(eval_kotas(b3, kotas_spec_implication(j), p, q) == b3.join(b3.ortho(p), q));
}

TEST_CASE("named operations match their canonical forms") {
  for (const auto& l : test_lattices()) {
    for (int j = 0; j < 6; ++j) {
      auto imp = BinaryOperation::implication(l, j);
      auto imp_k = BinaryOperation::kotas(l, kotas_spec_implication(j));
      CHECK(imp.same_table(imp_k));
      auto conj = BinaryOperation::conjunction(l, j);
      auto conj_k = BinaryOperation::kotas(l, kotas_spec_conjunction(j));
      CHECK(conj.same_table(conj_k));
    }
    // explicit identities from the operation lists
    auto imp5 = BinaryOperation::implication(l, 5);
    auto conj3 = BinaryOperation::conjunction(l, 3);
    auto conj5 = BinaryOperation::conjunction(l, 5);
    for (Elem p = 0; p < l.size(); ++p)
      for (Elem q = 0; q < l.size(); ++q) {
        CHECK(imp5(p, q) == l.join(l.ortho(p), q));
        CHECK(conj3(p, q) == l.meet(p, l.join(l.ortho(p), q)));  // Sasaki projection
        CHECK(conj5(p, q) == l.meet(p, q));
      }
  }
}

TEST_CASE("dual conjunction") {
  for (const auto& l : test_lattices()) {
    for (int j = 0; j < 6; ++j) {
      auto imp = BinaryOperation::implication(l, j);
      CHECK(dual_conjunction(l, imp).same_table(BinaryOperation::conjunction(l, j)));
      CHECK(dual_conjunction(l, dual_conjunction(l, imp)).same_table(imp));
    }
  }
}

TEST_CASE("locality of polynomial operations") {
  auto mo2 = OrthoLattice::mo(2);
  for (int j = 0; j < 6; ++j) {
    CHECK(check_local(mo2, BinaryOperation::implication(mo2, j)).ok());
    CHECK(check_local(mo2, BinaryOperation::conjunction(mo2, j)).ok());
  }
  // every canonical form is local (restriction property)
  for (const auto& l : test_lattices())
    for (const auto& s : all_kotas_specs())
      CHECK(check_local(l, BinaryOperation::kotas(l, s)).ok());
}

TEST_CASE("the equality indicator operation is not local") {
  // (L1) holds since 0 and 1 lie in every sublogic; (L2) must fail on any
  // lattice with an element strictly between the bounds (cut by E, the pair
  // (1, E) collapses to (E, E)).
  for (const auto& l : test_lattices()) {
    auto op = equality_indicator_op(l);
    auto rep = check_local(l, op);
    CHECK(rep.l1_ok);
    CHECK_FALSE(rep.l2_ok);
    REQUIRE(rep.l2_witness);
    auto [p, q, e] = *rep.l2_witness;
    CHECK(l.commutes(p, e));
    CHECK(l.commutes(q, e));
    CHECK(l.meet(op(p, q), e) != l.meet(op(l.meet(p, e), l.meet(q, e)), e));
  }
}

TEST_CASE("implicative condition classification") {
  // (E)+(MP)+(MT)+(NG) hold exactly for j in {0,2,3}; (E) exactly for j <= 4
  for (const auto& l : {OrthoLattice::mo(2),
                        OrthoLattice::product(OrthoLattice::boolean(1), OrthoLattice::mo(2))}) {
    for (int j = 0; j < 6; ++j) {
      auto rep = check_conditions(l, BinaryOperation::implication(l, j));
      CHECK(rep.lb.holds);
      CHECK(rep.ng.holds);
      CHECK(rep.e.holds == (j <= 4));
      bool material = (j == 0 || j == 2 || j == 3);
      CHECK(rep.material() == material);
      CHECK(rep.mp.holds == (j != 1 && j != 5));
      CHECK(rep.mt.holds == (j != 4 && j != 5));
    }
  }

  // classical implication fails (E) with a valid witness
  auto mo2 = OrthoLattice::mo(2);
  auto rep5 = check_conditions(mo2, BinaryOperation::implication(mo2, 5));
  REQUIRE(rep5.e.witness);
  auto w = *rep5.e.witness;
  auto imp5 = BinaryOperation::implication(mo2, 5);
  CHECK(imp5(w.p, w.q) == mo2.top());
  CHECK_FALSE(mo2.leq(w.p, w.q));

  // modus ponens fails for ->_1 on mo2
  auto rep1 = check_conditions(mo2, BinaryOperation::implication(mo2, 1));
  CHECK_FALSE(rep1.mp.holds);

  // conjunctions satisfy (GC)
  for (const auto& l : test_lattices())
    for (int j = 0; j < 6; ++j)
      CHECK(check_conditions(l, BinaryOperation::conjunction(l, j)).gc.holds);
}

TEST_CASE("boolean and non-boolean parts") {
  auto mo2 = OrthoLattice::mo(2);
  Elem a = *mo2.find("a"), b = *mo2.find("b");
  CHECK(b_part(mo2, a, b, a) == mo2.bottom());
  CHECK(n_part(mo2, a, b, a) == a);

  auto b2 = OrthoLattice::boolean(2);
  for (Elem x = 0; x < b2.size(); ++x) {
    CHECK(b_part(b2, *b2.find("a"), *b2.find("b"), x) == x);
    CHECK(n_part(b2, *b2.find("a"), *b2.find("b"), x) == b2.bottom());
  }

  auto prod = OrthoLattice::product(OrthoLattice::boolean(1), OrthoLattice::mo(2));
  Elem pa = *prod.find("(1,a)"), pb = *prod.find("(1,b)");
  CHECK(b_part(prod, pa, pb, pa) == *prod.find("(1,0)"));
  CHECK(n_part(prod, pa, pb, pa) == *prod.find("(0,a)"));
  CHECK(prod.join(b_part(prod, pa, pb, pa), n_part(prod, pa, pb, pa)) == pa);

  // membership precondition: (1,b) is outside the sublogic generated by
  // {(1,a)} alone
  CHECK_THROWS_AS(b_part(prod, pa, pa, pb), Error);
}

TEST_CASE("polynomial census") {
  CHECK(census_polynomials(OrthoLattice::boolean(2)) == 16);
  CHECK(census_polynomials(OrthoLattice::mo(2)) == 6);
  CHECK(census_polynomials(OrthoLattice::product(OrthoLattice::boolean(1),
                                                 OrthoLattice::mo(2))) == 96);
}

TEST_CASE("quantization checks") {
  BoolPoly classical_imp = BoolPoly::join(BoolPoly::ortho(BoolPoly::p()), BoolPoly::q());
  BoolPoly classical_and = BoolPoly::meet(BoolPoly::p(), BoolPoly::q());
  BoolPoly classical_or = BoolPoly::join(BoolPoly::p(), BoolPoly::q());

  for (const auto& l : test_lattices()) {
    for (int j = 0; j < 6; ++j) {
      auto qi = check_quantization(l, BinaryOperation::implication(l, j), classical_imp);
      CHECK(qi.commuting_ok);
      CHECK(qi.bpart_ok);
      auto qc = check_quantization(l, BinaryOperation::conjunction(l, j), classical_and);
      CHECK(qc.commuting_ok);
      CHECK(qc.bpart_ok);
    }
  }

  auto b2 = OrthoLattice::boolean(2);
  auto bad = check_quantization(b2, BinaryOperation::conjunction(b2, 3), classical_or);
  CHECK_FALSE(bad.commuting_ok);
  REQUIRE(bad.witness);
  CHECK(b2.meet(bad.witness->p, bad.witness->q) != b2.join(bad.witness->p, bad.witness->q));
}

TEST_CASE("implication and conjunction bounds") {
  for (const auto& l : test_lattices()) {
    auto imp0 = BinaryOperation::implication(l, 0);
    auto imp5 = BinaryOperation::implication(l, 5);
    for (const auto& s : all_kotas_specs()) {
      auto op = BinaryOperation::kotas(l, s);
      auto rep = check_conditions(l, op);
      for (Elem p = 0; p < l.size(); ++p)
        for (Elem q = 0; q < l.size(); ++q) {
          if (rep.lb.holds) {
            CHECK(l.leq(imp0(p, q), op(p, q)));
            CHECK(l.leq(op(p, q), imp5(p, q)));
          }
          if (rep.gc.holds) {
            CHECK(l.leq(l.meet(p, q), op(p, q)));
            CHECK(l.leq(op(p, q), l.join(p, q)));
          }
        }
    }
  }
}

TEST_CASE("local operations respect cuts of commuting families") {
  std::mt19937_64 rng(41);
  for (const auto& l : test_lattices()) {
    std::vector<BinaryOperation> ops;
    for (int j = 0; j < 6; ++j) {
      ops.push_back(BinaryOperation::implication(l, j));
      ops.push_back(BinaryOperation::conjunction(l, j));
    }
    for (int trial = 0; trial < 120; ++trial) {
      Elem e = Elem(rng() % l.size());
      std::vector<std::pair<Elem, Elem>> family;
      while (family.size() < 1 + rng() % 3) {
        Elem p = Elem(rng() % l.size()), q = Elem(rng() % l.size());
        if (l.commutes(p, e) && l.commutes(q, e)) family.emplace_back(p, q);
      }
      const auto& f = ops[rng() % ops.size()];
      Elem meet_plain = l.top(), meet_cut = l.top();
      Elem join_plain = l.bottom(), join_cut = l.bottom();
      for (auto [p, q] : family) {
        meet_plain = l.meet(meet_plain, f(p, q));
        join_plain = l.join(join_plain, f(p, q));
        meet_cut = l.meet(meet_cut, f(l.meet(p, e), l.meet(q, e)));
        join_cut = l.join(join_cut, f(l.meet(p, e), l.meet(q, e)));
      }
      CHECK(l.meet(meet_plain, e) == l.meet(meet_cut, e));
      CHECK(l.meet(join_plain, e) == l.meet(join_cut, e));
    }
  }
}
