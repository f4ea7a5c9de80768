#include <doctest.h>

#include <random>
#include <sstream>

#include "qst/lattice.hpp"

using namespace qst;

namespace {

// Hexagon ortholattice: 0 < a < b < 1 and 0 < b' < a' < 1. An ortholattice
// that violates the orthomodular law, used for negative tests.
OrthoLattice make_o6() {
  std::vector<std::pair<Elem, Elem>> covers = {{0, 1}, {1, 2}, {2, 5}, {0, 3}, {3, 4}, {4, 5}};
  std::vector<Elem> ortho = {5, 4, 3, 2, 1, 0};
  return OrthoLattice::from_relation(6, covers, ortho, {"0", "a", "b", "b'", "a'", "1"},
                                     /*allow_non_oml=*/true);
}

Elem pick(std::mt19937_64& rng, const OrthoLattice& l) {
  return Elem(rng() % l.size());
}

}  // namespace

TEST_CASE("boolean lattice construction") {
  CHECK_THROWS_AS(OrthoLattice::boolean(0), Error);
  CHECK_THROWS_AS(OrthoLattice::boolean(13, 4096), CapacityError);

  auto b1 = OrthoLattice::boolean(1);
  CHECK(b1.size() == 2);
  CHECK(b1.bottom() != b1.top());

  auto b2 = OrthoLattice::boolean(2);
  CHECK(b2.size() == 4);
  auto a = b2.find("a"), b = b2.find("b");
  REQUIRE(a);
  REQUIRE(b);
  CHECK(b2.ortho(*a) == *b);

  auto b3 = OrthoLattice::boolean(3);
  CHECK(b3.size() == 8);
  CHECK(b3.is_boolean());
  CHECK(b3.verify_axioms().ok);
}

TEST_CASE("mo lattice construction") {
  CHECK_THROWS_AS(OrthoLattice::mo(0), Error);

  auto mo2 = OrthoLattice::mo(2);
  CHECK(mo2.size() == 6);
  CHECK(mo2.verify_axioms().ok);
  CHECK(mo2.is_extremely_noncommutative());
  CHECK_FALSE(mo2.is_boolean());
  Elem a = *mo2.find("a"), b = *mo2.find("b");
  CHECK(mo2.meet(a, b) == mo2.bottom());
  CHECK(mo2.join(a, b) == mo2.top());

  auto mo1 = OrthoLattice::mo(1);
  CHECK(mo1.size() == 4);
  CHECK(isomorphic(mo1, OrthoLattice::boolean(2)));
}

TEST_CASE("direct product") {
  auto b1 = OrthoLattice::boolean(1);
  auto mo2 = OrthoLattice::mo(2);

  auto p = OrthoLattice::product(b1, mo2);
  CHECK(p.size() == 12);
  CHECK(p.verify_axioms().ok);
  CHECK_FALSE(p.is_boolean());
  CHECK_FALSE(p.is_extremely_noncommutative());

  CHECK(isomorphic(OrthoLattice::product(b1, b1), OrthoLattice::boolean(2)));
  CHECK(OrthoLattice::product(mo2, mo2).size() == 36);
  CHECK_THROWS_AS(OrthoLattice::product(mo2, mo2, 16), CapacityError);
}

TEST_CASE("horizontal sum builds MOn") {
  auto mo1 = OrthoLattice::mo(1);
  auto sum = OrthoLattice::horizontal_sum(mo1, mo1);
  CHECK(sum.size() == 6);
  CHECK(isomorphic(sum, OrthoLattice::mo(2)));
}

TEST_CASE("verify_axioms flags the hexagon") {
  CHECK(OrthoLattice::mo(2).verify_axioms().ok);
  CHECK(OrthoLattice::boolean(3).verify_axioms().ok);

  auto o6 = make_o6();
  auto rep = o6.verify_axioms();
  CHECK_FALSE(rep.ok);
  CHECK(rep.what == "orthomodular law violated");
  // the scan reports a pair x < y with x v (x^perp \ y) != y
  CHECK(o6.leq(rep.lhs, rep.rhs));
  CHECK(o6.join(rep.lhs, o6.meet(o6.ortho(rep.lhs), rep.rhs)) != rep.rhs);

  // strict construction refuses the same table
  std::vector<std::pair<Elem, Elem>> covers = {{0, 1}, {1, 2}, {2, 5}, {0, 3}, {3, 4}, {4, 5}};
  std::vector<Elem> ortho = {5, 4, 3, 2, 1, 0};
  CHECK_THROWS_AS(OrthoLattice::from_relation(6, covers, ortho, {}, false), Error);
}

TEST_CASE("commutation relation") {
  auto mo2 = OrthoLattice::mo(2);
  Elem a = *mo2.find("a"), b = *mo2.find("b");
  CHECK(mo2.commutes(a, mo2.ortho(a)));
  CHECK_FALSE(mo2.commutes(a, b));

  auto b2 = OrthoLattice::boolean(2);
  for (Elem p = 0; p < b2.size(); ++p)
    for (Elem q = 0; q < b2.size(); ++q) CHECK(b2.commutes(p, q));
}

TEST_CASE("commutant and generated sublogic") {
  auto mo2 = OrthoLattice::mo(2);
  Elem a = *mo2.find("a"), b = *mo2.find("b");

  auto ca = commutant(mo2, ElementSet(mo2, {a}));
  CHECK(ca.members() == std::vector<Elem>{mo2.bottom(), a, mo2.ortho(a), mo2.top()});

  auto empty = commutant(mo2, ElementSet(mo2, {}));
  CHECK(empty.size() == mo2.size());

  auto gen = generated_sublogic(mo2, ElementSet(mo2, {a, b}));
  CHECK(gen.size() == 6);

  // A = {0}: commutant is everything, double commutant is the center
  auto center = generated_sublogic(mo2, ElementSet(mo2, {mo2.bottom()}));
  CHECK(center.members() == std::vector<Elem>{mo2.bottom(), mo2.top()});

  // Boolean double commutant of one element: in bool2 the four-element
  // subalgebra {0,a,a^perp,1} is the whole lattice. (Any subset of a Boolean
  // logic generates the whole logic: its commutant is everything.)
  auto b2 = OrthoLattice::boolean(2);
  auto one = generated_sublogic(b2, ElementSet(b2, {*b2.find("a")}));
  CHECK(one.members() ==
        std::vector<Elem>{b2.bottom(), *b2.find("a"), b2.ortho(*b2.find("a")), b2.top()});

  auto b3 = OrthoLattice::boolean(3);
  CHECK(generated_sublogic(b3, ElementSet(b3, {*b3.find("a")})).size() == b3.size());
}

TEST_CASE("triple commutant collapses") {
  std::mt19937_64 rng(7);
  for (const auto& l : {OrthoLattice::mo(2), OrthoLattice::boolean(3),
                        OrthoLattice::product(OrthoLattice::boolean(1), OrthoLattice::mo(2))}) {
    for (int trial = 0; trial < 30; ++trial) {
      std::vector<Elem> xs;
      for (int i = 0; i < int(rng() % 4); ++i) xs.push_back(pick(rng, l));
      ElementSet a(l, xs);
      auto bang = commutant(l, a);
      auto tri = commutant(l, commutant(l, bang));
      CHECK(tri.members() == bang.members());
    }
  }
}

TEST_CASE("pair commutator") {
  auto mo2 = OrthoLattice::mo(2);
  Elem a = *mo2.find("a"), b = *mo2.find("b");
  CHECK(mo2.commutator_pair(a, b) == mo2.bottom());
  for (Elem p = 0; p < mo2.size(); ++p)
    CHECK(mo2.commutator_pair(p, mo2.ortho(p)) == mo2.top());

  auto b2 = OrthoLattice::boolean(2);
  for (Elem p = 0; p < b2.size(); ++p)
    for (Elem q = 0; q < b2.size(); ++q) CHECK(b2.commutator_pair(p, q) == b2.top());
}

TEST_CASE("family commutator: max form vs sign-pattern join") {
  auto mo2 = OrthoLattice::mo(2);
  Elem a = *mo2.find("a"), b = *mo2.find("b");
  CHECK(commutator_set(mo2, ElementSet(mo2, {a, b})) == mo2.bottom());
  CHECK(commutator_set(mo2, ElementSet(mo2, {a})) == mo2.top());
  CHECK(commutator_set(mo2, ElementSet(mo2, {})) == mo2.top());

  auto prod = OrthoLattice::product(OrthoLattice::boolean(1), OrthoLattice::mo(2));
  Elem pa = *prod.find("(1,a)"), pb = *prod.find("(1,b)");
  Elem central = *prod.find("(1,0)");
  CHECK(commutator_set(prod, ElementSet(prod, {pa, pb})) == central);
  CHECK(commutator_bk(prod, ElementSet(prod, {pa, pb})) == central);

  // exhaustive agreement on mo2 for |A| <= 4
  std::vector<Elem> all(mo2.size());
  for (Elem i = 0; i < mo2.size(); ++i) all[i] = i;
  for (std::uint32_t mask = 0; mask < (1u << mo2.size()); ++mask) {
    if (std::popcount(mask) > 4) continue;
    std::vector<Elem> xs;
    for (Elem i = 0; i < mo2.size(); ++i)
      if (mask & (1u << i)) xs.push_back(i);
    ElementSet fam(mo2, xs);
    CHECK(commutator_set(mo2, fam) == commutator_bk(mo2, fam));
  }

  // sampled agreement elsewhere
  std::mt19937_64 rng(11);
  for (const auto& l : {OrthoLattice::boolean(3), prod}) {
    for (int trial = 0; trial < 40; ++trial) {
      std::vector<Elem> xs;
      for (int i = 0; i < int(1 + rng() % 4); ++i) xs.push_back(pick(rng, l));
      ElementSet fam(l, xs);
      CHECK(commutator_set(l, fam) == commutator_bk(l, fam));
    }
  }
}

TEST_CASE("commutator decomposition") {
  auto mo2 = OrthoLattice::mo(2);
  Elem a = *mo2.find("a"), b = *mo2.find("b");
  auto d = decompose(mo2, ElementSet(mo2, {a, b}));
  CHECK(d.commutator == mo2.bottom());
  CHECK(d.boolean_part.lattice.size() == 1);
  CHECK(isomorphic(d.residual_part.lattice, mo2));
  CHECK(d.reconstruction_ok);

  auto b3 = OrthoLattice::boolean(3);
  auto db = decompose(b3, ElementSet(b3, {*b3.find("a"), *b3.find("b")}));
  CHECK(db.residual_part.lattice.size() == 1);
  CHECK(db.reconstruction_ok);

  auto prod = OrthoLattice::product(OrthoLattice::boolean(1), OrthoLattice::mo(2));
  auto dp = decompose(prod, ElementSet(prod, {*prod.find("(1,a)"), *prod.find("(1,b)")}));
  CHECK(isomorphic(dp.boolean_part.lattice, OrthoLattice::boolean(1)));
  CHECK(isomorphic(dp.residual_part.lattice, mo2));
  CHECK(dp.reconstruction_ok);
}

TEST_CASE("meets and joins distribute over commuting families") {
  std::mt19937_64 rng(23);
  for (const auto& l : {OrthoLattice::mo(2), OrthoLattice::boolean(3),
                        OrthoLattice::product(OrthoLattice::mo(2), OrthoLattice::mo(2))}) {
    REQUIRE(l.size() <= 48);
    for (int trial = 0; trial < 200; ++trial) {
      Elem e = pick(rng, l);
      std::vector<Elem> family;
      for (int i = 0; i < int(1 + rng() % 4); ++i) {
        Elem p = pick(rng, l);
        if (l.commutes(p, e)) family.push_back(p);
      }
      if (family.empty()) continue;
      Elem lhs_join = l.meet(l.join_all(family), e);
      Elem lhs_meet = l.meet(l.meet_all(family), e);
      Elem rhs_join = l.bottom(), rhs_meet = l.top();
      for (Elem p : family) {
        rhs_join = l.join(rhs_join, l.meet(p, e));
        rhs_meet = l.meet(rhs_meet, l.meet(p, e));
      }
      rhs_meet = l.meet(rhs_meet, e);
      CHECK(lhs_join == rhs_join);
      CHECK(lhs_meet == rhs_meet);
    }
  }
}

TEST_CASE("commuting triples generate distributive sublattices") {
  auto check_six = [](const OrthoLattice& l, Elem x, Elem y, Elem z) {
    CHECK(l.meet(x, l.join(y, z)) == l.join(l.meet(x, y), l.meet(x, z)));
    CHECK(l.join(x, l.meet(y, z)) == l.meet(l.join(x, y), l.join(x, z)));
    CHECK(l.meet(y, l.join(x, z)) == l.join(l.meet(y, x), l.meet(y, z)));
    CHECK(l.join(y, l.meet(x, z)) == l.meet(l.join(y, x), l.join(y, z)));
    CHECK(l.meet(z, l.join(x, y)) == l.join(l.meet(z, x), l.meet(z, y)));
    CHECK(l.join(z, l.meet(x, y)) == l.meet(l.join(z, x), l.join(z, y)));
  };
  std::mt19937_64 rng(31);
  for (const auto& l : {OrthoLattice::mo(3),
                        OrthoLattice::product(OrthoLattice::boolean(1), OrthoLattice::mo(2))}) {
    for (int trial = 0; trial < 300; ++trial) {
      Elem p = pick(rng, l), q = pick(rng, l), e = pick(rng, l);
      if (l.commutes(p, e) && l.commutes(q, e)) check_six(l, p, q, e);
    }
  }
}

TEST_CASE("lattice file round trip") {
  auto prod = OrthoLattice::product(OrthoLattice::boolean(1), OrthoLattice::mo(2));
  std::stringstream ss;
  prod.save(ss);
  auto back = OrthoLattice::load(ss);
  CHECK(back.fingerprint() == prod.fingerprint());
  CHECK(back.size() == prod.size());
  for (Elem x = 0; x < prod.size(); ++x) CHECK(back.label(x) == prod.label(x));

  // a non-OML file loads only with the escape hatch
  std::stringstream o6;
  make_o6().save(o6);
  std::string text = o6.str();
  CHECK_THROWS_AS(OrthoLattice::load(o6), Error);
  std::stringstream again(text);
  auto loaded = OrthoLattice::load(again, /*allow_non_oml=*/true);
  CHECK_FALSE(loaded.verify_axioms().ok);
}

TEST_CASE("cross-lattice element sets are rejected") {
  auto mo2 = OrthoLattice::mo(2);
  auto b2 = OrthoLattice::boolean(2);
  ElementSet on_mo2(mo2, {1, 2});
  CHECK_THROWS_AS(commutant(b2, on_mo2), Error);
}
