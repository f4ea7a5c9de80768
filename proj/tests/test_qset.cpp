#include <doctest.h>

#include <random>

#include "qst/qset.hpp"

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

TEST_CASE("check embedding") {
  auto mo2 = OrthoLattice::mo(2);
  QSetStore s(mo2);

  QId zero = s.check_embed(HFSet());
  CHECK(s.dom(zero).empty());
  CHECK(s.rank(zero) == 0);
  CHECK(zero == s.empty_check());

  QId one = s.check_embed(HFSet::ordinal(1));
  CHECK(s.dom(one).size() == 1);
  CHECK(s.dom(one)[0].child == zero);
  CHECK(s.dom(one)[0].weight == mo2.top());

  QId two = s.check_embed(HFSet::ordinal(2));
  CHECK(s.dom(two).size() == 2);
  CHECK(s.rank(two) == 2);

  std::mt19937_64 rng(2);
  for (int i = 0; i < 30; ++i) {
    HFSet h = HFSet::random(rng, 4);
    CHECK(s.rank(s.check_embed(h)) == h.rank());
  }

  CHECK_THROWS_AS(s.check_embed(HFSet::ordinal(7), 6), CapacityError);
}

TEST_CASE("p_tilde supports") {
  auto mo2 = OrthoLattice::mo(2);
  QSetStore s(mo2);
  Elem a = *mo2.find("a");

  // weight-1 singleton coincides with the check image of {0}
  CHECK(s.p_tilde(mo2.top()) == s.check_embed(HFSet::ordinal(1)));
  CHECK(s.support(s.p_tilde(mo2.bottom())) == std::vector<Elem>{mo2.bottom()});
  CHECK(s.support(s.p_tilde(a)) == std::vector<Elem>{mo2.bottom(), a});
}

TEST_CASE("set commutators of qset families") {
  auto mo2 = OrthoLattice::mo(2);
  QSetStore s(mo2);
  Elem a = *mo2.find("a"), b = *mo2.find("b");

  CHECK(s.set_commutator({s.p_tilde(a), s.p_tilde(b)}) == mo2.bottom());
  CHECK(s.set_commutator({s.check_embed(HFSet::ordinal(2)),
                          s.check_embed(HFSet::ordinal(1))}) == mo2.top());
  CHECK(s.set_commutator({s.p_tilde(a), s.p_tilde(mo2.ortho(a))}) == mo2.top());
  CHECK(s.set_commutator({}) == mo2.top());
}

TEST_CASE("restriction keeps the marker pair and cuts supports") {
  auto mo2 = OrthoLattice::mo(2);
  QSetStore s(mo2);
  Elem a = *mo2.find("a"), b = *mo2.find("b");

  QId zero = s.empty_check();
  QId r0 = s.restrict(zero, a);
  REQUIRE(s.dom(r0).size() == 1);
  CHECK(s.dom(r0)[0].child == zero);
  CHECK(s.dom(r0)[0].weight == mo2.bottom());
  CHECK(s.dom(r0)[0].marker);

  QId pa = s.p_tilde(a);
  QId r1 = s.restrict(pa, mo2.top());
  REQUIRE(s.dom(r1).size() == 2);  // restricted 0-check plus the marker
  bool found_weight = false, found_marker = false;
  for (const QEntry& e : s.dom(r1)) {
    if (e.marker) {
      found_marker = true;
      CHECK(e.child == pa);
      CHECK(e.weight == mo2.bottom());
    } else {
      found_weight = true;
      CHECK(e.weight == a);  // a ^ 1 = a
    }
  }
  CHECK(found_weight);
  CHECK(found_marker);

  CHECK(s.support(s.restrict(pa, b)) ==
        std::vector<Elem>{mo2.bottom()});  // a ^ b = 0
  CHECK(s.support(s.restrict(pa, a)) == std::vector<Elem>{mo2.bottom(), a});
}

TEST_CASE("support of a restriction equals the cut support") {
  std::mt19937_64 rng(13);
  for (const auto& l : {OrthoLattice::mo(2), OrthoLattice::boolean(3),
                        OrthoLattice::product(OrthoLattice::boolean(1), OrthoLattice::mo(2))}) {
    QSetStore s(l);
    for (int trial = 0; trial < 200; ++trial) {
      QId u = random_qset(s, rng, 3);
      Elem p = Elem(rng() % l.size());
      std::vector<Elem> cut;
      for (Elem x : s.support(u)) cut.push_back(l.meet(x, p));
      std::sort(cut.begin(), cut.end());
      cut.erase(std::unique(cut.begin(), cut.end()), cut.end());
      CHECK(s.support(s.restrict(u, p)) == cut);
    }
  }
}

TEST_CASE("hash consing: structural equality is node identity") {
  auto mo2 = OrthoLattice::mo(2);
  QSetStore s(mo2);
  std::mt19937_64 rng(19);
  for (int trial = 0; trial < 100; ++trial) {
    QId u = random_qset(s, rng, 3);
    std::vector<std::pair<QId, Elem>> dom;
    for (const QEntry& e : s.dom(u)) dom.emplace_back(e.child, e.weight);
    CHECK(s.make(dom) == u);
  }
  // marker flags take part in identity
  QId restricted = s.restrict(s.empty_check(), *mo2.find("a"));
  QId plain = s.make({{s.empty_check(), mo2.bottom()}});
  CHECK(restricted != plain);
  CHECK(s.p_tilde(mo2.bottom()) == plain);
}

TEST_CASE("duplicate children are rejected") {
  auto mo2 = OrthoLattice::mo(2);
  QSetStore s(mo2);
  QId zero = s.empty_check();
  CHECK_THROWS_AS(s.make({{zero, 1}, {zero, 2}}), Error);
}

TEST_CASE("fold order visits children first") {
  auto mo2 = OrthoLattice::mo(2);
  QSetStore s(mo2);
  std::mt19937_64 rng(29);
  for (int trial = 0; trial < 40; ++trial) {
    QId u = random_qset(s, rng, 4);
    auto order = s.fold_order(u);
    CHECK(order.back() == u);
    std::vector<std::uint8_t> pos_known(s.node_count(), 0);
    for (QId x : order) {
      for (const QEntry& e : s.dom(x)) CHECK(pos_known[e.child]);
      pos_known[x] = 1;
    }
  }
}

TEST_CASE("rank survives re-rooting into a sublogic") {
  auto mo2 = OrthoLattice::mo(2);
  Elem a = *mo2.find("a");
  auto sub = induced_sublattice(
      mo2, ElementSet(mo2, {mo2.bottom(), a, mo2.ortho(a), mo2.top()}));
  CHECK(sub.lattice.size() == 4);

  QSetStore s(mo2), r(sub.lattice);
  std::mt19937_64 rng(31);
  int moved = 0;
  for (int trial = 0; trial < 200; ++trial) {
    QId u = random_qset(s, rng, 3);
    bool inside = true;
    for (Elem x : s.support(u)) inside = inside && sub.from_ambient[x] != Sublattice::npos;
    if (!inside) continue;  // belongs to the subuniverse iff the support is inside
    ++moved;
    QId v = transport(s, u, r, sub.from_ambient);
    CHECK(r.rank(v) == s.rank(u));
    QId w = transport(r, v, s, sub.to_ambient);
    CHECK(s.rank(w) == s.rank(u));
  }
  CHECK(moved > 10);
}

TEST_CASE("qset literals round trip") {
  auto mo2 = OrthoLattice::mo(2);
  QSetStore s(mo2);
  std::mt19937_64 rng(37);
  for (int trial = 0; trial < 60; ++trial) {
    QId u = random_qset(s, rng, 3);
    CHECK(s.parse_literal(s.literal(u)) == u);
    QId v = s.restrict(u, Elem(rng() % mo2.size()));
    CHECK(s.parse_literal(s.literal(v)) == v);
  }
  CHECK(s.literal(s.check_embed(HFSet::ordinal(2))) == "check {{},{{}}}");
  CHECK(s.parse_literal("ptilde a") == s.p_tilde(*mo2.find("a")));
  CHECK(s.parse_literal("qset { check {} : a' }") == s.p_tilde(mo2.ortho(*mo2.find("a"))));
  CHECK(s.parse_literal("restrict(ptilde a, b)") ==
        s.restrict(s.p_tilde(*mo2.find("a")), *mo2.find("b")));
}

TEST_CASE("quantum subset algebra") {
  auto mo2 = OrthoLattice::mo(2);
  Elem a = *mo2.find("a"), b = *mo2.find("b");

  QuantumSubset A{2, {a, b}}, B{2, {b, mo2.top()}};
  auto comp2 = qsubset_complement(mo2, qsubset_complement(mo2, A));
  CHECK(comp2.weights == A.weights);

  auto meet = qsubset_meet(mo2, A, B);
  CHECK(meet.weights == std::vector<Elem>{mo2.meet(a, b), b});

  auto conj5 = BinaryOperation::conjunction(mo2, 5);
  CHECK(qsubset_quantized_meet(mo2, A, B, conj5).weights == meet.weights);

  // quantized meet with the Sasaki conjunction against the complement
  auto conj3 = BinaryOperation::conjunction(mo2, 3);
  QuantumSubset P{1, {a}}, Q{1, {b}};
  auto r = qsubset_quantized_meet(mo2, P, qsubset_complement(mo2, Q), conj3);
  CHECK(r.weights == std::vector<Elem>{conj3(a, mo2.ortho(b))});
  CHECK(r.weights[0] == a);

  QSetStore s(mo2);
  CHECK(to_qset(s, P) == s.p_tilde(a));

  CHECK(enumerate_power(mo2, 1, 100).size() == 6);
  CHECK(enumerate_power(OrthoLattice::boolean(1), 2, 100).size() == 4);
  CHECK(enumerate_power(OrthoLattice::product(OrthoLattice::boolean(1), mo2), 1, 100).size() ==
        12);
  // over budget: seeded sample of exactly budget size, reproducible
  auto s1 = enumerate_power(mo2, 8, 50, 7);
  auto s2 = enumerate_power(mo2, 8, 50, 7);
  CHECK(s1.size() == 50);
  for (std::size_t i = 0; i < s1.size(); ++i) CHECK(s1[i].weights == s2[i].weights);
}
