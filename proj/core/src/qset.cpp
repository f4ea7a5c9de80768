#include "qst/qset.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <sstream>

namespace qst {
namespace {

constexpr std::uint64_t kFnvOffset = 1469598103934665603ull;
constexpr std::uint64_t kFnvPrime = 1099511628211ull;

std::uint64_t hash_dom(const std::vector<QEntry>& dom) {
  std::uint64_t h = kFnvOffset;
  for (const QEntry& e : dom) {
    h ^= (std::uint64_t(e.child) << 18) ^ (std::uint64_t(e.weight) << 1) ^ e.marker;
    h *= kFnvPrime;
  }
  return h;
}

bool dom_equal(const std::vector<QEntry>& a, const std::vector<QEntry>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i].child != b[i].child || a[i].weight != b[i].weight || a[i].marker != b[i].marker)
      return false;
  return true;
}

}  // namespace

QId QSetStore::intern(Node n) {
  n.hash = hash_dom(n.dom);
  std::lock_guard<std::mutex> lock(mu_);
  auto [lo, hi] = index_.equal_range(n.hash);
  for (auto it = lo; it != hi; ++it)
    if (dom_equal(nodes_[it->second].dom, n.dom)) return it->second;
  QId id = QId(nodes_.size());
  index_.emplace(n.hash, id);
  nodes_.push_back(std::move(n));
  return id;
}

void QSetStore::finish_node(Node& n) const {
  std::vector<Elem> sup{l_.bottom()};
  unsigned rank = 0;
  for (const QEntry& e : n.dom) {
    rank = std::max(rank, nodes_[e.child].rank + 1);
    sup.push_back(e.weight);
    if (!e.marker) {
      const auto& cs = nodes_[e.child].support;
      sup.insert(sup.end(), cs.begin(), cs.end());
    }
  }
  std::sort(sup.begin(), sup.end());
  sup.erase(std::unique(sup.begin(), sup.end()), sup.end());
  n.rank = rank;
  n.support = std::move(sup);
}

QId QSetStore::empty_check() { return intern(Node{{}, 0, {l_.bottom()}, 0}); }

QId QSetStore::make(std::vector<std::pair<QId, Elem>> dom) {
  std::vector<QEntry> entries;
  entries.reserve(dom.size());
  for (auto [child, w] : dom) entries.push_back(QEntry{child, w, false});
  return make_raw(std::move(entries));
}

QId QSetStore::make_raw(std::vector<QEntry> dom) {
  Node n;
  n.dom = std::move(dom);
  for (const QEntry& e : n.dom) {
    if (e.child >= nodes_.size()) throw Error("bad qset child id");
    if (e.weight >= l_.size()) throw Error("qset weight out of range");
  }
  std::sort(n.dom.begin(), n.dom.end(), [](const QEntry& a, const QEntry& b) {
    return a.child != b.child ? a.child < b.child : a.marker < b.marker;
  });
  for (std::size_t i = 1; i < n.dom.size(); ++i)
    if (n.dom[i].child == n.dom[i - 1].child)
      throw Error("duplicate child in qset domain");
  finish_node(n);
  return intern(std::move(n));
}

QId QSetStore::check_embed(const HFSet& v, std::size_t max_depth) {
  if (v.rank() > max_depth) throw CapacityError("check embedding exceeds depth cap");
  std::vector<std::pair<QId, Elem>> dom;
  for (const HFSet& m : v.members())
    dom.emplace_back(check_embed(m, max_depth), l_.top());
  return make(std::move(dom));
}

QId QSetStore::p_tilde(Elem p) {
  if (p >= l_.size()) throw Error("element out of range");
  return make({{empty_check(), p}});
}

QId QSetStore::restrict(QId u, Elem p) {
  if (p >= l_.size()) throw Error("element out of range");
  Node n;
  for (const QEntry& e : node(u).dom)
    n.dom.push_back(QEntry{restrict(e.child, p), l_.meet(e.weight, p), e.marker});
  n.dom.push_back(QEntry{u, l_.bottom(), true});
  std::sort(n.dom.begin(), n.dom.end(), [](const QEntry& a, const QEntry& b) {
    return a.child != b.child ? a.child < b.child : a.marker < b.marker;
  });
  // A restricted child can structurally coincide with the marker; the union
  // of pairs stays a function only when the weights agree.
  for (std::size_t i = 1; i < n.dom.size(); ++i)
    if (n.dom[i].child == n.dom[i - 1].child) {
      if (n.dom[i].weight != n.dom[i - 1].weight)
        throw Error("restriction produced conflicting weights for one child");
      n.dom.erase(n.dom.begin() + i);
      --i;
    }
  finish_node(n);
  return intern(std::move(n));
}

ElementSet QSetStore::support_set(QId u) const { return ElementSet(l_, support(u)); }

ElementSet QSetStore::joint_support(const std::vector<QId>& us) const {
  std::vector<Elem> all;
  for (QId u : us) {
    const auto& s = support(u);
    all.insert(all.end(), s.begin(), s.end());
  }
  return ElementSet(l_, std::move(all));
}

Elem QSetStore::set_commutator(const std::vector<QId>& us) const {
  return commutator_set(l_, joint_support(us));
}

ElementSet QSetStore::generated_logic(const std::vector<QId>& us) const {
  return generated_sublogic(l_, joint_support(us));
}

std::vector<QId> QSetStore::fold_order(QId u) const {
  std::vector<QId> order;
  std::vector<std::uint8_t> seen(nodes_.size(), 0);
  auto rec = [&](auto&& self, QId x) -> void {
    if (seen[x]) return;
    seen[x] = 1;
    for (const QEntry& e : node(x).dom) self(self, e.child);
    order.push_back(x);
  };
  rec(rec, u);
  return order;
}

namespace {

bool is_check_image(const QSetStore& s, QId u, const OrthoLattice& l) {
  for (const QEntry& e : s.dom(u))
    if (e.marker || e.weight != l.top() || !is_check_image(s, e.child, l)) return false;
  return true;
}

std::string check_literal(const QSetStore& s, QId u) {
  std::string out = "{";
  bool first = true;
  for (const QEntry& e : s.dom(u)) {
    if (!first) out += ',';
    first = false;
    out += check_literal(s, e.child);
  }
  return out + "}";
}

}  // namespace

std::string QSetStore::literal(QId u) const {
  if (is_check_image(*this, u, l_)) return "check " + check_literal(*this, u);
  std::string out = "qset { ";
  bool first = true;
  for (const QEntry& e : dom(u)) {
    if (!first) out += ", ";
    first = false;
    if (e.marker)
      out += "marker " + literal(e.child);
    else
      out += literal(e.child) + " : " + l_.label(e.weight);
  }
  return out + "}";
}

namespace {

struct LitParser {
  QSetStore& s;
  const OrthoLattice& l;
  const std::string& t;
  std::size_t i = 0;

  void skip() {
    while (i < t.size() && std::isspace(static_cast<unsigned char>(t[i]))) ++i;
  }
  bool eat(const char* kw) {
    skip();
    std::size_t n = std::string(kw).size();
    if (t.compare(i, n, kw) == 0) {
      i += n;
      return true;
    }
    return false;
  }
  void expect(char c) {
    skip();
    if (i >= t.size() || t[i] != c)
      throw Error(std::string("qset literal: expected '") + c + "'");
    ++i;
  }
  std::string token() {
    skip();
    std::size_t j = i;
    while (j < t.size() && !std::isspace(static_cast<unsigned char>(t[j])) &&
           std::string(",:{}()").find(t[j]) == std::string::npos)
      ++j;
    if (j == i) throw Error("qset literal: expected an element label");
    std::string w = t.substr(i, j - i);
    i = j;
    return w;
  }
  Elem element() {
    std::string w = token();
    auto e = l.find(w);
    if (!e) throw Error("unknown lattice element: " + w);
    return *e;
  }

  HFSet setlit() {
    expect('{');
    std::vector<HFSet> members;
    skip();
    while (i < t.size() && t[i] != '}') {
      members.push_back(setlit());
      skip();
      if (i < t.size() && t[i] == ',') ++i;
      skip();
    }
    expect('}');
    return HFSet::of(std::move(members));
  }

  QId qlit() {
    skip();
    if (eat("qset")) {
      expect('{');
      std::vector<QEntry> raw;
      skip();
      while (i < t.size() && t[i] != '}') {
        if (eat("marker")) {
          raw.push_back(QEntry{qlit(), l.bottom(), true});
        } else {
          QId child = qlit();
          expect(':');
          raw.push_back(QEntry{child, element(), false});
        }
        skip();
        if (i < t.size() && t[i] == ',') ++i;
        skip();
      }
      expect('}');
      return s.make_raw(std::move(raw));
    }
    if (eat("check")) return s.check_embed(setlit());
    if (eat("ptilde")) return s.p_tilde(element());
    if (eat("restrict")) {
      expect('(');
      QId u = qlit();
      expect(',');
      Elem p = element();
      expect(')');
      return s.restrict(u, p);
    }
    throw Error("qset literal: expected qset/check/ptilde/restrict");
  }
};

}  // namespace

QId QSetStore::parse_literal(const std::string& text) {
  LitParser p{*this, l_, text};
  QId u = p.qlit();
  p.skip();
  if (p.i != text.size()) throw Error("qset literal: trailing input");
  return u;
}

QuantumSubset qsubset_complement(const OrthoLattice& l, const QuantumSubset& a) {
  QuantumSubset out{a.base_size, {}};
  for (Elem w : a.weights) out.weights.push_back(l.ortho(w));
  return out;
}

namespace {
void require_same_base(const QuantumSubset& a, const QuantumSubset& b) {
  if (a.base_size != b.base_size) throw Error("quantum subsets over different bases");
}
}  // namespace

QuantumSubset qsubset_meet(const OrthoLattice& l, const QuantumSubset& a,
                           const QuantumSubset& b) {
  require_same_base(a, b);
  QuantumSubset out{a.base_size, {}};
  for (std::size_t i = 0; i < a.weights.size(); ++i)
    out.weights.push_back(l.meet(a.weights[i], b.weights[i]));
  return out;
}

QuantumSubset qsubset_join(const OrthoLattice& l, const QuantumSubset& a,
                           const QuantumSubset& b) {
  require_same_base(a, b);
  QuantumSubset out{a.base_size, {}};
  for (std::size_t i = 0; i < a.weights.size(); ++i)
    out.weights.push_back(l.join(a.weights[i], b.weights[i]));
  return out;
}

QuantumSubset qsubset_quantized_meet(const OrthoLattice& l, const QuantumSubset& a,
                                     const QuantumSubset& b, const BinaryOperation& conj) {
  require_same_base(a, b);
  conj.require_same_lattice(l);
  QuantumSubset out{a.base_size, {}};
  for (std::size_t i = 0; i < a.weights.size(); ++i)
    out.weights.push_back(conj(a.weights[i], b.weights[i]));
  return out;
}

QId to_qset(QSetStore& store, const QuantumSubset& a) {
  if (a.weights.size() != a.base_size) throw Error("quantum subset weight count mismatch");
  std::vector<std::pair<QId, Elem>> dom;
  for (std::size_t i = 0; i < a.base_size; ++i)
    dom.emplace_back(store.check_embed(HFSet::ordinal(unsigned(i))), a.weights[i]);
  return store.make(std::move(dom));
}

std::vector<QuantumSubset> enumerate_power(const OrthoLattice& l, std::size_t base_size,
                                           std::size_t budget, std::uint64_t seed) {
  std::vector<QuantumSubset> out;
  double total_log = double(base_size) * std::log2(double(l.size()));
  bool full = total_log <= 40;
  std::size_t total = 0;
  if (full) {
    total = 1;
    for (std::size_t i = 0; i < base_size; ++i) total *= l.size();
    full = total <= budget;
  }
  if (full) {
    for (std::size_t k = 0; k < total; ++k) {
      QuantumSubset s{base_size, {}};
      std::size_t v = k;
      for (std::size_t i = 0; i < base_size; ++i) {
        s.weights.push_back(Elem(v % l.size()));
        v /= l.size();
      }
      out.push_back(std::move(s));
    }
    return out;
  }
  std::mt19937_64 rng(seed);
  for (std::size_t k = 0; k < budget; ++k) {
    QuantumSubset s{base_size, {}};
    for (std::size_t i = 0; i < base_size; ++i) s.weights.push_back(Elem(rng() % l.size()));
    out.push_back(std::move(s));
  }
  return out;
}

QId transport(const QSetStore& src, QId u, QSetStore& dst,
              const std::vector<Elem>& elem_map) {
  std::vector<QEntry> dom;
  for (const QEntry& e : src.dom(u)) {
    Elem w = elem_map.at(e.weight);
    if (w >= dst.lattice().size()) throw Error("transport: unmapped element");
    dom.push_back(QEntry{transport(src, e.child, dst, elem_map), w, e.marker});
  }
  return dst.make_raw(std::move(dom));
}

}  // namespace qst
