#include "qst/lattice.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace qst {
namespace {

constexpr std::uint64_t kFnvOffset = 1469598103934665603ull;
constexpr std::uint64_t kFnvPrime = 1099511628211ull;

void fnv(std::uint64_t& h, std::uint64_t v) {
  for (int i = 0; i < 8; ++i) {
    h ^= (v >> (8 * i)) & 0xff;
    h *= kFnvPrime;
  }
}

// Down-sets as bit rows; all generic table work runs on these.
struct BitRows {
  std::size_t n, words;
  std::vector<std::uint64_t> bits;
  BitRows(std::size_t n_) : n(n_), words((n_ + 63) / 64), bits(n_ * words, 0) {}
  void set(std::size_t r, std::size_t c) { bits[r * words + c / 64] |= 1ull << (c % 64); }
  bool get(std::size_t r, std::size_t c) const {
    return (bits[r * words + c / 64] >> (c % 64)) & 1;
  }
  const std::uint64_t* row(std::size_t r) const { return &bits[r * words]; }
  bool subset(std::size_t r1, std::size_t r2) const {  // row r1 included in r2
    const std::uint64_t *a = row(r1), *b = row(r2);
    for (std::size_t w = 0; w < words; ++w)
      if (a[w] & ~b[w]) return false;
    return true;
  }
};

std::string mask_label(unsigned mask, unsigned k) {
  if (mask == 0) return "0";
  if (mask + 1 == (1u << k)) return "1";
  std::string s;
  for (unsigned i = 0; i < k; ++i)
    if (mask & (1u << i)) s += char('a' + i);
  return s;
}

std::string atom_pair_label(unsigned pair, bool primed) {
  std::string s = pair < 26 ? std::string(1, char('a' + pair)) : "p" + std::to_string(pair);
  if (primed) s += '\'';
  return s;
}

}  // namespace

Elem OrthoLattice::meet_all(const std::vector<Elem>& xs) const {
  Elem acc = top_;
  for (Elem x : xs) acc = meet(acc, x);
  return acc;
}

Elem OrthoLattice::join_all(const std::vector<Elem>& xs) const {
  Elem acc = bottom_;
  for (Elem x : xs) acc = join(acc, x);
  return acc;
}

std::optional<Elem> OrthoLattice::find(const std::string& s) const {
  for (std::size_t i = 0; i < n_; ++i)
    if (labels_[i] == s) return Elem(i);
  if (!s.empty() && s.find_first_not_of("0123456789") == std::string::npos) {
    unsigned long v = std::stoul(s);
    if (v < n_) return Elem(v);
  }
  return std::nullopt;
}

bool OrthoLattice::commutes(Elem p, Elem q) const {
  return p == join(meet(p, q), meet(p, ortho(q)));
}

Elem OrthoLattice::commutator_pair(Elem p, Elem q) const {
  Elem po = ortho(p), qo = ortho(q);
  return join(join(meet(p, q), meet(p, qo)), join(meet(po, q), meet(po, qo)));
}

bool OrthoLattice::is_boolean() const {
  for (Elem p = 0; p < n_; ++p)
    for (Elem q = p; q < n_; ++q)
      if (!commutes(p, q)) return false;
  return true;
}

bool OrthoLattice::is_extremely_noncommutative() const {
  for (Elem p = 0; p < n_; ++p) {
    if (p == top_) continue;
    for (Elem q = 0; q < n_; ++q) {
      if (q == top_ || p == q) continue;
      if (meet(p, q) != bottom_) return false;
    }
  }
  return true;
}

VerifyReport OrthoLattice::verify_axioms() const {
  auto fail = [](std::string what, Elem a, Elem b) {
    return VerifyReport{false, std::move(what), a, b};
  };
  const std::size_t n = n_;
  BitRows down(n);
  for (Elem x = 0; x < n; ++x)
    for (Elem y = 0; y < n; ++y)
      if (leq(x, y)) down.set(y, x);

  for (Elem x = 0; x < n; ++x)
    if (!leq(x, x)) return fail("order not reflexive", x, x);
  for (Elem x = 0; x < n; ++x)
    for (Elem y = 0; y < n; ++y) {
      if (x != y && leq(x, y) && leq(y, x)) return fail("order not antisymmetric", x, y);
      if (leq(x, y) && !down.subset(x, y)) return fail("order not transitive", x, y);
    }
  for (Elem x = 0; x < n; ++x) {
    if (!leq(bottom_, x)) return fail("no global bottom", bottom_, x);
    if (!leq(x, top_)) return fail("no global top", x, top_);
  }

  // meet/join tables against inf/sup under leq
  BitRows up(n);
  for (Elem x = 0; x < n; ++x)
    for (Elem y = 0; y < n; ++y)
      if (leq(x, y)) up.set(x, y);
  for (Elem x = 0; x < n; ++x)
    for (Elem y = 0; y < n; ++y) {
      Elem m = meet(x, y);
      if (!leq(m, x) || !leq(m, y)) return fail("meet not a lower bound", x, y);
      for (std::size_t w = 0; w < down.words; ++w)
        if (down.row(x)[w] & down.row(y)[w] & ~down.row(m)[w])
          return fail("meet not greatest", x, y);
      Elem j = join(x, y);
      if (!leq(x, j) || !leq(y, j)) return fail("join not an upper bound", x, y);
      for (std::size_t w = 0; w < up.words; ++w)
        if (up.row(x)[w] & up.row(y)[w] & ~up.row(j)[w])
          return fail("join not least", x, y);
      if (ortho(meet(ortho(x), ortho(y))) != j) return fail("join/meet De Morgan broken", x, y);
    }

  for (Elem x = 0; x < n; ++x) {
    if (ortho(ortho(x)) != x) return fail("ortho not an involution", x, ortho(x));
    if (join(x, ortho(x)) != top_) return fail("complement join law broken", x, ortho(x));
    if (meet(x, ortho(x)) != bottom_) return fail("complement meet law broken", x, ortho(x));
  }
  for (Elem x = 0; x < n; ++x)
    for (Elem y = 0; y < n; ++y)
      if (leq(x, y) && !leq(ortho(y), ortho(x)))
        return fail("ortho not order-reversing", x, y);

  for (Elem x = 0; x < n; ++x)
    for (Elem y = 0; y < n; ++y)
      if (leq(x, y) && join(x, meet(ortho(x), y)) != y)
        return fail("orthomodular law violated", x, y);

  return {};
}

void OrthoLattice::finalize(bool allow_non_oml) {
  const std::size_t n = n_;
  if (n == 0) throw Error("empty lattice");
  if (ortho_.size() != n) throw Error("ortho table size mismatch");

  BitRows down(n);
  for (Elem x = 0; x < n; ++x) {
    if (!leq(x, x)) throw Error("order not reflexive");
    for (Elem y = 0; y < n; ++y)
      if (leq(x, y)) {
        if (x != y && leq(y, x)) throw Error("order not antisymmetric");
        down.set(y, x);
      }
  }

  bottom_ = top_ = 0;
  for (Elem x = 0; x < n; ++x) {
    bool is_bot = true, is_top = true;
    for (Elem y = 0; y < n && (is_bot || is_top); ++y) {
      is_bot = is_bot && leq(x, y);
      is_top = is_top && leq(y, x);
    }
    if (is_bot) bottom_ = x;
    if (is_top) top_ = x;
  }

  if (meet_.empty()) {
    BitRows up(n);
    for (Elem x = 0; x < n; ++x)
      for (Elem y = 0; y < n; ++y)
        if (leq(x, y)) up.set(x, y);
    meet_.assign(n * n, 0);
    join_.assign(n * n, 0);
    std::vector<std::uint64_t> tmp(down.words);
    for (Elem x = 0; x < n; ++x)
      for (Elem y = 0; y < n; ++y) {
        // Max of the intersected down-set; one monotone pass suffices
        // whenever an infimum exists, and the inclusion test rejects it
        // otherwise.
        for (std::size_t w = 0; w < down.words; ++w)
          tmp[w] = down.row(x)[w] & down.row(y)[w];
        Elem m = x;
        for (Elem z = 0; z < n; ++z)
          if (((tmp[z / 64] >> (z % 64)) & 1) && (!((tmp[m / 64] >> (m % 64)) & 1) || leq(m, z)))
            m = z;
        for (std::size_t w = 0; w < down.words; ++w)
          if (tmp[w] & ~down.row(m)[w]) throw Error("not a lattice: meet missing");
        meet_[idx(x, y)] = m;

        for (std::size_t w = 0; w < down.words; ++w)
          tmp[w] = up.row(x)[w] & up.row(y)[w];
        Elem j = x;
        for (Elem z = 0; z < n; ++z)
          if (((tmp[z / 64] >> (z % 64)) & 1) && (!((tmp[j / 64] >> (j % 64)) & 1) || leq(z, j)))
            j = z;
        for (std::size_t w = 0; w < down.words; ++w)
          if (tmp[w] & ~up.row(j)[w]) throw Error("not a lattice: join missing");
        join_[idx(x, y)] = j;
      }
  }

  if (labels_.empty()) {
    labels_.resize(n);
    for (std::size_t i = 0; i < n; ++i) labels_[i] = std::to_string(i);
  }
  if (labels_.size() != n) throw Error("label table size mismatch");

  std::uint64_t h = kFnvOffset;
  fnv(h, n);
  for (Elem x : ortho_) fnv(h, x);
  for (std::size_t i = 0; i < leq_.size(); ++i)
    if (leq_[i]) fnv(h, i);
  fingerprint_ = h;

  VerifyReport rep = verify_axioms();
  if (!rep.ok) {
    bool tolerated = allow_non_oml && rep.what == "orthomodular law violated";
    if (!tolerated) throw Error("lattice axioms failed: " + rep.what + " at (" +
                                labels_[rep.lhs] + ", " + labels_[rep.rhs] + ")");
  }
}

OrthoLattice OrthoLattice::boolean(unsigned k, std::size_t cap) {
  if (k < 1) throw Error("boolean lattice needs k >= 1 (two-element chain is the smallest logic)");
  if (k > 16) throw CapacityError("boolean lattice capped at k = 16");
  std::size_t n = std::size_t(1) << k;
  if (n > cap) throw CapacityError("boolean lattice exceeds element capacity");

  OrthoLattice l;
  l.n_ = n;
  unsigned full = unsigned(n - 1);
  l.leq_.assign(n * n, 0);
  l.ortho_.resize(n);
  l.meet_.resize(n * n);
  l.join_.resize(n * n);
  l.labels_.resize(n);
  for (unsigned x = 0; x < n; ++x) {
    l.ortho_[x] = Elem(full ^ x);
    l.labels_[x] = mask_label(x, k);
    for (unsigned y = 0; y < n; ++y) {
      l.leq_[x * n + y] = (x & ~y) == 0;
      l.meet_[x * n + y] = Elem(x & y);
      l.join_[x * n + y] = Elem(x | y);
    }
  }
  l.finalize(false);
  return l;
}

OrthoLattice OrthoLattice::mo(unsigned m, std::size_t cap) {
  if (m < 1) throw Error("mo lattice needs at least one atom pair");
  std::size_t n = 2 * std::size_t(m) + 2;
  if (n > cap) throw CapacityError("mo lattice exceeds element capacity");

  OrthoLattice l;
  l.n_ = n;
  Elem bot = 0, top = Elem(n - 1);
  l.leq_.assign(n * n, 0);
  l.ortho_.resize(n);
  l.meet_.assign(n * n, bot);
  l.join_.assign(n * n, top);
  l.labels_.resize(n);
  l.labels_[bot] = "0";
  l.labels_[top] = "1";
  l.ortho_[bot] = top;
  l.ortho_[top] = bot;
  for (unsigned p = 0; p < m; ++p) {
    Elem x = Elem(1 + 2 * p), y = Elem(2 + 2 * p);
    l.ortho_[x] = y;
    l.ortho_[y] = x;
    l.labels_[x] = atom_pair_label(p, false);
    l.labels_[y] = atom_pair_label(p, true);
  }
  for (Elem x = 0; x < n; ++x) {
    l.leq_[x * n + x] = 1;
    l.leq_[bot * n + x] = 1;
    l.leq_[x * n + top] = 1;
    l.meet_[x * n + x] = x;
    l.join_[x * n + x] = x;
    l.meet_[x * n + top] = l.meet_[top * n + x] = x;
    l.join_[x * n + bot] = l.join_[bot * n + x] = x;
  }
  l.finalize(false);
  return l;
}

OrthoLattice OrthoLattice::product(const OrthoLattice& a, const OrthoLattice& b,
                                   std::size_t cap) {
  std::size_t na = a.size(), nb = b.size(), n = na * nb;
  if (n > cap) throw CapacityError("direct product exceeds element capacity");

  OrthoLattice l;
  l.n_ = n;
  l.leq_.assign(n * n, 0);
  l.ortho_.resize(n);
  l.meet_.resize(n * n);
  l.join_.resize(n * n);
  l.labels_.resize(n);
  auto id = [nb](Elem xa, Elem xb) { return Elem(xa * nb + xb); };
  for (Elem xa = 0; xa < na; ++xa)
    for (Elem xb = 0; xb < nb; ++xb) {
      Elem x = id(xa, xb);
      l.ortho_[x] = id(a.ortho(xa), b.ortho(xb));
      l.labels_[x] = "(" + a.label(xa) + "," + b.label(xb) + ")";
      for (Elem ya = 0; ya < na; ++ya)
        for (Elem yb = 0; yb < nb; ++yb) {
          Elem y = id(ya, yb);
          l.leq_[std::size_t(x) * n + y] = a.leq(xa, ya) && b.leq(xb, yb);
          l.meet_[std::size_t(x) * n + y] = id(a.meet(xa, ya), b.meet(xb, yb));
          l.join_[std::size_t(x) * n + y] = id(a.join(xa, ya), b.join(xb, yb));
        }
    }
  l.finalize(false);
  return l;
}

OrthoLattice OrthoLattice::horizontal_sum(const OrthoLattice& a, const OrthoLattice& b,
                                          std::size_t cap) {
  std::size_t na = a.size(), nb = b.size();
  if (na < 2 || nb < 2) throw Error("horizontal sum needs nondegenerate parts");
  std::size_t n = (na - 2) + (nb - 2) + 2;
  if (n > cap) throw CapacityError("horizontal sum exceeds element capacity");

  // bottom, a-interior, b-interior, top
  std::vector<Elem> amap(na), bmap(nb);
  Elem next = 1;
  for (Elem x = 0; x < na; ++x)
    amap[x] = (x == a.bottom()) ? 0 : (x == a.top()) ? Elem(n - 1) : next++;
  for (Elem x = 0; x < nb; ++x)
    bmap[x] = (x == b.bottom()) ? 0 : (x == b.top()) ? Elem(n - 1) : next++;

  std::vector<std::pair<Elem, Elem>> pairs;
  std::vector<Elem> ortho(n);
  std::vector<std::string> labels(n);
  labels[0] = "0";
  labels[n - 1] = "1";
  ortho[0] = Elem(n - 1);
  ortho[n - 1] = 0;
  for (Elem x = 0; x < na; ++x) {
    ortho[amap[x]] = amap[a.ortho(x)];
    if (amap[x] != 0 && amap[x] != n - 1) labels[amap[x]] = "L." + a.label(x);
    for (Elem y = 0; y < na; ++y)
      if (a.leq(x, y)) pairs.emplace_back(amap[x], amap[y]);
  }
  for (Elem x = 0; x < nb; ++x) {
    ortho[bmap[x]] = bmap[b.ortho(x)];
    if (bmap[x] != 0 && bmap[x] != n - 1) labels[bmap[x]] = "R." + b.label(x);
    for (Elem y = 0; y < nb; ++y)
      if (b.leq(x, y)) pairs.emplace_back(bmap[x], bmap[y]);
  }
  return from_relation(n, pairs, ortho, std::move(labels), false, cap);
}

OrthoLattice OrthoLattice::from_relation(std::size_t n,
                                         const std::vector<std::pair<Elem, Elem>>& leq_pairs,
                                         const std::vector<Elem>& ortho,
                                         std::vector<std::string> labels,
                                         bool allow_non_oml, std::size_t cap) {
  if (n > cap) throw CapacityError("lattice exceeds element capacity");
  OrthoLattice l;
  l.n_ = n;
  l.leq_.assign(n * n, 0);
  for (std::size_t x = 0; x < n; ++x) l.leq_[x * n + x] = 1;
  for (auto [x, y] : leq_pairs) {
    if (x >= n || y >= n) throw Error("leq pair index out of range");
    l.leq_[std::size_t(x) * n + y] = 1;
  }
  // transitive closure, so Hasse-style input is accepted
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t x = 0; x < n; ++x)
      if (l.leq_[x * n + k])
        for (std::size_t y = 0; y < n; ++y)
          if (l.leq_[k * n + y]) l.leq_[x * n + y] = 1;
  l.ortho_ = ortho;
  l.labels_ = std::move(labels);
  l.finalize(allow_non_oml);
  return l;
}

void OrthoLattice::save(std::ostream& os) const {
  os << "# qst lattice\n";
  os << "n " << n_ << "\n";
  os << "ortho";
  for (Elem x : ortho_) os << ' ' << x;
  os << "\n";
  for (Elem x = 0; x < n_; ++x)
    for (Elem y = 0; y < n_; ++y) {
      if (x == y || !leq(x, y)) continue;
      bool cover = true;  // keep the file small: covers only
      for (Elem z = 0; z < n_ && cover; ++z)
        cover = !(z != x && z != y && leq(x, z) && leq(z, y));
      if (cover) os << "leq " << x << ' ' << y << "\n";
    }
  for (Elem x = 0; x < n_; ++x)
    if (labels_[x] != std::to_string(x)) os << "label " << x << ' ' << labels_[x] << "\n";
}

OrthoLattice OrthoLattice::load(std::istream& is, bool allow_non_oml, std::size_t cap) {
  std::size_t n = 0;
  std::vector<Elem> ortho;
  std::vector<std::pair<Elem, Elem>> pairs;
  std::vector<std::string> labels;
  std::string line;
  bool saw_n = false;
  while (std::getline(is, line)) {
    auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    std::istringstream ls(line);
    std::string key;
    if (!(ls >> key)) continue;
    if (key == "n") {
      if (!(ls >> n) || n == 0) throw Error("lattice file: bad n");
      saw_n = true;
      labels.resize(n);
      for (std::size_t i = 0; i < n; ++i) labels[i] = std::to_string(i);
    } else if (key == "ortho") {
      unsigned long v;
      while (ls >> v) ortho.push_back(Elem(v));
    } else if (key == "leq") {
      unsigned long x, y;
      if (!(ls >> x >> y)) throw Error("lattice file: bad leq pair");
      pairs.emplace_back(Elem(x), Elem(y));
    } else if (key == "label") {
      unsigned long x;
      std::string name;
      if (!(ls >> x >> name) || !saw_n || x >= n) throw Error("lattice file: bad label");
      labels[x] = name;
    } else {
      throw Error("lattice file: unknown field '" + key + "'");
    }
  }
  if (!saw_n) throw Error("lattice file: missing n");
  return from_relation(n, pairs, ortho, std::move(labels), allow_non_oml, cap);
}

OrthoLattice OrthoLattice::load_file(const std::string& path, bool allow_non_oml,
                                     std::size_t cap) {
  std::ifstream f(path);
  if (!f) throw Error("cannot open lattice file: " + path);
  return load(f, allow_non_oml, cap);
}

ElementSet::ElementSet(const OrthoLattice& l, std::vector<Elem> members)
    : members_(std::move(members)), fingerprint_(l.fingerprint()) {
  for (Elem x : members_)
    if (x >= l.size()) throw Error("element set member out of range");
  std::sort(members_.begin(), members_.end());
  members_.erase(std::unique(members_.begin(), members_.end()), members_.end());
}

bool ElementSet::contains(Elem x) const {
  return std::binary_search(members_.begin(), members_.end(), x);
}

void ElementSet::require_same_lattice(const OrthoLattice& l) const {
  if (fingerprint_ != l.fingerprint())
    throw Error("element set belongs to a different lattice");
}

ElementSet commutant(const OrthoLattice& l, const ElementSet& a) {
  a.require_same_lattice(l);
  std::vector<Elem> out;
  for (Elem p = 0; p < l.size(); ++p) {
    bool all = true;
    for (Elem q : a.members())
      if (!l.commutes(p, q)) {
        all = false;
        break;
      }
    if (all) out.push_back(p);
  }
  return ElementSet(l, std::move(out));
}

ElementSet generated_sublogic(const OrthoLattice& l, const ElementSet& a) {
  return commutant(l, commutant(l, a));
}

Elem commutator_set(const OrthoLattice& l, const ElementSet& a) {
  a.require_same_lattice(l);
  if (a.size() == 0) return l.top();  // empty-family convention
  ElementSet bang = commutant(l, a);
  ElementSet bangbang = commutant(l, bang);
  auto admissible = [&](Elem e) {
    for (Elem p : a.members())
      for (Elem q : a.members())
        if (!l.commutes(l.meet(p, e), l.meet(q, e))) return false;
    return true;
  };
  Elem best = l.bottom();
  for (Elem e : bangbang.members())
    if (bang.contains(e) && admissible(e)) best = l.join(best, e);
  if (!admissible(best) || !bang.contains(best) || !bangbang.contains(best))
    throw Error("commutator join escaped its candidate set");  // cannot happen in an OML
  return best;
}

Elem commutator_bk(const OrthoLattice& l, const ElementSet& a) {
  a.require_same_lattice(l);
  const auto& m = a.members();
  if (m.size() > 20) throw CapacityError("Bruns-Kalmbach join over too many sign patterns");
  Elem acc = l.bottom();
  for (std::uint32_t pat = 0; pat < (1u << m.size()); ++pat) {
    Elem term = l.top();
    for (std::size_t i = 0; i < m.size(); ++i)
      term = l.meet(term, (pat >> i) & 1 ? l.ortho(m[i]) : m[i]);
    acc = l.join(acc, term);
  }
  return acc;
}

namespace {

IntervalFactor make_interval(const OrthoLattice& l, const std::vector<Elem>& context,
                             Elem e) {
  IntervalFactor f;
  f.top_elem = e;
  for (Elem x : context)
    if (l.leq(x, e)) f.to_ambient.push_back(x);
  std::size_t n = f.to_ambient.size();
  std::vector<std::pair<Elem, Elem>> pairs;
  std::vector<Elem> ortho(n);
  std::vector<std::string> labels(n);
  auto local = [&](Elem ambient) {
    auto it = std::find(f.to_ambient.begin(), f.to_ambient.end(), ambient);
    if (it == f.to_ambient.end()) throw Error("interval not closed under relative ortho");
    return Elem(it - f.to_ambient.begin());
  };
  for (std::size_t i = 0; i < n; ++i) {
    Elem x = f.to_ambient[i];
    ortho[i] = local(l.meet(l.ortho(x), e));
    labels[i] = l.label(x);
    for (std::size_t j = 0; j < n; ++j)
      if (l.leq(x, f.to_ambient[j])) pairs.emplace_back(Elem(i), Elem(j));
  }
  f.lattice = OrthoLattice::from_relation(n, pairs, ortho, std::move(labels));
  return f;
}

}  // namespace

Decomposition decompose(const OrthoLattice& l, const ElementSet& a) {
  a.require_same_lattice(l);
  if (a.size() == 0) throw Error("decompose needs a nonempty family");
  ElementSet context = generated_sublogic(l, a);
  Elem e = commutator_set(l, a);

  Decomposition d;
  d.commutator = e;
  d.boolean_part = make_interval(l, context.members(), e);
  d.residual_part = make_interval(l, context.members(), l.ortho(e));

  // X -> (X \ E, X \ E^perp) must be an order/ortho bijection onto the product.
  const auto& amb1 = d.boolean_part.to_ambient;
  const auto& amb2 = d.residual_part.to_ambient;
  auto index_of = [](const std::vector<Elem>& v, Elem x) {
    return std::size_t(std::find(v.begin(), v.end(), x) - v.begin());
  };
  std::size_t n1 = amb1.size(), n2 = amb2.size();
  bool ok = context.size() == n1 * n2;
  std::vector<std::uint8_t> hit(n1 * n2, 0);
  for (Elem x : context.members()) {
    std::size_t i = index_of(amb1, l.meet(x, e));
    std::size_t j = index_of(amb2, l.meet(x, l.ortho(e)));
    if (i >= n1 || j >= n2 || hit[i * n2 + j]) {
      ok = false;
      break;
    }
    hit[i * n2 + j] = 1;
    Elem back = l.join(l.meet(x, e), l.meet(x, l.ortho(e)));
    ok = ok && back == x;
    Elem xo = l.ortho(x);  // ambient ortho maps to componentwise relative ortho
    ok = ok && l.meet(xo, e) == l.meet(l.ortho(l.meet(x, e)), e);
    ok = ok && l.meet(xo, l.ortho(e)) == l.meet(l.ortho(l.meet(x, l.ortho(e))), l.ortho(e));
    if (!ok) break;
  }
  if (ok)
    for (Elem x : context.members())
      for (Elem y : context.members()) {
        bool comp = l.leq(l.meet(x, e), l.meet(y, e)) &&
                    l.leq(l.meet(x, l.ortho(e)), l.meet(y, l.ortho(e)));
        if (l.leq(x, y) != comp) {
          ok = false;
          break;
        }
      }
  d.reconstruction_ok = ok && d.boolean_part.lattice.is_boolean();
  return d;
}

Sublattice induced_sublattice(const OrthoLattice& l, const ElementSet& members) {
  members.require_same_lattice(l);
  const auto& m = members.members();
  Sublattice s;
  s.to_ambient = m;
  s.from_ambient.assign(l.size(), Sublattice::npos);
  for (std::size_t i = 0; i < m.size(); ++i) s.from_ambient[m[i]] = Elem(i);
  auto local = [&](Elem ambient) {
    Elem i = s.from_ambient[ambient];
    if (i == Sublattice::npos) throw Error("subset not closed under the lattice operations");
    return i;
  };
  if (!members.contains(l.bottom()) || !members.contains(l.top()))
    throw Error("subalgebra must contain the bounds");
  std::size_t n = m.size();
  std::vector<std::pair<Elem, Elem>> pairs;
  std::vector<Elem> ortho(n);
  std::vector<std::string> labels(n);
  for (std::size_t i = 0; i < n; ++i) {
    ortho[i] = local(l.ortho(m[i]));
    labels[i] = l.label(m[i]);
    for (std::size_t j = 0; j < n; ++j) {
      local(l.meet(m[i], m[j]));
      local(l.join(m[i], m[j]));
      if (l.leq(m[i], m[j])) pairs.emplace_back(Elem(i), Elem(j));
    }
  }
  s.lattice = OrthoLattice::from_relation(n, pairs, ortho, std::move(labels));
  return s;
}

bool isomorphic(const OrthoLattice& a, const OrthoLattice& b) {
  std::size_t n = a.size();
  if (n != b.size()) return false;

  auto signature = [](const OrthoLattice& l, Elem x) {
    unsigned down = 0, up = 0;
    for (Elem y = 0; y < l.size(); ++y) {
      down += l.leq(y, x);
      up += l.leq(x, y);
    }
    return std::pair<unsigned, unsigned>(down, up);
  };
  std::vector<std::pair<unsigned, unsigned>> sa(n), sb(n);
  for (Elem x = 0; x < n; ++x) {
    sa[x] = signature(a, x);
    sb[x] = signature(b, x);
  }
  {
    auto ca = sa, cb = sb;
    std::sort(ca.begin(), ca.end());
    std::sort(cb.begin(), cb.end());
    if (ca != cb) return false;
  }

  std::vector<Elem> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = Elem(i);
  std::sort(order.begin(), order.end(),
            [&](Elem x, Elem y) { return sa[x] < sa[y]; });

  std::vector<int> map(n, -1), used(n, 0);
  auto consistent = [&](Elem x, Elem y) {
    if (sa[x] != sb[y]) return false;
    if (map[a.ortho(x)] >= 0 && map[a.ortho(x)] != int(b.ortho(y))) return false;
    for (Elem z = 0; z < n; ++z) {
      if (map[z] < 0) continue;
      if (a.leq(x, z) != b.leq(y, Elem(map[z]))) return false;
      if (a.leq(z, x) != b.leq(Elem(map[z]), y)) return false;
    }
    return true;
  };
  auto rec = [&](auto&& self, std::size_t k) -> bool {
    if (k == n) return true;
    Elem x = order[k];
    for (Elem y = 0; y < n; ++y) {
      if (used[y] || !consistent(x, y)) continue;
      map[x] = y;
      used[y] = 1;
      if (self(self, k + 1)) return true;
      map[x] = -1;
      used[y] = 0;
    }
    return false;
  };
  return rec(rec, 0);
}

}  // namespace qst
