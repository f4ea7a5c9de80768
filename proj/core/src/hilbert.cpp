#include "qst/hilbert.hpp"

#include <Eigen/Dense>

#include "qst/ops.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

namespace qst::hilbert {

ExactComplex ExactComplex::inverse() const {
  Rational denom = re * re + im * im;
  if (denom == 0) throw Error("division by zero");
  return {re / denom, -im / denom};
}

std::string ExactComplex::to_string() const {
  std::ostringstream os;
  os << re.str() << "," << im.str();
  return os.str();
}

namespace {

double abs2(const std::complex<double>& c) { return std::norm(c); }
double entry_distance(const std::complex<double>& a, const std::complex<double>& b) {
  return std::abs(a - b);
}
double entry_distance(const ExactComplex& a, const ExactComplex& b) {
  return a == b ? 0.0 : 1.0;
}
std::complex<double> conj_scalar(const std::complex<double>& c) { return std::conj(c); }
ExactComplex conj_scalar(const ExactComplex& c) { return c.conj(); }

}  // namespace

template <class S>
Matrix<S> Matrix<S>::identity(std::size_t d) {
  Matrix m(d);
  for (std::size_t i = 0; i < d; ++i) m(i, i) = S(1);
  return m;
}

template <class S>
Matrix<S> Matrix<S>::operator+(const Matrix& o) const {
  if (d_ != o.d_) throw Error("matrix dimension mismatch");
  Matrix r(d_);
  for (std::size_t i = 0; i < e_.size(); ++i) r.e_[i] = e_[i] + o.e_[i];
  return r;
}

template <class S>
Matrix<S> Matrix<S>::operator-(const Matrix& o) const {
  if (d_ != o.d_) throw Error("matrix dimension mismatch");
  Matrix r(d_);
  for (std::size_t i = 0; i < e_.size(); ++i) r.e_[i] = e_[i] - o.e_[i];
  return r;
}

template <class S>
Matrix<S> Matrix<S>::operator*(const Matrix& o) const {
  if (d_ != o.d_) throw Error("matrix dimension mismatch");
  Matrix r(d_);
  for (std::size_t i = 0; i < d_; ++i)
    for (std::size_t k = 0; k < d_; ++k) {
      S v = (*this)(i, k);
      for (std::size_t j = 0; j < d_; ++j) r(i, j) = r(i, j) + v * o(k, j);
    }
  return r;
}

template <class S>
Matrix<S> Matrix<S>::scaled(const S& k) const {
  Matrix r(d_);
  for (std::size_t i = 0; i < e_.size(); ++i) r.e_[i] = e_[i] * k;
  return r;
}

template <class S>
Matrix<S> Matrix<S>::adjoint() const {
  Matrix r(d_);
  for (std::size_t i = 0; i < d_; ++i)
    for (std::size_t j = 0; j < d_; ++j) r(j, i) = conj_scalar((*this)(i, j));
  return r;
}

template <class S>
double Matrix<S>::distance(const Matrix& o) const {
  if (d_ != o.d_) throw Error("matrix dimension mismatch");
  double m = 0;
  for (std::size_t i = 0; i < e_.size(); ++i)
    m = std::max(m, entry_distance(e_[i], o.e_[i]));
  return m;
}

template <class S>
bool approx_equal(const Matrix<S>& a, const Matrix<S>& b, double tol) {
  return a.distance(b) <= tol;
}

template <class S>
bool is_hermitian(const Matrix<S>& a, double tol) {
  return approx_equal(a, a.adjoint(), tol);
}

template <class S>
bool is_projection(const Matrix<S>& p, double tol) {
  return is_hermitian(p, tol) && approx_equal(p * p, p, tol);
}

namespace {

// Orthonormal basis of the joint column span through re-orthogonalized
// Gram-Schmidt; the pivot cutoff sits far above double noise and far below
// any generic principal angle.
constexpr double kPivotCutoff = 1e-7;

std::vector<std::vector<std::complex<double>>> span_basis(
    const std::vector<std::vector<std::complex<double>>>& cols) {
  std::vector<std::vector<std::complex<double>>> basis;
  for (auto col : cols) {
    for (int pass = 0; pass < 2; ++pass)
      for (const auto& b : basis) {
        std::complex<double> dot = 0;
        for (std::size_t i = 0; i < col.size(); ++i) dot += std::conj(b[i]) * col[i];
        for (std::size_t i = 0; i < col.size(); ++i) col[i] -= dot * b[i];
      }
    double norm2 = 0;
    for (const auto& v : col) norm2 += abs2(v);
    if (std::sqrt(norm2) > kPivotCutoff) {
      double inv = 1.0 / std::sqrt(norm2);
      for (auto& v : col) v *= inv;
      basis.push_back(std::move(col));
    }
  }
  return basis;
}

FMatrix span_projection_impl(const std::vector<std::vector<std::complex<double>>>& cols,
                             std::size_t d) {
  auto basis = span_basis(cols);
  FMatrix p(d);
  for (const auto& b : basis)
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j) p(i, j) += b[i] * std::conj(b[j]);
  return p;
}

// Exact route: independent original columns, then the Gram normal equations
// (no square roots, so the entries stay rational).
XMatrix span_projection_impl(const std::vector<std::vector<ExactComplex>>& cols,
                             std::size_t d) {
  std::vector<std::vector<ExactComplex>> reduced;  // echelon forms
  std::vector<std::size_t> pivots;
  std::vector<std::vector<ExactComplex>> chosen;   // original columns
  for (const auto& orig : cols) {
    auto col = orig;
    for (std::size_t b = 0; b < reduced.size(); ++b) {
      const ExactComplex& lead = col[pivots[b]];
      if (lead.is_zero()) continue;
      ExactComplex factor = lead * reduced[b][pivots[b]].inverse();
      for (std::size_t i = 0; i < d; ++i) col[i] = col[i] - factor * reduced[b][i];
    }
    std::size_t pivot = d;
    for (std::size_t i = 0; i < d; ++i)
      if (!col[i].is_zero()) {
        pivot = i;
        break;
      }
    if (pivot == d) continue;
    reduced.push_back(col);
    pivots.push_back(pivot);
    chosen.push_back(orig);
  }
  std::size_t k = chosen.size();
  XMatrix p(d);
  if (k == 0) return p;

  // gram = V* V, then invert by Gauss-Jordan
  std::vector<std::vector<ExactComplex>> g(k, std::vector<ExactComplex>(2 * k));
  for (std::size_t a = 0; a < k; ++a) {
    for (std::size_t b = 0; b < k; ++b)
      for (std::size_t i = 0; i < d; ++i)
        g[a][b] = g[a][b] + chosen[a][i].conj() * chosen[b][i];
    g[a][k + a] = ExactComplex(1);
  }
  for (std::size_t c = 0; c < k; ++c) {
    std::size_t pr = c;
    while (pr < k && g[pr][c].is_zero()) ++pr;
    if (pr == k) throw Error("gram matrix singular");  // cannot happen: columns independent
    std::swap(g[c], g[pr]);
    ExactComplex inv = g[c][c].inverse();
    for (auto& v : g[c]) v = v * inv;
    for (std::size_t r = 0; r < k; ++r) {
      if (r == c || g[r][c].is_zero()) continue;
      ExactComplex f = g[r][c];
      for (std::size_t i = 0; i < 2 * k; ++i) g[r][i] = g[r][i] - f * g[c][i];
    }
  }
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) {
      ExactComplex v(0);
      for (std::size_t a = 0; a < k; ++a)
        for (std::size_t b = 0; b < k; ++b)
          v = v + chosen[a][i] * g[a][k + b] * chosen[b][j].conj();
      p(i, j) = v;
    }
  return p;
}

template <class S>
std::vector<std::vector<S>> columns_of(const Matrix<S>& m) {
  std::vector<std::vector<S>> cols(m.dim(), std::vector<S>(m.dim()));
  for (std::size_t j = 0; j < m.dim(); ++j)
    for (std::size_t i = 0; i < m.dim(); ++i) cols[j][i] = m(i, j);
  return cols;
}

template <class S>
void require_projection_pair(const Matrix<S>& p, const Matrix<S>& q, double tol) {
  if (p.dim() != q.dim()) throw Error("projection dimension mismatch");
  if (!is_projection(p, tol) || !is_projection(q, tol))
    throw Error("operand is not a projection");
}

}  // namespace

template <class S>
Matrix<S> proj_ortho(const Matrix<S>& p) {
  return Matrix<S>::identity(p.dim()) - p;
}

template <class S>
Matrix<S> proj_join(const Matrix<S>& p, const Matrix<S>& q, double tol) {
  require_projection_pair(p, q, tol);
  auto cols = columns_of(p);
  auto more = columns_of(q);
  cols.insert(cols.end(), more.begin(), more.end());
  return span_projection_impl(cols, p.dim());
}

template <class S>
Matrix<S> proj_meet(const Matrix<S>& p, const Matrix<S>& q, double tol) {
  return proj_ortho(proj_join(proj_ortho(p), proj_ortho(q), tol));
}

template <class S>
Matrix<S> proj_commutator(const Matrix<S>& p, const Matrix<S>& q, double tol) {
  Matrix<S> po = proj_ortho(p), qo = proj_ortho(q);
  Matrix<S> acc = proj_join(proj_meet(p, q, tol), proj_meet(p, qo, tol), tol);
  acc = proj_join(acc, proj_meet(po, q, tol), tol);
  return proj_join(acc, proj_meet(po, qo, tol), tol);
}

template <class S>
Matrix<S> proj_conjunction(int j, const Matrix<S>& p, const Matrix<S>& q, double tol) {
  if (j < 0 || j > 5) throw Error("conjunction index out of range");
  Matrix<S> base = proj_meet(p, q, tol);
  if (j == 5) return base;
  Matrix<S> noncom = proj_ortho(proj_commutator(p, q, tol));
  switch (j) {
    case 0: return proj_join(base, noncom, tol);
    case 1: return proj_join(base, proj_meet(proj_ortho(p), noncom, tol), tol);
    case 2: return proj_join(base, proj_meet(q, noncom, tol), tol);
    case 3: return proj_join(base, proj_meet(p, noncom, tol), tol);
    default: return proj_join(base, proj_meet(proj_ortho(q), noncom, tol), tol);
  }
}

template <class S>
bool proj_leq(const Matrix<S>& p, const Matrix<S>& q, double tol) {
  return approx_equal(q * p, p, tol);
}

template <class S>
Matrix<S> takeuti_theta(const Matrix<S>& p, const Matrix<S>& q, const S& phase,
                        double tol) {
  require_projection_pair(p, q, tol);
  if (entry_distance(phase * conj_scalar(phase), S(1)) > tol)
    throw Error("phase must be unimodular");
  Matrix<S> u = Matrix<S>::identity(p.dim()) + p.scaled(phase - S(1));
  return u * q * u.adjoint();
}

FMatrix takeuti_theta(const FMatrix& p, const FMatrix& q, double theta, double tol) {
  return takeuti_theta(p, q, std::polar(1.0, theta), tol);
}

template <class S>
StarTheta<S> star_j_theta_i(int j, int i, const Matrix<S>& p, const Matrix<S>& q,
                            const S& phase, double tol) {
  if (j < 0 || j > 5 || (i != 0 && i != 1)) throw Error("star index out of range");
  StarTheta<S> out;
  Matrix<S> qo = proj_ortho(q), po = proj_ortho(p);
  if (i == 0) {
    out.value = proj_conjunction(j, p, takeuti_theta(p, q, phase, tol), tol);
  } else {
    out.value = proj_conjunction(j, takeuti_theta(qo, p, phase, tol), q, tol);
  }

  // The four genuinely twisted forms keep the plain meet as base and
  // conjugate only the epsilon monomial, mirroring the canonical shape of
  // the untwisted conjunctions.
  auto base = [&] { return proj_meet(p, q, tol); };
  auto noncom = [&] { return proj_ortho(proj_commutator(p, q, tol)); };
  if (i == 0) {
    switch (j) {
      case 0: out.closed_form = proj_conjunction(0, p, q, tol); break;
      case 1: out.closed_form = proj_conjunction(1, p, q, tol); break;
      case 2:
        out.closed_form =
            proj_join(base(), proj_meet(takeuti_theta(p, q, phase, tol), noncom(), tol), tol);
        break;
      case 3: out.closed_form = proj_conjunction(3, p, q, tol); break;
      case 4:
        out.closed_form =
            proj_join(base(), proj_meet(takeuti_theta(p, qo, phase, tol), noncom(), tol), tol);
        break;
      default: out.closed_form = proj_conjunction(5, p, q, tol); break;
    }
  } else {
    switch (j) {
      case 0: out.closed_form = proj_conjunction(0, p, q, tol); break;
      case 1:
        out.closed_form = proj_join(
            base(), proj_meet(takeuti_theta(qo, po, phase, tol), noncom(), tol), tol);
        break;
      case 2: out.closed_form = proj_conjunction(2, p, q, tol); break;
      case 3:
        out.closed_form =
            proj_join(base(), proj_meet(takeuti_theta(qo, p, phase, tol), noncom(), tol), tol);
        break;
      case 4: out.closed_form = proj_conjunction(4, p, q, tol); break;
      default: out.closed_form = proj_conjunction(5, p, q, tol); break;
    }
  }
  out.deviation = out.value.distance(out.closed_form);
  out.identity_ok = out.deviation <= tol;
  return out;
}

namespace {

Eigen::MatrixXcd to_eigen(const FMatrix& a) {
  Eigen::MatrixXcd m(a.dim(), a.dim());
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t j = 0; j < a.dim(); ++j) m(i, j) = a(i, j);
  return m;
}

}  // namespace

FMatrix SpectralFamily::at(double lambda) const {
  if (cuts.empty()) throw Error("empty spectral family");
  FMatrix out(cuts.front().second.dim());
  for (const auto& [l, e] : cuts)
    if (l <= lambda + 1e-12) out = e;
  return out;
}

SpectralFamily spectral_family(const FMatrix& a, double tol) {
  if (!is_hermitian(a, tol)) throw Error("spectral family needs a Hermitian matrix");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(to_eigen(a));
  if (es.info() != Eigen::Success) throw Error("eigendecomposition failed");
  const auto& vals = es.eigenvalues();
  const auto& vecs = es.eigenvectors();

  std::size_t d = a.dim();
  SpectralFamily fam;
  FMatrix acc(d);
  // eigenvalues arrive ascending; merge clusters below the tolerance scale
  constexpr double kCluster = 1e-7;
  std::size_t i = 0;
  while (i < d) {
    double lambda = vals(i);
    while (i < d && vals(i) <= lambda + kCluster) {
      for (std::size_t r = 0; r < d; ++r)
        for (std::size_t c = 0; c < d; ++c)
          acc(r, c) += vecs(r, i) * std::conj(vecs(c, i));
      ++i;
    }
    fam.cuts.emplace_back(lambda, acc);
  }
  // the final cut is the identity; reconstruction is checked below
  FMatrix rebuilt = spectral_reconstruct(fam);
  if (rebuilt.distance(a) > std::max(tol, 1e-10) * 100)
    throw Error("spectral family does not rebuild the operator");
  return fam;
}

FMatrix spectral_reconstruct(const SpectralFamily& f) {
  if (f.cuts.empty()) throw Error("empty spectral family");
  std::size_t d = f.cuts.front().second.dim();
  FMatrix out(d);
  FMatrix prev(d);
  for (const auto& [l, e] : f.cuts) {
    out = out + (e - prev).scaled(std::complex<double>(l, 0));
    prev = e;
  }
  return out;
}

bool spectral_order_leq(const FMatrix& a, const FMatrix& b, double tol) {
  SpectralFamily fa = spectral_family(a, tol), fb = spectral_family(b, tol);
  std::vector<double> cuts;
  for (const auto& [l, e] : fa.cuts) cuts.push_back(l);
  for (const auto& [l, e] : fb.cuts) cuts.push_back(l);
  std::sort(cuts.begin(), cuts.end());
  for (double l : cuts)
    if (!proj_leq(fb.at(l), fa.at(l), std::max(tol, 1e-8))) return false;
  return true;
}

bool operator_leq_psd(const FMatrix& a, const FMatrix& b, double tol) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(to_eigen(b - a));
  return es.eigenvalues().minCoeff() >= -tol;
}

template <class S>
Closure<S> closure_generate(std::vector<Matrix<S>> gens, std::size_t cap, double tol) {
  if (gens.empty()) throw Error("closure needs at least one generator");
  std::size_t d = gens.front().dim();
  for (const auto& g : gens) {
    if (g.dim() != d) throw Error("closure generators have mixed dimensions");
    if (!is_projection(g, tol)) throw Error("closure generator is not a projection");
  }

  std::vector<Matrix<S>> elems;
  auto find = [&](const Matrix<S>& m) -> std::size_t {
    for (std::size_t i = 0; i < elems.size(); ++i)
      if (approx_equal(elems[i], m, std::max(tol, 1e-8))) return i;
    return std::size_t(-1);
  };
  auto add = [&](const Matrix<S>& m) {
    if (find(m) != std::size_t(-1)) return false;
    if (elems.size() >= cap)
      throw CapacityError("closure cap exceeded: generated ortholattice may be infinite");
    elems.push_back(m);
    return true;
  };
  for (const auto& g : gens) add(g);

  bool grew = true;
  while (grew) {
    grew = false;
    std::size_t n = elems.size();
    for (std::size_t i = 0; i < n; ++i) grew |= add(proj_ortho(elems[i]));
    n = elems.size();
    for (std::size_t i = 0; i < n && !grew; ++i)
      for (std::size_t j = i; j < n && !grew; ++j) {
        grew |= add(proj_meet(elems[i], elems[j], tol));
        grew |= add(proj_join(elems[i], elems[j], tol));
      }
  }

  Closure<S> out;
  std::size_t n = elems.size();
  std::vector<std::pair<Elem, Elem>> pairs;
  std::vector<Elem> ortho(n);
  std::vector<std::string> labels(n);
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t oi = find(proj_ortho(elems[i]));
    if (oi == std::size_t(-1)) throw Error("closure not stable under ortho");
    ortho[i] = Elem(oi);
    labels[i] = "m" + std::to_string(i);
    for (std::size_t j = 0; j < n; ++j)
      if (proj_leq(elems[i], elems[j], std::max(tol, 1e-8)))
        pairs.emplace_back(Elem(i), Elem(j));
  }
  out.lattice = OrthoLattice::from_relation(n, pairs, ortho, std::move(labels));
  out.elements = std::move(elems);
  return out;
}

FMatrix q_value_order(const FMatrix& a, const FMatrix& b, int conj_j, double tol) {
  if (conj_j < 0 || conj_j > 5) throw Error("conjunction index out of range");
  SpectralFamily fa = spectral_family(a, tol), fb = spectral_family(b, tol);
  std::vector<double> cuts;
  for (const auto& [l, e] : fa.cuts) cuts.push_back(l);
  for (const auto& [l, e] : fb.cuts) cuts.push_back(l);
  std::sort(cuts.begin(), cuts.end());

  std::size_t d = a.dim();
  FMatrix acc(d);
  for (double r : cuts) {
    FMatrix eb = fb.at(r);
    FMatrix ea_ortho = proj_ortho(fa.at(r));
    // each term lives in the finite sublogic generated by its two
    // projections (at most 96 elements)
    auto closure = closure_generate<std::complex<double>>({eb, ea_ortho}, 128, tol);
    auto locate = [&](const FMatrix& m) {
      for (std::size_t i = 0; i < closure.elements.size(); ++i)
        if (approx_equal(closure.elements[i], m, std::max(tol, 1e-8))) return Elem(i);
      throw Error("generator missing from its own closure");
    };
    auto conj = BinaryOperation::conjunction(closure.lattice, conj_j);
    Elem v = conj(locate(eb), locate(ea_ortho));
    acc = proj_join(acc, closure.elements[v], tol);
  }
  return proj_ortho(acc);
}

FMatrix random_unitary(std::size_t d, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss;
  std::vector<std::vector<std::complex<double>>> cols(d, std::vector<std::complex<double>>(d));
  for (auto& col : cols)
    for (auto& v : col) v = {gauss(rng), gauss(rng)};
  auto basis = span_basis(cols);
  if (basis.size() != d) return random_unitary(d, rng);  // measure-zero retry
  FMatrix u(d);
  for (std::size_t j = 0; j < d; ++j)
    for (std::size_t i = 0; i < d; ++i) u(i, j) = basis[j][i];
  return u;
}

FMatrix random_projection(std::size_t d, std::size_t rank, std::mt19937_64& rng) {
  if (rank > d) throw Error("projection rank exceeds dimension");
  FMatrix u = random_unitary(d, rng);
  FMatrix p(d);
  for (std::size_t k = 0; k < rank; ++k)
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j) p(i, j) += u(i, k) * std::conj(u(j, k));
  return p;
}

FMatrix random_hermitian(std::size_t d, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss;
  FMatrix m(d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) m(i, j) = {gauss(rng), gauss(rng)};
  FMatrix h = m + m.adjoint();
  return h.scaled(0.5);
}

namespace {

Rational parse_rational(const std::string& s) {
  auto slash = s.find('/');
  if (slash == std::string::npos) return Rational(boost::multiprecision::cpp_int(s));
  return Rational(boost::multiprecision::cpp_int(s.substr(0, slash)),
                  boost::multiprecision::cpp_int(s.substr(slash + 1)));
}

}  // namespace

MatrixInput parse_matrix(std::istream& is) {
  MatrixInput input;
  std::string line, key;
  std::size_t dim = 0;
  bool saw_mode = false;
  std::vector<std::string> entries;
  while (std::getline(is, line)) {
    auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    std::istringstream ls(line);
    if (!(ls >> key)) continue;
    if (key == "mode") {
      std::string m;
      ls >> m;
      if (m == "exact")
        input.mode = MatrixMode::Exact;
      else if (m == "float")
        input.mode = MatrixMode::Float;
      else
        throw Error("matrix file: mode must be exact or float");
      saw_mode = true;
    } else if (key == "dim") {
      ls >> dim;
    } else {
      entries.push_back(key);
      std::string e;
      while (ls >> e) entries.push_back(e);
    }
  }
  if (!saw_mode || dim == 0) throw Error("matrix file: missing mode or dim");
  if (entries.size() != dim * dim)
    throw Error("matrix file: expected " + std::to_string(dim * dim) + " entries, got " +
                std::to_string(entries.size()));
  auto split = [](const std::string& e) {
    auto comma = e.find(',');
    if (comma == std::string::npos) throw Error("matrix entry needs re,im: " + e);
    return std::pair<std::string, std::string>(e.substr(0, comma), e.substr(comma + 1));
  };
  if (input.mode == MatrixMode::Exact) {
    XMatrix m(dim);
    for (std::size_t i = 0; i < dim; ++i)
      for (std::size_t j = 0; j < dim; ++j) {
        auto [re, im] = split(entries[i * dim + j]);
        m(i, j) = ExactComplex(parse_rational(re), parse_rational(im));
      }
    input.x = std::move(m);
  } else {
    FMatrix m(dim);
    for (std::size_t i = 0; i < dim; ++i)
      for (std::size_t j = 0; j < dim; ++j) {
        auto [re, im] = split(entries[i * dim + j]);
        m(i, j) = {std::stod(re), std::stod(im)};
      }
    input.f = std::move(m);
  }
  return input;
}

MatrixInput load_matrix_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw Error("cannot open matrix file: " + path);
  return parse_matrix(f);
}

// explicit instantiations for both scalar modes
template class Matrix<std::complex<double>>;
template class Matrix<ExactComplex>;

#define QST_INSTANTIATE(S)                                                             \
  template bool approx_equal<S>(const Matrix<S>&, const Matrix<S>&, double);           \
  template bool is_hermitian<S>(const Matrix<S>&, double);                             \
  template bool is_projection<S>(const Matrix<S>&, double);                            \
  template Matrix<S> proj_ortho<S>(const Matrix<S>&);                                  \
  template Matrix<S> proj_meet<S>(const Matrix<S>&, const Matrix<S>&, double);         \
  template Matrix<S> proj_join<S>(const Matrix<S>&, const Matrix<S>&, double);         \
  template Matrix<S> proj_commutator<S>(const Matrix<S>&, const Matrix<S>&, double);   \
  template Matrix<S> proj_conjunction<S>(int, const Matrix<S>&, const Matrix<S>&,      \
                                         double);                                      \
  template bool proj_leq<S>(const Matrix<S>&, const Matrix<S>&, double);               \
  template Matrix<S> takeuti_theta<S>(const Matrix<S>&, const Matrix<S>&, const S&,    \
                                      double);                                         \
  template StarTheta<S> star_j_theta_i<S>(int, int, const Matrix<S>&, const Matrix<S>&, \
                                          const S&, double);                           \
  template Closure<S> closure_generate<S>(std::vector<Matrix<S>>, std::size_t, double);

QST_INSTANTIATE(std::complex<double>)
QST_INSTANTIATE(ExactComplex)
#undef QST_INSTANTIATE

}  // namespace qst::hilbert
