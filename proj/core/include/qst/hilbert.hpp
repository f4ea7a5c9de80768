#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <complex>
#include <iosfwd>
#include <optional>
#include <random>
#include <string>
#include <variant>
#include <vector>

#include "qst/lattice.hpp"

namespace qst::hilbert {

/// Comparison tolerance for every floating-point projection check.
inline constexpr double kTol = 1e-9;
/// Dimension cap; closure growth is combinatorial beyond desk scale.
inline constexpr std::size_t kMaxDim = 8;

using Rational = boost::multiprecision::cpp_rational;

/// Complex scalar with exact rational components, for the exact matrix mode.
struct ExactComplex {
  Rational re, im;

  ExactComplex() = default;
  ExactComplex(Rational r, Rational i = 0) : re(std::move(r)), im(std::move(i)) {}
  ExactComplex(int r) : re(r) {}

  ExactComplex operator+(const ExactComplex& o) const { return {re + o.re, im + o.im}; }
  ExactComplex operator-(const ExactComplex& o) const { return {re - o.re, im - o.im}; }
  ExactComplex operator-() const { return {-re, -im}; }
  ExactComplex operator*(const ExactComplex& o) const {
    return {re * o.re - im * o.im, re * o.im + im * o.re};
  }
  ExactComplex conj() const { return {re, -im}; }
  ExactComplex inverse() const;
  bool is_zero() const { return re == 0 && im == 0; }
  bool operator==(const ExactComplex& o) const { return re == o.re && im == o.im; }
  std::string to_string() const;
};

/// Square complex matrix of dimension <= 8, templated over the scalar mode.
template <class S>
class Matrix {
 public:
  Matrix() = default;
  explicit Matrix(std::size_t d) : d_(check_dim(d)), e_(d * d, S(0)) {}
  static Matrix identity(std::size_t d);

  std::size_t dim() const { return d_; }
  S& operator()(std::size_t i, std::size_t j) { return e_[i * d_ + j]; }
  const S& operator()(std::size_t i, std::size_t j) const { return e_[i * d_ + j]; }

  Matrix operator+(const Matrix& o) const;
  Matrix operator-(const Matrix& o) const;
  Matrix operator*(const Matrix& o) const;
  Matrix scaled(const S& k) const;
  Matrix adjoint() const;

  /// Largest entrywise deviation; exact scalars report 0 or 1.
  double distance(const Matrix& o) const;

 private:
  static std::size_t check_dim(std::size_t d) {
    if (d == 0 || d > kMaxDim) throw CapacityError("matrix dimension out of range");
    return d;
  }
  std::size_t d_ = 0;
  std::vector<S> e_;
};

using FMatrix = Matrix<std::complex<double>>;
using XMatrix = Matrix<ExactComplex>;

template <class S>
bool is_hermitian(const Matrix<S>& a, double tol = kTol);
template <class S>
bool is_projection(const Matrix<S>& p, double tol = kTol);
template <class S>
bool approx_equal(const Matrix<S>& a, const Matrix<S>& b, double tol = kTol);

// -- projection lattice operations -------------------------------------------

template <class S>
Matrix<S> proj_ortho(const Matrix<S>& p);
/// Projection onto the intersection of the ranges.
template <class S>
Matrix<S> proj_meet(const Matrix<S>& p, const Matrix<S>& q, double tol = kTol);
/// Projection onto the span of the ranges.
template <class S>
Matrix<S> proj_join(const Matrix<S>& p, const Matrix<S>& q, double tol = kTol);
/// Marsden commutator, computed with the lattice operations.
template <class S>
Matrix<S> proj_commutator(const Matrix<S>& p, const Matrix<S>& q, double tol = kTol);
/// The quantized conjunction *_j evaluated on projections.
template <class S>
Matrix<S> proj_conjunction(int j, const Matrix<S>& p, const Matrix<S>& q, double tol = kTol);
/// Range containment p <= q.
template <class S>
bool proj_leq(const Matrix<S>& p, const Matrix<S>& q, double tol = kTol);

// -- the unitary-twist family ------------------------------------------------

/// e^{i theta P} Q e^{-i theta P} for a projection P, phase = e^{i theta}.
/// The phase must be unimodular; conjugation keeps Q a projection.
template <class S>
Matrix<S> takeuti_theta(const Matrix<S>& p, const Matrix<S>& q, const S& phase,
                        double tol = kTol);
FMatrix takeuti_theta(const FMatrix& p, const FMatrix& q, double theta, double tol = kTol);

template <class S>
struct StarTheta {
  Matrix<S> value;        // the defining composition
  Matrix<S> closed_form;  // the published identity for (j, i)
  double deviation = 0;
  bool identity_ok = false;
};

/// *_{j,theta,i}: for i=0 conjugate the right argument through P first, for
/// i=1 twist P through the complemented right argument. Cross-checked
/// against the closed form; a mismatch beyond tol is a numerical-integrity
/// failure reported in the result.
template <class S>
StarTheta<S> star_j_theta_i(int j, int i, const Matrix<S>& p, const Matrix<S>& q,
                            const S& phase, double tol = kTol);

// -- spectral families and the spectral order --------------------------------

struct SpectralFamily {
  std::vector<std::pair<double, FMatrix>> cuts;  // ascending, last projection is I
  FMatrix at(double lambda) const;               // right-continuous step value
};

/// Eigendecomposition aggregated into cumulative eigenprojections.
SpectralFamily spectral_family(const FMatrix& a, double tol = kTol);
/// Rebuilds the operator from its family (the reconstruction check).
FMatrix spectral_reconstruct(const SpectralFamily& f);

/// A precedes B in the spectral order: E^B(l) <= E^A(l) for every cut.
bool spectral_order_leq(const FMatrix& a, const FMatrix& b, double tol = kTol);

/// Positive-semidefinite comparison A <= B of Hermitian matrices.
bool operator_leq_psd(const FMatrix& a, const FMatrix& b, double tol = kTol);

// -- finite closures and the lattice-valued order ----------------------------

template <class S>
struct Closure {
  OrthoLattice lattice;
  std::vector<Matrix<S>> elements;  // lattice index -> projection
};

/// Closes the generators under meet, join and ortho until a fixpoint, or
/// throws when the cap is hit (two generators always close within 96).
template <class S>
Closure<S> closure_generate(std::vector<Matrix<S>> gens, std::size_t cap = 256,
                            double tol = kTol);

/// The lattice-valued order statement between the operators coded by their
/// spectral families: complement of the join over merged cut points of
/// E^B(r) *_j E^A(r)^perp, each term evaluated in the finite sublogic the
/// pair generates. Equals the identity exactly when A precedes B in the
/// spectral order (for j <= 4).
FMatrix q_value_order(const FMatrix& a, const FMatrix& b, int conj_j, double tol = kTol);

// -- deterministic random inputs for tests and demos --------------------------

FMatrix random_unitary(std::size_t d, std::mt19937_64& rng);
FMatrix random_projection(std::size_t d, std::size_t rank, std::mt19937_64& rng);
FMatrix random_hermitian(std::size_t d, std::mt19937_64& rng);

// -- matrix files --------------------------------------------------------------

enum class MatrixMode { Exact, Float };

struct MatrixInput {
  MatrixMode mode = MatrixMode::Float;
  std::optional<FMatrix> f;
  std::optional<XMatrix> x;
};

/// Text format: "mode exact|float", "dim <d>", then d rows of d entries,
/// each entry "re,im" with rational (p/q) or decimal components.
MatrixInput parse_matrix(std::istream& is);
MatrixInput load_matrix_file(const std::string& path);

}  // namespace qst::hilbert
